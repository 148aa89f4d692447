//! Explicit finite fields `GF(p^a) = GF(p)[t] / (modulus)`.
//!
//! Elements are coordinate vectors over the prime field in the power basis of
//! the residue class of `t` (little-endian: constant coordinate first). The
//! canonical ordering used everywhere for representatives and enumeration is
//! lexicographic on that vector.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use super::linalg::{inv_mod, GfpMat, RrefSolver};
use super::poly::DensePoly;
use super::GaloisError;

const MAX_CHAR: u64 = 1 << 31;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

struct ParentLink {
    parent: FiniteField,
    /// Prime-field-linear map taking parent coordinates to child coordinates,
    /// sending the parent generator to a canonical root of the parent modulus.
    embed: GfpMat,
    /// Invertible change of basis: column `t * a_parent + j` holds
    /// `theta^t * rho^j`, so solving recovers coordinates over the parent in
    /// the power basis `{1, theta, ..., theta^(k-1)}`.
    basis: RrefSolver,
}

struct FieldData {
    p: u64,
    a: usize,
    order: u64,
    /// Monic, length `a + 1`, constant term first.
    modulus: Vec<u64>,
    parent: Option<ParentLink>,
}

/// A finite field `GF(p^a)`; cheap to clone and thread-safe.
#[derive(Clone)]
pub struct FiniteField(Arc<FieldData>);

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.a == other.0.a && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FiniteField {}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.0.p, self.0.a)
    }
}

impl FiniteField {
    /// Builds `GF(p^a)`; see [`super::field_make`].
    pub fn new(p: u64, a: usize, modulus: Option<&[u64]>) -> Result<Self, GaloisError> {
        if p >= MAX_CHAR || !is_prime(p) {
            return Err(GaloisError::NonPrimeChar(p));
        }
        if a == 0 {
            return Err(GaloisError::BadModulusDegree { expected: 1 });
        }
        let order = (p as u128).checked_pow(a as u32).and_then(|o| u64::try_from(o).ok());
        let Some(order) = order else {
            return Err(GaloisError::FieldTooLarge);
        };
        let modulus = match modulus {
            Some(m) => {
                let mut m: Vec<u64> = m.iter().map(|&c| c % p).collect();
                while m.last() == Some(&0) {
                    m.pop();
                }
                if m.len() != a + 1 || m[a] != 1 {
                    return Err(GaloisError::BadModulusDegree { expected: a });
                }
                if a > 1 {
                    let prime = Self::prime_unchecked(p);
                    let cand = DensePoly::from_prime_coords(&prime, &m);
                    if !cand.is_irreducible()? {
                        return Err(GaloisError::ReducibleModulus { p });
                    }
                }
                m
            }
            None => canonical_modulus(p, a)?,
        };
        Ok(FiniteField(Arc::new(FieldData { p, a, order, modulus, parent: None })))
    }

    fn prime_unchecked(p: u64) -> Self {
        FiniteField(Arc::new(FieldData { p, a: 1, order: p, modulus: vec![0, 1], parent: None }))
    }

    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    /// Extension degree over the prime field.
    pub fn degree(&self) -> usize {
        self.0.a
    }

    pub fn order(&self) -> u64 {
        self.0.order
    }

    /// Monic defining modulus over `GF(p)`, constant term first.
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn parent(&self) -> Option<&FiniteField> {
        self.0.parent.as_ref().map(|l| &l.parent)
    }

    /// Degree of `self` over its parent (1 when there is no parent link).
    pub fn degree_over_parent(&self) -> usize {
        match &self.0.parent {
            Some(l) => self.0.a / l.parent.0.a,
            None => 1,
        }
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { field: self.clone(), c: vec![0; self.0.a] }
    }

    pub fn one(&self) -> FieldElement {
        self.scalar(1)
    }

    /// The element `v * 1` of the prime subfield.
    pub fn scalar(&self, v: u64) -> FieldElement {
        let mut c = vec![0; self.0.a];
        c[0] = v % self.0.p;
        FieldElement { field: self.clone(), c }
    }

    /// The power-basis generator (residue class of `t`); equals `scalar` data
    /// only when `a = 1`, where the canonical modulus is `t` and the generator
    /// is zero — use [`FiniteField::scalar`] there instead.
    pub fn gen(&self) -> FieldElement {
        let mut c = vec![0; self.0.a];
        if self.0.a > 1 {
            c[1] = 1;
        }
        FieldElement { field: self.clone(), c }
    }

    /// Element from coordinates (little-endian, reduced mod `p`, padded).
    pub fn elt(&self, coords: &[u64]) -> Result<FieldElement, GaloisError> {
        if coords.len() > self.0.a {
            return Err(GaloisError::BadCoordinates { expected: self.0.a, got: coords.len() });
        }
        let mut c: Vec<u64> = coords.iter().map(|&v| v % self.0.p).collect();
        c.resize(self.0.a, 0);
        Ok(FieldElement { field: self.clone(), c })
    }

    /// Element at position `idx` in the canonical (lexicographic) order.
    pub fn elt_at(&self, idx: u64) -> FieldElement {
        debug_assert!(idx < self.0.order);
        let (p, a) = (self.0.p, self.0.a);
        let mut c = vec![0; a];
        let mut rest = idx;
        for j in (0..a).rev() {
            c[j] = rest % p;
            rest /= p;
        }
        FieldElement { field: self.clone(), c }
    }

    /// Position of `e` in the canonical order; inverse of [`FiniteField::elt_at`].
    pub fn position(&self, e: &FieldElement) -> u64 {
        debug_assert!(*self == e.field);
        e.c.iter().fold(0, |acc, &v| acc * self.0.p + v)
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.0.order).map(|i| self.elt_at(i))
    }

    /// Builds `GF(p^(a*k))` with the canonical modulus and an explicit
    /// embedding of `self` fixing the prime field.
    pub fn extension(&self, k: usize) -> Result<FiniteField, GaloisError> {
        if k == 0 {
            return Err(GaloisError::BadModulusDegree { expected: 1 });
        }
        if k == 1 {
            return Ok(self.clone());
        }
        let (p, a) = (self.0.p, self.0.a);
        let plain = FiniteField::new(p, a * k, None)?;
        let lifted = DensePoly::from_prime_coords(&plain, &self.0.modulus);
        let rho = lifted
            .roots()?
            .into_iter()
            .min()
            .expect("an irreducible modulus splits in any extension of matching degree");
        let mut pow = plain.one();
        let mut embed_cols = Vec::with_capacity(a);
        for _ in 0..a {
            embed_cols.push(pow.c.clone());
            pow = &pow * &rho;
        }
        let embed = GfpMat::from_columns(p, a * k, &embed_cols);
        let theta = plain.gen();
        let mut basis_cols = Vec::with_capacity(a * k);
        let mut theta_pow = plain.one();
        for _ in 0..k {
            let mut rho_pow = theta_pow.clone();
            for _ in 0..a {
                basis_cols.push(rho_pow.c.clone());
                rho_pow = &rho_pow * &rho;
            }
            theta_pow = &theta_pow * &theta;
        }
        let basis = RrefSolver::new(GfpMat::from_columns(p, a * k, &basis_cols));
        debug_assert_eq!(basis.rank, a * k);
        Ok(FiniteField(Arc::new(FieldData {
            p,
            a: a * k,
            order: plain.0.order,
            modulus: plain.0.modulus.clone(),
            parent: Some(ParentLink { parent: self.clone(), embed, basis }),
        })))
    }

    /// Maps an element of an ancestor field in this tower into `self`.
    pub fn embed_up(&self, e: &FieldElement) -> Result<FieldElement, GaloisError> {
        if *self == e.field {
            return Ok(e.clone());
        }
        let link = self.0.parent.as_ref().ok_or(GaloisError::NotInSubfield)?;
        let below = if link.parent == e.field { e.clone() } else { link.parent.embed_up(e)? };
        Ok(FieldElement { field: self.clone(), c: link.embed.mul_vec(&below.c) })
    }

    /// Coordinates of `e` over the parent field in the power basis
    /// `{1, theta, ..., theta^(k-1)}` of the canonical generator.
    pub fn coords_over_parent(&self, e: &FieldElement) -> Result<Vec<FieldElement>, GaloisError> {
        if *self != e.field {
            return Err(GaloisError::FieldMismatch);
        }
        let link = self.0.parent.as_ref().ok_or(GaloisError::NoParent)?;
        let w = link.basis.solve(&e.c).expect("power basis over the parent is invertible");
        let pa = link.parent.0.a;
        w.chunks(pa).map(|chunk| link.parent.elt(chunk)).collect()
    }

    /// Matrix of the prime-field-linear map `x -> x^e` on `self`.
    pub(crate) fn power_map_matrix(&self, e: u64) -> GfpMat {
        let theta_e = self.gen().pow_u64(e);
        let mut cols = Vec::with_capacity(self.0.a);
        let mut acc = self.one();
        for i in 0..self.0.a {
            if i > 0 {
                acc = &acc * &theta_e;
            }
            cols.push(acc.c.clone());
        }
        GfpMat::from_columns(self.0.p, self.0.a, &cols)
    }

    pub(crate) fn apply_matrix(&self, m: &GfpMat, e: &FieldElement) -> FieldElement {
        debug_assert!(*self == e.field);
        FieldElement { field: self.clone(), c: m.mul_vec(&e.c) }
    }

    // --- raw coordinate arithmetic ---

    fn add_raw(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(&x, &y)| (x + y) % self.0.p).collect()
    }

    fn sub_raw(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(&x, &y)| (x + self.0.p - y) % self.0.p).collect()
    }

    fn neg_raw(&self, a: &[u64]) -> Vec<u64> {
        a.iter().map(|&x| (self.0.p - x) % self.0.p).collect()
    }

    fn mul_raw(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let (p, n) = (self.0.p, self.0.a);
        if n == 1 {
            return vec![a[0] * b[0] % p];
        }
        let mut buf = vec![0u128; 2 * n - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                buf[i + j] += (x as u128) * (y as u128);
            }
        }
        let mut red: Vec<u64> = buf.iter().map(|&v| (v % p as u128) as u64).collect();
        for i in (n..red.len()).rev() {
            let c = red[i];
            if c == 0 {
                continue;
            }
            red[i] = 0;
            for j in 0..n {
                let m = self.0.modulus[j];
                if m != 0 {
                    red[i - n + j] = (red[i - n + j] + (p - m) * c % p) % p;
                }
            }
        }
        red.truncate(n);
        red
    }

    /// Extended Euclid of the element (as a polynomial) against the modulus.
    fn inv_raw(&self, a: &[u64]) -> Result<Vec<u64>, GaloisError> {
        let p = self.0.p;
        if self.0.a == 1 {
            if a[0] == 0 {
                return Err(GaloisError::DivisionByZero);
            }
            return Ok(vec![inv_mod(a[0], p)]);
        }
        let deg = |v: &[u64]| v.iter().rposition(|&c| c != 0);
        let mut r0: Vec<u64> = self.0.modulus.clone();
        let mut r1: Vec<u64> = a.to_vec();
        let mut s0: Vec<u64> = vec![0];
        let mut s1: Vec<u64> = vec![1];
        loop {
            let Some(d1) = deg(&r1) else {
                return Err(GaloisError::DivisionByZero);
            };
            if d1 == 0 {
                let s = inv_mod(r1[0], p);
                let mut out: Vec<u64> = s1.iter().map(|&c| c * s % p).collect();
                out.resize(self.0.a, 0);
                return Ok(out);
            }
            let d0 = deg(&r0).expect("nonzero by construction");
            if d0 < d1 {
                std::mem::swap(&mut r0, &mut r1);
                std::mem::swap(&mut s0, &mut s1);
                continue;
            }
            // one long-division step: r0 -= (lead0/lead1) t^(d0-d1) * r1
            let f = r0[d0] * inv_mod(r1[d1], p) % p;
            let shift = d0 - d1;
            if r0.len() < r1.len() + shift {
                r0.resize(r1.len() + shift, 0);
            }
            if s0.len() < s1.len() + shift {
                s0.resize(s1.len() + shift, 0);
            }
            for (j, &c) in r1.iter().enumerate() {
                r0[j + shift] = (r0[j + shift] + (p - f * c % p)) % p;
            }
            for (j, &c) in s1.iter().enumerate() {
                s0[j + shift] = (s0[j + shift] + (p - f * c % p)) % p;
            }
        }
    }
}

/// An element of a [`FiniteField`].
#[derive(Clone)]
pub struct FieldElement {
    field: FiniteField,
    c: Vec<u64>,
}

impl FieldElement {
    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    /// Little-endian coordinates over the prime field.
    pub fn coords(&self) -> &[u64] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&v| v == 0)
    }

    pub fn checked_add(&self, rhs: &FieldElement) -> Result<FieldElement, GaloisError> {
        if self.field != rhs.field {
            return Err(GaloisError::FieldMismatch);
        }
        Ok(FieldElement { field: self.field.clone(), c: self.field.add_raw(&self.c, &rhs.c) })
    }

    pub fn checked_sub(&self, rhs: &FieldElement) -> Result<FieldElement, GaloisError> {
        if self.field != rhs.field {
            return Err(GaloisError::FieldMismatch);
        }
        Ok(FieldElement { field: self.field.clone(), c: self.field.sub_raw(&self.c, &rhs.c) })
    }

    pub fn checked_mul(&self, rhs: &FieldElement) -> Result<FieldElement, GaloisError> {
        if self.field != rhs.field {
            return Err(GaloisError::FieldMismatch);
        }
        Ok(FieldElement { field: self.field.clone(), c: self.field.mul_raw(&self.c, &rhs.c) })
    }

    pub fn checked_div(&self, rhs: &FieldElement) -> Result<FieldElement, GaloisError> {
        self.checked_mul(&rhs.inv()?)
    }

    pub fn inv(&self) -> Result<FieldElement, GaloisError> {
        Ok(FieldElement { field: self.field.clone(), c: self.field.inv_raw(&self.c)? })
    }

    pub fn pow_u64(&self, mut e: u64) -> FieldElement {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<FieldElement, GaloisError> {
        if e >= 0 {
            Ok(self.pow_u64(e as u64))
        } else {
            Ok(self.inv()?.pow_u64(e.unsigned_abs()))
        }
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.c == other.c
    }
}

impl Eq for FieldElement {}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = (self.field.0.p, self.field.0.a, &self.field.0.modulus);
        let rhs = (other.field.0.p, other.field.0.a, &other.field.0.modulus);
        lhs.cmp(&rhs).then_with(|| self.c.cmp(&other.c))
    }
}

impl std::hash::Hash for FieldElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.0.p.hash(state);
        self.field.0.a.hash(state);
        self.c.hash(state);
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.c.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(":"))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {:?}", self, self.field)
    }
}

macro_rules! bin_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).expect("field mismatch")
            }
        }
    };
}

bin_op!(Add, add, checked_add);
bin_op!(Sub, sub, checked_sub);
bin_op!(Mul, mul, checked_mul);

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { field: self.field.clone(), c: self.field.neg_raw(&self.c) }
    }
}

/// Lexicographically least monic irreducible of degree `a` over `GF(p)`.
fn canonical_modulus(p: u64, a: usize) -> Result<Vec<u64>, GaloisError> {
    if a == 1 {
        return Ok(vec![0, 1]);
    }
    let prime = FiniteField::prime_unchecked(p);
    let total = (p as u128).checked_pow(a as u32).ok_or(GaloisError::FieldTooLarge)?;
    // the scan is lexicographic on (c_0, .., c_(a-1)), so c_(a-1) is the
    // fastest-moving digit
    let mut idx: u128 = 0;
    while idx < total {
        let mut lex = vec![0u64; a + 1];
        lex[a] = 1;
        let mut rest = idx;
        for j in (0..a).rev() {
            lex[j] = (rest % p as u128) as u64;
            rest /= p as u128;
        }
        let cand = DensePoly::from_prime_coords(&prime, &lex);
        if cand.is_irreducible()? {
            return Ok(lex);
        }
        idx += 1;
    }
    Err(GaloisError::FieldTooLarge)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_moduli_are_the_expected_ones() {
        let gf4 = FiniteField::new(2, 2, None).unwrap();
        assert_eq!(gf4.modulus(), &[1, 1, 1]); // t^2 + t + 1
        let gf49 = FiniteField::new(7, 2, None).unwrap();
        assert_eq!(gf49.modulus(), &[1, 0, 1]); // t^2 + 1
        let gf8 = FiniteField::new(2, 3, None).unwrap();
        assert_eq!(gf8.modulus(), &[1, 0, 1, 1]); // t^3 + t^2 + 1
    }

    #[test]
    fn rejects_bad_fields() {
        assert_eq!(FiniteField::new(4, 2, None).unwrap_err(), GaloisError::NonPrimeChar(4));
        assert_eq!(FiniteField::new(1, 2, None).unwrap_err(), GaloisError::NonPrimeChar(1));
        // (t + 1)^2 = t^2 + 2t + 1 over GF(7)
        assert_eq!(
            FiniteField::new(7, 2, Some(&[1, 2, 1])).unwrap_err(),
            GaloisError::ReducibleModulus { p: 7 }
        );
        assert!(FiniteField::new(7, 2, Some(&[1, 0, 1])).is_ok());
    }

    #[test]
    fn field_axioms_gf49_exhaustive() {
        let k = FiniteField::new(7, 2, None).unwrap();
        let elems: Vec<_> = k.elements().collect();
        assert_eq!(elems.len(), 49);
        for x in &elems {
            assert_eq!(&(x + &k.zero()), x);
            assert_eq!(&(x * &k.one()), x);
            assert!((x - x).is_zero());
            if !x.is_zero() {
                assert_eq!(x * &x.inv().unwrap(), k.one());
            }
        }
        // spot-check distributivity on a grid
        for x in elems.iter().step_by(5) {
            for y in elems.iter().step_by(7) {
                for z in elems.iter().step_by(11) {
                    let lhs = x * &(y + z);
                    let rhs = &(x * y) + &(x * z);
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn generator_satisfies_modulus_gf49() {
        let k = FiniteField::new(7, 2, None).unwrap();
        let i = k.gen();
        // t^2 + 1 = 0  =>  i^2 = -1
        assert_eq!(&(&i * &i) + &k.one(), k.zero());
    }

    #[test]
    fn canonical_order_is_lex_on_coords() {
        let k = FiniteField::new(7, 2, None).unwrap();
        let a = k.elt(&[0, 1]).unwrap();
        let b = k.elt(&[1, 0]).unwrap();
        assert!(a < b);
        assert_eq!(k.position(&a), 1);
        assert_eq!(k.position(&b), 7);
        for idx in 0..49 {
            assert_eq!(k.position(&k.elt_at(idx)), idx);
        }
        let mut sorted: Vec<_> = k.elements().collect();
        sorted.sort();
        assert_eq!(sorted, k.elements().collect::<Vec<_>>());
    }

    #[test]
    fn embedding_is_a_ring_homomorphism() {
        let k = FiniteField::new(2, 2, None).unwrap();
        let e = k.extension(2).unwrap();
        assert_eq!(e.order(), 16);
        assert_eq!(e.parent(), Some(&k));
        for x in k.elements() {
            for y in k.elements() {
                let lhs = e.embed_up(&(&x * &y)).unwrap();
                let rhs = &e.embed_up(&x).unwrap() * &e.embed_up(&y).unwrap();
                assert_eq!(lhs, rhs);
                let lhs = e.embed_up(&(&x + &y)).unwrap();
                let rhs = &e.embed_up(&x).unwrap() + &e.embed_up(&y).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
        assert_eq!(e.embed_up(&k.one()).unwrap(), e.one());
    }

    #[test]
    fn coords_over_parent_round_trip() {
        let k = FiniteField::new(7, 2, None).unwrap();
        let e = k.extension(3).unwrap();
        let theta = e.gen();
        for idx in [0u64, 1, 5, 48, 100, 117_648] {
            let v = e.elt_at(idx % e.order());
            let w = e.coords_over_parent(&v).unwrap();
            assert_eq!(w.len(), 3);
            let mut acc = e.zero();
            let mut pow = e.one();
            for c in &w {
                acc = &acc + &(&e.embed_up(c).unwrap() * &pow);
                pow = &pow * &theta;
            }
            assert_eq!(acc, v);
        }
    }

    #[test]
    fn power_map_matrix_matches_pow() {
        let k = FiniteField::new(7, 2, None).unwrap();
        let e = k.extension(2).unwrap();
        let m = e.power_map_matrix(49);
        for idx in 0..200 {
            let v = e.elt_at(idx * 11 % e.order());
            assert_eq!(e.apply_matrix(&m, &v), v.pow_u64(49));
        }
    }
}
