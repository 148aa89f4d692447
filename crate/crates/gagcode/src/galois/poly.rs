//! Dense univariate polynomials over a [`FiniteField`].
//!
//! Factorization is squarefree decomposition, then distinct-degree splitting,
//! then equal-degree splitting with a fixed-seed generator, so the factor
//! list (sorted canonically) is identical across runs.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{FieldElement, FiniteField};
use super::GaloisError;

/// Coefficients are stored constant-first with no trailing zeros; the zero
/// polynomial has no coefficients at all.
#[derive(Clone)]
pub struct DensePoly {
    field: FiniteField,
    c: Vec<FieldElement>,
}

impl DensePoly {
    pub fn new(field: &FiniteField, coeffs: Vec<FieldElement>) -> Result<Self, GaloisError> {
        if coeffs.iter().any(|e| e.field() != field) {
            return Err(GaloisError::FieldMismatch);
        }
        Ok(Self { field: field.clone(), c: coeffs }.trimmed())
    }

    /// Polynomial with prime-subfield coefficients given as integers.
    pub fn from_prime_coords(field: &FiniteField, coeffs: &[u64]) -> Self {
        let c = coeffs.iter().map(|&v| field.scalar(v)).collect();
        Self { field: field.clone(), c }.trimmed()
    }

    pub fn zero(field: &FiniteField) -> Self {
        Self { field: field.clone(), c: Vec::new() }
    }

    pub fn one(field: &FiniteField) -> Self {
        Self::constant(field.one())
    }

    pub fn constant(e: FieldElement) -> Self {
        let field = e.field().clone();
        Self { field, c: vec![e] }.trimmed()
    }

    /// The monomial `t`.
    pub fn x(field: &FiniteField) -> Self {
        Self { field: field.clone(), c: vec![field.zero(), field.one()] }
    }

    pub fn monomial(e: FieldElement, deg: usize) -> Self {
        let field = e.field().clone();
        let mut c = vec![field.zero(); deg + 1];
        c[deg] = e;
        Self { field, c }.trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.c.last().is_some_and(FieldElement::is_zero) {
            self.c.pop();
        }
        self
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.c.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.c.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|l| *l == self.field.one())
    }

    pub fn make_monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.mul_scalar(&l.inv().expect("leading coefficient is nonzero")),
        }
    }

    pub fn mul_scalar(&self, s: &FieldElement) -> Self {
        let c = self.c.iter().map(|e| e * s).collect();
        Self { field: self.field.clone(), c }.trimmed()
    }

    /// Lifts the coefficients into an extension field of the same tower.
    pub fn embedded(&self, target: &FiniteField) -> Result<Self, GaloisError> {
        let c = self.c.iter().map(|e| target.embed_up(e)).collect::<Result<_, _>>()?;
        Ok(Self { field: target.clone(), c })
    }

    /// Horner evaluation; `t` may live in an extension of the coefficient
    /// field, in which case the coefficients are embedded up first.
    pub fn eval(&self, t: &FieldElement) -> Result<FieldElement, GaloisError> {
        let poly;
        let me = if t.field() == &self.field {
            self
        } else {
            poly = self.embedded(t.field())?;
            &poly
        };
        let mut acc = t.field().zero();
        for c in me.c.iter().rev() {
            acc = &(&acc * t) + c;
        }
        Ok(acc)
    }

    pub fn derivative(&self) -> Self {
        let p = self.field.characteristic();
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, e)| e * &self.field.scalar(i as u64 % p))
            .collect();
        Self { field: self.field.clone(), c }.trimmed()
    }

    /// Quotient and remainder; errors on a zero divisor.
    pub fn divrem(&self, div: &Self) -> Result<(Self, Self), GaloisError> {
        assert!(self.field == div.field, "field mismatch");
        let Some(dd) = div.degree() else {
            return Err(GaloisError::DivisionByZero);
        };
        let Some(nd) = self.degree() else {
            return Ok((Self::zero(&self.field), Self::zero(&self.field)));
        };
        if nd < dd {
            return Ok((Self::zero(&self.field), self.clone()));
        }
        let lead_inv = div.c[dd].inv()?;
        let mut rem = self.c.clone();
        let mut quot = vec![self.field.zero(); nd - dd + 1];
        for i in (dd..=nd).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let f = &rem[i] * &lead_inv;
            for j in 0..dd {
                rem[i - dd + j] = &rem[i - dd + j] - &(&f * &div.c[j]);
            }
            rem[i] = self.field.zero();
            quot[i - dd] = f;
        }
        let q = Self { field: self.field.clone(), c: quot }.trimmed();
        let r = Self { field: self.field.clone(), c: rem }.trimmed();
        Ok((q, r))
    }

    pub fn rem(&self, div: &Self) -> Result<Self, GaloisError> {
        Ok(self.divrem(div)?.1)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.make_monic()
    }

    /// `self^e mod m` by square and multiply.
    pub fn pow_mod(&self, mut e: u64, m: &Self) -> Result<Self, GaloisError> {
        let mut base = self.rem(m)?;
        let mut acc = Self::one(&self.field).rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &base).rem(m)?;
            }
            base = (&base * &base).rem(m)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Distinct-degree early-exit test: `self` is irreducible iff no factor
    /// of degree up to `deg/2` divides it.
    pub fn is_irreducible(&self) -> Result<bool, GaloisError> {
        let Some(n) = self.degree() else {
            return Ok(false);
        };
        if n == 0 {
            return Ok(false);
        }
        if n == 1 {
            return Ok(true);
        }
        if self.c[0].is_zero() {
            return Ok(false); // divisible by t
        }
        let f = self.make_monic();
        let q = self.field.order();
        let x = Self::x(&self.field);
        let mut h = x.rem(&f)?;
        for _ in 0..n / 2 {
            h = h.pow_mod(q, &f)?;
            let g = (&h - &x).gcd(&f);
            if g.degree() != Some(0) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Monic irreducible factors with multiplicities, sorted canonically.
    /// The leading coefficient of `self` is not part of the output.
    pub fn factor(&self) -> Result<Vec<(DensePoly, u32)>, GaloisError> {
        if self.is_zero() {
            return Err(GaloisError::ZeroPolynomial);
        }
        let monic = self.make_monic();
        if monic.degree() == Some(0) {
            return Ok(Vec::new());
        }
        let mut out: BTreeMap<DensePoly, u32> = BTreeMap::new();
        for (part, mult) in squarefree_parts(&monic)? {
            for (prod, d) in distinct_degree_parts(&part)? {
                for irr in equal_degree_split(&prod, d)? {
                    *out.entry(irr).or_insert(0) += mult;
                }
            }
        }
        Ok(out.into_iter().collect())
    }

    /// Distinct roots in the coefficient field, sorted canonically.
    pub fn roots(&self) -> Result<Vec<FieldElement>, GaloisError> {
        let mut out: Vec<FieldElement> = self
            .factor()?
            .into_iter()
            .filter(|(f, _)| f.degree() == Some(1))
            .map(|(f, _)| -&f.coeff(0))
            .collect();
        out.sort();
        Ok(out)
    }
}

/// Squarefree decomposition of a monic polynomial: pairwise coprime
/// squarefree parts with their multiplicities.
fn squarefree_parts(f: &DensePoly) -> Result<Vec<(DensePoly, u32)>, GaloisError> {
    let field = f.field().clone();
    let p = field.characteristic();
    let mut out = Vec::new();
    let fp = f.derivative();
    if fp.is_zero() {
        for (g, m) in squarefree_parts(&pth_root(f))? {
            out.push((g, m * p as u32));
        }
        return Ok(out);
    }
    let mut c = f.gcd(&fp);
    let mut w = f.divrem(&c)?.0;
    let mut i = 1u32;
    while w.degree() != Some(0) {
        let y = w.gcd(&c);
        let z = w.divrem(&y)?.0;
        if z.degree().is_some_and(|d| d > 0) {
            out.push((z, i));
        }
        c = c.divrem(&y)?.0;
        w = y;
        i += 1;
    }
    if c.degree().is_some_and(|d| d > 0) {
        for (g, m) in squarefree_parts(&pth_root(&c))? {
            out.push((g, m * p as u32));
        }
    }
    Ok(out)
}

/// `g` with `g^p = f`, valid when `f' = 0` (only exponents divisible by `p`).
fn pth_root(f: &DensePoly) -> DensePoly {
    let field = f.field().clone();
    let p = field.characteristic() as usize;
    let root_exp = field.order() / field.characteristic();
    let deg = f.degree().expect("nonzero");
    let mut c = Vec::with_capacity(deg / p + 1);
    for j in 0..=deg / p {
        c.push(f.coeff(j * p).pow_u64(root_exp));
    }
    debug_assert!((0..=deg).filter(|i| i % p != 0).all(|i| f.coeff(i).is_zero()));
    DensePoly::new(&field, c).expect("same field")
}

/// Splits a monic squarefree polynomial into products of irreducibles of a
/// common degree, returned as `(product, degree)` pairs.
fn distinct_degree_parts(f: &DensePoly) -> Result<Vec<(DensePoly, usize)>, GaloisError> {
    let field = f.field().clone();
    let q = field.order();
    let x = DensePoly::x(&field);
    let mut out = Vec::new();
    let mut v = f.clone();
    let mut h = x.rem(&v)?;
    let mut d = 0;
    while v.degree().is_some_and(|dv| dv >= 2 * (d + 1)) {
        d += 1;
        h = h.pow_mod(q, &v)?;
        let g = (&h - &x.rem(&v)?).gcd(&v);
        if g.degree().is_some_and(|dg| dg > 0) {
            out.push((g.clone(), d));
            v = v.divrem(&g)?.0;
            h = h.rem(&v)?;
        }
    }
    if v.degree().is_some_and(|dv| dv > 0) {
        let dv = v.degree().expect("nonzero");
        out.push((v, dv));
    }
    Ok(out)
}

/// Cantor–Zassenhaus split of a product of distinct irreducibles of degree
/// `d` into the irreducibles themselves.
fn equal_degree_split(f: &DensePoly, d: usize) -> Result<Vec<DensePoly>, GaloisError> {
    let n = f.degree().expect("nonzero");
    if n == d {
        return Ok(vec![f.clone()]);
    }
    let field = f.field().clone();
    let q = field.order();
    let mut rng = ChaCha8Rng::seed_from_u64(0x6a67_636f_6465 ^ ((n as u64) << 8) ^ d as u64);
    for _ in 0..4096 {
        let u = random_poly(&mut rng, &field, n);
        let t = if field.characteristic() == 2 {
            // trace to GF(2) of the splitting field GF(2^(a*d))
            let mut acc = u.rem(f)?;
            let mut cur = acc.clone();
            for _ in 1..field.degree() * d {
                cur = cur.pow_mod(2, f)?;
                acc = &acc + &cur;
            }
            acc
        } else {
            // u^((q^d - 1)/2) as norm(u)^((q - 1)/2) to keep exponents in u64
            let mut w = u.rem(f)?;
            let mut acc = w.clone();
            for _ in 1..d {
                w = w.pow_mod(q, f)?;
                acc = (&acc * &w).rem(f)?;
            }
            let acc = acc.pow_mod((q - 1) / 2, f)?;
            &acc - &DensePoly::one(&field)
        };
        let g = t.gcd(f);
        if g.degree().is_some_and(|dg| dg > 0 && dg < n) {
            let rest = f.divrem(&g)?.0;
            let mut out = equal_degree_split(&g, d)?;
            out.extend(equal_degree_split(&rest, d)?);
            return Ok(out);
        }
    }
    unreachable!("equal-degree split failed to converge");
}

fn random_poly(rng: &mut ChaCha8Rng, field: &FiniteField, deg_bound: usize) -> DensePoly {
    let order = field.order();
    let c = (0..deg_bound).map(|_| field.elt_at(rng.next_u64() % order)).collect();
    DensePoly::new(field, c).expect("same field")
}

impl PartialEq for DensePoly {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.c == other.c
    }
}

impl Eq for DensePoly {}

impl PartialOrd for DensePoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DensePoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.c.len().cmp(&other.c.len()).then_with(|| self.c.cmp(&other.c))
    }
}

impl std::ops::Add<&DensePoly> for &DensePoly {
    type Output = DensePoly;
    fn add(self, rhs: &DensePoly) -> DensePoly {
        assert!(self.field == rhs.field, "field mismatch");
        let n = self.c.len().max(rhs.c.len());
        let c = (0..n)
            .map(|i| match (self.c.get(i), rhs.c.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        DensePoly { field: self.field.clone(), c }.trimmed()
    }
}

impl std::ops::Sub<&DensePoly> for &DensePoly {
    type Output = DensePoly;
    fn sub(self, rhs: &DensePoly) -> DensePoly {
        self + &(-rhs)
    }
}

impl std::ops::Neg for &DensePoly {
    type Output = DensePoly;
    fn neg(self) -> DensePoly {
        let c = self.c.iter().map(|e| -e).collect();
        DensePoly { field: self.field.clone(), c }
    }
}

impl std::ops::Mul<&DensePoly> for &DensePoly {
    type Output = DensePoly;
    fn mul(self, rhs: &DensePoly) -> DensePoly {
        assert!(self.field == rhs.field, "field mismatch");
        if self.is_zero() || rhs.is_zero() {
            return DensePoly::zero(&self.field);
        }
        let mut c = vec![self.field.zero(); self.c.len() + rhs.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        DensePoly { field: self.field.clone(), c }.trimmed()
    }
}

impl fmt::Display for DensePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, e) in self.c.iter().enumerate().rev() {
            if e.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({e})")?,
                1 => write!(f, "({e})*t")?,
                _ => write!(f, "({e})*t^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for DensePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {:?}", self, self.field)
    }
}
