//! Linearized (additive) polynomials `L(t) = a_0 t + a_1 t^q + .. + a_r t^(q^r)`.
//!
//! Such an `L` is `GF(q)`-linear on any extension of its coefficient field,
//! so kernels and solution sets of `L(x) = c` are computed through prime
//! field linear algebra: fibers are exact lists, never approximations.

use super::field::{FieldElement, FiniteField};
use super::linalg::{GfpMat, RrefSolver};
use super::poly::DensePoly;
use super::GaloisError;

#[derive(Clone, Debug)]
pub struct LinearizedPoly {
    q: u64,
    c: Vec<FieldElement>,
}

impl LinearizedPoly {
    /// `coeffs` lists `a_0, .., a_r`; requires `q` a power of the field
    /// characteristic with `GF(q)` inside the coefficient field, and nonzero
    /// first and last coefficients.
    pub fn new(q: u64, coeffs: Vec<FieldElement>) -> Result<Self, GaloisError> {
        let Some(first) = coeffs.first() else {
            return Err(GaloisError::BadLinearized);
        };
        let field = first.field().clone();
        if coeffs.iter().any(|e| e.field() != &field) {
            return Err(GaloisError::FieldMismatch);
        }
        let w = power_of_char(q, field.characteristic())?;
        if field.degree() % w != 0 {
            return Err(GaloisError::NotInSubfield);
        }
        if first.is_zero() || coeffs.last().is_some_and(FieldElement::is_zero) {
            return Err(GaloisError::BadLinearized);
        }
        Ok(LinearizedPoly { q, c: coeffs })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// The twist degree `r`; the polynomial degree is `q^r`.
    pub fn r(&self) -> usize {
        self.c.len() - 1
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.c
    }

    pub fn field(&self) -> &FiniteField {
        self.c[0].field()
    }

    /// `q^r`, the number of roots when the kernel is fully rational.
    pub fn separable_degree(&self) -> Result<u64, GaloisError> {
        self.q.checked_pow(self.r() as u32).ok_or(GaloisError::ExponentOverflow)
    }

    /// Evaluates at `t`, embedding the coefficients into the field of `t`
    /// (which must be an extension of the coefficient field in one tower).
    pub fn eval(&self, t: &FieldElement) -> Result<FieldElement, GaloisError> {
        let target = t.field();
        let mut acc = target.zero();
        let mut exp = 1u64;
        for (i, a) in self.c.iter().enumerate() {
            if i > 0 {
                exp = exp.checked_mul(self.q).ok_or(GaloisError::ExponentOverflow)?;
            }
            let a_up = target.embed_up(a)?;
            acc = &acc + &(&a_up * &t.pow_u64(exp));
        }
        Ok(acc)
    }

    /// The same polynomial written densely, `sum a_i t^(q^i)`.
    pub fn as_dense(&self) -> Result<DensePoly, GaloisError> {
        let field = self.field().clone();
        let top = self.separable_degree()?;
        usize::try_from(top).map_err(|_| GaloisError::ExponentOverflow)?;
        let mut out = DensePoly::zero(&field);
        let mut exp = 1usize;
        for (i, a) in self.c.iter().enumerate() {
            if i > 0 {
                exp *= self.q as usize;
            }
            out = &out + &DensePoly::monomial(a.clone(), exp);
        }
        Ok(out)
    }

    /// All roots in `field`, sorted canonically.
    pub fn kernel(&self, field: &FiniteField) -> Result<Vec<FieldElement>, GaloisError> {
        Ok(LinSolver::new(self, field)?.kernel().to_vec())
    }

    /// All solutions of `L(x) = c` in the field of `c`, sorted canonically.
    pub fn solve(&self, c: &FieldElement) -> Result<Vec<FieldElement>, GaloisError> {
        LinSolver::new(self, c.field())?.solve(c)
    }
}

fn power_of_char(q: u64, p: u64) -> Result<usize, GaloisError> {
    let mut rest = q;
    let mut w = 0usize;
    while rest > 1 && rest % p == 0 {
        rest /= p;
        w += 1;
    }
    if rest != 1 || w == 0 {
        return Err(GaloisError::NotAPowerOfChar(q));
    }
    Ok(w)
}

/// Precomputed linear-algebra view of one linearized polynomial on one field:
/// the matrix of `L` over the prime field together with the full (finite)
/// list of kernel elements, for repeated fiber computations.
pub struct LinSolver {
    field: FiniteField,
    solver: RrefSolver,
    kernel: Vec<FieldElement>,
}

impl LinSolver {
    pub fn new(l: &LinearizedPoly, field: &FiniteField) -> Result<Self, GaloisError> {
        let w = power_of_char(l.q(), field.characteristic())?;
        if field.degree() % w != 0 {
            return Err(GaloisError::NotInSubfield);
        }
        let coeffs: Vec<FieldElement> =
            l.coeffs().iter().map(|a| field.embed_up(a)).collect::<Result<_, _>>()?;
        let mut exps = Vec::with_capacity(coeffs.len());
        let mut e = 1u64;
        for i in 0..coeffs.len() {
            if i > 0 {
                e = e.checked_mul(l.q()).ok_or(GaloisError::ExponentOverflow)?;
            }
            exps.push(e);
        }
        let dim = field.degree();
        let theta = field.gen();
        let mut cols = Vec::with_capacity(dim);
        let mut basis_elt = field.one();
        for i in 0..dim {
            if i > 0 {
                basis_elt = &basis_elt * &theta;
            }
            let mut val = field.zero();
            for (a, &exp) in coeffs.iter().zip(&exps) {
                val = &val + &(a * &basis_elt.pow_u64(exp));
            }
            cols.push(val.coords().to_vec());
        }
        let p = field.characteristic();
        let solver = RrefSolver::new(GfpMat::from_columns(p, dim, &cols));
        let basis = solver.kernel_basis();
        let combos = p.pow(basis.len() as u32);
        let mut kernel = Vec::with_capacity(combos as usize);
        for idx in 0..combos {
            let mut coords = vec![0u64; dim];
            let mut rest = idx;
            for b in &basis {
                let digit = rest % p;
                rest /= p;
                if digit != 0 {
                    for (c, &bv) in coords.iter_mut().zip(b) {
                        *c = (*c + digit * bv) % p;
                    }
                }
            }
            kernel.push(field.elt(&coords)?);
        }
        kernel.sort();
        Ok(LinSolver { field: field.clone(), solver, kernel })
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    /// Roots of `L` in this field, sorted canonically.
    pub fn kernel(&self) -> &[FieldElement] {
        &self.kernel
    }

    /// The full fiber over `c`, sorted; empty when `c` has no preimage.
    pub fn solve(&self, c: &FieldElement) -> Result<Vec<FieldElement>, GaloisError> {
        if c.field() != &self.field {
            return Err(GaloisError::FieldMismatch);
        }
        let Some(x) = self.solver.solve(c.coords()) else {
            return Ok(Vec::new());
        };
        let part = self.field.elt(&x)?;
        let mut out: Vec<FieldElement> = self.kernel.iter().map(|k| k + &part).collect();
        out.sort();
        Ok(out)
    }
}
