//! Finite fields, dense polynomials, and linearized (additive) polynomials.
//!
//! Fields are explicit extensions of a prime field: `GF(p^a)` is represented
//! as `GF(p)[t] / (modulus)` with a canonical modulus (the lexicographically
//! least monic irreducible of the right degree) unless the caller supplies
//! one. Towers `GF(p^a) -> GF(p^(a*k))` carry an explicit embedding computed
//! once from a canonical root of the base modulus, so results are identical
//! across runs and platforms.

mod field;
mod linalg;
mod linearized;
mod poly;

pub use field::{FieldElement, FiniteField};
pub use linearized::{LinSolver, LinearizedPoly};
pub use poly::DensePoly;

pub(crate) use linalg::GfpMat;

use thiserror::Error;

/// Errors raised by field, polynomial, and linearized-polynomial operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GaloisError {
    #[error("characteristic {0} is not prime")]
    NonPrimeChar(u64),
    #[error("field order p^a does not fit the supported range")]
    FieldTooLarge,
    #[error("modulus must be a monic polynomial of degree {expected}")]
    BadModulusDegree { expected: usize },
    #[error("modulus is reducible over GF({p})")]
    ReducibleModulus { p: u64 },
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("coordinate vector has length {got}, expected at most {expected}")]
    BadCoordinates { expected: usize, got: usize },
    #[error("element does not lie in the requested subfield")]
    NotInSubfield,
    #[error("field has no parent in the extension tower")]
    NoParent,
    #[error("the zero polynomial cannot be factored")]
    ZeroPolynomial,
    #[error("{0} is not a power of the field characteristic")]
    NotAPowerOfChar(u64),
    #[error("linearized polynomial needs nonzero lowest and highest coefficients")]
    BadLinearized,
    #[error("intermediate exponent overflows 64 bits")]
    ExponentOverflow,
}

/// Builds `GF(p^a)`. With `modulus = None` the canonical modulus is used; a
/// caller-supplied modulus must be monic, irreducible of degree `a`, given as
/// coefficients over `GF(p)` with the constant term first.
pub fn field_make(p: u64, a: usize, modulus: Option<&[u64]>) -> Result<FiniteField, GaloisError> {
    FiniteField::new(p, a, modulus)
}

/// Factors `f` into monic irreducibles with multiplicities, sorted
/// canonically. The leading coefficient is dropped; recover it from
/// [`DensePoly::leading`].
pub fn poly_factor(f: &DensePoly) -> Result<Vec<(DensePoly, u32)>, GaloisError> {
    f.factor()
}

/// Evaluates a linearized polynomial at `t`, which may live in any extension
/// of the coefficient field within one tower.
pub fn lin_eval(l: &LinearizedPoly, t: &FieldElement) -> Result<FieldElement, GaloisError> {
    l.eval(t)
}

/// All roots of `L` inside `field`, sorted canonically.
pub fn lin_kernel(l: &LinearizedPoly, field: &FiniteField) -> Result<Vec<FieldElement>, GaloisError> {
    l.kernel(field)
}

/// All solutions of `L(x) = c` inside `field`, sorted canonically; `c` may
/// live in a subfield of `field` within one tower. Empty when `c` is not in
/// the image.
pub fn lin_solve(
    l: &LinearizedPoly,
    c: &FieldElement,
    field: &FiniteField,
) -> Result<Vec<FieldElement>, GaloisError> {
    l.solve(&field.embed_up(c)?)
}
