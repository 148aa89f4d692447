//! Function fields `F = K(x, y)` cut out by `L(y) = f(x)/g(x)` with `L`
//! linearized.
//!
//! A descriptor is built from the base parameters `(q, n)`, the coefficients
//! of `L(t) = sum a_i t^(q^i)`, and the factored numerator and denominator of
//! the right-hand side. The denominator factors `p_i` sit under totally
//! ramified places `Q_i`, the pole of `x` sits under `Q_infinity`, and each
//! numerator factor `q_j` carries a distinguished zero `R_j` of `y`. All
//! divisor and dimension computations in the rest of the crate reduce to
//! integer arithmetic against this descriptor.

use std::sync::{Arc, OnceLock};

use serde::Serialize;
use thiserror::Error;

use crate::galois::{
    DensePoly, FieldElement, FiniteField, GaloisError, GfpMat, LinSolver, LinearizedPoly,
};

/// Deepest constant-field extension the descriptor will materialize.
pub const MAX_TOWER: usize = 4;

#[derive(Debug, Error)]
pub enum CurveError {
    #[error(transparent)]
    Galois(#[from] GaloisError),
    #[error("q must be a power of a prime")]
    BadQ,
    #[error("a factor polynomial is zero or constant")]
    BadFactor,
    #[error("factor multiplicities must be positive")]
    ZeroMultiplicity,
    #[error("descriptor has no factor with index {0}")]
    FactorIndex(usize),
    #[error("monomial exponent vector has length {got}, expected {expected}")]
    ExponentLength { expected: usize, got: usize },
    #[error("y-exponent {got} exceeds the bound q^r - 1 = {max}")]
    YExponent { got: u64, max: u64 },
    #[error("constant-field extensions are materialized only up to degree {0}")]
    TowerTooDeep(usize),
    #[error("genus did not stabilize below the probe bound {0}")]
    GenusNonConvergence(i64),
}

/// One named invariant check with its outcome.
#[derive(Clone, Debug, Serialize)]
pub struct ValidationCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Outcome of [`LinearizedFF::validate`]: every invariant with a verdict.
#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<ValidationCheck>,
}

impl ValidationReport {
    /// True when every check passed.
    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Names of the failed checks.
    pub fn failures(&self) -> Vec<&'static str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect()
    }
}

/// Monomial `y^k * x^(e_inf) * prod_i p_i(x)^(e_i)` in the function field.
///
/// The exponent vector `e` is indexed like the denominator factors of the
/// owning descriptor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FFMonomial {
    pub k: u64,
    pub e_inf: i64,
    pub e: Vec<i64>,
}

/// Places singled out by the defining equation: the ramified place over
/// `p_i`, the pole of `x`, and the distinguished zero of `y` over `q_j`.
///
/// Indices are zero-based into the descriptor's factor lists.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistinguishedPlace {
    Qi(usize),
    Qinf,
    Rj(usize),
}

/// Constant-field extension `K_m` of the descriptor, with the data every
/// caller working over `K_m` needs: the Frobenius `x -> x^|K|` as a matrix,
/// a solver for `L` over `K_m`, and the factor polynomials lifted to `K_m`.
pub(crate) struct Tower {
    pub field: FiniteField,
    pub frob: GfpMat,
    pub solver: LinSolver,
    pub num: Vec<(DensePoly, u32)>,
    pub den: Vec<(DensePoly, u32)>,
}

impl Tower {
    /// `f(alpha) / g(alpha)` for `alpha` in this tower's field.
    ///
    /// Returns `None` when `g(alpha) = 0`.
    pub fn h_eval(&self, alpha: &FieldElement) -> Result<Option<FieldElement>, GaloisError> {
        let mut den = self.field.one();
        for (p, mult) in &self.den {
            let v = p.eval(alpha)?;
            if v.is_zero() {
                return Ok(None);
            }
            den = &den * &v.pow_u64(u64::from(*mult));
        }
        let mut num = self.field.one();
        for (q, mult) in &self.num {
            num = &num * &q.eval(alpha)?.pow_u64(u64::from(*mult));
        }
        Ok(Some(num.checked_div(&den)?))
    }

    /// Image of `e` under `x -> x^|K|`.
    pub fn frobenius(&self, e: &FieldElement) -> FieldElement {
        self.field.apply_matrix(&self.frob, e)
    }
}

/// Descriptor of the function field `K(x, y)` with `L(y) = f(x)/g(x)`.
pub struct LinearizedFF {
    k: FiniteField,
    q: u64,
    n: usize,
    l: LinearizedPoly,
    num: Vec<(DensePoly, u32)>,
    den: Vec<(DensePoly, u32)>,
    deg_f: i64,
    deg_g: i64,
    qr: i64,
    towers: [OnceLock<Arc<Tower>>; MAX_TOWER],
}

fn prime_power(q: u64) -> Option<(u64, usize)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            let mut rest = q;
            let mut w = 0;
            while rest % p == 0 {
                rest /= p;
                w += 1;
            }
            return (rest == 1).then_some((p, w));
        }
        p += 1;
    }
    Some((q, 1))
}

fn build_factors(
    k: &FiniteField,
    spec: &[(Vec<Vec<u64>>, u32)],
) -> Result<Vec<(DensePoly, u32)>, CurveError> {
    spec.iter()
        .map(|(coeffs, mult)| {
            if *mult == 0 {
                return Err(CurveError::ZeroMultiplicity);
            }
            let elems = coeffs.iter().map(|c| k.elt(c)).collect::<Result<Vec<_>, _>>()?;
            let poly = DensePoly::new(k, elems)?;
            if poly.degree().unwrap_or(0) == 0 {
                return Err(CurveError::BadFactor);
            }
            Ok((poly, *mult))
        })
        .collect()
}

fn factored_degree(factors: &[(DensePoly, u32)]) -> i64 {
    factors
        .iter()
        .map(|(p, m)| p.degree().unwrap_or(0) as i64 * i64::from(*m))
        .sum()
}

impl LinearizedFF {
    /// Builds the descriptor over `K = GF(q^n)`.
    ///
    /// Coefficients and factor polynomials are given as little-endian
    /// coordinate vectors over `K`. `l_coeffs[i]` multiplies `t^(q^i)`;
    /// factors come as `(coefficient list, multiplicity)` pairs, numerator
    /// first. Only structural problems are rejected here; the arithmetic
    /// hypotheses are the business of [`LinearizedFF::validate`].
    pub fn new(
        q: u64,
        n: usize,
        l_coeffs: &[Vec<u64>],
        f_factors: &[(Vec<Vec<u64>>, u32)],
        g_factors: &[(Vec<Vec<u64>>, u32)],
    ) -> Result<Self, CurveError> {
        let (p, w) = prime_power(q).ok_or(CurveError::BadQ)?;
        if n == 0 {
            return Err(CurveError::BadQ);
        }
        let k = FiniteField::new(p, w * n, None)?;
        let coeffs = l_coeffs.iter().map(|c| k.elt(c)).collect::<Result<Vec<_>, _>>()?;
        let l = LinearizedPoly::new(q, coeffs)?;
        let num = build_factors(&k, f_factors)?;
        let den = build_factors(&k, g_factors)?;
        let qr = i64::try_from(l.separable_degree()?).map_err(|_| GaloisError::ExponentOverflow)?;
        let (deg_f, deg_g) = (factored_degree(&num), factored_degree(&den));
        Ok(LinearizedFF {
            k,
            q,
            n,
            l,
            num,
            den,
            deg_f,
            deg_g,
            qr,
            towers: Default::default(),
        })
    }

    /// The constant field `K = GF(q^n)`.
    pub fn field(&self) -> &FiniteField {
        &self.k
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The linearized left-hand side `L`.
    pub fn l(&self) -> &LinearizedPoly {
        &self.l
    }

    /// Separable degree `q^r` of `L`.
    pub fn qr(&self) -> i64 {
        self.qr
    }

    /// Numerator factors `(q_j, m_j)`.
    pub fn num(&self) -> &[(DensePoly, u32)] {
        &self.num
    }

    /// Denominator factors `(p_i, n_i)`.
    pub fn den(&self) -> &[(DensePoly, u32)] {
        &self.den
    }

    /// Number of denominator factors, i.e. of ramified places `Q_i`.
    pub fn s(&self) -> usize {
        self.den.len()
    }

    pub fn deg_f(&self) -> i64 {
        self.deg_f
    }

    pub fn deg_g(&self) -> i64 {
        self.deg_g
    }

    /// Pole order `d = deg f - deg g` of `y` at `Q_infinity`.
    pub fn d(&self) -> i64 {
        self.deg_f - self.deg_g
    }

    /// Multiplicity `n_i` of the denominator factor `i`.
    pub fn den_mult(&self, i: usize) -> Result<i64, CurveError> {
        self.den.get(i).map(|(_, m)| i64::from(*m)).ok_or(CurveError::FactorIndex(i))
    }

    /// Degree of the denominator factor `i`.
    pub fn den_degree(&self, i: usize) -> Result<i64, CurveError> {
        self.den
            .get(i)
            .map(|(p, _)| p.degree().unwrap_or(0) as i64)
            .ok_or(CurveError::FactorIndex(i))
    }

    /// Checks every arithmetic hypothesis and reports each one by name.
    ///
    /// Construction already guarantees the structural conditions; they are
    /// reported as passing for completeness. Numerator multiplicities carry
    /// no characteristic condition and are reported informationally.
    pub fn validate(&self) -> ValidationReport {
        let p = self.k.characteristic();
        let mut checks = Vec::new();
        checks.push(ValidationCheck {
            name: "q-power-of-char",
            passed: true,
            detail: format!("q = {} is a power of the characteristic {}", self.q, p),
        });
        checks.push(ValidationCheck {
            name: "l-end-coefficients",
            passed: true,
            detail: format!("a_0 and a_r nonzero, r = {}", self.l.r()),
        });

        let kernel_size = self.l.kernel(&self.k).map(|k| k.len() as i64).unwrap_or(-1);
        checks.push(ValidationCheck {
            name: "kernel-rational",
            passed: kernel_size == self.qr,
            detail: format!("L has {} roots in K, expected q^r = {}", kernel_size, self.qr),
        });

        let all = || self.num.iter().chain(self.den.iter());
        let monic_irr = all().try_fold(true, |acc, (f, _)| {
            Ok::<_, GaloisError>(acc && f.is_monic() && f.is_irreducible()?)
        });
        checks.push(ValidationCheck {
            name: "factors-monic-irreducible",
            passed: monic_irr.unwrap_or(false),
            detail: "every q_j and p_i must be monic and irreducible over K".into(),
        });

        let mut distinct = true;
        let polys: Vec<&DensePoly> = all().map(|(f, _)| f).collect();
        for i in 0..polys.len() {
            for j in i + 1..polys.len() {
                if polys[i] == polys[j] {
                    distinct = false;
                }
            }
        }
        checks.push(ValidationCheck {
            name: "factors-distinct",
            passed: distinct,
            detail: "the q_j and p_i are pairwise distinct, so gcd(f, g) = 1".into(),
        });

        let d = self.d();
        checks.push(ValidationCheck {
            name: "degree-drop-positive",
            passed: d > 0,
            detail: format!("d = deg f - deg g = {} - {} = {}", self.deg_f, self.deg_g, d),
        });
        checks.push(ValidationCheck {
            name: "degree-drop-coprime-to-char",
            passed: d > 0 && d.unsigned_abs() % p != 0,
            detail: format!("gcd(d, p) with d = {}, p = {}", d, p),
        });

        let den_coprime = self.den.iter().all(|(_, m)| u64::from(*m) % p != 0);
        checks.push(ValidationCheck {
            name: "denominator-multiplicities-coprime-to-char",
            passed: den_coprime,
            detail: format!(
                "n_i = {:?} must avoid the characteristic {}",
                self.den.iter().map(|(_, m)| *m).collect::<Vec<_>>(),
                p
            ),
        });
        checks.push(ValidationCheck {
            name: "numerator-multiplicities-unrestricted",
            passed: true,
            detail: format!(
                "m_j = {:?}; no characteristic condition is imposed on these",
                self.num.iter().map(|(_, m)| *m).collect::<Vec<_>>()
            ),
        });

        ValidationReport { checks }
    }

    /// Builds a monomial after range-checking the exponents.
    pub fn mono(&self, k: u64, e_inf: i64, e: Vec<i64>) -> Result<FFMonomial, CurveError> {
        let max = (self.qr - 1) as u64;
        if k > max {
            return Err(CurveError::YExponent { got: k, max });
        }
        if e.len() != self.den.len() {
            return Err(CurveError::ExponentLength { expected: self.den.len(), got: e.len() });
        }
        Ok(FFMonomial { k, e_inf, e })
    }

    /// Valuation of `mono` at a distinguished place.
    ///
    /// At `Q_i`: `v(y) = -n_i`, `v(p_i) = q^r`, other `p_j` and `x` are
    /// units unless `p_i = x`, in which case `v(x) = q^r`. At `Q_infinity`:
    /// `v(y) = -d`, `v(x) = -q^r`, `v(p_j) = -q^r deg p_j`. At `R_j`:
    /// `v(y) = m_j`, `v(x) = [q_j = x]`, every `p_i` is a unit.
    pub fn valuation(
        &self,
        mono: &FFMonomial,
        place: DistinguishedPlace,
    ) -> Result<i64, CurveError> {
        if mono.e.len() != self.den.len() {
            return Err(CurveError::ExponentLength { expected: self.den.len(), got: mono.e.len() });
        }
        let x = DensePoly::x(&self.k);
        let k = mono.k as i64;
        match place {
            DistinguishedPlace::Qi(i) => {
                let (p_i, n_i) = self.den.get(i).ok_or(CurveError::FactorIndex(i))?;
                let x_exp = if *p_i == x { mono.e_inf } else { 0 };
                Ok(-k * i64::from(*n_i) + self.qr * (mono.e[i] + x_exp))
            }
            DistinguishedPlace::Qinf => {
                let weighted: i64 = mono
                    .e
                    .iter()
                    .zip(&self.den)
                    .map(|(e_i, (p, _))| e_i * p.degree().unwrap_or(0) as i64)
                    .sum();
                Ok(-k * self.d() - self.qr * (mono.e_inf + weighted))
            }
            DistinguishedPlace::Rj(j) => {
                let (q_j, m_j) = self.num.get(j).ok_or(CurveError::FactorIndex(j))?;
                let x_exp = if *q_j == x { mono.e_inf } else { 0 };
                Ok(k * i64::from(*m_j) + x_exp)
            }
        }
    }

    /// Degree of a distinguished place as a place of `F`.
    pub fn place_degree(&self, place: DistinguishedPlace) -> Result<i64, CurveError> {
        match place {
            DistinguishedPlace::Qi(i) => self.den_degree(i),
            DistinguishedPlace::Qinf => Ok(1),
            DistinguishedPlace::Rj(j) => self
                .num
                .get(j)
                .map(|(q, _)| q.degree().unwrap_or(0) as i64)
                .ok_or(CurveError::FactorIndex(j)),
        }
    }

    /// The constant-field extension `K_m` with its cached solver data.
    pub(crate) fn tower(&self, m: usize) -> Result<Arc<Tower>, CurveError> {
        if m == 0 || m > MAX_TOWER {
            return Err(CurveError::TowerTooDeep(MAX_TOWER));
        }
        let slot = &self.towers[m - 1];
        if let Some(t) = slot.get() {
            return Ok(t.clone());
        }
        let field = self.k.extension(m)?;
        let lift = |factors: &[(DensePoly, u32)]| {
            factors
                .iter()
                .map(|(f, mult)| Ok((f.embedded(&field)?, *mult)))
                .collect::<Result<Vec<_>, GaloisError>>()
        };
        let tower = Arc::new(Tower {
            field: field.clone(),
            frob: field.power_map_matrix(self.k.order()),
            solver: LinSolver::new(&self.l, &field)?,
            num: lift(&self.num)?,
            den: lift(&self.den)?,
        });
        Ok(slot.get_or_init(|| tower).clone())
    }

    /// Genus, inferred from the growth of `dim L(m Q_infinity)`.
    ///
    /// The defect `m + 1 - dim` is non-decreasing and eventually constant;
    /// the run is accepted once it has been flat for `2 q^r` consecutive
    /// steps with the dimension growing by exactly one each step.
    pub fn genus_infer(&self) -> Result<i64, CurveError> {
        let window = 2 * self.qr;
        let bound = 64 * self.qr * self.deg_f.max(self.qr);
        let zero = vec![0; self.den.len()];
        let mut flat = 0;
        let mut prev_dim = 0;
        let mut prev_defect = -1;
        for m in 0..=bound {
            let dim = crate::riemannroch::rr_dim(self, &crate::riemannroch::Divisor {
                a: zero.clone(),
                b_inf: m,
            }) as i64;
            let defect = m + 1 - dim;
            if m > 0 && defect == prev_defect && dim == prev_dim + 1 {
                flat += 1;
                if flat >= window {
                    return Ok(defect);
                }
            } else {
                flat = 0;
            }
            prev_dim = dim;
            prev_defect = defect;
        }
        Err(CurveError::GenusNonConvergence(bound))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::{curve_gf49, curve_gf4_toy, curve_gf64};

    #[test]
    fn gf49_descriptor_shape() {
        let ff = curve_gf49();
        assert_eq!(ff.field().order(), 49);
        assert_eq!(ff.qr(), 7);
        assert_eq!(ff.d(), 2);
        assert_eq!(ff.s(), 1);
        assert_eq!((ff.deg_f(), ff.deg_g()), (4, 2));
        let report = ff.validate();
        assert!(report.is_valid(), "failures: {:?}", report.failures());
    }

    #[test]
    fn gf64_descriptor_shape() {
        let ff = curve_gf64();
        assert_eq!(ff.field().order(), 64);
        assert_eq!(ff.qr(), 4);
        assert_eq!(ff.d(), 9);
        assert_eq!(ff.s(), 0);
        assert!(ff.validate().is_valid());
    }

    #[test]
    fn rejects_degree_drop_divisible_by_char() {
        // y^7 + y = x^7: d = 7 is the characteristic.
        let ff = LinearizedFF::new(
            7,
            2,
            &[vec![1, 0], vec![1, 0]],
            &[(vec![vec![0, 0], vec![1, 0]], 7)],
            &[],
        )
        .unwrap();
        let report = ff.validate();
        assert!(!report.is_valid());
        assert_eq!(report.failures(), vec!["degree-drop-coprime-to-char"]);
    }

    #[test]
    fn flags_denominator_multiplicity_in_characteristic() {
        let ff = LinearizedFF::new(
            7,
            2,
            &[vec![1, 0], vec![1, 0]],
            &[(vec![vec![0, 0], vec![1, 0]], 9)],
            &[(vec![vec![1, 0], vec![1, 0]], 7)],
        )
        .unwrap();
        assert!(ff
            .validate()
            .failures()
            .contains(&"denominator-multiplicities-coprime-to-char"));
    }

    #[test]
    fn flags_shared_factor() {
        let ff = LinearizedFF::new(
            7,
            2,
            &[vec![1, 0], vec![1, 0]],
            &[(vec![vec![1, 0], vec![1, 0]], 3)],
            &[(vec![vec![1, 0], vec![1, 0]], 1)],
        )
        .unwrap();
        assert!(ff.validate().failures().contains(&"factors-distinct"));
    }

    #[test]
    fn rejects_structurally_broken_input() {
        assert!(matches!(
            LinearizedFF::new(6, 2, &[vec![1, 0], vec![1, 0]], &[], &[]),
            Err(CurveError::BadQ)
        ));
        assert!(matches!(
            LinearizedFF::new(7, 2, &[vec![1, 0], vec![1, 0]], &[(vec![vec![3, 0]], 1)], &[]),
            Err(CurveError::BadFactor)
        ));
        assert!(matches!(
            LinearizedFF::new(
                7,
                2,
                &[vec![1, 0], vec![1, 0]],
                &[(vec![vec![0, 0], vec![1, 0]], 0)],
                &[]
            ),
            Err(CurveError::ZeroMultiplicity)
        ));
    }

    #[test]
    fn gf49_valuation_table() {
        let ff = curve_gf49();
        let y = ff.mono(1, 0, vec![0]).unwrap();
        let x = ff.mono(0, 1, vec![0]).unwrap();
        let p1 = ff.mono(0, 0, vec![1]).unwrap();
        let one = ff.mono(0, 0, vec![0]).unwrap();

        use DistinguishedPlace::*;
        assert_eq!(ff.valuation(&y, Qi(0)).unwrap(), -2);
        assert_eq!(ff.valuation(&y, Qinf).unwrap(), -2);
        assert_eq!(ff.valuation(&y, Rj(0)).unwrap(), 2);
        assert_eq!(ff.valuation(&y, Rj(1)).unwrap(), 2);

        // p_1 = x here, so x is uniformized at Q_1.
        assert_eq!(ff.valuation(&x, Qi(0)).unwrap(), 7);
        assert_eq!(ff.valuation(&x, Qinf).unwrap(), -7);
        assert_eq!(ff.valuation(&x, Rj(0)).unwrap(), 0);

        assert_eq!(ff.valuation(&p1, Qi(0)).unwrap(), 7);
        assert_eq!(ff.valuation(&p1, Qinf).unwrap(), -7);

        for place in [Qi(0), Qinf, Rj(0), Rj(1)] {
            assert_eq!(ff.valuation(&one, place).unwrap(), 0);
        }
    }

    #[test]
    fn principal_divisors_balance_to_degree_zero() {
        // Degree-weighted valuation sums over the modeled support. The zero
        // divisor of x has degree q^r; when x divides f one of those places
        // is the distinguished R_j and is already counted by the table, and
        // when x divides g all of it collapses onto the ramified Q_i.
        for ff in [curve_gf49(), curve_gf64(), curve_gf4_toy()] {
            let s = ff.s();
            let y = ff.mono(1, 0, vec![0; s]).unwrap();
            let x = ff.mono(0, 1, vec![0; s]).unwrap();
            let x_poly = DensePoly::x(ff.field());
            let x_divides_g = ff.den().iter().any(|(p, _)| *p == x_poly);
            let x_divides_f = ff.num().iter().any(|(p, _)| *p == x_poly);

            for mono in [&y, &x] {
                let mut total = 0;
                for i in 0..s {
                    total += ff.valuation(mono, DistinguishedPlace::Qi(i)).unwrap()
                        * ff.place_degree(DistinguishedPlace::Qi(i)).unwrap();
                }
                for j in 0..ff.num().len() {
                    total += ff.valuation(mono, DistinguishedPlace::Rj(j)).unwrap()
                        * ff.place_degree(DistinguishedPlace::Rj(j)).unwrap();
                }
                total += ff.valuation(mono, DistinguishedPlace::Qinf).unwrap();
                if std::ptr::eq(mono, &x) && !x_divides_g {
                    total += if x_divides_f { ff.qr() - 1 } else { ff.qr() };
                }
                assert_eq!(total, 0, "unbalanced divisor over {}", ff.field().order());
            }
        }
    }

    #[test]
    fn valuation_is_additive_in_exponents() {
        let ff = curve_gf49();
        let a = ff.mono(2, 3, vec![-1]).unwrap();
        let b = ff.mono(4, -2, vec![5]).unwrap();
        let sum = ff.mono(a.k + b.k, a.e_inf + b.e_inf, vec![a.e[0] + b.e[0]]).unwrap();
        use DistinguishedPlace::*;
        for place in [Qi(0), Qinf, Rj(0), Rj(1)] {
            assert_eq!(
                ff.valuation(&sum, place).unwrap(),
                ff.valuation(&a, place).unwrap() + ff.valuation(&b, place).unwrap()
            );
        }
    }

    #[test]
    fn monomial_bounds_enforced() {
        let ff = curve_gf49();
        assert!(matches!(ff.mono(7, 0, vec![0]), Err(CurveError::YExponent { .. })));
        assert!(matches!(ff.mono(0, 0, vec![]), Err(CurveError::ExponentLength { .. })));
    }

    #[test]
    fn towers_are_cached_and_consistent() {
        let ff = curve_gf49();
        let t2 = ff.tower(2).unwrap();
        assert_eq!(t2.field.order(), 49 * 49);
        assert!(Arc::ptr_eq(&t2, &ff.tower(2).unwrap()));
        assert!(matches!(ff.tower(5), Err(CurveError::TowerTooDeep(_))));

        // Frobenius fixes exactly the base field inside K_2.
        let fixed = t2
            .field
            .elements()
            .filter(|e| t2.frobenius(e) == *e)
            .count();
        assert_eq!(fixed, 49);

        // h(alpha) = f(alpha)/g(alpha) matches a direct computation.
        let alpha = t2.field.elt_at(123);
        let g_val = t2.den[0].0.eval(&alpha).unwrap().pow(2).unwrap();
        let f_val = &t2.num[0].0.eval(&alpha).unwrap().pow(2).unwrap()
            * &t2.num[1].0.eval(&alpha).unwrap().pow(2).unwrap();
        assert_eq!(t2.h_eval(&alpha).unwrap().unwrap(), f_val.checked_div(&g_val).unwrap());

        // g vanishes only at alpha = 0 for this descriptor.
        assert!(t2.h_eval(&t2.field.zero()).unwrap().is_none());
    }
}
