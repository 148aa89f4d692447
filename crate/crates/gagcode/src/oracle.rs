//! Independent verification primitives: exact rank, brute-force minimum
//! distance, and structural checks of Riemann-Roch bases.
//!
//! Everything here recomputes facts from first principles — Gaussian
//! elimination for rank, full message enumeration for distance, raw
//! valuation checks for bases — so the closed-form machinery elsewhere can
//! be tested against it.

use thiserror::Error;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::curve::{DistinguishedPlace, LinearizedFF};
use crate::galois::{FieldElement, FiniteField};
use crate::riemannroch::{rr_dim, RRBasis};

/// Largest message space [`min_distance_bruteforce`] will enumerate.
pub const BRUTE_FORCE_BUDGET: u128 = 1 << 22;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("message space of size {0} exceeds the brute-force budget")]
    BudgetExceeded(u128),
    #[error("the code has no nonzero codewords")]
    DegenerateCode,
}

/// Dense row-major matrix over one finite field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixOverK {
    field: FiniteField,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl MatrixOverK {
    pub fn zeros(field: &FiniteField, rows: usize, cols: usize) -> Self {
        MatrixOverK {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    /// Builds a matrix from equally long rows of elements of `field`.
    pub fn from_rows(field: &FiniteField, rows: Vec<Vec<FieldElement>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "rows must have equal length");
            for e in &row {
                assert_eq!(e.field(), field, "entry from a foreign field");
            }
            data.extend(row);
        }
        MatrixOverK { field: field.clone(), rows: n, cols, data }
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &FieldElement {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        assert_eq!(v.field(), &self.field);
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }
}

/// Rank by plain Gaussian elimination.
pub fn rank(m: &MatrixOverK) -> usize {
    let mut a = m.data.clone();
    let (rows, cols) = (m.rows, m.cols);
    let at = |d: &Vec<FieldElement>, r: usize, c: usize| d[r * cols + c].clone();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pivot) = (r..rows).find(|&i| !at(&a, i, c).is_zero()) else {
            continue;
        };
        for j in 0..cols {
            a.swap(r * cols + j, pivot * cols + j);
        }
        let inv = at(&a, r, c).inv().expect("pivot is nonzero");
        for j in c..cols {
            a[r * cols + j] = &at(&a, r, j) * &inv;
        }
        for i in 0..rows {
            if i != r && !at(&a, i, c).is_zero() {
                let factor = at(&a, i, c);
                for j in c..cols {
                    let v = &at(&a, i, j) - &(&factor * &at(&a, r, j));
                    a[i * cols + j] = v;
                }
            }
        }
        r += 1;
    }
    r
}

fn codeword_weight(m: &MatrixOverK, msg: u64) -> Option<usize> {
    let field = &m.field;
    let order = field.order();
    let mut digits = Vec::with_capacity(m.rows);
    let mut rest = msg;
    for _ in 0..m.rows {
        digits.push(field.elt_at(rest % order));
        rest /= order;
    }
    let mut weight = 0;
    for c in 0..m.cols {
        let mut acc = field.zero();
        for (r, digit) in digits.iter().enumerate() {
            if !digit.is_zero() {
                acc = &acc + &(digit * m.get(r, c));
            }
        }
        if !acc.is_zero() {
            weight += 1;
        }
    }
    (weight > 0).then_some(weight)
}

/// Exact minimum distance of the row-space code, by enumerating every
/// message.
///
/// Messages mapping to the zero codeword are skipped; if all of them do, the
/// code is degenerate and has no distance. Refuses message spaces larger
/// than [`BRUTE_FORCE_BUDGET`].
pub fn min_distance_bruteforce(m: &MatrixOverK) -> Result<usize, OracleError> {
    let total = (m.field.order() as u128).pow(m.rows as u32);
    if total > BRUTE_FORCE_BUDGET {
        return Err(OracleError::BudgetExceeded(total));
    }
    let total = total as u64;

    #[cfg(feature = "parallel")]
    let best = (1..total).into_par_iter().filter_map(|msg| codeword_weight(m, msg)).min();
    #[cfg(not(feature = "parallel"))]
    let best = (1..total).filter_map(|msg| codeword_weight(m, msg)).min();

    best.ok_or(OracleError::DegenerateCode)
}

/// Outcome of [`verify_basis`].
#[derive(Clone, Debug)]
pub struct BasisReport {
    pub ok: bool,
    pub count: usize,
    pub expected: u64,
    pub failures: Vec<String>,
}

/// Checks that a claimed basis really spans the Riemann-Roch space of its
/// divisor: right member count, every valuation within the divisor bounds,
/// and pairwise distinct pole orders at `Q_infinity` (which gives linear
/// independence).
pub fn verify_basis(desc: &LinearizedFF, basis: &RRBasis) -> BasisReport {
    let g = &basis.divisor;
    let expected = rr_dim(desc, g);
    let mut failures = Vec::new();
    if basis.members.len() as u64 != expected {
        failures.push(format!(
            "basis has {} members but dim L(G) = {}",
            basis.members.len(),
            expected
        ));
    }
    let mut inf_orders = Vec::with_capacity(basis.members.len());
    for (idx, m) in basis.members.iter().enumerate() {
        for i in 0..desc.s() {
            match desc.valuation(m, DistinguishedPlace::Qi(i)) {
                Ok(v) if v >= -g.a[i] => {}
                Ok(v) => failures.push(format!(
                    "member {idx} has valuation {v} at Q{} but the divisor allows {}",
                    i + 1,
                    -g.a[i]
                )),
                Err(e) => failures.push(format!("member {idx}: {e}")),
            }
        }
        match desc.valuation(m, DistinguishedPlace::Qinf) {
            Ok(v) if v >= -g.b_inf => inf_orders.push(v),
            Ok(v) => failures.push(format!(
                "member {idx} has valuation {v} at Qinf but the divisor allows {}",
                -g.b_inf
            )),
            Err(e) => failures.push(format!("member {idx}: {e}")),
        }
    }
    let distinct = inf_orders.len();
    inf_orders.sort_unstable();
    inf_orders.dedup();
    if inf_orders.len() != distinct {
        failures.push("pole orders at Qinf are not pairwise distinct".into());
    }
    BasisReport { ok: failures.is_empty(), count: basis.members.len(), expected, failures }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::{curve_gf49, curve_gf4_toy};
    use crate::curve::FFMonomial;
    use crate::galois::field_make;
    use crate::riemannroch::{rr_basis, Divisor};

    fn gf7_matrix(rows: &[&[u64]]) -> MatrixOverK {
        let f = field_make(7, 1, None).unwrap();
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| f.scalar(v)).collect())
            .collect();
        MatrixOverK::from_rows(&f, rows)
    }

    #[test]
    fn rank_detects_dependencies() {
        let m = gf7_matrix(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(rank(&m), 2);
        let id = gf7_matrix(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(rank(&id), 3);
        let f = field_make(7, 1, None).unwrap();
        assert_eq!(rank(&MatrixOverK::zeros(&f, 2, 4)), 0);
    }

    #[test]
    fn distance_of_small_codes() {
        // Identity, repetition, and single-parity-check codes over GF(7).
        let id = gf7_matrix(&[&[1, 0], &[0, 1]]);
        assert_eq!(min_distance_bruteforce(&id).unwrap(), 1);
        let rep = gf7_matrix(&[&[1, 1, 1, 1]]);
        assert_eq!(min_distance_bruteforce(&rep).unwrap(), 4);
        let parity = gf7_matrix(&[&[1, 0, 1], &[0, 1, 1]]);
        assert_eq!(min_distance_bruteforce(&parity).unwrap(), 2);
    }

    #[test]
    fn distance_guards() {
        let f = field_make(7, 2, None).unwrap();
        let big = MatrixOverK::zeros(&f, 5, 1);
        assert!(matches!(
            min_distance_bruteforce(&big),
            Err(OracleError::BudgetExceeded(_))
        ));
        let degenerate = MatrixOverK::zeros(&f, 2, 3);
        assert!(matches!(
            min_distance_bruteforce(&degenerate),
            Err(OracleError::DegenerateCode)
        ));
    }

    #[test]
    fn weight_skips_the_zero_codeword() {
        // One zero row: messages touching only that row give no codeword.
        let f = field_make(7, 1, None).unwrap();
        let mut m = MatrixOverK::zeros(&f, 2, 2);
        m.set(1, 0, f.scalar(1));
        m.set(1, 1, f.scalar(4));
        assert_eq!(min_distance_bruteforce(&m).unwrap(), 2);
    }

    #[test]
    fn basis_verification_accepts_real_bases() {
        for (ff, g) in [
            (curve_gf49(), Divisor::new(vec![36], 9)),
            (curve_gf49(), Divisor::new(vec![18], 5)),
            (curve_gf4_toy(), Divisor::only_inf(0, 7)),
        ] {
            let report = verify_basis(&ff, &rr_basis(&ff, &g));
            assert!(report.ok, "{:?}", report.failures);
            assert_eq!(report.count as u64, report.expected);
        }
    }

    #[test]
    fn basis_verification_rejects_tampering() {
        let ff = curve_gf49();
        let g = Divisor::new(vec![18], 5);
        let mut basis = rr_basis(&ff, &g);
        basis.members.push(FFMonomial { k: 0, e_inf: 100, e: vec![0] });
        let report = verify_basis(&ff, &basis);
        assert!(!report.ok);
        assert!(report.failures.iter().any(|f| f.contains("dim L(G)")));
        assert!(report.failures.iter().any(|f| f.contains("Qinf")));

        let mut basis = rr_basis(&ff, &g);
        basis.members[0].e[0] -= 40;
        let report = verify_basis(&ff, &basis);
        assert!(!report.ok);
        assert!(report.failures.iter().any(|f| f.contains("Q1")));
    }
}
