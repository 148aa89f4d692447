//! Ready-made curve descriptors and the concatenated-code tables the CLI can
//! reproduce.
//!
//! Two production curves are provided — one over GF(49) with a ramified
//! place, one over GF(64) with none — plus a small GF(4) curve used by tests
//! and benchmarks. The tables list, per worked example, the outer divisors,
//! the extra inner codes attached to higher-degree places, the admissible
//! range of the rational-place count `s`, and the resulting `[n, k, d]`
//! parameters as affine functions of `s`.

use crate::curve::LinearizedFF;
use crate::riemannroch::Divisor;

/// `y^7 + y = (x^2 + 1)^2 / x^2` over GF(49).
///
/// Here `x^2 + 1` splits as `(x - i)(x + i)` with `i^2 = -1`, so the
/// numerator is kept in irreducible factored form. Genus 12, `q^r = 7`,
/// `d = 2`, one ramified place over `x = 0`.
pub fn curve_gf49() -> LinearizedFF {
    LinearizedFF::new(
        7,
        2,
        &[vec![1, 0], vec![1, 0]],
        &[(vec![vec![0, 6], vec![1, 0]], 2), (vec![vec![0, 1], vec![1, 0]], 2)],
        &[(vec![vec![0, 0], vec![1, 0]], 2)],
    )
    .expect("the GF(49) descriptor is well-formed")
}

/// `y^4 + y^2 + y = x^9` over GF(64). Genus 12, `q^r = 4`, `d = 9`, no
/// ramified places.
pub fn curve_gf64() -> LinearizedFF {
    let zero = vec![0; 6];
    let one = {
        let mut c = zero.clone();
        c[0] = 1;
        c
    };
    LinearizedFF::new(
        2,
        6,
        &[one.clone(), one.clone(), one.clone()],
        &[(vec![zero.clone(), one], 9)],
        &[],
    )
    .expect("the GF(64) descriptor is well-formed")
}

/// `y^2 + y = x^3` over GF(4): a genus-1 curve small enough for brute-force
/// checks.
pub fn curve_gf4_toy() -> LinearizedFF {
    LinearizedFF::new(
        2,
        2,
        &[vec![1, 0], vec![1, 0]],
        &[(vec![vec![0, 0], vec![1, 0]], 3)],
        &[],
    )
    .expect("the GF(4) descriptor is well-formed")
}

/// Which built-in curve an example runs on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CurveId {
    Gf49,
    Gf64,
}

impl CurveId {
    pub fn build(self) -> LinearizedFF {
        match self {
            CurveId::Gf49 => curve_gf49(),
            CurveId::Gf64 => curve_gf64(),
        }
    }
}

/// Expected `[n, k, d]` as affine functions of the rational-place count `s`:
/// `n = s + n_off`, `k = s + k_off`, `d` constant over the admissible range.
#[derive(Clone, Copy, Debug)]
pub struct GoldenTriple {
    pub n_off: i64,
    pub k_off: i64,
    pub d: i64,
}

/// One row of an example table: the extra inner codes beyond the identity
/// codes on the `s` rational places, the `s`-range where the row's claim
/// holds, and the claimed parameters.
#[derive(Clone, Debug)]
pub struct ExampleItem {
    pub item: u32,
    pub s_min: u64,
    pub s_max: u64,
    /// `(n_i, k_i, d_i)` of each extra inner code; `k_i` is the degree of the
    /// place it is attached to.
    pub extras: Vec<(usize, usize, usize)>,
    pub golden: GoldenTriple,
}

/// A worked example: a curve, the divisor pair `(A, R)` the construction
/// starts from, and its table of rows.
#[derive(Clone, Debug)]
pub struct ExampleDef {
    pub example: u32,
    pub curve: CurveId,
    pub a: Divisor,
    pub r: Divisor,
    pub items: Vec<ExampleItem>,
}

fn item(
    item: u32,
    s_min: u64,
    s_max: u64,
    extras: Vec<(usize, usize, usize)>,
    n_off: i64,
    k_off: i64,
    d: i64,
) -> ExampleItem {
    ExampleItem { item, s_min, s_max, extras, golden: GoldenTriple { n_off, k_off, d } }
}

/// All built-in example tables.
///
/// Example 1's source table lists a sixth row identical to the fifth; it is
/// reproduced once, so the row numbering skips from 5 to 7.
pub fn examples() -> Vec<ExampleDef> {
    let id = |k: usize| (k, k, 1);
    let parity = |k: usize| (k + 1, k, 2);
    let rs = |n: usize, k: usize| (n, k, n - k + 1);
    vec![
        ExampleDef {
            example: 1,
            curve: CurveId::Gf49,
            a: Divisor::new(vec![18], 5),
            r: Divisor::new(vec![18], 5),
            items: vec![
                item(1, 109, 168, vec![], 0, -34, 24),
                item(2, 116, 168, vec![id(2)], 2, -32, 23),
                item(3, 139, 168, vec![id(2), id(2)], 4, -30, 22),
                item(4, 112, 168, vec![rs(3, 2)], 3, -32, 24),
                item(5, 123, 168, vec![rs(3, 2), rs(3, 2)], 6, -30, 24),
                item(7, 163, 168, vec![parity(4)], 5, -30, 22),
            ],
        },
        ExampleDef {
            example: 2,
            curve: CurveId::Gf49,
            a: Divisor::new(vec![4], 19),
            r: Divisor::new(vec![3], 19),
            items: vec![
                item(1, 107, 168, vec![], 0, -33, 23),
                item(2, 127, 168, vec![id(2)], 2, -31, 22),
                item(3, 150, 168, vec![id(2), id(2)], 4, -29, 21),
                item(4, 127, 168, vec![rs(3, 2), rs(3, 2)], 6, -29, 23),
            ],
        },
        ExampleDef {
            example: 3,
            curve: CurveId::Gf49,
            a: Divisor::new(vec![0], 19),
            r: Divisor::new(vec![4], 19),
            items: vec![
                item(1, 129, 168, vec![], 0, -30, 20),
                item(2, 152, 168, vec![id(2)], 2, -28, 19),
                item(3, 148, 168, vec![rs(3, 2)], 3, -28, 20),
                item(4, 164, 168, vec![rs(3, 2), rs(3, 2)], 6, -26, 20),
                item(5, 166, 168, vec![rs(4, 2)], 4, -28, 20),
            ],
        },
        ExampleDef {
            example: 4,
            curve: CurveId::Gf64,
            a: Divisor::only_inf(0, 23),
            r: Divisor::only_inf(0, 23),
            items: vec![
                item(1, 228, 256, vec![], 0, -34, 24),
                item(2, 255, 256, vec![rs(3, 2)], 3, -32, 24),
                item(3, 254, 256, vec![rs(3, 2), rs(3, 2)], 6, -30, 24),
                item(4, 253, 256, vec![rs(3, 2), rs(3, 2), rs(3, 2)], 9, -28, 24),
                item(5, 252, 256, vec![rs(3, 2), rs(3, 2), rs(3, 2), rs(3, 2)], 12, -26, 24),
            ],
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_curves_are_valid() {
        for (ff, qr, d, s) in [
            (curve_gf49(), 7, 2, 1),
            (curve_gf64(), 4, 9, 0),
            (curve_gf4_toy(), 2, 3, 0),
        ] {
            let report = ff.validate();
            assert!(report.is_valid(), "failures: {:?}", report.failures());
            assert_eq!(ff.qr(), qr);
            assert_eq!(ff.d(), d);
            assert_eq!(ff.s(), s);
        }
    }

    #[test]
    fn tables_are_internally_consistent() {
        let all = examples();
        assert_eq!(all.len(), 4);
        for ex in &all {
            let ff = ex.curve.build();
            assert_eq!(ex.a.a.len(), ff.s());
            assert_eq!(ex.r.a.len(), ff.s());
            for it in &ex.items {
                assert!(it.s_min <= it.s_max, "example {} item {}", ex.example, it.item);
                assert!(it.golden.d > 0);
                for &(n, k, d) in &it.extras {
                    assert!(k >= 1 && d >= 1 && d <= n && k <= n);
                }
                let extra_n: i64 = it.extras.iter().map(|e| e.0 as i64).sum();
                assert_eq!(extra_n, it.golden.n_off);
            }
        }
    }
}
