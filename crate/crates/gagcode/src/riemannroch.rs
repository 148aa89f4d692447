//! Divisors supported on the distinguished places and their Riemann-Roch
//! spaces.
//!
//! A [`Divisor`] stores one coefficient per ramified place `Q_i` plus one for
//! `Q_infinity`; that support restriction is what makes every computation
//! here exact integer arithmetic. Dimensions come from a closed-form sum over
//! the `y`-exponent `k`, bases are monomial and are produced in a canonical
//! order, and floors (the minimal divisor with the same space) have both a
//! closed form and an independent oracle that recovers them from valuations
//! of an explicit basis.

use std::fmt;
use std::ops::{Add, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve::{CurveError, DistinguishedPlace, FFMonomial, LinearizedFF};

#[derive(Debug, Error)]
pub enum RrError {
    #[error("the Riemann-Roch space is zero; the floor is undefined")]
    EmptySpace,
    #[error(transparent)]
    Curve(#[from] CurveError),
}

/// Divisor `sum_i a[i] Q_i + b_inf Q_infinity`.
///
/// Coefficients are indexed like the denominator factors of the owning
/// descriptor; places outside the distinguished set cannot be expressed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Divisor {
    pub a: Vec<i64>,
    pub b_inf: i64,
}

impl Divisor {
    pub fn new(a: Vec<i64>, b_inf: i64) -> Self {
        Divisor { a, b_inf }
    }

    /// The zero divisor on a curve with `s` ramified places.
    pub fn zero(s: usize) -> Self {
        Divisor { a: vec![0; s], b_inf: 0 }
    }

    /// `b * Q_infinity`.
    pub fn only_inf(s: usize, b: i64) -> Self {
        Divisor { a: vec![0; s], b_inf: b }
    }

    /// True when every coefficient of `self` is at most the matching one of
    /// `other`.
    pub fn le(&self, other: &Divisor) -> bool {
        assert_eq!(self.a.len(), other.a.len(), "divisors live on different curves");
        self.b_inf <= other.b_inf && self.a.iter().zip(&other.a).all(|(x, y)| x <= y)
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        if self.b_inf != 0 {
            terms.push(format!("{} Qinf", self.b_inf));
        }
        for (i, a) in self.a.iter().enumerate() {
            if *a != 0 {
                terms.push(format!("{} Q{}", a, i + 1));
            }
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl Add for &Divisor {
    type Output = Divisor;
    fn add(self, rhs: &Divisor) -> Divisor {
        assert_eq!(self.a.len(), rhs.a.len(), "divisors live on different curves");
        Divisor {
            a: self.a.iter().zip(&rhs.a).map(|(x, y)| x + y).collect(),
            b_inf: self.b_inf + rhs.b_inf,
        }
    }
}

impl Sub for &Divisor {
    type Output = Divisor;
    fn sub(self, rhs: &Divisor) -> Divisor {
        assert_eq!(self.a.len(), rhs.a.len(), "divisors live on different curves");
        Divisor {
            a: self.a.iter().zip(&rhs.a).map(|(x, y)| x - y).collect(),
            b_inf: self.b_inf - rhs.b_inf,
        }
    }
}

fn check_support(desc: &LinearizedFF, g: &Divisor) {
    assert_eq!(
        g.a.len(),
        desc.s(),
        "divisor has the wrong number of finite coefficients for this curve"
    );
}

/// Degree `sum_i a[i] deg p_i + b_inf`.
pub fn divisor_degree(desc: &LinearizedFF, g: &Divisor) -> i64 {
    check_support(desc, g);
    let finite: i64 = g
        .a
        .iter()
        .enumerate()
        .map(|(i, a)| a * desc.den_degree(i).expect("index in range"))
        .sum();
    finite + g.b_inf
}

/// Componentwise minimum of two divisors.
pub fn divisor_gcd(d1: &Divisor, d2: &Divisor) -> Divisor {
    assert_eq!(d1.a.len(), d2.a.len(), "divisors live on different curves");
    Divisor {
        a: d1.a.iter().zip(&d2.a).map(|(x, y)| *x.min(y)).collect(),
        b_inf: d1.b_inf.min(d2.b_inf),
    }
}

/// The admissible exponent window for one value of the `y`-exponent `k`.
///
/// Members `y^k x^(e_inf) prod p_i^(e_i)` of `L(G)` with this `k` have
/// `e_i >= e_tight[i]` and weighted total degree `c = e_inf + sum e_i deg p_i`
/// in `c_min..=c_max`; the window is empty when `c_min > c_max`.
struct KWindow {
    k: i64,
    e_tight: Vec<i64>,
    c_min: i64,
    c_max: i64,
}

fn windows(desc: &LinearizedFF, g: &Divisor) -> Vec<KWindow> {
    check_support(desc, g);
    let qr = desc.qr();
    (0..qr)
        .map(|k| {
            let mut c_min = 0;
            let e_tight: Vec<i64> = g
                .a
                .iter()
                .enumerate()
                .map(|(i, a)| {
                    let n_i = desc.den_mult(i).expect("index in range");
                    let e = -(a - k * n_i).div_euclid(qr);
                    c_min += e * desc.den_degree(i).expect("index in range");
                    e
                })
                .collect();
            let c_max = (g.b_inf - k * desc.d()).div_euclid(qr);
            KWindow { k, e_tight, c_min, c_max }
        })
        .collect()
}

/// Dimension of `L(G)` over `K`.
pub fn rr_dim(desc: &LinearizedFF, g: &Divisor) -> u64 {
    windows(desc, g).iter().map(|w| (w.c_max - w.c_min + 1).max(0) as u64).sum()
}

/// Canonical monomial basis of `L(G)`.
///
/// For each `k` the factor exponents are pinned to their tight values and
/// `e_inf` sweeps the window, so members are emitted by ascending `k`, then
/// ascending weighted degree. Their pole orders at `Q_infinity` are pairwise
/// distinct, which is what makes the set independent.
pub fn rr_basis(desc: &LinearizedFF, g: &Divisor) -> RRBasis {
    let mut members = Vec::new();
    for w in windows(desc, g) {
        for c in w.c_min..=w.c_max {
            members.push(FFMonomial {
                k: w.k as u64,
                e_inf: c - w.c_min,
                e: w.e_tight.clone(),
            });
        }
    }
    RRBasis { divisor: g.clone(), members }
}

/// Basis of a Riemann-Roch space together with the divisor it spans.
#[derive(Clone, Debug, Serialize)]
pub struct RRBasis {
    pub divisor: Divisor,
    pub members: Vec<FFMonomial>,
}

/// Every monomial of `L(G)` within the admissible windows, allowing slack in
/// the factor exponents.
///
/// This is the full finite set cut out by the defining inequalities
/// (`e_i` at least tight, `e_inf >= 0`, weighted degree at most the
/// `b_inf` cap); it is a spanning superset of [`rr_basis`].
pub fn rr_generators(desc: &LinearizedFF, g: &Divisor) -> Vec<FFMonomial> {
    let degs: Vec<i64> =
        (0..desc.s()).map(|i| desc.den_degree(i).expect("index in range")).collect();
    let mut out = Vec::new();
    for w in windows(desc, g) {
        for c in w.c_min..=w.c_max {
            let mut e = w.e_tight.clone();
            distribute(c - w.c_min, 0, &degs, &w, &mut e, &mut out);
        }
    }
    out
}

fn distribute(
    budget: i64,
    i: usize,
    degs: &[i64],
    w: &KWindow,
    e: &mut Vec<i64>,
    out: &mut Vec<FFMonomial>,
) {
    if i == degs.len() {
        out.push(FFMonomial { k: w.k as u64, e_inf: budget, e: e.clone() });
        return;
    }
    let mut extra = 0;
    while extra * degs[i] <= budget {
        e[i] = w.e_tight[i] + extra;
        distribute(budget - extra * degs[i], i + 1, degs, w, e, out);
        extra += 1;
    }
    e[i] = w.e_tight[i];
}

/// The floor of `G`: the smallest divisor `G'` with `L(G') = L(G)`.
///
/// Coefficients are the largest pole orders that members of `L(G)` actually
/// attain, maximized over the admissible `k`. Errors when `L(G) = 0`, where
/// no floor exists.
pub fn rr_floor(desc: &LinearizedFF, g: &Divisor) -> Result<Divisor, RrError> {
    let qr = desc.qr();
    let admissible: Vec<KWindow> =
        windows(desc, g).into_iter().filter(|w| w.c_min <= w.c_max).collect();
    if admissible.is_empty() {
        return Err(RrError::EmptySpace);
    }
    let a = (0..desc.s())
        .map(|i| {
            let n_i = desc.den_mult(i).expect("index in range");
            admissible
                .iter()
                .map(|w| w.k * n_i + qr * (g.a[i] - w.k * n_i).div_euclid(qr))
                .max()
                .expect("nonempty")
        })
        .collect();
    let b_inf = admissible
        .iter()
        .map(|w| w.k * desc.d() + qr * (g.b_inf - w.k * desc.d()).div_euclid(qr))
        .max()
        .expect("nonempty");
    Ok(Divisor { a, b_inf })
}

/// Floor of `G` recovered from an explicit basis instead of the closed form:
/// each coefficient is the worst pole order any basis member attains at that
/// place.
pub fn floor_oracle(desc: &LinearizedFF, g: &Divisor) -> Result<Divisor, RrError> {
    let basis = rr_basis(desc, g);
    if basis.members.is_empty() {
        return Err(RrError::EmptySpace);
    }
    let worst = |place: DistinguishedPlace| -> Result<i64, RrError> {
        let min = basis
            .members
            .iter()
            .map(|m| desc.valuation(m, place))
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .min()
            .expect("nonempty");
        Ok(-min)
    };
    let a = (0..desc.s())
        .map(|i| worst(DistinguishedPlace::Qi(i)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Divisor { a, b_inf: worst(DistinguishedPlace::Qinf)? })
}

/// Index of specialty `i(G) = dim L(G) - deg G + g - 1`.
pub fn index_of_specialty(desc: &LinearizedFF, g: &Divisor, genus: i64) -> i64 {
    rr_dim(desc, g) as i64 - divisor_degree(desc, g) + genus - 1
}
