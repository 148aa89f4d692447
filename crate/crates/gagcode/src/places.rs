//! Enumeration of evaluation places and evaluation of monomials at them.
//!
//! An evaluation place of degree `m` is a Frobenius orbit of pairs
//! `(alpha, beta)` with `g(alpha) != 0` and `L(beta) = f(alpha)/g(alpha)`,
//! stored by its canonical representative in the constant-field extension
//! `K_m`. All roots of one fiber differ by kernel elements of `L`, which live
//! in `K`, so a fiber sits in exactly one extension degree: the place degree
//! is `deg(min_poly of alpha) * e` with `e` minimal such that the fiber
//! appears in `K_(delta e)`.
//!
//! Enumeration walks every monic irreducible `min_poly` via the canonical
//! roots in `K_delta`, splits each fiber into Frobenius orbits, and keeps the
//! lexicographically least member of each orbit. The scan over extension
//! elements is data-parallel when the `parallel` feature is enabled; the
//! chunked results are merged in index order either way, so the output is
//! identical.

use std::collections::BTreeMap;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::curve::{CurveError, FFMonomial, LinearizedFF, MAX_TOWER};
use crate::galois::{DensePoly, FieldElement, GaloisError};

#[derive(Debug, Error)]
pub enum PlacesError {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Galois(#[from] GaloisError),
    #[error("max_degree must be between 1 and 3, got {0}")]
    DegreeCap(usize),
    #[error("place degree must be between 1 and {max}, got {got}")]
    BadDegree { got: usize, max: usize },
    #[error("the monomial has a pole at this place")]
    PoleAtPlace,
    #[error("the place does not belong to this curve's towers")]
    ForeignPlace,
}

/// One evaluation place, stored by its canonical orbit representative.
///
/// `min_poly` is the minimal polynomial of `alpha` over `K`; `alpha` and
/// `beta` live in the constant-field extension of degree [`Self::degree`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvaluationPlace {
    pub degree: usize,
    pub min_poly: DensePoly,
    pub alpha: FieldElement,
    pub beta: FieldElement,
}

impl Serialize for EvaluationPlace {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let coords = |e: &FieldElement| e.coords().to_vec();
        let mut s = serializer.serialize_struct("EvaluationPlace", 4)?;
        s.serialize_field(
            "min_poly",
            &self.min_poly.coeffs().iter().map(coords).collect::<Vec<_>>(),
        )?;
        s.serialize_field("alpha", &coords(&self.alpha))?;
        s.serialize_field("beta", &coords(&self.beta))?;
        s.serialize_field("degree", &self.degree)?;
        s.end()
    }
}

/// Places grouped by degree, each group in canonical order.
#[derive(Clone, Debug, Default, Serialize)]
pub struct PlaceInventory {
    pub by_degree: BTreeMap<usize, Vec<EvaluationPlace>>,
}

impl PlaceInventory {
    pub fn count(&self, degree: usize) -> usize {
        self.by_degree.get(&degree).map_or(0, Vec::len)
    }

    pub fn of_degree(&self, degree: usize) -> &[EvaluationPlace] {
        self.by_degree.get(&degree).map_or(&[], Vec::as_slice)
    }

    pub fn total(&self) -> usize {
        self.by_degree.values().map(Vec::len).sum()
    }
}

/// All evaluation places of degree at most `max_degree` (capped at 3).
///
/// Together with the pole of `x` and any degree-one ramified places, the
/// degree-one group accounts for every rational place of the function field.
pub fn enumerate_places(
    desc: &LinearizedFF,
    max_degree: usize,
) -> Result<PlaceInventory, PlacesError> {
    if !(1..=3).contains(&max_degree) {
        return Err(PlacesError::DegreeCap(max_degree));
    }
    for m in 1..=max_degree {
        desc.tower(m)?;
    }
    let mut inventory = PlaceInventory::default();
    for place in rational_alpha_places(desc, max_degree)? {
        inventory.by_degree.entry(place.degree).or_default().push(place);
    }
    for delta in 2..=max_degree {
        let found = scan_extension(desc, delta)?;
        if !found.is_empty() {
            inventory.by_degree.entry(delta).or_default().extend(found);
        }
    }
    for group in inventory.by_degree.values_mut() {
        group.sort_by(|a, b| (a.alpha.clone(), a.beta.clone()).cmp(&(b.alpha.clone(), b.beta.clone())));
    }
    Ok(inventory)
}

/// Places over `alpha` in the base field: for each usable `alpha` the fiber
/// is searched in `K_e` for the minimal `e`, and lands at places of degree
/// `e`.
fn rational_alpha_places(
    desc: &LinearizedFF,
    max_e: usize,
) -> Result<Vec<EvaluationPlace>, PlacesError> {
    let k = desc.field();
    let base = desc.tower(1)?;
    let mut out = Vec::new();
    for alpha in k.elements() {
        let Some(h) = base.h_eval(&alpha)? else {
            continue;
        };
        for e in 1..=max_e {
            let tower = desc.tower(e)?;
            let lifted = tower.field.embed_up(&h)?;
            let fiber = tower.solver.solve(&lifted)?;
            if fiber.is_empty() {
                continue;
            }
            let alpha_up = tower.field.embed_up(&alpha)?;
            let min_poly = DensePoly::new(k, vec![-&alpha, k.one()])?;
            for beta in orbit_representatives(fiber, |b| tower.frobenius(b)) {
                out.push(EvaluationPlace {
                    degree: e,
                    min_poly: min_poly.clone(),
                    alpha: alpha_up.clone(),
                    beta,
                });
            }
            break;
        }
    }
    Ok(out)
}

/// Degree-`delta` places whose `alpha` generates `K_delta`; the fiber must
/// then already live in `K_delta` (larger fibers would exceed the cap).
fn scan_extension(desc: &LinearizedFF, delta: usize) -> Result<Vec<EvaluationPlace>, PlacesError> {
    let tower = desc.tower(delta)?;
    let order = tower.field.order();
    const CHUNK: u64 = 1 << 12;
    let starts: Vec<u64> = (0..order).step_by(CHUNK as usize).collect();

    #[cfg(feature = "parallel")]
    let chunks = starts
        .into_par_iter()
        .map(|lo| scan_chunk(desc, delta, lo, (lo + CHUNK).min(order)))
        .collect::<Result<Vec<_>, PlacesError>>()?;
    #[cfg(not(feature = "parallel"))]
    let chunks = starts
        .into_iter()
        .map(|lo| scan_chunk(desc, delta, lo, (lo + CHUNK).min(order)))
        .collect::<Result<Vec<_>, PlacesError>>()?;

    Ok(chunks.into_iter().flatten().collect())
}

fn scan_chunk(
    desc: &LinearizedFF,
    delta: usize,
    lo: u64,
    hi: u64,
) -> Result<Vec<EvaluationPlace>, PlacesError> {
    let tower = desc.tower(delta)?;
    let field = &tower.field;
    let mut out = Vec::new();
    'next: for idx in lo..hi {
        let alpha = field.elt_at(idx);
        // Keep alpha only if it generates K_delta and is the least conjugate.
        let mut conjugates = Vec::with_capacity(delta - 1);
        let mut c = alpha.clone();
        for _ in 1..delta {
            c = tower.frobenius(&c);
            if c == alpha || c < alpha {
                continue 'next;
            }
            conjugates.push(c.clone());
        }
        let Some(h) = tower.h_eval(&alpha)? else {
            continue;
        };
        let fiber = tower.solver.solve(&h)?;
        if fiber.is_empty() {
            continue;
        }
        let min_poly = push_down(desc, &tower.field, &alpha, &conjugates)?;
        // Frobenius^delta is the identity on K_delta, so each root is its
        // own orbit.
        for beta in fiber {
            out.push(EvaluationPlace {
                degree: delta,
                min_poly: min_poly.clone(),
                alpha: alpha.clone(),
                beta,
            });
        }
    }
    Ok(out)
}

/// Minimal polynomial of `alpha` over `K`, computed in `K_delta` and pushed
/// down through the power-basis coordinates (the coefficients are
/// Frobenius-invariant, so only the constant coordinate survives).
fn push_down(
    desc: &LinearizedFF,
    field: &crate::galois::FiniteField,
    alpha: &FieldElement,
    conjugates: &[FieldElement],
) -> Result<DensePoly, PlacesError> {
    let mut poly = DensePoly::new(field, vec![-alpha, field.one()])?;
    for c in conjugates {
        poly = &poly * &DensePoly::new(field, vec![-c, field.one()])?;
    }
    let k = desc.field();
    let coeffs = poly
        .coeffs()
        .iter()
        .map(|coeff| {
            let w = field.coords_over_parent(coeff)?;
            debug_assert!(w[1..].iter().all(FieldElement::is_zero));
            Ok(w[0].clone())
        })
        .collect::<Result<Vec<_>, GaloisError>>()?;
    Ok(DensePoly::new(k, coeffs)?)
}

/// Splits a sorted fiber into orbits of `step` and returns the least member
/// of each orbit, in order.
fn orbit_representatives(
    fiber: Vec<FieldElement>,
    step: impl Fn(&FieldElement) -> FieldElement,
) -> Vec<FieldElement> {
    let mut reps = Vec::new();
    let mut seen: Vec<bool> = vec![false; fiber.len()];
    for (i, beta) in fiber.iter().enumerate() {
        if seen[i] {
            continue;
        }
        let mut member = beta.clone();
        loop {
            member = step(&member);
            if member == *beta {
                break;
            }
            let pos = fiber.binary_search(&member).expect("orbits stay inside the fiber");
            seen[pos] = true;
        }
        reps.push(beta.clone());
    }
    reps
}

/// First `count` places of exactly `degree`, restricted to `alpha` that
/// generate `K_degree` (so the minimal polynomial has full degree).
///
/// This is a finder, not an inventory: degree-`m` places whose `alpha` lies
/// in a proper subfield are not visited. It exists to reach degrees beyond
/// the cap of [`enumerate_places`], in particular degree 4.
pub fn find_first_places(
    desc: &LinearizedFF,
    degree: usize,
    count: usize,
) -> Result<Vec<EvaluationPlace>, PlacesError> {
    if !(1..=MAX_TOWER).contains(&degree) {
        return Err(PlacesError::BadDegree { got: degree, max: MAX_TOWER });
    }
    let tower = desc.tower(degree)?;
    let order = tower.field.order();
    const CHUNK: u64 = 1 << 12;
    let mut out = Vec::new();
    let mut lo = 0;
    while lo < order && out.len() < count {
        let found = if degree == 1 {
            rational_alpha_places(desc, 1)?
        } else {
            scan_chunk(desc, degree, lo, (lo + CHUNK).min(order))?
        };
        out.extend(found);
        if degree == 1 {
            break;
        }
        lo += CHUNK;
    }
    out.truncate(count);
    Ok(out)
}

/// Value of `mono = y^k x^(e_inf) prod p_i^(e_i)` at `place`: substitute
/// `beta` for `y` and `alpha` for `x`.
pub fn evaluate(
    desc: &LinearizedFF,
    mono: &FFMonomial,
    place: &EvaluationPlace,
) -> Result<FieldElement, PlacesError> {
    let tower = desc.tower(place.degree)?;
    if place.alpha.field() != &tower.field || place.beta.field() != &tower.field {
        return Err(PlacesError::ForeignPlace);
    }
    if mono.e.len() != desc.s() {
        return Err(PlacesError::Curve(CurveError::ExponentLength {
            expected: desc.s(),
            got: mono.e.len(),
        }));
    }
    if mono.e_inf < 0 && place.alpha.is_zero() {
        return Err(PlacesError::PoleAtPlace);
    }
    let mut acc = &place.beta.pow_u64(mono.k) * &place.alpha.pow(mono.e_inf)?;
    for ((p, _), e) in tower.den.iter().zip(&mono.e) {
        acc = &acc * &p.eval(&place.alpha)?.pow(*e)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::{curve_gf49, curve_gf4_toy, curve_gf64};
    use crate::galois::lin_eval;

    fn check_place(desc: &LinearizedFF, place: &EvaluationPlace) {
        let tower = desc.tower(place.degree).unwrap();
        // min_poly is monic irreducible over K and vanishes at alpha.
        assert!(place.min_poly.is_monic());
        assert!(place.min_poly.is_irreducible().unwrap());
        assert!(place.min_poly.eval(&place.alpha).unwrap().is_zero());
        // beta is in the fiber over h(alpha).
        let h = tower.h_eval(&place.alpha).unwrap().expect("unramified");
        assert_eq!(lin_eval(desc.l(), &place.beta).unwrap(), h);
    }

    #[test]
    fn toy_inventory_counts() {
        let ff = curve_gf4_toy();
        let inv = enumerate_places(&ff, 3).unwrap();
        assert_eq!(inv.count(1), 8);
        assert_eq!(inv.count(2), 0);
        assert_eq!(inv.count(3), 24);
        for place in inv.by_degree.values().flatten() {
            check_place(&ff, place);
        }
    }

    #[test]
    fn rational_place_counts_match_known_values() {
        let inv49 = enumerate_places(&curve_gf49(), 1).unwrap();
        assert_eq!(inv49.count(1), 168);
        let inv64 = enumerate_places(&curve_gf64(), 1).unwrap();
        assert_eq!(inv64.count(1), 256);
    }

    #[test]
    fn degree_weight_over_each_alpha_is_qr() {
        // Every usable alpha in K carries places of one degree e with
        // q^r / e' orbits, so the degrees over it always sum to q^r.
        let ff = curve_gf49();
        let inv = enumerate_places(&ff, 3).unwrap();
        let mut weight: BTreeMap<Vec<u64>, i64> = BTreeMap::new();
        for place in inv.by_degree.values().flatten() {
            if place.min_poly.degree() == Some(1) {
                let key = place.min_poly.coeff(0).coords().to_vec();
                *weight.entry(key).or_default() += place.degree as i64;
            }
        }
        for (alpha, w) in weight {
            assert_eq!(w, ff.qr(), "at alpha with -alpha = {:?}", alpha);
        }
    }

    #[test]
    fn places_are_deduplicated_and_canonical() {
        let ff = curve_gf49();
        let inv = enumerate_places(&ff, 2).unwrap();
        for group in inv.by_degree.values() {
            for pair in group.windows(2) {
                assert!(
                    (&pair[0].alpha, &pair[0].beta) < (&pair[1].alpha, &pair[1].beta),
                    "group must be strictly sorted"
                );
            }
        }
        // Degree-2 places exist on this curve and pass the fiber checks.
        assert!(inv.count(2) > 0);
        for place in inv.of_degree(2) {
            check_place(&ff, place);
            assert_eq!(place.alpha.field().order(), 49 * 49);
        }
    }

    #[test]
    fn finder_agrees_with_enumeration() {
        let ff = curve_gf49();
        let inv = enumerate_places(&ff, 2).unwrap();
        let found = find_first_places(&ff, 2, 3).unwrap();
        assert_eq!(found.len(), 3);
        for place in &found {
            assert!(inv.of_degree(2).contains(place));
        }
    }

    #[test]
    fn finder_reaches_degree_four() {
        let ff = curve_gf49();
        let found = find_first_places(&ff, 4, 1).unwrap();
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].degree, 4);
        assert_eq!(found[0].min_poly.degree(), Some(4));
        check_place(&ff, &found[0]);
    }

    #[test]
    fn evaluate_matches_direct_substitution() {
        let ff = curve_gf49();
        let inv = enumerate_places(&ff, 1).unwrap();
        let place = &inv.of_degree(1)[5];
        let mono = ff.mono(3, 2, vec![-1]).unwrap();
        let expect = &(&place.beta.pow_u64(3) * &place.alpha.pow_u64(2))
            * &place.alpha.pow(-1).unwrap();
        assert_eq!(evaluate(&ff, &mono, place).unwrap(), expect);
    }

    #[test]
    fn evaluate_rejects_poles_at_zero() {
        let ff = curve_gf64();
        let inv = enumerate_places(&ff, 1).unwrap();
        let at_zero = inv
            .of_degree(1)
            .iter()
            .find(|p| p.alpha.is_zero())
            .expect("x = 0 is unramified here");
        let mono = ff.mono(0, -1, vec![]).unwrap();
        assert!(matches!(evaluate(&ff, &mono, at_zero), Err(PlacesError::PoleAtPlace)));
        let ok = ff.mono(1, 1, vec![]).unwrap();
        assert!(evaluate(&ff, &ok, at_zero).unwrap().is_zero());
    }

    #[test]
    fn degree_cap_is_enforced() {
        let ff = curve_gf4_toy();
        assert!(matches!(enumerate_places(&ff, 0), Err(PlacesError::DegreeCap(0))));
        assert!(matches!(enumerate_places(&ff, 4), Err(PlacesError::DegreeCap(4))));
        assert!(matches!(
            find_first_places(&ff, 5, 1),
            Err(PlacesError::BadDegree { got: 5, .. })
        ));
    }
}
