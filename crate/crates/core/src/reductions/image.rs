//! Counting S-unit values of a map on a height box, with an independent
//! cross-check through the unit equation when the map allows it.

use std::collections::{HashMap, HashSet};

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::arith::{Int, Rat};
use crate::dynamics::{ProjPoint, RationalMap};
use crate::error::{Error, Result};
use crate::nf::{FieldElement, HeightBox};
use crate::places::PlaceSet;
use crate::qscan;
use crate::reductions::unit_eq::{evertse_bound, monic_unit_reduction, solve_unit_equation_box};

/// Regions beyond this many candidates are not enumerated for the cross-check.
const CROSS_CHECK_LIMIT: f64 = 5e6;

#[derive(Clone, Debug)]
pub struct ImageCount {
    pub height: u64,
    /// `(beta, phi(beta))` in enumeration order.
    pub hits: Vec<(FieldElement, FieldElement)>,
    pub cross_check: CrossCheckStatus,
}

#[derive(Clone, Debug)]
pub enum CrossCheckStatus {
    NotApplicable(String),
    Skipped(String),
    Done(CrossCheck),
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossCheck {
    pub delta1: Vec<String>,
    pub delta2: Vec<String>,
    /// Height bound used for the unit-equation enumeration.
    pub route_height: String,
    pub solutions: usize,
    pub ceiling: String,
    pub within_ceiling: bool,
    pub scan_preimages: usize,
    pub route_preimages: usize,
    /// Both routes found the same preimages and the same values.
    pub agree: bool,
    pub mismatches: Vec<String>,
}

impl ImageCount {
    /// Distinct values with their preimages, in order of first appearance.
    pub fn values(&self) -> Vec<(FieldElement, Vec<FieldElement>)> {
        let mut index: HashMap<&FieldElement, usize> = HashMap::new();
        let mut out: Vec<(FieldElement, Vec<FieldElement>)> = Vec::new();
        for (beta, value) in &self.hits {
            match index.get(value) {
                Some(&i) => out[i].1.push(beta.clone()),
                None => {
                    index.insert(value, out.len());
                    out.push((value.clone(), vec![beta.clone()]));
                }
            }
        }
        out
    }

    pub fn count(&self) -> usize {
        self.hits
            .iter()
            .map(|(_, v)| v)
            .collect::<HashSet<_>>()
            .len()
    }
}

/// Scan without the Q-specific evaluation (reference implementation).
pub fn image_hits_generic(
    phi: &RationalMap,
    set: &PlaceSet,
    height: u64,
) -> Result<Vec<(FieldElement, FieldElement)>> {
    let hits: Vec<Result<(FieldElement, FieldElement)>> = HeightBox::new(phi.field(), height)
        .par_filter_map(|beta| match phi.eval(beta) {
            ProjPoint::Finite(v) => match set.is_s_unit(&v) {
                Ok(true) => Some(Ok((beta.clone(), v))),
                Ok(false) => None,
                Err(e) => Some(Err(e)),
            },
            ProjPoint::Infinity => None,
        });
    hits.into_iter().collect()
}

pub fn image_hits(
    phi: &RationalMap,
    set: &PlaceSet,
    height: u64,
) -> Result<Vec<(FieldElement, FieldElement)>> {
    let field = phi.field();
    if field.is_rationals() {
        return Ok(qscan::image_scan(phi, set.rational_primes(), height)
            .into_iter()
            .map(|(b, v)| {
                (
                    FieldElement::from_rat(field, b),
                    FieldElement::from_rat(field, v),
                )
            })
            .collect());
    }
    image_hits_generic(phi, set, height)
}

/// Distinct S-unit values `phi(beta)` over the height box, cross-checked
/// against the unit-equation route when `phi` is monic over `O_S` with two
/// roots in `K`.
pub fn count_image_sunits_box(
    phi: &RationalMap,
    set: &PlaceSet,
    height: u64,
) -> Result<ImageCount> {
    let hits = image_hits(phi, set, height)?;
    let cross_check = cross_check(phi, set, height, &hits)?;
    Ok(ImageCount {
        height,
        hits,
        cross_check,
    })
}

/// Distinct roots of the numerator lying in `K`, found among rational roots.
fn rational_roots_in_field(phi: &RationalMap) -> Vec<FieldElement> {
    let field = phi.field();
    let coeffs: Option<Vec<Rat>> = phi
        .num()
        .coeffs()
        .iter()
        .map(|c| c.as_rational().cloned())
        .collect();
    let Some(coeffs) = coeffs else {
        return Vec::new();
    };
    crate::poly::QPoly::new((), coeffs)
        .rational_roots()
        .unwrap_or_default()
        .into_iter()
        .map(|r| FieldElement::from_rat(field, r))
        .collect()
}

fn cross_check(
    phi: &RationalMap,
    set: &PlaceSet,
    height: u64,
    hits: &[(FieldElement, FieldElement)],
) -> Result<CrossCheckStatus> {
    let roots = rational_roots_in_field(phi);
    if roots.len() < 2 {
        return Ok(CrossCheckStatus::NotApplicable(
            "map has fewer than two roots in the field".into(),
        ));
    }
    let (d1, d2) = (&roots[0], &roots[1]);
    let inst = match monic_unit_reduction(phi, d1, d2, set) {
        Ok(inst) => inst,
        Err(Error::NotMonicOverOS(why)) => return Ok(CrossCheckStatus::NotApplicable(why)),
        Err(e) => return Err(e),
    };
    // every beta of height <= H gives u1 = beta - delta1 of height <= 2 H h(delta1)
    let route_height = Int::from(2 * height) * d1.height();
    let field = phi.field();
    if !field.is_rationals() {
        let h = route_height.to_f64().unwrap_or(f64::INFINITY);
        let size = (2.0 * h + 1.0).powi(field.degree() as i32) * h;
        if size > CROSS_CHECK_LIMIT {
            return Ok(CrossCheckStatus::Skipped(format!(
                "unit-equation region of height {route_height} is too large to enumerate"
            )));
        }
    }
    let solutions = solve_unit_equation_box(&inst, &route_height)?;
    let hb = Int::from(height);
    let mut route: Vec<(FieldElement, FieldElement)> = Vec::new();
    for (u1, _) in &solutions {
        let beta = inst.back(u1);
        if beta.height() > hb {
            continue;
        }
        if let ProjPoint::Finite(v) = phi.eval(&beta) {
            if set.is_s_unit(&v)? {
                route.push((beta, v));
            }
        }
    }
    let sol_set: HashSet<&FieldElement> = solutions.iter().map(|(u1, _)| u1).collect();
    let scan_set: HashSet<&FieldElement> = hits.iter().map(|(b, _)| b).collect();
    let route_set: HashSet<&FieldElement> = route.iter().map(|(b, _)| b).collect();
    let mut mismatches = Vec::new();
    for (beta, _) in hits {
        let (u1, u2) = inst.forward(beta);
        if !sol_set.contains(&u1) {
            mismatches.push(format!(
                "scan preimage {beta} gives ({u1}, {u2}) missing from the unit-equation solutions"
            ));
        }
    }
    for (beta, _) in &route {
        if !scan_set.contains(beta) {
            mismatches.push(format!(
                "unit-equation preimage {beta} missing from the scan"
            ));
        }
    }
    let scan_values: HashSet<&FieldElement> = hits.iter().map(|(_, v)| v).collect();
    let route_values: HashSet<&FieldElement> = route.iter().map(|(_, v)| v).collect();
    if scan_values != route_values {
        mismatches.push("value sets differ".into());
    }
    let ceiling = evertse_bound(inst.place_set_ext.s());
    Ok(CrossCheckStatus::Done(CrossCheck {
        delta1: d1.to_strings(),
        delta2: d2.to_strings(),
        route_height: route_height.to_string(),
        solutions: solutions.len(),
        within_ceiling: Int::from(solutions.len()) <= ceiling,
        ceiling: ceiling.to_string(),
        scan_preimages: scan_set.len(),
        route_preimages: route_set.len(),
        agree: mismatches.is_empty(),
        mismatches,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nf::NumberField;

    #[test]
    fn z2_minus_z_small_box() {
        let q = NumberField::rationals();
        let s = PlaceSet::above_primes(&q, &[2, 3]).unwrap();
        let phi = RationalMap::from_i64s(&q, &[0, -1, 1], &[1]).unwrap();
        let c = count_image_sunits_box(&phi, &s, 100).unwrap();
        let values: Vec<String> = c.values().iter().map(|(v, _)| v.to_string()).collect();
        for v in ["2", "6", "12", "72"] {
            assert!(values.contains(&v.to_string()), "{v}");
        }
        match &c.cross_check {
            CrossCheckStatus::Done(cc) => assert!(cc.agree, "{:?}", cc.mismatches),
            other => panic!("{other:?}"),
        }
        assert_eq!(c.hits, image_hits_generic(&phi, &s, 100).unwrap());
    }

    #[test]
    fn excluded_shape_scans() {
        let q = NumberField::rationals();
        let s = PlaceSet::archimedean(&q);
        let phi = RationalMap::from_i64s(&q, &[0, 0, 1], &[1]).unwrap();
        let c = count_image_sunits_box(&phi, &s, 30).unwrap();
        assert_eq!(c.count(), 1);
        assert_eq!(c.values()[0].0, FieldElement::one(&q));
        assert!(matches!(c.cross_check, CrossCheckStatus::NotApplicable(_)));
    }

    #[test]
    fn empty_intersection() {
        let q = NumberField::rationals();
        let s = PlaceSet::archimedean(&q);
        let phi = RationalMap::from_i64s(&q, &[7, 0, 1], &[1]).unwrap();
        assert_eq!(count_image_sunits_box(&phi, &s, 50).unwrap().count(), 0);
    }

    #[test]
    fn gaussian_cross_check() {
        let k = NumberField::quadratic(-1).unwrap();
        let s = PlaceSet::above_primes(&k, &[2]).unwrap();
        let phi = RationalMap::from_i64s(&k, &[0, -1, 1], &[1]).unwrap();
        let c = count_image_sunits_box(&phi, &s, 3).unwrap();
        match &c.cross_check {
            CrossCheckStatus::Done(cc) => assert!(cc.agree, "{:?}", cc.mismatches),
            other => panic!("{other:?}"),
        }
        assert!(c.count() >= 2);
    }
}
