//! Superelliptic twists `y^p = gamma_i psi(z)` attached to a map and a set
//! of places, and rational point searches on them.

use serde::Serialize;

use crate::arith::{is_prime_u64, primes, Rat};
use crate::dynamics::{ProjPoint, RationalMap};
use crate::error::{Error, Result};
use crate::nf::{FieldElement, HeightBox};
use crate::places::{CosetReps, PlaceSet, UnitGroupData};
use crate::qscan;

/// Smallest prime `p > d` with `(p - 1)(m - 2) > 2`.
pub fn select_prime(d: usize, m: usize) -> Result<u64> {
    if d < 2 || m < 3 {
        return Err(Error::InvalidInput(format!(
            "select_prime needs d >= 2 and m >= 3, got ({d}, {m})"
        )));
    }
    let p = primes()
        .find(|&p| p > d as u64 && (p - 1) * (m as u64 - 2) > 2)
        .expect("primes are unbounded");
    let ok = if (d, m) == (2, 3) {
        p == 5
    } else {
        p < 2 * d as u64
    };
    if !ok {
        return Err(Error::AssertionFailed(format!(
            "select_prime({d}, {m}) = {p}"
        )));
    }
    Ok(p)
}

/// `(p - 1)(m - 2) / 2`; zero when `m = 2`.
pub fn genus_of(p: u64, m: usize) -> u64 {
    assert!(m >= 2);
    (p - 1) * (m as u64 - 2) / 2
}

/// `2 <= g <= (5d/2 - 1)(2d - 2)/2`, compared in integers.
pub fn genus_in_range(g: u64, d: usize) -> bool {
    let d = d as u64;
    g >= 2 && 4 * g <= (5 * d - 2) * (2 * d - 2)
}

#[derive(Clone, Debug, Serialize)]
pub struct IrreducibilityCertificate {
    /// Largest zero or pole multiplicity of `psi`, including at infinity.
    pub max_multiplicity: usize,
    pub p: u64,
}

#[derive(Clone, Debug)]
pub struct SuperellipticModel {
    pub p: u32,
    pub gamma: FieldElement,
    pub psi: RationalMap,
    pub m: usize,
    pub genus: u64,
    pub certificate: IrreducibilityCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CurvePoint {
    pub z: FieldElement,
    pub y: FieldElement,
}

impl SuperellipticModel {
    /// `y != 0` and `y^p = gamma psi(z)`.
    pub fn contains(&self, pt: &CurvePoint) -> bool {
        if pt.y.is_zero() {
            return false;
        }
        match self.psi.eval(&pt.z) {
            ProjPoint::Finite(v) => pt.y.pow_u(self.p as u64) == &self.gamma * &v,
            ProjPoint::Infinity => false,
        }
    }
}

/// The twists for one `(psi, S, p)`.
#[derive(Clone, Debug)]
pub struct CurveBattery {
    pub p: u32,
    pub m: usize,
    pub genus: u64,
    pub reps: CosetReps,
    pub models: Vec<SuperellipticModel>,
    /// `p` equals `select_prime(deg psi, m)`, so the genus range was asserted.
    pub genus_range_checked: bool,
}

pub fn build_curves(
    psi: &RationalMap,
    set: &PlaceSet,
    p: u32,
    units: Option<&UnitGroupData>,
) -> Result<CurveBattery> {
    if !is_prime_u64(p as u64) {
        return Err(Error::NotPrime(p.to_string()));
    }
    let d = psi.degree();
    if p as usize <= d {
        return Err(Error::PrimeTooSmall {
            p: p as u64,
            degree: d,
        });
    }
    let m = psi.zero_pole_count()?;
    let at_inf = psi.num().deg0().abs_diff(psi.den().deg0());
    let max_multiplicity = psi
        .num()
        .multiplicity_profile()
        .into_iter()
        .chain(psi.den().multiplicity_profile())
        .map(|(_, k)| k)
        .chain([at_inf])
        .max()
        .unwrap_or(0);
    if max_multiplicity >= p as usize {
        return Err(Error::AssertionFailed(format!(
            "multiplicity {max_multiplicity} of a map of degree {d} is not below {p}"
        )));
    }
    let reps = set.coset_reps(p, units)?;
    if reps.len() as f64 > (p as f64).powi(set.s() as i32) {
        return Err(Error::AssertionFailed(format!(
            "{} representatives exceed p^s",
            reps.len()
        )));
    }
    let genus = genus_of(p as u64, m);
    let genus_range_checked = d >= 2 && m >= 3 && select_prime(d, m)? == p as u64;
    if genus_range_checked && !genus_in_range(genus, d) {
        return Err(Error::AssertionFailed(format!(
            "genus {genus} outside the range for degree {d}"
        )));
    }
    let models = reps
        .reps
        .iter()
        .map(|g| SuperellipticModel {
            p,
            gamma: g.clone(),
            psi: psi.clone(),
            m,
            genus,
            certificate: IrreducibilityCertificate {
                max_multiplicity,
                p: p as u64,
            },
        })
        .collect();
    Ok(CurveBattery {
        p,
        m,
        genus,
        reps,
        models,
        genus_range_checked,
    })
}

/// The point `(beta, delta)` on the twist selected by the power class of `psi(beta)`.
pub fn map_sunit_to_curve(
    beta: &FieldElement,
    battery: &CurveBattery,
    set: &PlaceSet,
) -> Result<(usize, CurvePoint)> {
    let psi = &battery.models[0].psi;
    let value = match psi.eval(beta) {
        ProjPoint::Finite(v) if set.is_s_unit(&v)? => v,
        _ => return Err(Error::NotSUnitValue),
    };
    let (i, delta) = battery.reps.decompose(set, &value)?;
    let pt = CurvePoint {
        z: beta.clone(),
        y: delta,
    };
    if !battery.models[i].contains(&pt) {
        return Err(Error::AssertionFailed(format!(
            "({beta}, {}) is not on twist {i}",
            pt.y
        )));
    }
    Ok((i, pt))
}

/// Search on many twists of the same `psi` at once; one list per model.
pub fn curve_point_search_batch(
    models: &[SuperellipticModel],
    height: u64,
) -> Result<Vec<Vec<CurvePoint>>> {
    let Some(first) = models.first() else {
        return Ok(Vec::new());
    };
    let field = first.psi.field().clone();
    if field.is_rationals() && models.iter().all(|m| m.psi == first.psi && m.p == first.p) {
        let gammas: Vec<Rat> = models.iter().map(|m| m.gamma.coords()[0].clone()).collect();
        return Ok(qscan::curve_scan(&first.psi, &gammas, first.p, height)
            .into_iter()
            .map(|pts| {
                pts.into_iter()
                    .map(|(z, y)| CurvePoint {
                        z: FieldElement::from_rat(&field, z),
                        y: FieldElement::from_rat(&field, y),
                    })
                    .collect()
            })
            .collect());
    }
    models
        .iter()
        .map(|m| curve_point_search_generic(m, height))
        .collect()
}

/// Points with `y != 0` and `z` in the height box; a lower bound for the
/// number of such points, one `y` per `z`.
pub fn curve_point_search(model: &SuperellipticModel, height: u64) -> Result<Vec<CurvePoint>> {
    Ok(
        curve_point_search_batch(std::slice::from_ref(model), height)?
            .pop()
            .unwrap_or_default(),
    )
}

/// Reference search through exact root extraction at every box element.
pub fn curve_point_search_generic(
    model: &SuperellipticModel,
    height: u64,
) -> Result<Vec<CurvePoint>> {
    let found: Vec<Result<CurvePoint>> =
        HeightBox::new(model.psi.field(), height).par_filter_map(|z| {
            let ProjPoint::Finite(v) = model.psi.eval(z) else {
                return None;
            };
            if v.is_zero() {
                return None;
            }
            match (&model.gamma * &v).nth_root(model.p) {
                Ok(Some(y)) => Some(Ok(CurvePoint { z: z.clone(), y })),
                Ok(None) => None,
                Err(e) => Some(Err(e)),
            }
        });
    found.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nf::NumberField;

    fn setup() -> (NumberField, PlaceSet, RationalMap) {
        let q = NumberField::rationals();
        let s = PlaceSet::above_primes(&q, &[2, 3]).unwrap();
        let psi = RationalMap::from_i64s(&q, &[0, -1, 1], &[1]).unwrap();
        (q, s, psi)
    }

    #[test]
    fn prime_and_genus_table() {
        assert_eq!(select_prime(2, 3).unwrap(), 5);
        assert_eq!(select_prime(2, 4).unwrap(), 3);
        assert_eq!(select_prime(3, 4).unwrap(), 5);
        assert_eq!(genus_of(5, 3), 2);
        assert_eq!(genus_of(3, 4), 2);
        assert_eq!(genus_of(7, 2), 0);
    }

    #[test]
    fn battery_for_z2_minus_z() {
        let (_, s, psi) = setup();
        let b = build_curves(&psi, &s, 5, None).unwrap();
        assert_eq!(b.models.len(), 25);
        assert!(b
            .models
            .iter()
            .all(|m| m.genus == 2 && m.certificate.max_multiplicity == 2));
        assert!(b.genus_range_checked);
        assert_eq!(
            build_curves(&psi, &s, 2, None).unwrap_err(),
            Error::PrimeTooSmall { p: 2, degree: 2 }
        );
    }

    #[test]
    fn forward_map_to_curves() {
        let (q, s, psi) = setup();
        let b = build_curves(&psi, &s, 5, None).unwrap();
        let (i, pt) = map_sunit_to_curve(&FieldElement::from_i64(&q, 3), &b, &s).unwrap();
        assert_eq!(b.models[i].gamma, FieldElement::from_i64(&q, 1296));
        assert_eq!(pt.y, FieldElement::from_i64(&q, 6));
        let (i, pt) = map_sunit_to_curve(&FieldElement::from_i64(&q, 2), &b, &s).unwrap();
        assert_eq!(b.models[i].gamma, FieldElement::from_i64(&q, 16));
        assert_eq!(pt.y, FieldElement::from_i64(&q, 2));
        assert_eq!(
            map_sunit_to_curve(&FieldElement::from_i64(&q, 5), &b, &s).unwrap_err(),
            Error::NotSUnitValue
        );
    }

    #[test]
    fn fast_search_matches_generic() {
        let (q, s, psi) = setup();
        let b = build_curves(&psi, &s, 5, None).unwrap();
        let fast = curve_point_search_batch(&b.models, 12).unwrap();
        for (m, pts) in b.models.iter().zip(&fast) {
            assert_eq!(pts, &curve_point_search_generic(m, 12).unwrap());
            assert!(pts.iter().all(|p| m.contains(p)));
        }
        let idx = b
            .models
            .iter()
            .position(|m| m.gamma == FieldElement::from_i64(&q, 1296))
            .unwrap();
        assert!(fast[idx].contains(&CurvePoint {
            z: FieldElement::from_i64(&q, 3),
            y: FieldElement::from_i64(&q, 6)
        }));
    }
}
