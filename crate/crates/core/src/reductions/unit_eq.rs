//! Monic polynomials with two rational roots reduce to the unit equation
//! `u1 - u2 = delta2 - delta1`.

use num_traits::{One, Signed};
use rayon::prelude::*;

use crate::arith::{Int, Rat};
use crate::dynamics::RationalMap;
use crate::error::{Error, Result};
use crate::nf::{FieldElement, HeightBox, NumberField};
use crate::places::{rational_s_units, PlaceSet};

/// A field `K'` containing both roots, for maps defined over Q whose roots
/// are not rational.
#[derive(Clone, Debug)]
pub struct ExtensionData {
    pub field: NumberField,
    pub delta1: FieldElement,
    pub delta2: FieldElement,
}

#[derive(Clone, Debug)]
pub struct UnitEquationInstance {
    pub map: RationalMap,
    pub base: PlaceSet,
    pub delta1: FieldElement,
    pub delta2: FieldElement,
    /// `S'` in the field of the roots.
    pub place_set_ext: PlaceSet,
    /// `delta2 - delta1`.
    pub gap: FieldElement,
}

impl UnitEquationInstance {
    pub fn ext_field(&self) -> &NumberField {
        self.place_set_ext.field()
    }

    /// Moves an element of `K` into the root field.
    pub fn lift(&self, x: &FieldElement) -> FieldElement {
        if x.field() == self.ext_field() {
            x.clone()
        } else {
            FieldElement::from_rat(self.ext_field(), x.coords()[0].clone())
        }
    }

    /// `(gamma - delta1, gamma - delta2)`.
    pub fn forward(&self, gamma: &FieldElement) -> (FieldElement, FieldElement) {
        let g = self.lift(gamma);
        (&g - &self.delta1, &g - &self.delta2)
    }

    /// `gamma = u1 + delta1`.
    pub fn back(&self, u1: &FieldElement) -> FieldElement {
        u1 + &self.delta1
    }
}

fn check_monic_over_os(phi: &RationalMap, set: &PlaceSet) -> Result<()> {
    if !phi.is_polynomial() || !phi.num().is_monic() {
        return Err(Error::NotMonicOverOS(format!(
            "{phi} is not a monic polynomial"
        )));
    }
    for c in phi.num().coeffs() {
        if !set.is_s_integer(c)? {
            return Err(Error::NotMonicOverOS(format!(
                "coefficient {c} is not an S-integer"
            )));
        }
    }
    Ok(())
}

fn check_roots(
    phi_num: &crate::dynamics::KPoly,
    d1: &FieldElement,
    d2: &FieldElement,
) -> Result<()> {
    if d1 == d2 {
        return Err(Error::RootsNotDistinct);
    }
    for d in [d1, d2] {
        if !phi_num.eval(d).is_zero() {
            return Err(Error::InvalidInput(format!("{d} is not a root of the map")));
        }
    }
    Ok(())
}

/// Roots in `K` itself; `S' = S`.
pub fn monic_unit_reduction(
    phi: &RationalMap,
    delta1: &FieldElement,
    delta2: &FieldElement,
    set: &PlaceSet,
) -> Result<UnitEquationInstance> {
    check_monic_over_os(phi, set)?;
    for d in [delta1, delta2] {
        if d.field() != phi.field() {
            return Err(Error::RootsNotInField(format!("{d} lies in another field")));
        }
    }
    check_roots(phi.num(), delta1, delta2)?;
    Ok(UnitEquationInstance {
        map: phi.clone(),
        base: set.clone(),
        delta1: delta1.clone(),
        delta2: delta2.clone(),
        place_set_ext: set.clone(),
        gap: delta2 - delta1,
    })
}

/// Maps over Q with roots in a supplied field `K'`; `S'` is every place of
/// `K'` above the primes of `S`.
pub fn monic_unit_reduction_ext(
    phi: &RationalMap,
    set: &PlaceSet,
    ext: &ExtensionData,
) -> Result<UnitEquationInstance> {
    if !phi.field().is_rationals() {
        return Err(Error::RootsNotInField(
            "extension data is only supported over Q".into(),
        ));
    }
    check_monic_over_os(phi, set)?;
    let d = phi.degree();
    let k = ext.field.degree();
    if k > d * (d - 1).max(1) {
        return Err(Error::InvalidInput(format!(
            "root field of degree {k} exceeds d(d-1) = {}",
            d * (d - 1)
        )));
    }
    let lifted = phi.num().map(ext.field.clone(), |c| {
        FieldElement::from_rat(&ext.field, c.coords()[0].clone())
    });
    for x in [&ext.delta1, &ext.delta2] {
        if x.field() != &ext.field {
            return Err(Error::RootsNotInField(format!(
                "{x} is not in the supplied field"
            )));
        }
    }
    check_roots(&lifted, &ext.delta1, &ext.delta2)?;
    let ext_set = PlaceSet::above_primes(&ext.field, set.rational_primes())?;
    if ext_set.s() > k * set.s() {
        return Err(Error::AssertionFailed(format!(
            "|S'| = {} exceeds [K':K] |S| = {}",
            ext_set.s(),
            k * set.s()
        )));
    }
    Ok(UnitEquationInstance {
        map: phi.clone(),
        base: set.clone(),
        delta1: ext.delta1.clone(),
        delta2: ext.delta2.clone(),
        gap: &ext.delta2 - &ext.delta1,
        place_set_ext: ext_set,
    })
}

/// `C1 C2^(s'-1)` with `C1 = C2 = 256`.
pub fn evertse_bound(s_prime: usize) -> Int {
    num_traits::pow(Int::from(256), s_prime)
}

/// All `(u1, u2)` of S'-units with `u1 - u2 = gap` and `h(u1) <= height`
/// (over Q: S-smooth numerator and denominator at most `height`).
pub fn solve_unit_equation_box(
    inst: &UnitEquationInstance,
    height: &Int,
) -> Result<Vec<(FieldElement, FieldElement)>> {
    let set = &inst.place_set_ext;
    let field = set.field();
    if field.is_rationals() {
        let gap = &inst.gap.coords()[0];
        let out = rational_s_units(set, height)
            .into_par_iter()
            .filter_map(|u1: Rat| {
                let u2 = &u1 - gap;
                let ok = !num_traits::Zero::is_zero(&u2)
                    && set.strip(u2.numer()).is_one()
                    && set.strip(u2.denom()).is_one();
                ok.then(|| {
                    (
                        FieldElement::from_rat(field, u1),
                        FieldElement::from_rat(field, u2),
                    )
                })
            })
            .collect();
        return Ok(out);
    }
    let h: u64 = num_traits::ToPrimitive::to_u64(&height.abs())
        .ok_or_else(|| Error::InvalidInput("height bound too large".into()))?;
    let hits: Vec<Result<Option<(FieldElement, FieldElement)>>> = HeightBox::new(field, h)
        .par_filter_map(|u1| {
            let run = || -> Result<Option<(FieldElement, FieldElement)>> {
                if !set.is_s_unit(u1)? {
                    return Ok(None);
                }
                let u2 = u1 - &inst.gap;
                Ok(set.is_s_unit(&u2)?.then(|| (u1.clone(), u2)))
            };
            match run() {
                Ok(None) => None,
                other => Some(other),
            }
        });
    hits.into_iter().filter_map(|r| r.transpose()).collect()
}
