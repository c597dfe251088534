//! Valuation-escape certificates. Once an orbit reaches an S-unit, the
//! valuation at a fixed place outside S becomes negative and keeps falling,
//! so no later orbit point is an S-unit.
//!
//! All absolute-value statements are checked additively: `|x|_v > 1` iff `v(x) < 0`.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::Int;
use crate::dynamics::{orbit, KPoly, ProjPoint, RationalMap, Truncation};
use crate::error::{Error, Result};
use crate::nf::{FieldElement, PrimePlace};
use crate::places::{s_units_in_box, PlaceSet};

pub const CONCLUSION: &str = "every orbit contains at most one S-unit";
pub const CONVENTION: &str = "|x|_v > 1 iff v(x) < 0";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    /// `phi0 + beta z^i` with `phi0` monic over `O_S` and `beta` not integral.
    Unicritical,
    /// `(g_d z^d + ... + g_0) / z^d'` with a dominant leading coefficient.
    LaurentDominant,
}

#[derive(Clone, Debug, Serialize)]
pub struct HypothesisCheck {
    pub clause: String,
    pub holds: bool,
    pub witness: String,
}

fn check(clause: impl Into<String>, holds: bool, witness: impl Into<String>) -> HypothesisCheck {
    HypothesisCheck {
        clause: clause.into(),
        holds,
        witness: witness.into(),
    }
}

/// `v(g_d) - v(g_i)` seen from the dominant side: `margin = v(g_i) - v(g_d) > 0`.
#[derive(Clone, Debug, Serialize)]
pub struct DominanceMargin {
    pub index: usize,
    pub valuation: i64,
    pub margin: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct EscapeCertificate {
    pub kind: CertificateKind,
    pub map_num: Vec<Vec<String>>,
    pub map_den: Vec<Vec<String>>,
    pub places: String,
    pub place: PrimePlace,
    /// `v(beta)` or `v(g_d)`: the valuation of the first orbit point after an S-unit.
    pub base_valuation: i64,
    /// Added at every step of the recursion `w' = offset + growth_exponent * w`.
    pub offset: i64,
    pub growth_exponent: i64,
    pub exceptional_index: Option<usize>,
    pub margins: Vec<DominanceMargin>,
    pub hypotheses: Vec<HypothesisCheck>,
    pub conclusion: String,
    pub convention: String,
    #[serde(skip)]
    pub map: RationalMap,
    #[serde(skip)]
    pub set: PlaceSet,
}

impl EscapeCertificate {
    /// Predicted `v(phi^n(gamma))` for an S-unit `gamma`, `n >= 1`.
    pub fn expected_valuation(&self, n: usize) -> Option<i64> {
        let mut w = self.base_valuation;
        for _ in 1..n {
            w = self
                .growth_exponent
                .checked_mul(w)?
                .checked_add(self.offset)?;
        }
        Some(w)
    }
}

fn first_failure(checks: &[HypothesisCheck]) -> Result<()> {
    match checks.iter().find(|c| !c.holds) {
        Some(c) => Err(Error::HypothesisFailed(format!(
            "{}: {}",
            c.clause, c.witness
        ))),
        None => Ok(()),
    }
}

/// Places outside S where `x` has negative valuation, smallest first.
fn poles_outside(x: &FieldElement, set: &PlaceSet) -> Result<Vec<(PrimePlace, i64)>> {
    let mut out = Vec::new();
    let mut support = x.support()?;
    support.sort();
    for p in support {
        if set.contains(&p) {
            continue;
        }
        let v = x.valuation(&p)?;
        if v < 0 {
            out.push((p, v));
        }
    }
    Ok(out)
}

/// Certificate for `phi = phi0 + beta z^i`.
pub fn unicritical_certificate(
    phi0: &KPoly,
    beta: &FieldElement,
    i: usize,
    set: &PlaceSet,
) -> Result<EscapeCertificate> {
    let field = set.field();
    if phi0.ctx() != field || beta.field() != field {
        return Err(Error::FieldMismatch);
    }
    let d = phi0.deg0();
    let mut hyp = Vec::new();
    let mut non_integral = Vec::new();
    for c in phi0.coeffs() {
        if !set.is_s_integer(c)? {
            non_integral.push(c.to_string());
        }
    }
    let monic = phi0.is_monic() && non_integral.is_empty();
    let witness = if !phi0.is_monic() {
        format!(
            "leading coefficient {}",
            phi0.lc().map(|c| c.to_string()).unwrap_or_default()
        )
    } else if !non_integral.is_empty() {
        format!("coefficients not S-integral: {}", non_integral.join(", "))
    } else {
        format!("degree {d}, all coefficients S-integral")
    };
    hyp.push(check("phi0 is monic over O_S", monic, witness));
    first_failure(&hyp)?;
    hyp.push(check(
        "exceptional index i <= d - 2",
        d >= 2 && i + 2 <= d,
        format!("i = {i}, d = {d}"),
    ));
    first_failure(&hyp)?;
    let poles = if beta.is_zero() {
        Vec::new()
    } else {
        poles_outside(beta, set)?
    };
    let Some((place, v)) = poles.into_iter().next() else {
        return Err(Error::HypothesisFailed(format!(
            "beta is not in O_S: beta = {beta} is integral at every place outside S"
        )));
    };
    hyp.push(check(
        "beta is not in O_S",
        true,
        format!("v(beta) = {v} at {place} outside S"),
    ));
    let term = KPoly::monomial(beta.clone(), i);
    let map = RationalMap::new(phi0.add(&term), KPoly::one(field.clone()))?;
    let (map_num, map_den) = map.coefficient_strings();
    Ok(EscapeCertificate {
        kind: CertificateKind::Unicritical,
        map_num,
        map_den,
        places: set.describe(),
        place,
        base_valuation: v,
        offset: 0,
        growth_exponent: d as i64,
        exceptional_index: Some(i),
        margins: Vec::new(),
        hypotheses: hyp,
        conclusion: CONCLUSION.into(),
        convention: CONVENTION.into(),
        map,
        set: set.clone(),
    })
}

/// `(g_0, ..., g_d, d')` for `phi = (g_d z^d + ... + g_0) / z^d'`.
fn laurent_parts(phi: &RationalMap) -> Result<(Vec<FieldElement>, usize)> {
    let den = phi.den();
    let dp = den.deg0();
    if den.coeffs()[..dp].iter().any(|c| !c.is_zero()) {
        return Err(Error::HypothesisFailed(format!(
            "denominator of {phi} is not a power of z"
        )));
    }
    Ok((phi.num().coeffs().to_vec(), dp))
}

#[derive(Clone, Debug, Serialize)]
pub struct LaurentRestriction {
    pub hypotheses: Vec<HypothesisCheck>,
    pub verdict: String,
    pub height: u64,
    pub inputs_checked: usize,
    /// `(u, phi(u))` for S-units `u` in the box with `phi(u)` an S-unit.
    pub hits: Vec<(Vec<String>, Vec<String>)>,
    pub count: usize,
}

/// Checks that only S-unit inputs can give S-unit values, then counts the
/// distinct S-unit values over S-unit inputs of height at most `height`.
pub fn laurent_unit_restriction(
    phi: &RationalMap,
    set: &PlaceSet,
    height: u64,
) -> Result<LaurentRestriction> {
    let (g, dp) = laurent_parts(phi)?;
    let d = g.len() - 1;
    let mut hyp = vec![check(
        "1 <= d' and d' != d",
        dp >= 1 && dp != d,
        format!("d = {d}, d' = {dp}"),
    )];
    first_failure(&hyp)?;
    let g0_unit = set.is_s_unit(&g[0])?;
    hyp.push(check(
        "g_0 is an S-unit",
        g0_unit,
        format!("g_0 = {}", g[0]),
    ));
    let gd_unit = set.is_s_unit(&g[d])?;
    hyp.push(check(
        "g_d is an S-unit",
        gd_unit,
        format!("g_d = {}", g[d]),
    ));
    let mut bad = Vec::new();
    for (i, c) in g.iter().enumerate() {
        if !set.is_s_integer(c)? {
            bad.push(format!("g_{i} = {c}"));
        }
    }
    hyp.push(check(
        "every g_i is an S-integer",
        bad.is_empty(),
        if bad.is_empty() {
            "all coefficients S-integral".into()
        } else {
            bad.join(", ")
        },
    ));
    first_failure(&hyp)?;
    let numerator = RationalMap::new(phi.num().clone(), KPoly::one(phi.field().clone()))?;
    let power = d >= 2 && numerator.is_kth_power_geometric(d)?;
    hyp.push(check(
        "numerator is not a d-th power over the algebraic closure",
        d >= 2 && !power,
        format!("d = {d}"),
    ));
    first_failure(&hyp)?;
    let inputs = s_units_in_box(set, height)?;
    let mut hits = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for u in &inputs {
        if let ProjPoint::Finite(v) = phi.eval(u) {
            if set.is_s_unit(&v)? {
                seen.insert(v.clone());
                hits.push((u.to_strings(), v.to_strings()));
            }
        }
    }
    Ok(LaurentRestriction {
        hypotheses: hyp,
        verdict: "S-unit values of phi arise only from S-unit inputs".into(),
        height,
        inputs_checked: inputs.len(),
        hits,
        count: seen.len(),
    })
}

/// Certificate for a Laurent map whose leading coefficient dominates at a
/// place outside S.
pub fn laurent_escape_certificate(phi: &RationalMap, set: &PlaceSet) -> Result<EscapeCertificate> {
    let (g, dp) = laurent_parts(phi)?;
    let d = g.len() - 1;
    let mut hyp = vec![check("d > d'", d > dp, format!("d = {d}, d' = {dp}"))];
    first_failure(&hyp)?;
    let lead = &g[d];
    let mut reasons = Vec::new();
    for (place, vd) in poles_outside(lead, set)? {
        let mut margins = Vec::new();
        let mut offending = None;
        for (i, c) in g[..d].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let vi = c.valuation(&place)?;
            if vi <= vd {
                offending = Some(format!(
                    "g_{i} = {c} has v = {vi} <= v(g_{d}) = {vd} at {place}"
                ));
                break;
            }
            margins.push(DominanceMargin {
                index: i,
                valuation: vi,
                margin: vi - vd,
            });
        }
        if let Some(why) = offending {
            reasons.push(why);
            continue;
        }
        hyp.push(check(
            "v(g_d) < min(0, v(g_i)) for every nonzero g_i with i < d",
            true,
            format!("v(g_{d}) = {vd} at {place} outside S"),
        ));
        let (map_num, map_den) = phi.coefficient_strings();
        return Ok(EscapeCertificate {
            kind: CertificateKind::LaurentDominant,
            map_num,
            map_den,
            places: set.describe(),
            place,
            base_valuation: vd,
            offset: vd,
            growth_exponent: (d - dp) as i64,
            exceptional_index: None,
            margins,
            hypotheses: hyp,
            conclusion: CONCLUSION.into(),
            convention: CONVENTION.into(),
            map: phi.clone(),
            set: set.clone(),
        });
    }
    let witness = if reasons.is_empty() {
        format!("g_{d} = {lead} has no negative valuation outside S")
    } else {
        reasons.join("; ")
    };
    Err(Error::HypothesisFailed(format!(
        "leading coefficient is not dominant: {witness}"
    )))
}

#[derive(Clone, Debug, Serialize)]
pub struct TrajectoryStep {
    pub n: usize,
    pub valuation: i64,
    pub expected: i64,
}

/// Exact `v(phi^n(gamma))` for `n = 1..=steps`, each compared with the
/// certificate's growth law.
pub fn verify_valuation_growth(
    phi: &RationalMap,
    gamma: &FieldElement,
    cert: &EscapeCertificate,
    steps: usize,
) -> Result<Vec<TrajectoryStep>> {
    if !cert.set.is_s_unit(gamma)? {
        return Err(Error::NotSUnit);
    }
    let mut out = Vec::with_capacity(steps);
    let mut x = gamma.clone();
    for n in 1..=steps {
        let expected = cert.expected_valuation(n).ok_or_else(|| {
            Error::InvalidInput(format!("predicted valuation at step {n} overflows"))
        })?;
        x = match phi.eval(&x) {
            ProjPoint::Finite(y) => y,
            ProjPoint::Infinity => {
                return Err(Error::AssertionFailed(format!(
                    "orbit of {gamma} reached infinity at step {n}"
                )))
            }
        };
        let found = x.valuation(&cert.place)?;
        if found != expected {
            return Err(Error::TrajectoryMismatch {
                step: n,
                expected,
                found,
            });
        }
        out.push(TrajectoryStep {
            n,
            valuation: found,
            expected,
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitCheck {
    pub start: Vec<String>,
    pub steps: usize,
    pub reason: Truncation,
    pub s_unit_values: Vec<Vec<String>>,
    /// The orbit passes through an S-unit, so the certificate applies to it.
    pub covered: bool,
}

impl OrbitCheck {
    pub fn within_bound(&self) -> bool {
        !self.covered || self.s_unit_values.len() <= 1
    }
}

/// `count` starting points drawn with a fixed seed from the S-units of
/// height at most `height`.
pub fn sample_s_units(
    set: &PlaceSet,
    height: u64,
    count: usize,
    seed: u64,
) -> Result<Vec<FieldElement>> {
    let pool = s_units_in_box(set, height)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count)
        .filter_map(|_| pool.choose(&mut rng).cloned())
        .collect())
}

/// Brute-force orbit scans from each start, counting distinct S-unit values.
pub fn orbit_oracle(
    cert: &EscapeCertificate,
    starts: &[FieldElement],
    steps: usize,
    height_cap: &Int,
) -> Result<Vec<OrbitCheck>> {
    starts
        .par_iter()
        .map(|a| {
            let rec = orbit(&cert.map, &ProjPoint::Finite(a.clone()), steps, height_cap);
            let mut values: Vec<FieldElement> = Vec::new();
            for p in &rec.points {
                if let ProjPoint::Finite(x) = p {
                    if cert.set.is_s_unit(x)? && !values.contains(x) {
                        values.push(x.clone());
                    }
                }
            }
            let covered = match cert.kind {
                CertificateKind::Unicritical => true,
                CertificateKind::LaurentDominant => cert.set.is_s_unit(a)? || !values.is_empty(),
            };
            Ok(OrbitCheck {
                start: a.to_strings(),
                steps: rec.points.len(),
                reason: rec.reason,
                s_unit_values: values.iter().map(|v| v.to_strings()).collect(),
                covered,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};
    use crate::nf::NumberField;

    fn kp(q: &NumberField, c: &[i64]) -> KPoly {
        KPoly::new(
            q.clone(),
            c.iter().map(|&x| FieldElement::from_i64(q, x)).collect(),
        )
    }

    #[test]
    fn unicritical_examples() {
        let q = NumberField::rationals();
        let s = PlaceSet::archimedean(&q);
        let half = FieldElement::from_rat(&q, rat(1, 2));
        let c = unicritical_certificate(&kp(&q, &[0, 0, 1]), &half, 0, &s).unwrap();
        assert_eq!(
            (c.place.p(), c.base_valuation, c.growth_exponent),
            (2, -1, 2)
        );
        let traj = verify_valuation_growth(&c.map, &FieldElement::one(&q), &c, 10).unwrap();
        let vals: Vec<i64> = traj.iter().map(|t| t.valuation).collect();
        assert_eq!(vals, (0..10).map(|k| -(1i64 << k)).collect::<Vec<_>>());

        let third = FieldElement::from_rat(&q, rat(1, 3));
        let c = unicritical_certificate(&kp(&q, &[0, 0, 0, 1]), &third, 1, &s).unwrap();
        assert_eq!(c.place.p(), 3);
        let fifth = FieldElement::from_rat(&q, rat(1, 5));
        let c = unicritical_certificate(&kp(&q, &[0, 0, 0, 1]), &fifth, 1, &s).unwrap();
        let traj = verify_valuation_growth(&c.map, &FieldElement::from_i64(&q, -1), &c, 5).unwrap();
        let vals: Vec<i64> = traj.iter().map(|t| t.valuation).collect();
        assert_eq!(vals, vec![-1, -3, -9, -27, -81]);
    }

    #[test]
    fn unicritical_rejections() {
        let q = NumberField::rationals();
        let s = PlaceSet::archimedean(&q);
        let half = FieldElement::from_rat(&q, rat(1, 2));
        for (phi0, beta, i) in [
            (kp(&q, &[0, 0, 1]), half.clone(), 1),
            (kp(&q, &[0, 0, 1]), FieldElement::from_i64(&q, 3), 0),
            (kp(&q, &[0, 0, 2]), half.clone(), 0),
        ] {
            assert!(matches!(
                unicritical_certificate(&phi0, &beta, i, &s),
                Err(Error::HypothesisFailed(_))
            ));
        }
        // 1/2 is integral once 2 is in S
        let s2 = PlaceSet::above_primes(&q, &[2]).unwrap();
        assert!(unicritical_certificate(&kp(&q, &[0, 0, 1]), &half, 0, &s2).is_err());
    }

    #[test]
    fn oracle_on_certified_map() {
        let q = NumberField::rationals();
        let s = PlaceSet::above_primes(&q, &[2, 3]).unwrap();
        let fifth = FieldElement::from_rat(&q, rat(1, 5));
        let c = unicritical_certificate(&kp(&q, &[1, 0, 1]), &fifth, 0, &s).unwrap();
        let starts = sample_s_units(&s, 50, 20, 7).unwrap();
        for chk in orbit_oracle(&c, &starts, 15, &num_traits::pow(Int::from(10), 80)).unwrap() {
            assert!(chk.within_bound());
            assert!(chk.s_unit_values.is_empty());
        }
        for a in &starts {
            verify_valuation_growth(&c.map, a, &c, 6).unwrap();
        }
    }

    #[test]
    fn laurent_restriction_count() {
        let q = NumberField::rationals();
        let s = PlaceSet::archimedean(&q);
        let phi = RationalMap::from_i64s(&q, &[1, 1, 1], &[0, 1]).unwrap();
        let r = laurent_unit_restriction(&phi, &s, 10).unwrap();
        assert_eq!(r.inputs_checked, 2);
        assert_eq!(r.count, 1);
        assert_eq!(r.hits[0].1, vec!["-1/1".to_string()]);
        let bad = RationalMap::from_i64s(&q, &[2, 1, 1], &[0, 1]).unwrap();
        assert!(matches!(
            laurent_unit_restriction(&bad, &s, 10),
            Err(Error::HypothesisFailed(_))
        ));
    }

    #[test]
    fn laurent_valuation_off_units() {
        // |beta|_v != 1 outside S forces v(phi(beta)) != 0
        let q = NumberField::rationals();
        let phi = RationalMap::from_i64s(&q, &[1, 1, 1], &[0, 1]).unwrap();
        for n in 1..=100i64 {
            let beta = FieldElement::from_rat(&q, rat(n, 7));
            let ProjPoint::Finite(v) = phi.eval(&beta) else {
                panic!()
            };
            let seven = q.primes_above(7).unwrap().remove(0);
            if beta.valuation(&seven).unwrap() != 0 {
                assert_ne!(v.valuation(&seven).unwrap(), 0, "{beta}");
            }
        }
    }

    #[test]
    fn laurent_dominance() {
        let q = NumberField::rationals();
        let s = PlaceSet::archimedean(&q);
        let phi = RationalMap::from_i64s(&q, &[1, 1, 0, 4], &[0, 1]).unwrap();
        assert!(matches!(
            laurent_escape_certificate(&phi, &s),
            Err(Error::HypothesisFailed(_))
        ));
        let phi = RationalMap::from_rats(&q, &[rat_int(0), rat_int(1), rat(1, 2)], &[rat_int(1)])
            .unwrap();
        let c = laurent_escape_certificate(&phi, &s).unwrap();
        assert_eq!(
            (c.place.p(), c.base_valuation, c.growth_exponent),
            (2, -1, 2)
        );
        assert_eq!(c.margins.len(), 1);
        let traj = verify_valuation_growth(&phi, &FieldElement::from_i64(&q, -1), &c, 6).unwrap();
        assert_eq!(
            traj.iter().map(|t| t.valuation).collect::<Vec<_>>(),
            vec![-1, -3, -7, -15, -31, -63]
        );
        let starts = sample_s_units(&s, 1, 10, 1).unwrap();
        let checks = orbit_oracle(&c, &starts, 12, &num_traits::pow(Int::from(10), 80)).unwrap();
        assert!(checks.iter().all(|c| c.covered && c.within_bound()));
    }
}
