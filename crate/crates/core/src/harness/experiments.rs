//! The experiment pipelines behind each CLI subcommand.

use std::collections::HashSet;
use std::time::Instant;

use serde_json::{json, Value};

use crate::arith::Int;
use crate::dynamics::{orbit, KPoly, ProjPoint, RationalMap, Truncation};
use crate::error::{Error, Result};
use crate::escape::{
    laurent_escape_certificate, laurent_unit_restriction, orbit_oracle, sample_s_units,
    unicritical_certificate, verify_valuation_growth, EscapeCertificate,
};
use crate::harness::config::{resolve_all, ExperimentConfig};
use crate::harness::interpolate::interpolation_construct;
use crate::harness::report::{element_text, witness, ExperimentReport};
use crate::nf::{FieldElement, NumberField};
use crate::places::PlaceSet;
use crate::reductions::{
    build_curves, count_image_sunits_box, curve_point_search_batch, evertse_bound, infinite_family,
    map_sunit_to_curve, monic_unit_reduction, monic_unit_reduction_ext, power_map_family,
    select_prime, solve_unit_equation_box, CrossCheckStatus, ExtensionData,
};

/// Non-rational height boxes beyond this many elements are not searched
/// as a side pipeline.
const SIDE_SEARCH_LIMIT: f64 = 5e6;
/// Trajectories stop before predicted valuations exceed this in absolute value.
const TRAJECTORY_VALUATION_LIMIT: i64 = 1 << 16;
const DEFAULT_ORACLE_STARTS: usize = 50;
const ORACLE_POOL_HEIGHT: u64 = 100;

fn timed(f: impl FnOnce() -> Result<ExperimentReport>) -> Result<ExperimentReport> {
    let t = Instant::now();
    let mut r = f()?;
    r.elapsed = t.elapsed();
    Ok(r)
}

fn inputs(cfg: &ExperimentConfig) -> Value {
    serde_json::to_value(cfg).expect("configs serialize")
}

fn box_size(field: &NumberField, height: u64) -> f64 {
    let h = height as f64;
    (2.0 * h + 1.0).powi(field.degree() as i32) * h
}

fn map_json(phi: &RationalMap) -> Value {
    let (num, den) = phi.coefficient_strings();
    json!({ "num": num, "den": den, "text": phi.to_string() })
}

fn point_text(p: &ProjPoint) -> String {
    match p {
        ProjPoint::Finite(x) => element_text(x),
        ProjPoint::Infinity => "inf".into(),
    }
}

fn base_report(pipeline: &str, cfg: &ExperimentConfig, field: &NumberField) -> ExperimentReport {
    let mut r = ExperimentReport::new(pipeline, inputs(cfg));
    r.warnings = field.warnings();
    r
}

fn dth_power_warning(phi: &RationalMap, r: &mut ExperimentReport) -> Result<()> {
    let d = phi.degree();
    if d >= 2 && phi.is_kth_power_geometric(d)? {
        r.warnings.push(
            "d-th power hypothesis violated: the map is a d-th power over the algebraic closure"
                .into(),
        );
    }
    Ok(())
}

/// Distinct S-unit values of `phi` on a height box, with the unit-equation
/// cross-check and the curve pipeline where they apply.
pub fn conjecture1_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    timed(|| {
        let field = cfg.field()?;
        let set = cfg.place_set(&field)?;
        let phi = cfg.map(&field)?;
        let h = cfg.height_or_default();
        let mut r = base_report("image-count", cfg, &field);
        dth_power_warning(&phi, &mut r)?;
        let counted = count_image_sunits_box(&phi, &set, h)?;
        let values = counted.values();
        r.count = Some(values.len());
        r.height_bound = Some(h);
        r.truncated = true;
        for (beta, v) in &counted.hits {
            r.witnesses.push(witness([
                ("beta", element_text(beta)),
                ("value", element_text(v)),
            ]));
        }
        let cross = match &counted.cross_check {
            CrossCheckStatus::Done(cc) => {
                if !cc.agree || !cc.within_ceiling {
                    return Err(Error::AssertionFailed(format!(
                        "image scan and unit-equation route disagree: {:?}",
                        cc.mismatches
                    )));
                }
                r.ceiling = Some(cc.ceiling.clone());
                serde_json::to_value(cc).expect("serializes")
            }
            CrossCheckStatus::NotApplicable(why) => {
                json!({ "status": "not_applicable", "reason": why })
            }
            CrossCheckStatus::Skipped(why) => json!({ "status": "skipped", "reason": why }),
        };
        let curves = curve_side_pipeline(cfg, &phi, &set, h, &values)?;
        r.details = json!({
            "map": map_json(&phi),
            "places": set.describe(),
            "values": values.iter().map(|(v, _)| element_text(v)).collect::<Vec<_>>(),
            "unit_equation": cross,
            "curves": curves,
        });
        Ok(r)
    })
}

fn curve_side_pipeline(
    cfg: &ExperimentConfig,
    phi: &RationalMap,
    set: &PlaceSet,
    h: u64,
    values: &[(FieldElement, Vec<FieldElement>)],
) -> Result<Value> {
    let field = phi.field();
    let d = phi.degree();
    let m = phi.zero_pole_count()?;
    if d < 2 || m < 3 {
        return Ok(
            json!({ "status": "not_applicable", "reason": format!("d = {d}, m = {m}; needs d >= 2 and m >= 3") }),
        );
    }
    let p = match cfg.prime {
        Some(p) => p,
        None => select_prime(d, m)? as u32,
    };
    let units = cfg.units(field)?;
    if !field.is_rationals() && units.is_none() {
        return Ok(json!({ "status": "skipped", "reason": "unit group data required outside Q" }));
    }
    let battery = build_curves(phi, set, p, units.as_ref())?;
    if !field.is_rationals() && box_size(field, h) > SIDE_SEARCH_LIMIT {
        return Ok(json!({
            "status": "skipped",
            "reason": format!("height box of height {h} too large for the curve search"),
            "p": p, "genus": battery.genus, "models": battery.models.len(),
        }));
    }
    let found = curve_point_search_batch(&battery.models, h)?;
    let per_model: Vec<usize> = found.iter().map(Vec::len).collect();
    let total: usize = per_model.iter().sum();
    for (v, preimages) in values {
        let (i, pt) = map_sunit_to_curve(&preimages[0], &battery, set)?;
        if !found[i].iter().any(|q| q.z == pt.z) {
            return Err(Error::AssertionFailed(format!(
                "curve search on model {i} misses the point over {} (value {v})",
                pt.z
            )));
        }
    }
    if total < values.len() {
        return Err(Error::AssertionFailed(format!(
            "{total} curve points found but {} S-unit values",
            values.len()
        )));
    }
    Ok(json!({
        "status": "done",
        "p": p,
        "m": m,
        "genus": battery.genus,
        "genus_range_checked": battery.genus_range_checked,
        "models": battery.models.len(),
        "gammas": battery.models.iter().map(|mo| element_text(&mo.gamma)).collect::<Vec<_>>(),
        "points_per_model": per_model,
        "total_points": total,
        "roundtrip_checked": values.len(),
    }))
}

/// A certificate for `phi` if it has one of the two certified shapes.
pub fn applicable_certificate(
    phi: &RationalMap,
    set: &PlaceSet,
) -> Result<Option<EscapeCertificate>> {
    if phi.is_polynomial() && phi.degree() >= 2 {
        let num = phi.num();
        let mut outside = Vec::new();
        for (i, c) in num.coeffs().iter().enumerate() {
            if !set.is_s_integer(c)? {
                outside.push(i);
            }
        }
        if let [i] = outside[..] {
            let c = num.coeffs()[i].clone();
            let phi0 = num.sub(&KPoly::monomial(c.clone(), i));
            match unicritical_certificate(&phi0, &c, i, set) {
                Ok(cert) => return Ok(Some(cert)),
                Err(Error::HypothesisFailed(_)) => {}
                Err(e) => return Err(e),
            }
        }
    }
    match laurent_escape_certificate(phi, set) {
        Ok(cert) => Ok(Some(cert)),
        Err(Error::HypothesisFailed(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Largest `n <= steps` whose predicted valuation stays in a size that is
/// cheap to compute exactly.
fn trajectory_steps(cert: &EscapeCertificate, steps: usize) -> usize {
    (1..=steps)
        .take_while(|&n| {
            cert.expected_valuation(n)
                .is_some_and(|w| w.abs() <= TRAJECTORY_VALUATION_LIMIT)
        })
        .last()
        .unwrap_or(0)
}

/// Distinct S-unit values in the forward orbit `phi(alpha), phi^2(alpha), ...`
/// (the start itself is not counted).
pub fn conjecture2_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    timed(|| {
        let field = cfg.field()?;
        let set = cfg.place_set(&field)?;
        let phi = cfg.map(&field)?;
        let alpha = cfg.require(&cfg.alpha, "alpha", &field)?;
        let n = cfg.steps_or_default();
        let cap = cfg.height_cap();
        let mut r = base_report("orbit-count", cfg, &field);
        r.steps = Some(n);
        if let Some((beta, sign)) = phi.beta_z_pm_d() {
            let e = sign as i64 * phi.degree() as i64;
            let fam = power_map_family(&beta, e, &alpha, n)?;
            let mut values = Vec::new();
            for (k, x) in fam.orbit.iter().enumerate() {
                if set.is_s_unit(x)? && !values.contains(x) {
                    values.push(x.clone());
                    r.witnesses.push(witness([
                        ("n", (k + 1).to_string()),
                        ("value", element_text(x)),
                    ]));
                }
            }
            r.count = Some(values.len());
            r.truncated = fam.reason != Truncation::EnteredCycle;
            r.details = json!({
                "map": map_json(&phi),
                "places": set.describe(),
                "routed": "power_map_family",
                "beta": element_text(&beta),
                "exponent": e,
                "family_places": fam.set.describe(),
                "family_orbit": fam.orbit.iter().map(element_text).collect::<Vec<_>>(),
                "orbit_in_family_units": true,
                "alpha_is_torsion": fam.alpha_is_torsion,
                "stop": fam.reason,
            });
            return Ok(r);
        }
        let rec = orbit(&phi, &ProjPoint::Finite(alpha.clone()), n, &cap);
        let mut values: Vec<FieldElement> = Vec::new();
        for (k, p) in rec.points.iter().enumerate() {
            if let ProjPoint::Finite(x) = p {
                if set.is_s_unit(x)? && !values.contains(x) {
                    values.push(x.clone());
                    r.witnesses.push(witness([
                        ("n", (k + 1).to_string()),
                        ("value", element_text(x)),
                    ]));
                }
            }
        }
        r.count = Some(values.len());
        r.truncated = rec.reason != Truncation::EnteredCycle;
        let cert = applicable_certificate(&phi, &set)?;
        let mut certificate = Value::Null;
        let mut trajectory = Value::Null;
        if let Some(cert) = &cert {
            if values.len() > 1 {
                return Err(Error::AssertionFailed(format!(
                    "certified map has {} S-unit values in one orbit",
                    values.len()
                )));
            }
            r.ceiling = Some("1".into());
            certificate = serde_json::to_value(cert).expect("serializes");
            if set.is_s_unit(&alpha)? {
                let k = trajectory_steps(cert, n);
                trajectory = serde_json::to_value(verify_valuation_growth(&phi, &alpha, cert, k)?)
                    .expect("serializes");
            }
        }
        r.details = json!({
            "map": map_json(&phi),
            "places": set.describe(),
            "orbit": rec.points.iter().map(point_text).collect::<Vec<_>>(),
            "stop": rec.reason,
            "cycle_entry": rec.cycle_entry,
            "height_cap_digits": cap.to_string().len() - 1,
            "certificate": certificate,
            "trajectory": trajectory,
        });
        Ok(r)
    })
}

/// Unit-equation solutions for a monic map with two roots.
pub fn unit_equation_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    timed(|| {
        let field = cfg.field()?;
        let set = cfg.place_set(&field)?;
        let phi = cfg.map(&field)?;
        let h = cfg.height_or_default();
        let inst = if let Some(ext) = &cfg.extension {
            let k = crate::harness::config::build_field(&ext.field)?;
            let data = ExtensionData {
                delta1: ext.delta1.resolve(&k)?,
                delta2: ext.delta2.resolve(&k)?,
                field: k,
            };
            monic_unit_reduction_ext(&phi, &set, &data)?
        } else {
            let roots = match &cfg.roots {
                Some(specs) => resolve_all(specs, &field)?,
                None => rational_roots(&phi),
            };
            if roots.len() < 2 {
                return Err(Error::RootsNotInField(
                    "supply two roots of the map in \"roots\" or \"extension\"".into(),
                ));
            }
            monic_unit_reduction(&phi, &roots[0], &roots[1], &set)?
        };
        let mut r = base_report("unit-eq", cfg, &field);
        r.warnings.extend(inst.ext_field().warnings());
        let solutions = solve_unit_equation_box(&inst, &Int::from(h))?;
        let ceiling = evertse_bound(inst.place_set_ext.s());
        if Int::from(solutions.len()) > ceiling {
            return Err(Error::AssertionFailed(format!(
                "{} solutions exceed the ceiling {ceiling}",
                solutions.len()
            )));
        }
        for (u1, u2) in &solutions {
            r.witnesses.push(witness([
                ("u1", element_text(u1)),
                ("u2", element_text(u2)),
                ("beta", element_text(&inst.back(u1))),
            ]));
        }
        r.count = Some(solutions.len());
        r.ceiling = Some(ceiling.to_string());
        r.height_bound = Some(h);
        r.truncated = true;
        r.details = json!({
            "map": map_json(&phi),
            "delta1": inst.delta1.to_strings(),
            "delta2": inst.delta2.to_strings(),
            "gap": inst.gap.to_strings(),
            "places": set.describe(),
            "places_ext": inst.place_set_ext.describe(),
            "s_ext": inst.place_set_ext.s(),
        });
        Ok(r)
    })
}

fn rational_roots(phi: &RationalMap) -> Vec<FieldElement> {
    let field = phi.field();
    let coeffs: Option<Vec<_>> = phi
        .num()
        .coeffs()
        .iter()
        .map(|c| c.as_rational().cloned())
        .collect();
    coeffs
        .and_then(|c| crate::poly::QPoly::new((), c).rational_roots())
        .unwrap_or_default()
        .into_iter()
        .map(|q| FieldElement::from_rat(field, q))
        .collect()
}

/// The superelliptic twists of a map, with an optional point search.
pub fn curves_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    timed(|| {
        let field = cfg.field()?;
        let set = cfg.place_set(&field)?;
        let psi = cfg.map(&field)?;
        let units = cfg.units(&field)?;
        let p = match cfg.prime {
            Some(p) => p,
            None => select_prime(psi.degree(), psi.zero_pole_count()?)? as u32,
        };
        let battery = build_curves(&psi, &set, p, units.as_ref())?;
        let mut r = base_report("curves", cfg, &field);
        r.ceiling = Some(num_traits::pow(Int::from(p), set.s()).to_string());
        let mut per_model = Value::Null;
        if let Some(h) = cfg.height {
            let found = curve_point_search_batch(&battery.models, h)?;
            for (i, pts) in found.iter().enumerate() {
                for pt in pts {
                    r.witnesses.push(witness([
                        ("model", i.to_string()),
                        ("gamma", element_text(&battery.models[i].gamma)),
                        ("z", element_text(&pt.z)),
                        ("y", element_text(&pt.y)),
                    ]));
                }
            }
            r.count = Some(found.iter().map(Vec::len).sum());
            r.height_bound = Some(h);
            r.truncated = true;
            per_model = json!(found.iter().map(Vec::len).collect::<Vec<_>>());
        }
        r.details = json!({
            "map": map_json(&psi),
            "places": set.describe(),
            "p": p,
            "m": battery.m,
            "genus": battery.genus,
            "genus_range_checked": battery.genus_range_checked,
            "models": battery.models.len(),
            "rank": battery.reps.rank,
            "torsion_included": battery.reps.torsion_included,
            "gammas": battery.models.iter().map(|m| element_text(&m.gamma)).collect::<Vec<_>>(),
            "max_multiplicity": battery.models.first().map(|m| m.certificate.max_multiplicity),
            "points_per_model": per_model,
        });
        Ok(r)
    })
}

/// Escape certificates, trajectory verification and the orbit oracle.
pub fn escape_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    use crate::harness::config::EscapeKind;
    timed(|| {
        let field = cfg.field()?;
        let set = cfg.place_set(&field)?;
        let kind = cfg.escape.unwrap_or(if cfg.phi0.is_some() {
            EscapeKind::Unicritical
        } else {
            EscapeKind::Laurent
        });
        let mut r = base_report("escape-cert", cfg, &field);
        let cert = match kind {
            EscapeKind::Unicritical => {
                let phi0 = cfg.poly(
                    cfg.phi0
                        .as_deref()
                        .ok_or_else(|| Error::InvalidInput("config needs \"phi0\"".into()))?,
                    &field,
                )?;
                let beta = cfg.require(&cfg.beta, "beta", &field)?;
                unicritical_certificate(&phi0, &beta, cfg.index.unwrap_or(0), &set)?
            }
            EscapeKind::Laurent => laurent_escape_certificate(&cfg.map(&field)?, &set)?,
            EscapeKind::Restriction => {
                let phi = cfg.map(&field)?;
                let h = cfg.height_or_default();
                let res = laurent_unit_restriction(&phi, &set, h)?;
                for (u, v) in &res.hits {
                    r.witnesses
                        .push(witness([("u", u.join(", ")), ("value", v.join(", "))]));
                }
                r.count = Some(res.count);
                r.height_bound = Some(h);
                r.truncated = true;
                r.details = serde_json::to_value(&res).expect("serializes");
                return Ok(r);
            }
        };
        let steps = cfg.steps_or_default();
        let gamma = match &cfg.alpha {
            Some(a) => a.resolve(&field)?,
            None => FieldElement::one(&field),
        };
        let k = trajectory_steps(&cert, steps);
        let trajectory = verify_valuation_growth(&cert.map, &gamma, &cert, k)?;
        let starts = sample_s_units(
            &set,
            ORACLE_POOL_HEIGHT,
            cfg.count.unwrap_or(DEFAULT_ORACLE_STARTS),
            cfg.seed.unwrap_or(0),
        )?;
        let checks = orbit_oracle(&cert, &starts, steps, &cfg.height_cap())?;
        if let Some(bad) = checks.iter().find(|c| !c.within_bound()) {
            return Err(Error::AssertionFailed(format!(
                "orbit from {:?} has {} S-unit values under a certified map",
                bad.start,
                bad.s_unit_values.len()
            )));
        }
        for c in &checks {
            r.witnesses.push(witness([
                ("start", c.start.join(", ")),
                ("steps", c.steps.to_string()),
                ("s_unit_values", c.s_unit_values.len().to_string()),
                ("covered", c.covered.to_string()),
            ]));
        }
        r.count = checks
            .iter()
            .filter(|c| c.covered)
            .map(|c| c.s_unit_values.len())
            .max();
        r.ceiling = Some("1".into());
        r.steps = Some(steps);
        r.truncated = k < steps;
        let not_covered = checks.iter().filter(|c| !c.covered).count();
        r.details = json!({
            "certificate": cert,
            "trajectory_start": element_text(&gamma),
            "trajectory": trajectory,
            "oracle_starts": checks.len(),
            "not_covered_by_certificate": not_covered,
        });
        Ok(r)
    })
}

/// Explicit infinite families: `gamma mu^(±d)` maps or power-map orbits.
pub fn families_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    timed(|| {
        let field = cfg.field()?;
        let mut r = base_report("families", cfg, &field);
        let n = cfg.count.unwrap_or(cfg.steps_or_default());
        if let (Some(e), Some(_)) = (cfg.exponent, &cfg.beta) {
            let beta = cfg.require(&cfg.beta, "beta", &field)?;
            let alpha = cfg.require(&cfg.alpha, "alpha", &field)?;
            let fam = power_map_family(&beta, e, &alpha, n)?;
            for (k, x) in fam.orbit.iter().enumerate() {
                r.witnesses.push(witness([
                    ("n", (k + 1).to_string()),
                    ("value", element_text(x)),
                ]));
            }
            r.count = Some(fam.orbit.iter().collect::<HashSet<_>>().len());
            r.steps = Some(n);
            r.truncated = fam.reason != Truncation::EnteredCycle;
            r.details = json!({
                "kind": "power_map",
                "map": map_json(&fam.phi),
                "places": fam.set.describe(),
                "alpha_is_torsion": fam.alpha_is_torsion,
                "stop": fam.reason,
            });
            return Ok(r);
        }
        let set = cfg.place_set(&field)?;
        let phi = cfg.map(&field)?;
        let fam = infinite_family(&phi, &set, n)?;
        for m in &fam.members {
            r.witnesses.push(witness([
                ("u", m.u.join(", ")),
                ("value", m.value.join(", ")),
                ("preimage", m.preimage.join(", ")),
            ]));
        }
        r.count = Some(fam.members.len());
        r.truncated = true;
        r.details = json!({
            "kind": "gamma_mu_d",
            "map": map_json(&phi),
            "places": set.describe(),
            "places_prime": fam.s_prime.describe(),
            "gamma": fam.gamma.to_strings(),
            "mu": map_json(&fam.mu),
            "exponent": fam.exponent,
            "unit_prime": fam.unit_prime,
            "added_prime": fam.added_prime,
        });
        Ok(r)
    })
}

/// A polynomial realizing a prescribed orbit chain.
pub fn interpolation_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    timed(|| {
        let field = cfg.field()?;
        let values = resolve_all(
            cfg.values
                .as_deref()
                .ok_or_else(|| Error::InvalidInput("config needs \"values\"".into()))?,
            &field,
        )?;
        let roots = match &cfg.extra_roots {
            Some(specs) => {
                let rs = resolve_all(specs, &field)?;
                let [a, b]: [FieldElement; 2] = rs.try_into().map_err(|_| {
                    Error::InvalidInput("\"extra_roots\" needs exactly two elements".into())
                })?;
                Some([a, b])
            }
            None => None,
        };
        let it = interpolation_construct(&values, roots)?;
        let mut r = base_report("interpolate", cfg, &field);
        for z in it.values.iter().chain(&it.roots) {
            r.witnesses.push(witness([
                ("z", element_text(z)),
                ("phi_z", point_text(&it.map.eval(z))),
            ]));
        }
        r.count = Some(it.values.len());
        r.details = json!({
            "map": map_json(&it.map),
            "degree": it.map.degree(),
            "roots": it.roots.iter().map(element_text).collect::<Vec<_>>(),
            "beta_z_pm_d": it.map.beta_z_pm_d().is_some(),
        });
        Ok(r)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(f: fn(&ExperimentConfig) -> Result<ExperimentReport>, json: &str) -> ExperimentReport {
        f(&ExperimentConfig::from_json(json).unwrap()).unwrap()
    }

    #[test]
    fn image_count_z2_minus_z() {
        let r = run(
            conjecture1_experiment,
            r#"{"places": {"primes": [{"p": 2}, {"p": 3}]}, "map": {"num": [0, -1, 1]}, "height": 200}"#,
        );
        assert!(r.count.unwrap() >= 4);
        assert_eq!(r.details["unit_equation"]["agree"], true);
        assert_eq!(r.details["curves"]["models"], 25);
        let again = run(
            conjecture1_experiment,
            r#"{"places": {"primes": [{"p": 2}, {"p": 3}]}, "map": {"num": [0, -1, 1]}, "height": 200}"#,
        );
        assert_eq!(r.comparable_body(), again.comparable_body());
    }

    #[test]
    fn image_count_warnings_and_empty() {
        let r = run(
            conjecture1_experiment,
            r#"{"map": {"num": [0, 0, 1]}, "height": 20}"#,
        );
        assert!(r.warnings.iter().any(|w| w.contains("d-th power")));
        let r = run(
            conjecture1_experiment,
            r#"{"map": {"num": [7, 0, 1]}, "height": 50}"#,
        );
        assert_eq!(r.count, Some(0));
    }

    #[test]
    fn orbit_counts() {
        let r = run(
            conjecture2_experiment,
            r#"{"map": {"num": ["1/2", 0, 1]}, "alpha": 1, "steps": 10}"#,
        );
        assert_eq!(r.count, Some(0));
        assert_eq!(r.details["certificate"]["place"]["p"], 2);
        assert_eq!(r.details["trajectory"].as_array().unwrap().len(), 10);
        let r = run(
            conjecture2_experiment,
            r#"{"map": {"num": [-1, 0, 1]}, "alpha": 0}"#,
        );
        assert_eq!(r.count, Some(1));
        assert!(!r.truncated);
        let r = run(
            conjecture2_experiment,
            r#"{"map": {"num": [0, 0, 2]}, "alpha": 3, "steps": 4}"#,
        );
        assert_eq!(r.details["routed"], "power_map_family");
        assert_eq!(r.count, Some(0));
    }

    #[test]
    fn other_pipelines() {
        let r = run(
            unit_equation_experiment,
            r#"{"places": {"primes": [{"p": 2}, {"p": 3}]}, "map": {"num": [0, -1, 1]}, "height": 100}"#,
        );
        assert!(r.count.unwrap() > 0);
        assert_eq!(r.ceiling.as_deref(), Some("16777216"));
        let r = run(
            curves_experiment,
            r#"{"places": {"primes": [{"p": 2}, {"p": 3}]}, "map": {"num": [0, -1, 1]}, "height": 10}"#,
        );
        assert_eq!(r.details["models"], 25);
        let r = run(
            escape_experiment,
            r#"{"phi0": [0, 0, 1], "beta": "1/2", "index": 0, "steps": 10, "count": 5}"#,
        );
        assert_eq!(r.details["trajectory"][9]["valuation"], -512);
        let r = run(
            escape_experiment,
            r#"{"escape": "restriction", "map": {"num": [1, 1, 1], "den": [0, 1]}, "height": 5}"#,
        );
        assert_eq!(r.count, Some(1));
        let r = run(
            families_experiment,
            r#"{"map": {"num": [0, 0, 2]}, "count": 4}"#,
        );
        assert_eq!(r.witnesses[3]["value"], "128/1");
        let r = run(
            families_experiment,
            r#"{"beta": 2, "exponent": 2, "alpha": 3, "count": 3}"#,
        );
        assert_eq!(r.witnesses[1]["value"], "648/1");
        let r = run(interpolation_experiment, r#"{"values": [1, 5, 25, 7]}"#);
        assert_eq!(r.details["degree"], 5);
    }
}
