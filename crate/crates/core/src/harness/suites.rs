//! Seeded property suites over every module. Failures are collected as data.

use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::{primes, rat, rat_valuation, Int, Rat};
use crate::dynamics::{check_lemma_poles, KPoly, RationalMap};
use crate::error::{Error, Result};
use crate::escape::{
    orbit_oracle, sample_s_units, unicritical_certificate, verify_valuation_growth,
};
use crate::harness::interpolate::interpolation_construct;
use crate::nf::{FieldElement, NumberField};
use crate::places::PlaceSet;
use crate::reductions::{
    count_image_sunits_box, genus_in_range, genus_of, infinite_family, power_map_family,
    select_prime, CrossCheckStatus,
};

pub const SUITES: &[&str] = &[
    "kernel",
    "lemma-poles",
    "reduction",
    "trajectory",
    "genus",
    "interpolation",
    "families",
];
pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<String>,
    pub seconds: f64,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteSummary {
    pub seed: u64,
    pub suites: Vec<SuiteResult>,
}

impl SuiteSummary {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteResult::passed)
    }
}

struct Tally {
    name: &'static str,
    cases: usize,
    failures: Vec<String>,
    start: Instant,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            cases: 0,
            failures: Vec::new(),
            start: Instant::now(),
        }
    }

    fn case(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    /// Records an unexpected error as a failure.
    fn guard<T>(&mut self, r: Result<T>, what: &str) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.cases += 1;
                self.failures.push(format!("{what}: {e}"));
                None
            }
        }
    }

    fn finish(self) -> SuiteResult {
        SuiteResult {
            name: self.name.into(),
            cases: self.cases,
            failures: self.failures,
            seconds: self.start.elapsed().as_secs_f64(),
        }
    }
}

pub fn run_property_suites(selector: &str, seed: u64) -> Result<SuiteSummary> {
    let chosen: Vec<&str> = match selector {
        "all" => SUITES.to_vec(),
        s if SUITES.contains(&s) => vec![s],
        s => {
            return Err(Error::InvalidInput(format!(
                "unknown suite {s}; expected one of all, {}",
                SUITES.join(", ")
            )))
        }
    };
    let suites = chosen
        .into_iter()
        .map(|name| match name {
            "kernel" => kernel_laws(1000, seed),
            "lemma-poles" => lemma_poles_fuzz(500, seed),
            "reduction" => reduction_bijection(300),
            "trajectory" => trajectory_laws(40, seed),
            "genus" => genus_table(),
            "interpolation" => interpolation_chains(100, seed),
            _ => families(50),
        })
        .collect();
    Ok(SuiteSummary { seed, suites })
}

fn random_rat(rng: &mut ChaCha8Rng, num: i64, den: i64) -> Rat {
    rat(rng.gen_range(-num..=num), rng.gen_range(1..=den))
}

fn random_element(rng: &mut ChaCha8Rng, field: &NumberField) -> FieldElement {
    loop {
        let coords = (0..field.degree())
            .map(|_| random_rat(rng, 60, 30))
            .collect();
        let x = FieldElement::new(field, coords);
        if !x.is_zero() {
            return x;
        }
    }
}

/// Valuation additivity, the norm formula `sum f_P v_P(a) = v_p(N a)`, and
/// `sum e f = n` over Q, Q(i) and Q(sqrt 2).
pub fn kernel_laws(per_field: usize, seed: u64) -> SuiteResult {
    let mut t = Tally::new("kernel");
    let fields = [
        NumberField::rationals(),
        NumberField::quadratic(-1).expect("Q(i)"),
        NumberField::quadratic(2).expect("Q(sqrt 2)"),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in &fields {
        for p in primes().take_while(|&p| p <= 100) {
            let Some(places) = t.guard(k.primes_above(p), "primes_above") else {
                continue;
            };
            let sum: u32 = places.iter().map(|q| q.e() * q.f()).sum();
            t.case(sum as usize == k.degree(), || {
                format!("sum ef over {p} is {sum} in degree {}", k.degree())
            });
        }
        for _ in 0..per_field {
            let a = random_element(&mut rng, k);
            let b = random_element(&mut rng, k);
            let ab = &a * &b;
            let Some(sa) = t.guard(a.support(), "support") else {
                continue;
            };
            let Some(sb) = t.guard(b.support(), "support") else {
                continue;
            };
            for place in sa.iter().chain(&sb) {
                let (Some(va), Some(vb), Some(vab)) = (
                    t.guard(a.valuation(place), "valuation"),
                    t.guard(b.valuation(place), "valuation"),
                    t.guard(ab.valuation(place), "valuation"),
                ) else {
                    continue;
                };
                t.case(vab == va + vb, || {
                    format!("v({ab}) = {vab} but v({a}) + v({b}) = {}", va + vb)
                });
            }
            let norm = a.norm();
            let mut ps: Vec<u64> = sa.iter().map(|q| q.p()).collect();
            ps.sort();
            ps.dedup();
            for p in ps {
                let Some(places) = t.guard(k.primes_above(p), "primes_above") else {
                    continue;
                };
                let mut sum = 0i64;
                for q in &places {
                    if let Some(v) = t.guard(a.valuation(q), "valuation") {
                        sum += q.f() as i64 * v;
                    }
                }
                let expected = rat_valuation(&norm, &Int::from(p));
                t.case(sum == expected, || {
                    format!("norm formula at {p} for {a}: {sum} vs {expected}")
                });
            }
            // primes of the norm are all in the support
            let mut norm_primes: Vec<u64> =
                crate::arith::prime_divisors(&(norm.numer() * norm.denom()))
                    .iter()
                    .filter_map(|p| crate::arith::to_u64(p).ok())
                    .collect();
            norm_primes.sort();
            for p in norm_primes {
                let hit = sa.iter().any(|q| q.p() == p);
                t.case(hit, || {
                    format!("{p} divides N({a}) but no place above it is in the support")
                });
            }
        }
    }
    t.finish()
}

fn random_poly(rng: &mut ChaCha8Rng, q: &NumberField, deg: usize) -> KPoly {
    loop {
        let coeffs: Vec<FieldElement> = (0..=deg)
            .map(|_| FieldElement::from_rat(q, random_rat(rng, 10, 10)))
            .collect();
        if !coeffs[deg].is_zero() {
            return KPoly::new(q.clone(), coeffs);
        }
    }
}

/// Random maps of degree 2 to 5 with coefficients of height at most 10:
/// `phi^2` has at least three zeros and poles, and at least `d + 1` when `phi` has two.
pub fn lemma_poles_fuzz(maps: usize, seed: u64) -> SuiteResult {
    let mut t = Tally::new("lemma-poles");
    let q = NumberField::rationals();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37);
    let mut checked = 0;
    while checked < maps {
        let d = rng.gen_range(2..=5usize);
        let (dn, dd) = match rng.gen_range(0..3) {
            0 => (d, rng.gen_range(0..=d)),
            1 => (rng.gen_range(0..=d), d),
            // one zero and one pole, so m = 2 cases are exercised
            _ => {
                let a = random_rat(&mut rng, 10, 10);
                let b = random_rat(&mut rng, 10, 10);
                let lin = |c: &Rat| {
                    KPoly::new(
                        q.clone(),
                        vec![
                            FieldElement::from_rat(&q, -c.clone()),
                            FieldElement::one(&q),
                        ],
                    )
                };
                let k = rng.gen_range(0..=d);
                let num = lin(&a)
                    .pow(k as u64)
                    .scale(&FieldElement::from_rat(&q, random_rat(&mut rng, 10, 10)));
                let den = lin(&b).pow((d - k) as u64);
                let Ok(phi) = RationalMap::new(num, den) else {
                    continue;
                };
                if lemma_case(&mut t, &phi) {
                    checked += 1;
                }
                continue;
            }
        };
        let num = random_poly(&mut rng, &q, dn);
        let den = random_poly(&mut rng, &q, dd);
        let Ok(phi) = RationalMap::new(num, den) else {
            continue;
        };
        if lemma_case(&mut t, &phi) {
            checked += 1;
        }
    }
    t.finish()
}

/// Checks one map; false when the map was skipped.
fn lemma_case(t: &mut Tally, phi: &RationalMap) -> bool {
    if phi.degree() < 2 || phi.beta_z_pm_d().is_some() {
        return false;
    }
    match check_lemma_poles(phi) {
        Ok(r) => {
            let d = phi.degree();
            t.case(r.m2 >= 3 && (r.m1 != 2 || r.m2 > d), || {
                format!("{phi}: m1 = {}, m2 = {}", r.m1, r.m2)
            });
        }
        Err(e) => t.case(false, || format!("{phi}: {e}")),
    }
    true
}

/// The image scan and the unit-equation route agree witness by witness.
pub fn reduction_bijection(height: u64) -> SuiteResult {
    let mut t = Tally::new("reduction");
    let q = NumberField::rationals();
    let cases: Vec<(NumberField, Vec<u64>, Vec<i64>, u64)> = vec![
        (q.clone(), vec![2, 3], vec![0, -1, 1], height),
        (q.clone(), vec![2, 3, 5], vec![2, -3, 1], height),
        (q.clone(), vec![2, 5], vec![-6, 1, 1], height),
        (q.clone(), vec![2, 3], vec![0, 2, -3, 1], height.min(100)),
        (
            NumberField::quadratic(-1).expect("Q(i)"),
            vec![2],
            vec![0, -1, 1],
            3,
        ),
        (
            NumberField::quadratic(2).expect("Q(sqrt 2)"),
            vec![2, 7],
            vec![0, -1, 1],
            2,
        ),
    ];
    for (k, ps, num, h) in cases {
        let Some(set) = t.guard(PlaceSet::above_primes(&k, &ps), "places") else {
            continue;
        };
        let Some(phi) = t.guard(RationalMap::from_i64s(&k, &num, &[1]), "map") else {
            continue;
        };
        let Some(c) = t.guard(count_image_sunits_box(&phi, &set, h), "scan") else {
            continue;
        };
        match &c.cross_check {
            CrossCheckStatus::Done(cc) => {
                t.case(cc.agree, || {
                    format!("{phi} over {:?}: {:?}", k.poly_strings(), cc.mismatches)
                });
                t.case(cc.within_ceiling, || {
                    format!("{phi}: {} solutions above ceiling", cc.solutions)
                });
            }
            other => t.case(false, || format!("{phi}: cross-check not run: {other:?}")),
        }
    }
    t.finish()
}

/// Certified unicritical maps follow `v(phi^n(g)) = d^(n-1) v(beta)`, their
/// orbits from S-units meet the S-units at most once, and `i = d - 1` is refused.
pub fn trajectory_laws(maps: usize, seed: u64) -> SuiteResult {
    let mut t = Tally::new("trajectory");
    let q = NumberField::rationals();
    let inf = PlaceSet::archimedean(&q);
    let el = |n: i64| FieldElement::from_i64(&q, n);
    let z2 = KPoly::new(q.clone(), vec![el(0), el(0), el(1)]);
    if let Some(cert) = t.guard(
        unicritical_certificate(&z2, &FieldElement::from_rat(&q, rat(1, 2)), 0, &inf),
        "z^2 + 1/2",
    ) {
        if let Some(traj) = t.guard(
            verify_valuation_growth(&cert.map, &el(1), &cert, 10),
            "z^2 + 1/2 trajectory",
        ) {
            let ok = traj
                .iter()
                .enumerate()
                .all(|(k, s)| s.valuation == -(1i64 << k));
            t.case(ok, || "z^2 + 1/2 trajectory is not -2^(n-1)".into());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x51ed);
    let cap = num_traits::pow(Int::from(10), 80);
    let sets = [
        inf.clone(),
        PlaceSet::above_primes(&q, &[2]).expect("places"),
        PlaceSet::above_primes(&q, &[2, 3]).expect("places"),
    ];
    for _ in 0..maps {
        let set = &sets[rng.gen_range(0..sets.len())];
        let d = rng.gen_range(2..=4usize);
        let mut coeffs: Vec<FieldElement> = (0..d).map(|_| el(rng.gen_range(-5..=5))).collect();
        coeffs.push(el(1));
        let phi0 = KPoly::new(q.clone(), coeffs);
        let p = [5i64, 7, 11, 13][rng.gen_range(0..4)];
        let a = rng.gen_range(1..=6);
        if a % p == 0 {
            continue;
        }
        let beta = FieldElement::from_rat(&q, rat(a, p.pow(rng.gen_range(1..=2))));
        let rejected = unicritical_certificate(&phi0, &beta, d - 1, set);
        t.case(matches!(rejected, Err(Error::HypothesisFailed(_))), || {
            format!("i = d - 1 accepted for {phi0}")
        });
        let i = rng.gen_range(0..=d - 2);
        let Some(cert) = t.guard(unicritical_certificate(&phi0, &beta, i, set), "certificate")
        else {
            continue;
        };
        let Some(starts) = t.guard(sample_s_units(set, 30, 5, rng.gen()), "starts") else {
            continue;
        };
        for g in &starts {
            // keep the exact trajectory small
            let steps = (1..=6)
                .take_while(|&n| cert.expected_valuation(n).is_some_and(|w| w.abs() <= 4096))
                .count();
            t.guard(
                verify_valuation_growth(&cert.map, g, &cert, steps),
                "trajectory",
            );
            t.cases += 1;
        }
        if let Some(checks) = t.guard(orbit_oracle(&cert, &starts, 15, &cap), "oracle") {
            for c in checks {
                t.case(c.within_bound(), || {
                    format!("{:?}: {} S-unit values", c.start, c.s_unit_values.len())
                });
            }
        }
    }
    t.finish()
}

/// `select_prime` and `genus_of` over `2 <= d <= 6`, `3 <= m <= 2d`.
pub fn genus_table() -> SuiteResult {
    let mut t = Tally::new("genus");
    t.case(
        select_prime(2, 3).ok() == Some(5) && genus_of(5, 3) == 2,
        || "(2, 3) does not give p = 5, g = 2".into(),
    );
    for d in 2..=6usize {
        for m in 3..=2 * d {
            if (d, m) == (2, 3) {
                continue;
            }
            let Some(p) = t.guard(select_prime(d, m), "select_prime") else {
                continue;
            };
            let g = genus_of(p, m);
            t.case(p < 2 * d as u64 && genus_in_range(g, d), || {
                format!("(d, m) = ({d}, {m}): p = {p}, g = {g}")
            });
        }
    }
    t.finish()
}

/// Random chains of distinct rationals are reproduced exactly.
pub fn interpolation_chains(chains: usize, seed: u64) -> SuiteResult {
    let mut t = Tally::new("interpolation");
    let q = NumberField::rationals();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x1a7e);
    for _ in 0..chains {
        let len = rng.gen_range(1..=6);
        let mut values: Vec<FieldElement> = Vec::new();
        while values.len() < len {
            let x = FieldElement::from_rat(&q, random_rat(&mut rng, 30, 4));
            if !values.contains(&x) {
                values.push(x);
            }
        }
        let Some(it) = t.guard(interpolation_construct(&values, None), "interpolation") else {
            continue;
        };
        for j in 0..len - 1 {
            let got = it.map.eval(&values[j]);
            t.case(got == values[j + 1].clone().into(), || {
                format!("{} -> {got}, expected {}", values[j], values[j + 1])
            });
        }
        t.case(
            it.map.degree() == len + 1 && it.map.beta_z_pm_d().is_none(),
            || format!("degree {} for chain of {len}", it.map.degree()),
        );
    }
    t.finish()
}

/// Power-map orbits stay in the S-units and `gamma mu^d` families produce
/// distinct verified values.
pub fn families(members: usize) -> SuiteResult {
    let mut t = Tally::new("families");
    let q = NumberField::rationals();
    let el = |n: i64| FieldElement::from_i64(&q, n);
    if let Some(f) = t.guard(power_map_family(&el(2), 2, &el(3), 8), "power map") {
        t.case(f.orbit.len() == 8, || {
            format!("orbit prefix has {} elements", f.orbit.len())
        });
    }
    if let Some(f) = t.guard(power_map_family(&el(3), -3, &el(2), 6), "power map") {
        t.case(f.orbit.len() == 6, || {
            format!("orbit prefix has {} elements", f.orbit.len())
        });
    }
    for (num, den) in [
        (vec![0, 0, 2], vec![1]),
        (vec![1, -2, 1], vec![1, 2, 1]),
        (vec![3], vec![0, 0, 0, 1]),
    ] {
        let Some(phi) = t.guard(RationalMap::from_i64s(&q, &num, &den), "map") else {
            continue;
        };
        if let Some(f) = t.guard(
            infinite_family(&phi, &PlaceSet::archimedean(&q), members),
            "family",
        ) {
            let distinct: std::collections::HashSet<_> =
                f.members.iter().map(|m| m.value.clone()).collect();
            t.case(distinct.len() == members, || {
                format!("{phi}: {} distinct values", distinct.len())
            });
        }
    }
    t.finish()
}
