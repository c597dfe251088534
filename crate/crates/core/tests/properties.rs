use std::collections::BTreeSet;

use num_traits::One;
use proptest::prelude::*;
use sunit_core::arith::{rat, rat_valuation, Int, Rat};
use sunit_core::dynamics::{check_lemma_poles, KPoly, ProjPoint, RationalMap};
use sunit_core::escape::{unicritical_certificate, verify_valuation_growth};
use sunit_core::harness::interpolation_construct;
use sunit_core::nf::{FieldElement, NumberField};
use sunit_core::places::PlaceSet;
use sunit_core::reductions::{image_hits, image_hits_generic};

const SMALL_PRIMES: [u64; 5] = [2, 3, 5, 7, 11];

fn fields() -> Vec<NumberField> {
    vec![
        NumberField::quadratic(-1).unwrap(),
        NumberField::quadratic(2).unwrap(),
        NumberField::from_i64s(&[-2, 0, 0, 1], false).unwrap(),
    ]
}

fn element(field: &NumberField, coords: &[i64], den: i64) -> FieldElement {
    let c = (0..field.degree()).map(|i| rat(coords[i], den)).collect();
    FieldElement::new(field, c)
}

fn coords() -> impl Strategy<Value = (Vec<i64>, i64)> {
    (prop::collection::vec(-30i64..=30, 3), 1i64..=12)
}

fn sorted_strings(v: &[(FieldElement, FieldElement)]) -> BTreeSet<String> {
    v.iter().map(|(b, x)| format!("{b} {x}")).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn valuation_is_additive(f in 0usize..3, a in coords(), b in coords(), pi in 0usize..5) {
        let k = &fields()[f];
        let (x, y) = (element(k, &a.0, a.1), element(k, &b.0, b.1));
        prop_assume!(!x.is_zero() && !y.is_zero());
        for place in k.primes_above(SMALL_PRIMES[pi]).unwrap() {
            let vxy = (&x * &y).valuation(&place).unwrap();
            prop_assert_eq!(vxy, x.valuation(&place).unwrap() + y.valuation(&place).unwrap());
        }
    }

    #[test]
    fn norm_valuation_matches_residue_degrees(f in 0usize..3, a in coords(), pi in 0usize..5) {
        let k = &fields()[f];
        let x = element(k, &a.0, a.1);
        prop_assume!(!x.is_zero());
        let p = SMALL_PRIMES[pi];
        let total: i64 = k
            .primes_above(p)
            .unwrap()
            .iter()
            .map(|place| place.f() as i64 * x.valuation(place).unwrap())
            .sum();
        prop_assert_eq!(rat_valuation(&x.norm(), &Int::from(p)), total);
    }

    #[test]
    fn modular_pole_count_is_a_lower_bound(
        num in prop::collection::vec(-9i64..=9, 2..=4),
        den in prop::collection::vec(-9i64..=9, 1..=3),
    ) {
        let q = NumberField::rationals();
        let Ok(phi) = RationalMap::from_i64s(&q, &num, &den) else { return Ok(()) };
        prop_assume!(phi.degree() >= 2);
        let lemma = check_lemma_poles(&phi).unwrap();
        let exact = phi.iterate(2).unwrap().zero_pole_count().unwrap();
        prop_assert!(lemma.m2 <= exact);
        if lemma.m2_exact {
            prop_assert_eq!(lemma.m2, exact);
        }
        if let Some(bound) = lemma.bound {
            prop_assert!(exact >= bound);
        }
    }

    #[test]
    fn interpolant_follows_the_chain(chain in prop::collection::btree_set(-40i64..=40, 2..=5)) {
        let q = NumberField::rationals();
        let values: Vec<FieldElement> = chain.iter().map(|&c| FieldElement::from_i64(&q, c)).collect();
        let it = interpolation_construct(&values, None).unwrap();
        prop_assert_eq!(it.map.degree(), values.len() + 1);
        for w in values.windows(2) {
            prop_assert_eq!(it.map.eval(&w[0]), ProjPoint::Finite(w[1].clone()));
        }
        for r in &it.roots {
            prop_assert!(!values.contains(r));
            prop_assert!(it.map.num().eval(r).is_zero());
        }
    }

    #[test]
    fn image_count_grows_with_height(num in prop::collection::vec(-6i64..=6, 3), h in 2u64..=25) {
        let q = NumberField::rationals();
        let phi = RationalMap::from_i64s(&q, &num, &[1]).unwrap();
        prop_assume!(phi.degree() >= 1);
        let set = PlaceSet::above_primes(&q, &[2, 3]).unwrap();
        let lo = sorted_strings(&image_hits(&phi, &set, h).unwrap());
        let hi = sorted_strings(&image_hits(&phi, &set, h + 7).unwrap());
        prop_assert!(lo.is_subset(&hi));
        prop_assert!(lo.len() <= hi.len());
    }

    #[test]
    fn fast_scan_matches_generic(
        num in prop::collection::vec(-6i64..=6, 2..=4),
        den in prop::collection::vec(-6i64..=6, 1..=2),
        h in 1u64..=20,
    ) {
        let q = NumberField::rationals();
        let Ok(phi) = RationalMap::from_i64s(&q, &num, &den) else { return Ok(()) };
        prop_assume!(phi.degree() >= 1);
        let set = PlaceSet::above_primes(&q, &[2, 3, 5]).unwrap();
        let fast = sorted_strings(&image_hits(&phi, &set, h).unwrap());
        let slow = sorted_strings(&image_hits_generic(&phi, &set, h).unwrap());
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn power_class_roundtrip(e in prop::collection::vec(-20i64..=20, 3), neg in any::<bool>(), p in prop::sample::select(vec![2u32, 3, 5])) {
        let q = NumberField::rationals();
        let set = PlaceSet::above_primes(&q, &[2, 3, 5]).unwrap();
        let reps = set.coset_reps(p, None).unwrap();
        let mut u = Rat::one();
        for (&prime, &k) in [2i64, 3, 5].iter().zip(&e) {
            let base = rat(prime, 1);
            u *= if k >= 0 { num_traits::pow(base, k as usize) } else { num_traits::pow(base.recip(), (-k) as usize) };
        }
        if neg {
            u = -u;
        }
        let u = FieldElement::from_rat(&q, u);
        let (i, delta) = reps.decompose(&set, &u).unwrap();
        prop_assert_eq!(&reps.reps[i] * &u, delta.pow_u(p as u64));
        prop_assert!(set.is_s_unit(&delta).unwrap());
    }

    #[test]
    fn unicritical_valuations_grow_geometrically(
        d in 2usize..=4,
        a in 1i64..=20,
        k in 1u32..=2,
        start in prop::sample::select(vec![1i64, -1, 3, -3, 9]),
    ) {
        // z^d + a / 2^k with S = {inf, 3}
        prop_assume!(a % 2 == 1);
        let q = NumberField::rationals();
        let set = PlaceSet::above_primes(&q, &[3]).unwrap();
        let beta = rat(a, 1 << k);
        let mut c = vec![FieldElement::zero(&q); d + 1];
        c[d] = FieldElement::one(&q);
        let cert = unicritical_certificate(&KPoly::new(q.clone(), c), &FieldElement::from_rat(&q, beta.clone()), 0, &set).unwrap();
        let steps = 5;
        let traj = verify_valuation_growth(&cert.map, &FieldElement::from_i64(&q, start), &cert, steps).unwrap();
        let mut x = rat(start, 1);
        for (n, step) in traj.iter().enumerate() {
            x = num_traits::pow(x, d) + &beta;
            let expected = -(k as i64) * (d as i64).pow(n as u32);
            prop_assert_eq!(step.valuation, expected);
            prop_assert_eq!(rat_valuation(&x, &Int::from(2)), expected);
        }
    }
}
