//! Sets of places `S`, the S-integer and S-unit predicates, and coset
//! representatives of `O_S^* / (O_S^*)^p`.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{prime_divisors, strip_prime, to_u64, Int, Rat};
use crate::error::{Error, Result};
use crate::nf::{FieldElement, HeightBox, NumberField, PrimePlace};

/// Generators of the S-unit group supplied by the caller for fields other than Q.
#[derive(Clone, Debug)]
pub struct UnitGroupData {
    pub torsion_generator: FieldElement,
    pub free_generators: Vec<FieldElement>,
}

/// `S = S_inf ∪ {finite places}`; the archimedean places are always included.
#[derive(Clone, Debug)]
pub struct PlaceSet {
    field: NumberField,
    finite: Vec<PrimePlace>,
    primes: Vec<u64>,
}

impl PlaceSet {
    /// `S_inf` alone.
    pub fn archimedean(field: &NumberField) -> Self {
        PlaceSet {
            field: field.clone(),
            finite: Vec::new(),
            primes: Vec::new(),
        }
    }

    pub fn new(field: &NumberField, places: impl IntoIterator<Item = PrimePlace>) -> Self {
        let finite: BTreeSet<PrimePlace> = places.into_iter().collect();
        let finite: Vec<PrimePlace> = finite.into_iter().collect();
        let mut primes: Vec<u64> = finite.iter().map(|p| p.p()).collect();
        primes.dedup();
        PlaceSet {
            field: field.clone(),
            finite,
            primes,
        }
    }

    /// `S_inf` plus every place above each listed rational prime.
    pub fn above_primes(field: &NumberField, primes: &[u64]) -> Result<Self> {
        let mut places = Vec::new();
        for &p in primes {
            places.extend(field.primes_above(p)?);
        }
        Ok(Self::new(field, places))
    }

    /// `S_inf` plus the places selected by `(p, factor_index)`.
    pub fn from_indices(field: &NumberField, spec: &[(u64, usize)]) -> Result<Self> {
        let places = spec
            .iter()
            .map(|&(p, i)| field.place(p, i))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(field, places))
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn finite_places(&self) -> &[PrimePlace] {
        &self.finite
    }

    /// Rational primes lying under the finite places of S, ascending.
    pub fn rational_primes(&self) -> &[u64] {
        &self.primes
    }

    /// `s = |S|`, counting archimedean places.
    pub fn s(&self) -> usize {
        self.field.archimedean_places() + self.finite.len()
    }

    pub fn contains(&self, place: &PrimePlace) -> bool {
        self.finite.binary_search(place).is_ok()
    }

    /// True when S contains every place above each of its rational primes.
    pub fn is_saturated(&self) -> Result<bool> {
        for &p in &self.primes {
            if self
                .field
                .primes_above(p)?
                .iter()
                .any(|q| !self.contains(q))
            {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn union(&self, places: impl IntoIterator<Item = PrimePlace>) -> Self {
        Self::new(&self.field, self.finite.iter().cloned().chain(places))
    }

    pub fn is_subset_of(&self, other: &PlaceSet) -> bool {
        self.finite.iter().all(|p| other.contains(p))
    }

    /// Config form: `[(p, factor_index)]`.
    pub fn indices(&self) -> Vec<(u64, usize)> {
        self.finite.iter().map(|p| (p.p(), p.index())).collect()
    }

    pub fn describe(&self) -> String {
        let mut parts = vec!["inf".to_string()];
        parts.extend(self.finite.iter().map(|p| p.to_string()));
        format!("{{{}}}", parts.join(", "))
    }

    /// Removes every prime of S from `n`.
    pub fn strip(&self, n: &Int) -> Int {
        self.primes
            .iter()
            .fold(n.abs(), |acc, &p| strip_prime(&acc, &Int::from(p)))
    }

    /// Valuations of `a` at places outside S above primes dividing `rest`
    /// (which must already be free of the primes of S) and above the
    /// primes of S. `ok` decides which valuations are acceptable.
    fn check_outside(
        &self,
        a: &FieldElement,
        rest: &Int,
        ok: impl Fn(i64) -> bool,
    ) -> Result<bool> {
        if !rest.is_one() {
            let g = rest.gcd(self.field.discriminant());
            if !(rest / &g).is_one() && !self.field.asserts_monogenic() {
                // a prime of good reduction outside S divides the norm or
                // the denominator, so some valuation outside S is nonzero
                let bad = prime_divisors(&(rest / &g))
                    .iter()
                    .any(|q| !(self.field.discriminant() % q).is_zero());
                if bad {
                    return Ok(false);
                }
            }
            for q in prime_divisors(rest) {
                for place in self.field.primes_above(to_u64(&q)?)? {
                    if !ok(a.valuation(&place)?) {
                        return Ok(false);
                    }
                }
            }
        }
        for &p in &self.primes {
            for place in self.field.primes_above(p)? {
                if !self.contains(&place) && !ok(a.valuation(&place)?) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `v_P(a) = 0` for every finite `P` outside S.
    pub fn is_s_unit(&self, a: &FieldElement) -> Result<bool> {
        if a.is_zero() {
            return Ok(false);
        }
        if let Some(q) = a.as_rational() {
            if self.field.is_rationals() || self.is_saturated()? {
                return Ok(self.strip(q.numer()).is_one() && self.strip(q.denom()).is_one());
            }
        }
        let n = self.field.degree();
        let (c, _) = a.scaled_numerators();
        let nb = (a.norm() * num_traits::pow(Rat::from(c.clone()), n)).to_integer();
        let rest = self.strip(&(nb * &c));
        self.check_outside(a, &rest, |v| v == 0)
    }

    /// `v_P(a) >= 0` for every finite `P` outside S; zero counts as an S-integer.
    pub fn is_s_integer(&self, a: &FieldElement) -> Result<bool> {
        if a.is_zero() {
            return Ok(true);
        }
        if let Some(q) = a.as_rational() {
            if self.field.is_rationals() || self.is_saturated()? {
                return Ok(self.strip(q.denom()).is_one());
            }
        }
        let rest = self.strip(&a.denominator());
        // primes dividing only the numerator never give negative valuations
        self.check_outside(a, &rest, |v| v >= 0)
    }

    /// Representatives of `O_S^*/(O_S^*)^p`.
    pub fn coset_reps(&self, p: u32, units: Option<&UnitGroupData>) -> Result<CosetReps> {
        if !crate::arith::is_prime_u64(p as u64) {
            return Err(Error::NotPrime(p.to_string()));
        }
        let (generators, torsion_included) = if self.field.is_rationals() {
            let mut gens: Vec<FieldElement> = self
                .primes
                .iter()
                .map(|&q| FieldElement::from_i64(&self.field, q as i64))
                .collect();
            let sign = p == 2;
            if sign {
                gens.insert(0, FieldElement::from_i64(&self.field, -1));
            }
            (gens, sign)
        } else {
            let units = units.ok_or_else(|| {
                Error::MissingUnitData(format!(
                    "coset representatives over {:?} need S-unit generators",
                    self.field
                ))
            })?;
            let w = units.torsion_generator.torsion_order().ok_or_else(|| {
                Error::InvalidInput("torsion generator is not a root of unity".into())
            })?;
            for g in &units.free_generators {
                if !self.is_s_unit(g)? {
                    return Err(Error::InvalidInput(format!(
                        "generator {g} is not an S-unit"
                    )));
                }
            }
            if units.free_generators.len() + 1 != self.s() {
                return Err(Error::MissingUnitData(format!(
                    "expected {} free generators, got {}",
                    self.s() - 1,
                    units.free_generators.len()
                )));
            }
            let mut gens = units.free_generators.clone();
            let torsion = w % p as u64 == 0;
            if torsion {
                gens.insert(0, units.torsion_generator.clone());
            }
            (gens, torsion)
        };
        let mut reps = vec![FieldElement::one(&self.field)];
        // last generator varies slowest
        for g in generators.iter().rev() {
            let powers: Vec<FieldElement> = (0..p as u64).map(|k| g.pow_u(k)).collect();
            reps = reps
                .iter()
                .flat_map(|r| powers.iter().map(move |gk| r * gk))
                .collect();
        }
        Ok(CosetReps {
            p,
            rank: generators.len(),
            torsion_included,
            generators,
            reps,
        })
    }
}

/// Γ together with the data that produced it.
#[derive(Clone, Debug)]
pub struct CosetReps {
    pub p: u32,
    /// `r` with `|Γ| = p^r`.
    pub rank: usize,
    pub torsion_included: bool,
    pub generators: Vec<FieldElement>,
    pub reps: Vec<FieldElement>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PowerClass {
    pub index: usize,
    pub gamma: Vec<String>,
    pub delta: Vec<String>,
}

impl CosetReps {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// `(i, delta)` with `u = gamma_i^{-1} delta^p`.
    pub fn decompose(&self, set: &PlaceSet, u: &FieldElement) -> Result<(usize, FieldElement)> {
        if !set.is_s_unit(u)? {
            return Err(Error::NotSUnit);
        }
        let field = set.field();
        let p = self.p;
        if field.is_rationals() {
            let q = u.as_rational().expect("rational field");
            // exponent of generator j in gamma is (-v_j(u)) mod p
            let mut index = 0usize;
            let mut stride = 1usize;
            let mut exps = Vec::new();
            if self.torsion_included {
                exps.push(if q.is_negative() { 1 } else { 0 });
            }
            for &prime in set.rational_primes() {
                let v = crate::arith::rat_valuation(q, &Int::from(prime));
                exps.push((-v).rem_euclid(p as i64) as usize);
            }
            for e in exps {
                index += e * stride;
                stride *= p as usize;
            }
            let gu = &self.reps[index] * u;
            let delta = gu
                .nth_root(p)?
                .ok_or_else(|| Error::AssertionFailed(format!("{gu} is not a {p}-th power")))?;
            return Ok((index, delta));
        }
        for (i, g) in self.reps.iter().enumerate() {
            if let Some(delta) = (g * u).nth_root(p)? {
                return Ok((i, delta));
            }
        }
        Err(Error::RootExtractionFailed(format!(
            "no representative makes gamma * {u} a {p}-th power"
        )))
    }
}

/// S-units of K = Q whose numerator and denominator are S-smooth and at
/// most `height` in absolute value, with both signs.
pub fn rational_s_units(set: &PlaceSet, height: &Int) -> Vec<Rat> {
    assert!(set.field().is_rationals());
    let mut smooth = vec![Int::one()];
    for &p in set.rational_primes() {
        let pi = Int::from(p);
        let mut next = Vec::new();
        for m in &smooth {
            let mut x = m.clone();
            while &x <= height {
                next.push(x.clone());
                x *= &pi;
            }
        }
        smooth = next;
    }
    smooth.sort();
    let mut out = Vec::new();
    for n in &smooth {
        for d in &smooth {
            if n.gcd(d).is_one() {
                let q = Rat::new(n.clone(), d.clone());
                out.push(-q.clone());
                out.push(q);
            }
        }
    }
    out.sort();
    out
}

/// S-units of height at most `height` (over Q: sorted; otherwise in box order).
pub fn s_units_in_box(set: &PlaceSet, height: u64) -> Result<Vec<FieldElement>> {
    let field = set.field();
    if field.is_rationals() {
        return Ok(rational_s_units(set, &Int::from(height))
            .into_iter()
            .map(|q| FieldElement::from_rat(field, q))
            .collect());
    }
    let found: Vec<Result<FieldElement>> =
        HeightBox::new(field, height).par_filter_map(|x| match set.is_s_unit(x) {
            Ok(true) => Some(Ok(x.clone())),
            Ok(false) => None,
            Err(e) => Some(Err(e)),
        });
    found.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};

    fn q_set(primes: &[u64]) -> PlaceSet {
        PlaceSet::above_primes(&NumberField::rationals(), primes).unwrap()
    }

    #[test]
    fn rational_predicates() {
        let s = q_set(&[2, 3]);
        let q = s.field().clone();
        let el = |a, b| FieldElement::from_rat(&q, rat(a, b));
        assert!(s.is_s_integer(&el(9, 2)).unwrap());
        assert!(s.is_s_unit(&el(12, 1)).unwrap());
        assert!(!s.is_s_unit(&el(10, 1)).unwrap());
        assert!(!s.is_s_unit(&el(0, 1)).unwrap());
        assert!(!q_set(&[]).is_s_integer(&el(1, 2)).unwrap());
        assert_eq!(s.s(), 3);
    }

    #[test]
    fn gaussian_predicates() {
        let k = NumberField::quadratic(-1).unwrap();
        let s = PlaceSet::above_primes(&k, &[2]).unwrap();
        let a = FieldElement::new(&k, vec![rat_int(1), rat_int(1)]);
        assert!(s.is_s_unit(&a).unwrap());
        assert!(s.is_s_unit(&a.inv().unwrap()).unwrap());
        let b = FieldElement::new(&k, vec![rat_int(2), rat_int(1)]);
        assert!(!s.is_s_unit(&b).unwrap());
        assert!(s.is_s_integer(&b).unwrap());
        assert!(!s.is_s_integer(&b.inv().unwrap()).unwrap());
        // one of the two places above 5 only
        let p5 = k.place(5, 0).unwrap();
        let t = PlaceSet::new(&k, [p5.clone()]);
        let in_p5 = [
            b.clone(),
            FieldElement::new(&k, vec![rat_int(2), rat_int(-1)]),
        ]
        .into_iter()
        .find(|x| x.valuation(&p5).unwrap() == 1)
        .unwrap();
        assert!(t.is_s_unit(&in_p5).unwrap());
        assert!(!t.is_s_unit(&FieldElement::from_i64(&k, 5)).unwrap());
        assert!(!t
            .is_s_integer(&FieldElement::from_rat(&k, rat(1, 5)))
            .unwrap());
    }

    #[test]
    fn coset_reps_over_q() {
        let s = q_set(&[2, 3]);
        let g = s.coset_reps(5, None).unwrap();
        assert_eq!(g.len(), 25);
        assert_eq!(g.rank, 2);
        let g2 = q_set(&[]).coset_reps(2, None).unwrap();
        let vals: Vec<_> = g2.reps.iter().map(|x| x.to_string()).collect();
        assert_eq!(vals, vec!["1", "-1"]);
        let k = NumberField::quadratic(-1).unwrap();
        assert!(matches!(
            PlaceSet::archimedean(&k).coset_reps(3, None),
            Err(Error::MissingUnitData(_))
        ));
    }

    #[test]
    fn decompose_six() {
        let s = q_set(&[2, 3]);
        let g = s.coset_reps(5, None).unwrap();
        let q = s.field().clone();
        let (i, delta) = g.decompose(&s, &FieldElement::from_i64(&q, 6)).unwrap();
        assert_eq!(g.reps[i], FieldElement::from_i64(&q, 1296));
        assert_eq!(delta, FieldElement::from_i64(&q, 6));
        let (i, delta) = g.decompose(&s, &FieldElement::one(&q)).unwrap();
        assert_eq!((i, delta), (0, FieldElement::one(&q)));
        assert_eq!(
            g.decompose(&s, &FieldElement::from_i64(&q, 5)).unwrap_err(),
            Error::NotSUnit
        );
    }

    #[test]
    fn gaussian_cosets_with_units() {
        let k = NumberField::quadratic(-1).unwrap();
        let s = PlaceSet::above_primes(&k, &[2]).unwrap();
        let units = UnitGroupData {
            torsion_generator: FieldElement::theta(&k),
            free_generators: vec![FieldElement::new(&k, vec![rat_int(1), rat_int(1)])],
        };
        let g = s.coset_reps(2, Some(&units)).unwrap();
        assert_eq!(g.len(), 4);
        assert!(g.torsion_included);
        let u = FieldElement::new(&k, vec![rat_int(-3), rat_int(4)])
            .div(&FieldElement::from_i64(&k, 5))
            .unwrap();
        // not an S-unit
        assert!(g.decompose(&s, &u).is_err());
        let u = FieldElement::new(&k, vec![rat_int(0), rat_int(2)]);
        let (i, delta) = g.decompose(&s, &u).unwrap();
        assert_eq!(&g.reps[i].inv().unwrap() * &delta.pow_u(2), u);
    }

    #[test]
    fn rational_s_unit_box() {
        let s = q_set(&[2]);
        let us = rational_s_units(&s, &Int::from(4));
        // ±{1,2,4,1/2,1/4}
        assert_eq!(us.len(), 10);
    }
}
