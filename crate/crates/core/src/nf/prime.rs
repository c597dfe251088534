//! Primes of `O_K` above rational primes (Kummer-Dedekind) and the
//! valuations they induce.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::arith::{int_valuation, is_prime_u64, prime_divisors, rat_valuation, to_u64, Int};
use crate::error::{Error, Result};
use crate::fp::{self, FpPoly};
use crate::nf::element::{gcd_all, FieldElement};
use crate::nf::field::NumberField;

/// A finite place `P = (p, g(theta))` with ramification index `e` and
/// residue degree `f`.
#[derive(Clone, Serialize)]
pub struct PrimePlace {
    p: u64,
    index: usize,
    /// Residues of the monic factor `g` modulo `p`, constant term first.
    generator: Vec<u64>,
    e: u32,
    f: u32,
    /// Integer lift of `(f mod p) / g` evaluated at theta; `anti / p` has
    /// valuation -1 at this place and is integral at the others above `p`.
    #[serde(skip)]
    anti: Vec<Int>,
}

impl PrimePlace {
    pub fn p(&self) -> u64 {
        self.p
    }

    /// Position among the places above `p` (factors sorted by degree, then residues).
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn generator(&self) -> &[u64] {
        &self.generator
    }
}

impl PartialEq for PrimePlace {
    fn eq(&self, o: &Self) -> bool {
        self.p == o.p && self.generator == o.generator
    }
}

impl Eq for PrimePlace {}

impl Hash for PrimePlace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.p.hash(state);
        self.generator.hash(state);
    }
}

impl PartialOrd for PrimePlace {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for PrimePlace {
    fn cmp(&self, o: &Self) -> Ordering {
        (self.p, self.index).cmp(&(o.p, o.index))
    }
}

impl fmt::Debug for PrimePlace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "P({}, #{}, e={}, f={})",
            self.p, self.index, self.e, self.f
        )
    }
}

impl fmt::Display for PrimePlace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.generator.len() == 2 && self.e == 1 && self.f == 1 && self.index == 0 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "({}, {:?})", self.p, self.generator)
        }
    }
}

fn int_poly_mul(a: &[Int], b: &[Int]) -> Vec<Int> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Int::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Reduces an integer polynomial modulo the monic integer polynomial `f`,
/// returning exactly `deg f` coefficients.
fn int_poly_rem(mut a: Vec<Int>, f: &[Int]) -> Vec<Int> {
    let n = f.len() - 1;
    while a.len() > n {
        let top = a.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let shift = a.len() - n;
        for (i, c) in f[..n].iter().enumerate() {
            a[shift + i] -= &top * c;
        }
    }
    a.resize(n, Int::zero());
    a
}

/// Dedekind's criterion: `Z[theta]` is maximal at `p`.
fn dedekind_regular(poly: &[Int], p: u64, factors: &[(FpPoly, usize)]) -> bool {
    let fbar = fp::reduce_poly(poly, p);
    let radical = factors
        .iter()
        .fold(FpPoly::one(p), |acc, (g, _)| acc.mul(g));
    let cofactor = fbar.monic().div_exact(&radical).expect("radical divides f");
    let prod = int_poly_mul(&fp::lift(&radical), &fp::lift(&cofactor));
    let pi = Int::from(p);
    let mut diff: Vec<Int> = poly.to_vec();
    for (i, c) in prod.iter().enumerate() {
        if i < diff.len() {
            diff[i] -= c;
        } else {
            diff.push(-c);
        }
    }
    let quotient: Vec<Int> = diff
        .iter()
        .map(|c| {
            debug_assert!((c % &pi).is_zero());
            c / &pi
        })
        .collect();
    let fq = fp::reduce_poly(&quotient, p);
    let common = fq.gcd(&radical.gcd(&cofactor));
    common.is_constant()
}

impl NumberField {
    /// True when the power basis is usable at `p` (unramified, maximal by
    /// Dedekind's criterion, or asserted by the caller).
    pub fn is_regular_at(&self, p: u64) -> bool {
        if self.asserts_monogenic() || !(self.discriminant() % Int::from(p)).is_zero() {
            return true;
        }
        let fs = fp::factor(&fp::reduce_poly(self.defining_poly(), p));
        dedekind_regular(self.defining_poly(), p, &fs)
    }

    /// The places above the rational prime `p`, in a fixed order.
    pub fn primes_above(&self, p: u64) -> Result<Vec<PrimePlace>> {
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p.to_string()));
        }
        if let Some(places) = self.cached_places(p) {
            return Ok(places);
        }
        let poly = self.defining_poly();
        let factors = fp::factor(&fp::reduce_poly(poly, p));
        let regular = self.asserts_monogenic()
            || !(self.discriminant() % Int::from(p)).is_zero()
            || dedekind_regular(poly, p, &factors);
        if !regular {
            return Err(Error::IndexDivisor { p });
        }
        let fbar = fp::reduce_poly(poly, p);
        let places: Vec<PrimePlace> = factors
            .iter()
            .enumerate()
            .map(|(index, (g, e))| {
                let h = fbar.div_exact(g).expect("factor divides f");
                PrimePlace {
                    p,
                    index,
                    generator: fp::residues(g),
                    e: *e as u32,
                    f: g.deg0() as u32,
                    anti: int_poly_rem(fp::lift(&h), poly),
                }
            })
            .collect();
        self.cache_places(p, places.clone());
        Ok(places)
    }

    /// Place number `index` above `p`.
    pub fn place(&self, p: u64, index: usize) -> Result<PrimePlace> {
        let places = self.primes_above(p)?;
        let count = places.len();
        places.into_iter().nth(index).ok_or_else(|| {
            Error::InvalidInput(format!(
                "prime {p} has {count} places above it, index {index} is out of range"
            ))
        })
    }
}

/// `v_P` of a nonzero integral power-basis vector.
fn integral_valuation(field: &NumberField, coords: &[Int], place: &PrimePlace) -> i64 {
    let pi = Int::from(place.p);
    let content = gcd_all(coords.iter());
    let t = int_valuation(&content, &pi);
    let scale = num_traits::pow(pi.clone(), t as usize);
    let mut b: Vec<Int> = coords.iter().map(|c| c / &scale).collect();
    let mut k = 0i64;
    loop {
        let prod = int_poly_rem(int_poly_mul(&b, &place.anti), field.defining_poly());
        if prod.iter().any(|c| !c.is_multiple_of(&pi)) {
            break;
        }
        b = prod.into_iter().map(|c| c / &pi).collect();
        k += 1;
    }
    place.e as i64 * t as i64 + k
}

impl FieldElement {
    /// Normalized discrete valuation `v_P(self)`.
    pub fn valuation(&self, place: &PrimePlace) -> Result<i64> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        let pi = Int::from(place.p);
        if self.field().degree() == 1 {
            return Ok(rat_valuation(&self.coords()[0], &pi));
        }
        let (c, b) = self.scaled_numerators();
        let vc = int_valuation(&c, &pi) as i64;
        Ok(integral_valuation(self.field(), &b, place) - place.e as i64 * vc)
    }

    /// Every finite place where the valuation is nonzero, sorted.
    pub fn support(&self) -> Result<Vec<PrimePlace>> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        let n = self.field().degree();
        let (c, _) = self.scaled_numerators();
        // N(c * self) = c^n N(self) is an integer
        let nb =
            (self.norm() * num_traits::pow(crate::arith::Rat::from(c.clone()), n)).to_integer();
        let mut candidates: Vec<Int> = prime_divisors(&nb);
        candidates.extend(prime_divisors(&c));
        candidates.sort();
        candidates.dedup();
        let mut out = Vec::new();
        for q in candidates {
            let q = to_u64(&q.abs())?;
            for place in self.field().primes_above(q)? {
                if self.valuation(&place)? != 0 {
                    out.push(place);
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int, Rat};

    #[test]
    fn gaussian_splitting() {
        let k = NumberField::quadratic(-1).unwrap();
        let two = k.primes_above(2).unwrap();
        assert_eq!(two.len(), 1);
        assert_eq!((two[0].e(), two[0].f()), (2, 1));
        let three = k.primes_above(3).unwrap();
        assert_eq!((three[0].e(), three[0].f()), (1, 2));
        let five = k.primes_above(5).unwrap();
        assert_eq!(five.len(), 2);
        assert!(matches!(k.primes_above(6), Err(Error::NotPrime(_))));
    }

    #[test]
    fn gaussian_valuations() {
        let k = NumberField::quadratic(-1).unwrap();
        let two = &k.primes_above(2).unwrap()[0];
        let one_plus_i = FieldElement::new(&k, vec![rat_int(1), rat_int(1)]);
        assert_eq!(one_plus_i.valuation(two).unwrap(), 1);
        assert_eq!(FieldElement::from_i64(&k, 2).valuation(two).unwrap(), 2);
        assert_eq!(
            FieldElement::from_rat(&k, rat(1, 4))
                .valuation(two)
                .unwrap(),
            -4
        );
        // 2 + i has norm 5 and lies in exactly one of the two places above 5
        let a = FieldElement::new(&k, vec![rat_int(2), rat_int(1)]);
        let vs: Vec<i64> = k
            .primes_above(5)
            .unwrap()
            .iter()
            .map(|p| a.valuation(p).unwrap())
            .collect();
        assert_eq!(vs.iter().sum::<i64>(), 1);
        assert!(vs.contains(&0));
        assert_eq!(a.support().unwrap().len(), 1);
    }

    #[test]
    fn index_divisor_detection() {
        // Z[sqrt(5)] is not maximal at 2
        let k = NumberField::quadratic(5).unwrap();
        assert_eq!(k.primes_above(2).unwrap_err(), Error::IndexDivisor { p: 2 });
        assert!(k.primes_above(5).is_ok());
        let forced = NumberField::from_i64s(&[-5, 0, 1], true).unwrap();
        assert!(forced.primes_above(2).is_ok());
        // Z[sqrt(2)] is maximal at the ramified prime 2
        let r2 = NumberField::quadratic(2).unwrap();
        assert!(r2.is_regular_at(2));
        assert_eq!(r2.primes_above(2).unwrap()[0].e(), 2);
    }

    #[test]
    fn support_with_cancellation() {
        // (1 + i) / 2 has valuation -1 at the prime above 2
        let k = NumberField::quadratic(-1).unwrap();
        let a = FieldElement::new(&k, vec![rat(1, 2), rat(1, 2)]);
        let s = a.support().unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(a.valuation(&s[0]).unwrap(), -1);
        let q = NumberField::rationals();
        let x = FieldElement::from_rat(&q, Rat::new(12.into(), 35.into()));
        let ps: Vec<u64> = x.support().unwrap().iter().map(|p| p.p()).collect();
        assert_eq!(ps, vec![2, 3, 5, 7]);
    }
}
