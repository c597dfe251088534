//! Explicit infinite families: maps `gamma mu^(±d)` with infinitely many
//! S'-unit values, and orbits of `beta z^(±d)` inside a group of S-units.

use serde::Serialize;

use crate::arith::primes;
use crate::dynamics::{orbit_uncapped, KPoly, ProjPoint, RationalMap, Truncation};
use crate::error::{Error, Result};
use crate::nf::{FieldElement, PrimePlace};
use crate::places::PlaceSet;

#[derive(Clone, Debug, Serialize)]
pub struct FamilyMember {
    pub u: Vec<String>,
    pub value: Vec<String>,
    pub preimage: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct InfiniteFamily {
    pub s_prime: PlaceSet,
    pub gamma: FieldElement,
    pub mu: RationalMap,
    pub exponent: i64,
    /// Rational prime whose powers serve as the units `u`.
    pub unit_prime: u64,
    /// Set when the places above `unit_prime` had to be added to S'.
    pub added_prime: Option<u64>,
    pub members: Vec<FamilyMember>,
}

/// Inverse of a degree-one map `(a z + b) / (c z + e)`.
fn invert_mobius(mu: &RationalMap) -> Result<RationalMap> {
    let field = mu.field();
    let co = |p: &KPoly, i| p.coeff(i);
    let (a, b) = (co(mu.num(), 1), co(mu.num(), 0));
    let (c, e) = (co(mu.den(), 1), co(mu.den(), 0));
    RationalMap::from_elements(field, vec![-&b, e], vec![a, -&c])
}

/// `N` distinct values of `phi = gamma mu^(±d)` that are S'-units, where S'
/// contains S, the support of `gamma`, and every place above one rational prime.
pub fn infinite_family(phi: &RationalMap, set: &PlaceSet, n: usize) -> Result<InfiniteFamily> {
    let dec = phi.decompose_gamma_mu_d().map_err(|e| match e {
        Error::NotTotallyRamifiedShape => {
            Error::ShapeMismatch(format!("{phi} does not have exactly one zero and one pole"))
        }
        other => other,
    })?;
    let field = phi.field().clone();
    let mut s_prime = set.union(dec.gamma.support()?);
    // a rational prime all of whose places lie in S'
    let mut unit_prime = None;
    for &q in s_prime.rational_primes() {
        if field.primes_above(q)?.iter().all(|p| s_prime.contains(p)) {
            unit_prime = Some(q);
            break;
        }
    }
    let mut added_prime = None;
    let q = match unit_prime {
        Some(q) => q,
        None => {
            let q = primes()
                .find(|q| !s_prime.rational_primes().contains(q) && field.is_regular_at(*q))
                .expect("primes are unbounded");
            let places: Vec<PrimePlace> = field.primes_above(q)?;
            s_prime = s_prime.union(places);
            added_prime = Some(q);
            q
        }
    };
    let inverse = invert_mobius(&dec.mu)?;
    let qe = FieldElement::from_i64(&field, q as i64);
    let mut members = Vec::new();
    let mut u = FieldElement::one(&field);
    while members.len() < n {
        if let ProjPoint::Finite(beta) = inverse.eval(&u) {
            let expected = &dec.gamma * &u.pow(dec.exponent)?;
            match phi.eval(&beta) {
                ProjPoint::Finite(v) if v == expected => {
                    if !s_prime.is_s_unit(&v)? {
                        return Err(Error::AssertionFailed(format!("{v} is not an S'-unit")));
                    }
                    members.push(FamilyMember {
                        u: u.to_strings(),
                        value: v.to_strings(),
                        preimage: beta.to_strings(),
                    });
                }
                other => {
                    return Err(Error::AssertionFailed(format!(
                        "phi({beta}) = {other}, expected {expected}"
                    )))
                }
            }
        }
        u = &u * &qe;
    }
    Ok(InfiniteFamily {
        s_prime,
        gamma: dec.gamma,
        mu: dec.mu,
        exponent: dec.exponent,
        unit_prime: q,
        added_prime,
        members,
    })
}

#[derive(Clone, Debug)]
pub struct PowerMapFamily {
    pub set: PlaceSet,
    pub phi: RationalMap,
    pub orbit: Vec<FieldElement>,
    pub reason: Truncation,
    pub alpha_is_torsion: bool,
}

/// Orbit of `alpha` under `beta z^exponent`, checked to stay inside the
/// S-units for `S = S_inf ∪ supp(alpha) ∪ supp(beta)`.
pub fn power_map_family(
    beta: &FieldElement,
    exponent: i64,
    alpha: &FieldElement,
    n: usize,
) -> Result<PowerMapFamily> {
    if exponent.unsigned_abs() < 2 {
        return Err(Error::InvalidInput("power map needs |d| >= 2".into()));
    }
    if beta.is_zero() || alpha.is_zero() {
        return Err(Error::ZeroElement);
    }
    let field = beta.field().clone();
    let set = PlaceSet::new(&field, alpha.support()?.into_iter().chain(beta.support()?));
    let d = exponent.unsigned_abs() as usize;
    let mono = KPoly::monomial(FieldElement::one(&field), d);
    let constant = KPoly::constant(beta.clone());
    let phi = if exponent > 0 {
        RationalMap::new(mono.scale(beta), KPoly::one(field.clone()))?
    } else {
        RationalMap::new(constant, mono)?
    };
    let rec = orbit_uncapped(&phi, &ProjPoint::Finite(alpha.clone()), n);
    let mut orbit = Vec::new();
    for p in &rec.points {
        match p {
            ProjPoint::Finite(x) if set.is_s_unit(x)? => orbit.push(x.clone()),
            other => {
                return Err(Error::AssertionFailed(format!(
                    "orbit point {other} is not an S-unit"
                )))
            }
        }
    }
    Ok(PowerMapFamily {
        set,
        phi,
        orbit,
        reason: rec.reason,
        alpha_is_torsion: alpha.is_root_of_unity(),
    })
}
