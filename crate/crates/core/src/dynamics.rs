//! Rational maps on the projective line over `K`: evaluation, composition,
//! orbits, and divisor statistics over the algebraic closure.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::arith::{decimal_digits, Int, Rat};
use crate::error::{Error, Result};
use crate::fp::{self, FpPoly};
use crate::nf::{FieldElement, NumberField};
use crate::poly::Poly;

pub type KPoly = Poly<FieldElement>;

/// Default per-coefficient size guard for symbolic iteration, in decimal digits.
pub const DEFAULT_DIGIT_CAP: u64 = 1_000_000;

/// A point of `P^1(K)` in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum ProjPoint {
    Finite(FieldElement),
    Infinity,
}

impl ProjPoint {
    pub fn finite(&self) -> Option<&FieldElement> {
        match self {
            ProjPoint::Finite(x) => Some(x),
            ProjPoint::Infinity => None,
        }
    }

    pub fn height(&self) -> Int {
        match self {
            ProjPoint::Finite(x) => x.height(),
            ProjPoint::Infinity => Int::from(1),
        }
    }

    pub fn to_strings(&self) -> Option<Vec<String>> {
        self.finite().map(|x| x.to_strings())
    }
}

impl From<FieldElement> for ProjPoint {
    fn from(x: FieldElement) -> Self {
        ProjPoint::Finite(x)
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjPoint::Finite(x) => write!(f, "{x}"),
            ProjPoint::Infinity => write!(f, "inf"),
        }
    }
}

/// `num / den` in lowest terms with monic denominator.
#[derive(Clone, PartialEq)]
pub struct RationalMap {
    num: KPoly,
    den: KPoly,
}

fn kpoly(field: &NumberField, coeffs: Vec<FieldElement>) -> KPoly {
    Poly::new(field.clone(), coeffs)
}

fn coeff_digits(p: &KPoly) -> u64 {
    p.coeffs()
        .iter()
        .flat_map(|c| c.coords().iter())
        .map(|q| decimal_digits(q.numer()).max(decimal_digits(q.denom())))
        .max()
        .unwrap_or(0)
}

impl RationalMap {
    pub fn new(num: KPoly, den: KPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let field = den.ctx().clone();
        if num.is_zero() {
            return Ok(RationalMap {
                num,
                den: KPoly::one(field),
            });
        }
        let g = num.gcd(&den);
        let num = num.div_exact(&g).expect("gcd divides");
        let den = den.div_exact(&g).expect("gcd divides");
        let lc = den.lc().unwrap().inv()?;
        Ok(RationalMap {
            num: num.scale(&lc),
            den: den.scale(&lc),
        })
    }

    /// Coefficients given as rationals, constant term first.
    pub fn from_rats(field: &NumberField, num: &[Rat], den: &[Rat]) -> Result<Self> {
        let lift = |cs: &[Rat]| {
            kpoly(
                field,
                cs.iter()
                    .map(|c| FieldElement::from_rat(field, c.clone()))
                    .collect(),
            )
        };
        Self::new(lift(num), lift(den))
    }

    pub fn from_i64s(field: &NumberField, num: &[i64], den: &[i64]) -> Result<Self> {
        let r = |cs: &[i64]| {
            cs.iter()
                .map(|&c| Rat::from_integer(Int::from(c)))
                .collect::<Vec<_>>()
        };
        Self::from_rats(field, &r(num), &r(den))
    }

    pub fn from_elements(
        field: &NumberField,
        num: Vec<FieldElement>,
        den: Vec<FieldElement>,
    ) -> Result<Self> {
        Self::new(kpoly(field, num), kpoly(field, den))
    }

    pub fn polynomial(num: KPoly) -> Self {
        let field = num.ctx().clone();
        Self::new(num, KPoly::one(field)).expect("denominator is one")
    }

    /// The identity map `z`.
    pub fn identity(field: &NumberField) -> Self {
        Self::polynomial(KPoly::x(field.clone()))
    }

    pub fn field(&self) -> &NumberField {
        self.den.ctx()
    }

    pub fn num(&self) -> &KPoly {
        &self.num
    }

    pub fn den(&self) -> &KPoly {
        &self.den
    }

    pub fn degree(&self) -> usize {
        self.num.deg0().max(self.den.deg0())
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    fn require_nonconstant(&self) -> Result<()> {
        if self.is_constant() {
            Err(Error::ConstantMap)
        } else {
            Ok(())
        }
    }

    /// Value at a finite point.
    pub fn eval(&self, x: &FieldElement) -> ProjPoint {
        let d = self.den.eval(x);
        if d.is_zero() {
            return ProjPoint::Infinity;
        }
        let n = self.num.eval(x);
        ProjPoint::Finite(n.div(&d).expect("nonzero denominator"))
    }

    pub fn evaluate(&self, point: &ProjPoint) -> ProjPoint {
        match point {
            ProjPoint::Finite(x) => self.eval(x),
            ProjPoint::Infinity => {
                let field = self.field();
                let (dn, dd) = (self.num.degree(), self.den.deg0());
                match dn {
                    None => ProjPoint::Finite(FieldElement::zero(field)),
                    Some(dn) if dn > dd => ProjPoint::Infinity,
                    Some(dn) if dn < dd => ProjPoint::Finite(FieldElement::zero(field)),
                    Some(_) => ProjPoint::Finite(
                        self.num
                            .lc()
                            .unwrap()
                            .div(self.den.lc().unwrap())
                            .expect("nonzero"),
                    ),
                }
            }
        }
    }

    /// `self ∘ inner` with the default digit guard.
    pub fn compose(&self, inner: &RationalMap) -> Result<RationalMap> {
        self.compose_capped(inner, DEFAULT_DIGIT_CAP)
    }

    pub fn compose_capped(&self, inner: &RationalMap, cap: u64) -> Result<RationalMap> {
        let d = self.degree();
        let num = self.num.homogeneous_eval(d, &inner.num, &inner.den);
        let den = self.den.homogeneous_eval(d, &inner.num, &inner.den);
        let out = RationalMap::new(num, den)?;
        let digits = coeff_digits(&out.num).max(coeff_digits(&out.den));
        if digits > cap {
            return Err(Error::CoefficientBlowup { digits, cap });
        }
        Ok(out)
    }

    /// `phi^n` for `n >= 1`.
    pub fn iterate(&self, n: usize) -> Result<RationalMap> {
        self.iterate_capped(n, DEFAULT_DIGIT_CAP)
    }

    pub fn iterate_capped(&self, n: usize, cap: u64) -> Result<RationalMap> {
        if n == 0 {
            return Err(Error::InvalidInput("iterate needs n >= 1".into()));
        }
        let mut acc = self.clone();
        for _ in 1..n {
            acc = self.compose_capped(&acc, cap)?;
        }
        Ok(acc)
    }

    /// Number of distinct zeros and poles in `P^1` over the algebraic closure.
    pub fn zero_pole_count(&self) -> Result<usize> {
        self.require_nonconstant()?;
        let at_inf = usize::from(self.num.deg0() != self.den.deg0());
        Ok(self.num.squarefree_part().deg0() + self.den.squarefree_part().deg0() + at_inf)
    }

    /// Whether every zero and pole multiplicity is divisible by `k`, i.e.
    /// whether the map is a k-th power over the algebraic closure.
    pub fn is_kth_power_geometric(&self, k: usize) -> Result<bool> {
        assert!(k >= 2);
        self.require_nonconstant()?;
        let at_inf = self.num.deg0().abs_diff(self.den.deg0());
        let divisible = |p: &KPoly| p.multiplicity_profile().iter().all(|&(_, m)| m % k == 0);
        Ok(at_inf.is_multiple_of(k) && divisible(&self.num) && divisible(&self.den))
    }

    /// `Some((beta, +1))` for `beta z^d`, `Some((beta, -1))` for `beta z^-d`.
    pub fn beta_z_pm_d(&self) -> Option<(FieldElement, i8)> {
        let monomial = |p: &KPoly| {
            p.degree()
                .filter(|&d| p.coeffs()[..d].iter().all(|c| c.is_zero()))
        };
        let d = self.degree();
        if d == 0 {
            return None;
        }
        if self.den.deg0() == 0 && monomial(&self.num) == Some(d) {
            let beta = self.num.lc().unwrap().div(&self.den.coeffs()[0]).ok()?;
            return Some((beta, 1));
        }
        if self.num.deg0() == 0 && monomial(&self.den) == Some(d) {
            let beta = self.num.coeffs()[0].div(self.den.lc().unwrap()).ok()?;
            return Some((beta, -1));
        }
        None
    }

    /// `phi + 1/phi = (num^2 + den^2) / (num den)`.
    pub fn phi_plus_inverse(&self) -> Result<RationalMap> {
        self.require_nonconstant()?;
        let num = self.num.mul(&self.num).add(&self.den.mul(&self.den));
        let den = self.num.mul(&self.den);
        RationalMap::new(num, den)
    }

    /// `(gamma, mu, e)` with `phi = gamma * mu^e`, when the map has exactly
    /// one zero and one pole.
    pub fn decompose_gamma_mu_d(&self) -> Result<GammaMuD> {
        if self.zero_pole_count()? != 2 {
            return Err(Error::NotTotallyRamifiedShape);
        }
        let field = self.field().clone();
        let d = self.degree() as i64;
        // p = c (z - a)^k, and the squarefree part z - a is linear over K
        let root = |p: &KPoly| -&p.squarefree_part().coeffs()[0];
        let one = FieldElement::one(&field);
        let linear = |a: &FieldElement| kpoly(&field, vec![-a, one.clone()]);
        let (gamma, mu, exponent) = match (self.num.deg0() > 0, self.den.deg0() > 0) {
            (true, true) => {
                let (a, b) = (root(&self.num), root(&self.den));
                let mu = RationalMap::new(linear(&a), linear(&b))?;
                (self.num.lc().unwrap().clone(), mu, d)
            }
            (true, false) => {
                let a = root(&self.num);
                let gamma = self.num.lc().unwrap().div(&self.den.coeffs()[0])?;
                (gamma, RationalMap::polynomial(linear(&a)), d)
            }
            (false, true) => {
                let b = root(&self.den);
                (
                    self.num.coeffs()[0].clone(),
                    RationalMap::polynomial(linear(&b)),
                    -d,
                )
            }
            (false, false) => unreachable!("nonconstant"),
        };
        let out = GammaMuD {
            gamma,
            mu,
            exponent,
        };
        if out.recompose()? != *self {
            return Err(Error::AssertionFailed(format!(
                "gamma mu^d does not recompose {self}"
            )));
        }
        Ok(out)
    }

    /// Constant term first, element coordinates as `"num/den"` strings.
    pub fn coefficient_strings(&self) -> (Vec<Vec<String>>, Vec<Vec<String>>) {
        let s = |p: &KPoly| p.coeffs().iter().map(|c| c.to_strings()).collect();
        (s(&self.num), s(&self.den))
    }

    pub fn scale(&self, c: &FieldElement) -> Result<RationalMap> {
        RationalMap::new(self.num.scale(c), self.den.clone())
    }

    /// Pointwise product.
    pub fn mul(&self, o: &RationalMap) -> Result<RationalMap> {
        RationalMap::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn pow(&self, e: i64) -> Result<RationalMap> {
        let (n, d) = if e >= 0 {
            (self.num.pow(e as u64), self.den.pow(e as u64))
        } else {
            (
                self.den.pow(e.unsigned_abs()),
                self.num.pow(e.unsigned_abs()),
            )
        };
        RationalMap::new(n, d)
    }
}

impl fmt::Debug for RationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.deg0() == 0 && self.den.coeffs()[0].is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// `phi = gamma * mu^exponent` with `mu` of degree one.
#[derive(Clone, Debug)]
pub struct GammaMuD {
    pub gamma: FieldElement,
    pub mu: RationalMap,
    pub exponent: i64,
}

impl GammaMuD {
    pub fn recompose(&self) -> Result<RationalMap> {
        self.mu.pow(self.exponent)?.scale(&self.gamma)
    }
}

/// Result of the pole-count check on `phi` and `phi^2`.
#[derive(Clone, Debug, Serialize)]
pub struct LemmaPoles {
    pub m1: usize,
    /// Zero and pole count of `phi^2`; a certified lower bound when
    /// `m2_exact` is false.
    pub m2: usize,
    pub m2_exact: bool,
    /// The map has the shape `beta z^{±d}` and is outside the statement.
    pub excluded: bool,
    /// Bound that was checked (3, or d+1 when m1 = 2); `None` when excluded.
    pub bound: Option<usize>,
}

const LARGE_PRIMES: [u64; 3] = [(1 << 61) - 1, 4_611_686_018_427_387_847, 1_000_000_007];

/// Distinct zeros in `P^1` of the degree-`n` form whose affine part is `f`.
fn projective_zero_count(f: &FpPoly, n: usize) -> usize {
    let Some(deg) = f.degree() else {
        return usize::MAX;
    };
    let finite = if deg == 0 {
        0
    } else {
        deg - f.gcd(&f.derivative()).deg0()
    };
    finite + usize::from(deg < n)
}

/// Zero and pole count of `phi^2` over Q read off reductions modulo large
/// primes. Reduction can only merge zeros, so every prime gives a lower
/// bound, and a squarefree reduction gives the exact count.
fn second_iterate_count_mod(phi: &RationalMap) -> Option<(usize, bool)> {
    let rationals = |p: &KPoly| -> Option<Vec<Rat>> {
        p.coeffs()
            .iter()
            .map(|c| c.as_rational().cloned())
            .collect()
    };
    let (num, den) = (rationals(&phi.num)?, rationals(&phi.den)?);
    let l = crate::arith::lcm_denominators(num.iter().chain(&den));
    let ints = |v: &[Rat]| -> Vec<Int> { v.iter().map(|c| (c * &l).to_integer()).collect() };
    let (num, den) = (ints(&num), ints(&den));
    let d = phi.degree();
    let n = d * d;
    let mut best = (0, false);
    for p in LARGE_PRIMES {
        let (a, b) = (fp::reduce_poly(&num, p), fp::reduce_poly(&den, p));
        if a.is_zero() || b.is_zero() {
            continue;
        }
        let num2 = a.homogeneous_eval(d, &a, &b);
        let den2 = b.homogeneous_eval(d, &a, &b);
        let (za, zb) = (
            projective_zero_count(&num2, n),
            projective_zero_count(&den2, n),
        );
        if za == usize::MAX || zb == usize::MAX {
            continue;
        }
        let exact = za == n && zb == n;
        if za + zb > best.0 || exact {
            best = (za + zb, exact);
        }
        if exact {
            break;
        }
    }
    (best.0 > 0).then_some(best)
}

pub fn check_lemma_poles(phi: &RationalMap) -> Result<LemmaPoles> {
    let d = phi.degree();
    if d < 2 {
        return Err(Error::InvalidInput(format!(
            "degree {d} map; need degree >= 2"
        )));
    }
    let m1 = phi.zero_pole_count()?;
    let excluded = phi.beta_z_pm_d().is_some();
    let bound = if m1 == 2 { d + 1 } else { 3 };
    let (m2, m2_exact) = match second_iterate_count_mod(phi) {
        Some((m, exact)) if exact || (m >= bound && !excluded) => (m, exact),
        _ => (phi.iterate(2)?.zero_pole_count()?, true),
    };
    if excluded {
        return Ok(LemmaPoles {
            m1,
            m2,
            m2_exact,
            excluded,
            bound: None,
        });
    }
    if m2 < bound {
        return Err(Error::AssertionFailed(format!(
            "{phi}: phi^2 has {m2} zeros and poles, expected at least {bound}"
        )));
    }
    Ok(LemmaPoles {
        m1,
        m2,
        m2_exact,
        excluded,
        bound: Some(bound),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Truncation {
    ReachedN,
    HeightCap,
    EnteredCycle,
}

/// `phi(alpha), phi^2(alpha), ...` computed pointwise.
#[derive(Clone, Debug)]
pub struct OrbitRecord {
    pub start: ProjPoint,
    pub points: Vec<ProjPoint>,
    /// Index in `points` of the first point that the orbit returned to.
    pub cycle_entry: Option<usize>,
    pub reason: Truncation,
}

impl OrbitRecord {
    pub fn period(&self) -> Option<usize> {
        self.cycle_entry.map(|i| self.points.len() - i)
    }
}

/// Stops at the first repeated point, after `n` points, or right after the
/// first point whose height exceeds `height_cap`.
pub fn orbit(phi: &RationalMap, alpha: &ProjPoint, n: usize, height_cap: &Int) -> OrbitRecord {
    orbit_inner(phi, alpha, n, Some(height_cap))
}

/// Like [`orbit`] without a height cap.
pub fn orbit_uncapped(phi: &RationalMap, alpha: &ProjPoint, n: usize) -> OrbitRecord {
    orbit_inner(phi, alpha, n, None)
}

fn orbit_inner(
    phi: &RationalMap,
    alpha: &ProjPoint,
    n: usize,
    height_cap: Option<&Int>,
) -> OrbitRecord {
    assert!(n >= 1);
    let mut points: Vec<ProjPoint> = Vec::new();
    let mut seen: HashMap<ProjPoint, usize> = HashMap::new();
    let mut cur = alpha.clone();
    loop {
        let next = phi.evaluate(&cur);
        if let Some(&i) = seen.get(&next) {
            return OrbitRecord {
                start: alpha.clone(),
                points,
                cycle_entry: Some(i),
                reason: Truncation::EnteredCycle,
            };
        }
        seen.insert(next.clone(), points.len());
        points.push(next.clone());
        let reason = if height_cap.is_some_and(|cap| &next.height() > cap) {
            Some(Truncation::HeightCap)
        } else if points.len() >= n {
            Some(Truncation::ReachedN)
        } else {
            None
        };
        if let Some(reason) = reason {
            return OrbitRecord {
                start: alpha.clone(),
                points,
                cycle_entry: None,
                reason,
            };
        }
        cur = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn q() -> NumberField {
        NumberField::rationals()
    }

    fn m(num: &[i64], den: &[i64]) -> RationalMap {
        RationalMap::from_i64s(&q(), num, den).unwrap()
    }

    fn pt(n: i64) -> ProjPoint {
        ProjPoint::Finite(FieldElement::from_i64(&q(), n))
    }

    #[test]
    fn creation_reduces() {
        assert_eq!(m(&[-1, 0, 1], &[-1, 1]), m(&[1, 1], &[1]));
        assert_eq!(m(&[0, 2], &[2]), m(&[0, 1], &[1]));
        assert_eq!(
            RationalMap::from_i64s(&q(), &[1], &[]).unwrap_err(),
            Error::ZeroDenominator
        );
    }

    #[test]
    fn evaluation() {
        assert_eq!(
            m(&[0, 0, 1], &[1]).evaluate(&ProjPoint::Infinity),
            ProjPoint::Infinity
        );
        assert_eq!(m(&[1], &[0, 1]).evaluate(&pt(0)), ProjPoint::Infinity);
        assert_eq!(m(&[0, -1, 1], &[1]).evaluate(&pt(3)), pt(6));
        assert_eq!(
            m(&[1, 0, 3], &[0, 0, 2]).evaluate(&ProjPoint::Infinity),
            ProjPoint::Finite(FieldElement::from_rat(&q(), rat(3, 2)))
        );
    }

    #[test]
    fn composition() {
        assert_eq!(
            m(&[0, 0, 1], &[1]).iterate(3).unwrap(),
            m(&[0, 0, 0, 0, 0, 0, 0, 0, 1], &[1])
        );
        assert_eq!(m(&[1], &[0, 1]).iterate(2).unwrap(), m(&[0, 1], &[1]));
        let phi = m(&[1, 0, 1], &[0, 1]);
        assert_eq!(phi.iterate(2).unwrap().degree(), 4);
        let tiny = m(&[1, 1, 7], &[3]);
        assert!(matches!(
            tiny.iterate_capped(4, 5),
            Err(Error::CoefficientBlowup { .. })
        ));
    }

    #[test]
    fn orbits() {
        let cap = Int::from(10).pow(80u32);
        let o = orbit(&m(&[-1, 0, 1], &[1]), &pt(0), 15, &cap);
        assert_eq!(o.points, vec![pt(-1), pt(0)]);
        assert_eq!(o.cycle_entry, Some(0));
        assert_eq!(o.period(), Some(2));
        let o = orbit(&m(&[0, 0, 1], &[1]), &pt(1), 15, &cap);
        assert_eq!((o.points.len(), o.reason), (1, Truncation::EnteredCycle));
        let phi =
            RationalMap::from_rats(&q(), &[rat(1, 2), rat(0, 1), rat(1, 1)], &[rat(1, 1)]).unwrap();
        let o = orbit(&phi, &pt(1), 15, &cap);
        assert_eq!(o.reason, Truncation::HeightCap);
        let hs: Vec<Int> = o.points.iter().map(|p| p.height()).collect();
        assert!(hs.windows(2).all(|w| w[0] < w[1]));
        assert!(hs.last().unwrap() > &cap);
        let o = orbit(&phi, &pt(1), 3, &cap);
        assert_eq!((o.points.len(), o.reason), (3, Truncation::ReachedN));
    }

    #[test]
    fn zero_pole_counts() {
        assert_eq!(m(&[0, 0, 1], &[1]).zero_pole_count().unwrap(), 2);
        assert_eq!(m(&[1, 0, 1], &[1]).zero_pole_count().unwrap(), 3);
        assert_eq!(m(&[-1, 0, 1], &[0, 1]).zero_pole_count().unwrap(), 4);
        assert_eq!(
            m(&[3], &[1]).zero_pole_count().unwrap_err(),
            Error::ConstantMap
        );
    }

    #[test]
    fn kth_powers() {
        // z^4 / (z-1)^4
        assert!(m(&[0, 0, 0, 0, 1], &[1, -4, 6, -4, 1])
            .is_kth_power_geometric(4)
            .unwrap());
        assert!(!m(&[0, 0, -1, 1], &[1]).is_kth_power_geometric(3).unwrap());
        assert!(m(&[1, 0, 2, 0, 1], &[1]).is_kth_power_geometric(2).unwrap());
    }

    #[test]
    fn beta_shapes() {
        let (b, s) = m(&[0, 0, 0, 2], &[1]).beta_z_pm_d().unwrap();
        assert_eq!((b, s), (FieldElement::from_i64(&q(), 2), 1));
        let (b, s) = m(&[3], &[0, 0, 1]).beta_z_pm_d().unwrap();
        assert_eq!((b, s), (FieldElement::from_i64(&q(), 3), -1));
        assert!(m(&[1, 0, 1], &[1]).beta_z_pm_d().is_none());
    }

    #[test]
    fn modular_second_iterate_count() {
        for &p in &LARGE_PRIMES {
            assert!(crate::arith::is_prime_u64(p));
        }
        for (num, den) in [
            (vec![1, -2, 1], vec![0, 0, 1]),
            (vec![1, 0, 1], vec![1]),
            (vec![0, -1, 1], vec![1]),
            (vec![2, 0, 3, 1], vec![1, 5]),
            (vec![-1, 0, 1], vec![0, 1]),
        ] {
            let phi = m(&num, &den);
            let exact = phi.iterate(2).unwrap().zero_pole_count().unwrap();
            let (lower, is_exact) = second_iterate_count_mod(&phi).unwrap();
            assert!(lower <= exact, "{phi}");
            if is_exact {
                assert_eq!(lower, exact, "{phi}");
            }
        }
        let (lower, is_exact) = second_iterate_count_mod(&m(&[5, 3, 1], &[7, 0, 1])).unwrap();
        assert!(is_exact && lower == 8);
    }

    #[test]
    fn lemma_poles_examples() {
        let r = check_lemma_poles(&m(&[0, 0, 1], &[1])).unwrap();
        assert!(r.excluded && r.m2 == 2);
        let r = check_lemma_poles(&m(&[1, -2, 1], &[0, 0, 1])).unwrap();
        assert_eq!((r.m1, r.m2, r.bound), (2, 3, Some(3)));
        let r = check_lemma_poles(&m(&[1, 0, 1], &[1])).unwrap();
        assert_eq!(r.m1, 3);
        assert!(r.m2 >= 3);
    }

    #[test]
    fn plus_inverse() {
        assert_eq!(
            m(&[0, 1], &[1]).phi_plus_inverse().unwrap(),
            m(&[1, 0, 1], &[0, 1])
        );
        assert_eq!(
            m(&[0, 0, 1], &[1]).phi_plus_inverse().unwrap(),
            m(&[1, 0, 0, 0, 1], &[0, 0, 1])
        );
    }

    #[test]
    fn gamma_mu_d() {
        let phi = m(&[3, -6, 3], &[1, 2, 1]);
        let g = phi.decompose_gamma_mu_d().unwrap();
        assert_eq!(g.gamma, FieldElement::from_i64(&q(), 3));
        assert_eq!(g.mu, m(&[-1, 1], &[1, 1]));
        assert_eq!(g.exponent, 2);
        let g = m(&[1], &[0, 1]).decompose_gamma_mu_d().unwrap();
        assert_eq!((g.mu.clone(), g.exponent), (m(&[0, 1], &[1]), -1));
        let g = m(&[10, -10, 5, -1], &[1]).decompose_gamma_mu_d();
        assert!(matches!(g, Err(Error::NotTotallyRamifiedShape)));
        let g = m(&[-8, 12, -6, 1], &[1]).decompose_gamma_mu_d().unwrap();
        assert_eq!(g.recompose().unwrap(), m(&[-8, 12, -6, 1], &[1]));
    }
}
