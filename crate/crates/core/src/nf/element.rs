use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{fmt_rat, parse_rat, Int, Rat};
use crate::error::{Error, Result};
use crate::nf::field::NumberField;
use crate::poly::QPoly;

/// An element of `K` in the power basis `1, theta, ..., theta^(n-1)`.
#[derive(Clone)]
pub struct FieldElement {
    field: NumberField,
    coords: Vec<Rat>,
}

impl FieldElement {
    /// Reduces `coords` (any length) modulo the defining polynomial.
    pub fn new(field: &NumberField, coords: Vec<Rat>) -> Self {
        let n = field.degree();
        let coords = if coords.len() > n {
            QPoly::new((), coords).rem(field.qpoly()).into_coeffs()
        } else {
            coords
        };
        Self::from_reduced(field, coords)
    }

    fn from_reduced(field: &NumberField, mut coords: Vec<Rat>) -> Self {
        coords.resize(field.degree(), Rat::zero());
        FieldElement {
            field: field.clone(),
            coords,
        }
    }

    pub fn from_rat(field: &NumberField, q: Rat) -> Self {
        let mut coords = vec![Rat::zero(); field.degree()];
        coords[0] = q;
        FieldElement {
            field: field.clone(),
            coords,
        }
    }

    pub fn from_i64(field: &NumberField, n: i64) -> Self {
        Self::from_rat(field, Rat::from_integer(Int::from(n)))
    }

    pub fn zero(field: &NumberField) -> Self {
        Self::from_rat(field, Rat::zero())
    }

    pub fn one(field: &NumberField) -> Self {
        Self::from_rat(field, Rat::one())
    }

    /// The generator `theta` (for `K = Q[x]/(x - c)` this is `c`).
    pub fn theta(field: &NumberField) -> Self {
        Self::new(field, vec![Rat::zero(), Rat::one()])
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        self.is_rational().then(|| &self.coords[0])
    }

    fn as_qpoly(&self) -> QPoly {
        QPoly::new((), self.coords.clone())
    }

    fn check_field(&self, o: &Self) {
        assert!(self.field == o.field, "{}", Error::FieldMismatch);
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.field.degree() == 1 {
            return Ok(Self::from_reduced(
                &self.field,
                vec![self.coords[0].recip()],
            ));
        }
        let (g, s, _) = self.as_qpoly().ext_gcd(self.field.qpoly());
        if !g.is_constant() {
            // only possible when the defining polynomial is reducible
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_reduced(&self.field, s.into_coeffs()))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        Ok(base.pow_u(e.unsigned_abs()))
    }

    pub fn pow_u(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `N_{K/Q}`, as the resultant of the defining polynomial with the
    /// coordinate polynomial.
    pub fn norm(&self) -> Rat {
        if self.field.degree() == 1 {
            return self.coords[0].clone();
        }
        self.field.qpoly().resultant(&self.as_qpoly())
    }

    /// Least common denominator of the coordinates.
    pub fn denominator(&self) -> Int {
        crate::arith::lcm_denominators(self.coords.iter())
    }

    /// Integer coordinates of `denominator() * self`.
    pub fn scaled_numerators(&self) -> (Int, Vec<Int>) {
        let d = self.denominator();
        let nums = self
            .coords
            .iter()
            .map(|c| c.numer() * (&d / c.denom()))
            .collect();
        (d, nums)
    }

    /// Naive height: max of the common denominator and the absolute
    /// numerators, with height(0) = 1.
    pub fn height(&self) -> Int {
        let (d, nums) = self.scaled_numerators();
        nums.into_iter().map(|n| n.abs()).fold(d, |a, b| a.max(b))
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coords.iter().map(fmt_rat).collect()
    }

    pub fn from_strings<S: AsRef<str>>(field: &NumberField, parts: &[S]) -> Result<Self> {
        if parts.is_empty() || parts.len() > field.degree() {
            return Err(Error::InvalidInput(format!(
                "element needs between 1 and {} coordinates",
                field.degree()
            )));
        }
        let coords = parts
            .iter()
            .map(|s| parse_rat(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_reduced(field, coords))
    }

    pub(crate) fn is_integral_coords(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }

    /// True when `self` is a root of unity (bounded order search).
    pub fn is_root_of_unity(&self) -> bool {
        if self.is_zero() || !self.is_integral_coords() || self.norm().abs() != Rat::one() {
            return false;
        }
        let n = self.field.degree() as u64;
        let bound = 2 * n * n + 2;
        let one = Self::one(&self.field);
        let mut acc = self.clone();
        for _ in 0..bound {
            if acc == one {
                return true;
            }
            acc = &acc * self;
        }
        false
    }

    /// Order of a root of unity, if `self` is one.
    pub fn torsion_order(&self) -> Option<u64> {
        if !self.is_root_of_unity() {
            return None;
        }
        let one = Self::one(&self.field);
        let mut acc = self.clone();
        let mut k = 1;
        while acc != one {
            acc = &acc * self;
            k += 1;
        }
        Some(k)
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && self.field == other.field
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.coords[0]);
        }
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*t")?,
                _ => write!(f, "{c}*t^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, o: &FieldElement) -> FieldElement {
        self.check_field(o);
        let coords = self
            .coords
            .iter()
            .zip(&o.coords)
            .map(|(a, b)| a + b)
            .collect();
        FieldElement {
            field: self.field.clone(),
            coords,
        }
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, o: &FieldElement) -> FieldElement {
        self.check_field(o);
        let coords = self
            .coords
            .iter()
            .zip(&o.coords)
            .map(|(a, b)| a - b)
            .collect();
        FieldElement {
            field: self.field.clone(),
            coords,
        }
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, o: &FieldElement) -> FieldElement {
        self.check_field(o);
        if self.field.degree() == 1 {
            return FieldElement::from_reduced(&self.field, vec![&self.coords[0] * &o.coords[0]]);
        }
        let prod = self.as_qpoly().mul(&o.as_qpoly()).rem(self.field.qpoly());
        FieldElement::from_reduced(&self.field, prod.into_coeffs())
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl crate::poly::Scalar for FieldElement {
    type Ctx = NumberField;

    fn ctx(&self) -> NumberField {
        self.field.clone()
    }
    fn zero(ctx: &NumberField) -> Self {
        FieldElement::zero(ctx)
    }
    fn one(ctx: &NumberField) -> Self {
        FieldElement::one(ctx)
    }
    fn from_i64(ctx: &NumberField, n: i64) -> Self {
        FieldElement::from_i64(ctx, n)
    }
    fn is_zero(&self) -> bool {
        FieldElement::is_zero(self)
    }
    fn is_one(&self) -> bool {
        FieldElement::is_one(self)
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        FieldElement::inv(self).ok()
    }
}

/// Greatest common divisor of a list of integers (0 for the empty list).
pub(crate) fn gcd_all<'a>(ns: impl IntoIterator<Item = &'a Int>) -> Int {
    ns.into_iter().fold(Int::zero(), |a, b| a.gcd(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};

    fn gauss() -> NumberField {
        NumberField::quadratic(-1).unwrap()
    }

    #[test]
    fn gaussian_arithmetic() {
        let k = gauss();
        let i = FieldElement::theta(&k);
        assert_eq!(&i * &i, FieldElement::from_i64(&k, -1));
        assert_eq!(i.inv().unwrap(), -&i);
        let a = FieldElement::new(&k, vec![rat(3, 2), rat(-1, 5)]);
        assert_eq!(&a + &FieldElement::zero(&k), a);
        assert!(&a.inv().unwrap() * &a == FieldElement::one(&k));
        assert_eq!(
            FieldElement::zero(&k).inv().unwrap_err(),
            Error::DivisionByZero
        );
    }

    #[test]
    fn norms() {
        let k = gauss();
        let one_plus_i = FieldElement::new(&k, vec![rat_int(1), rat_int(1)]);
        assert_eq!(one_plus_i.norm(), rat_int(2));
        let cubic = NumberField::from_i64s(&[-2, 0, 0, 1], false).unwrap();
        assert_eq!(FieldElement::from_rat(&cubic, rat(2, 3)).norm(), rat(8, 27));
        assert_eq!(FieldElement::theta(&cubic).norm(), rat_int(2));
    }

    #[test]
    fn heights() {
        let q = NumberField::rationals();
        assert_eq!(FieldElement::from_rat(&q, rat(3, 2)).height(), Int::from(3));
        assert_eq!(FieldElement::zero(&q).height(), Int::from(1));
        let k = gauss();
        let a = FieldElement::new(&k, vec![rat(1, 3), rat(1, 3)]);
        assert_eq!(a.height(), Int::from(3));
    }

    #[test]
    fn torsion() {
        let k = gauss();
        let i = FieldElement::theta(&k);
        assert_eq!(i.torsion_order(), Some(4));
        assert_eq!(FieldElement::from_i64(&k, -1).torsion_order(), Some(2));
        assert!(!FieldElement::new(&k, vec![rat_int(1), rat_int(1)]).is_root_of_unity());
        let q = NumberField::rationals();
        assert!(!FieldElement::from_i64(&q, 3).is_root_of_unity());
    }

    #[test]
    fn serialization() {
        let k = gauss();
        let a = FieldElement::from_strings(&k, &["1/3", "-2"]).unwrap();
        assert_eq!(a.to_strings(), vec!["1/3", "-2/1"]);
        assert!(FieldElement::from_strings(&k, &["1", "2", "3"]).is_err());
    }
}
