//! Exact k-th roots in `K`.
//!
//! Over Q the root is exact integer arithmetic. In quadratic fields the
//! candidates come from the complex embeddings, are rounded to the lattice
//! `(1/L) Z[theta]` with `L = den(x) * |disc f|`, and are then verified
//! exactly. Higher degree fields are only handled when a rational root exists.

use num_traits::ToPrimitive;

use crate::arith::{rat_nth_root_exact, Int, Rat};
use crate::error::{Error, Result};
use crate::nf::element::FieldElement;
use crate::nf::field::abs_disc;

/// Largest rounded lattice coordinate the f64 path trusts.
const ROUNDING_LIMIT: f64 = (1u64 << 40) as f64;

fn to_f64(q: &Rat) -> f64 {
    q.numer().to_f64().unwrap_or(f64::NAN) / q.denom().to_f64().unwrap_or(f64::NAN)
}

/// Real k-th roots of a real number (both signs for even k).
fn real_roots(x: f64, k: u32) -> Vec<f64> {
    let r = x.abs().powf(1.0 / k as f64);
    if k % 2 == 1 {
        vec![r.copysign(x)]
    } else {
        vec![r, -r]
    }
}

impl FieldElement {
    /// Some `y` with `y^k = self`, `None` if no such `y` exists in `K`.
    pub fn nth_root(&self, k: u32) -> Result<Option<FieldElement>> {
        assert!(k >= 1);
        let field = self.field();
        if k == 1 || self.is_zero() {
            return Ok(Some(self.clone()));
        }
        if let Some(q) = self.as_rational() {
            if let Some(r) = rat_nth_root_exact(q, k) {
                return Ok(Some(FieldElement::from_rat(field, r)));
            }
            if field.degree() == 1 {
                return Ok(None);
            }
        }
        if rat_nth_root_exact(&self.norm(), k).is_none() {
            return Ok(None);
        }
        match field.degree() {
            2 => self.quadratic_root(k),
            n => Err(Error::RootExtractionFailed(format!(
                "{k}-th root extraction is not implemented in degree {n}"
            ))),
        }
    }

    pub fn is_nth_power(&self, k: u32) -> Result<bool> {
        Ok(self.nth_root(k)?.is_some())
    }

    fn quadratic_root(&self, k: u32) -> Result<Option<FieldElement>> {
        let field = self.field();
        let f = field.defining_poly();
        let (s, t) = (
            to_f64(&Rat::from(f[0].clone())),
            to_f64(&Rat::from(f[1].clone())),
        );
        let disc = t * t - 4.0 * s;
        let (u, v) = (to_f64(&self.coords()[0]), to_f64(&self.coords()[1]));
        // candidate images (re, im) of y under one or two embeddings,
        // mapped back to power-basis coordinates
        let mut candidates: Vec<(f64, f64)> = Vec::new();
        if disc > 0.0 {
            let th1 = (-t + disc.sqrt()) / 2.0;
            let th2 = (-t - disc.sqrt()) / 2.0;
            for r1 in real_roots(u + v * th1, k) {
                for r2 in real_roots(u + v * th2, k) {
                    let b = (r1 - r2) / (th1 - th2);
                    candidates.push((r1 - b * th1, b));
                }
            }
        } else {
            let re_th = -t / 2.0;
            let im_th = (-disc).sqrt() / 2.0;
            let (re, im) = (u + v * re_th, v * im_th);
            let rho = (re * re + im * im).sqrt().powf(1.0 / k as f64);
            let phi = im.atan2(re);
            for j in 0..k {
                let ang = (phi + 2.0 * std::f64::consts::PI * j as f64) / k as f64;
                let (yr, yi) = (rho * ang.cos(), rho * ang.sin());
                let b = yi / im_th;
                candidates.push((yr - b * re_th, b));
            }
        }
        let l = self.denominator() * abs_disc(field);
        let lf = l.to_f64().unwrap_or(f64::INFINITY);
        let mut undecided = false;
        for (a, b) in candidates {
            let (la, lb) = (a * lf, b * lf);
            if !la.is_finite()
                || !lb.is_finite()
                || la.abs() > ROUNDING_LIMIT
                || lb.abs() > ROUNDING_LIMIT
            {
                undecided = true;
                continue;
            }
            let y = FieldElement::new(
                field,
                vec![
                    Rat::new(Int::from(la.round() as i64), l.clone()),
                    Rat::new(Int::from(lb.round() as i64), l.clone()),
                ],
            );
            if y.pow_u(k as u64) == *self {
                return Ok(Some(y));
            }
        }
        if undecided {
            return Err(Error::RootExtractionFailed(format!(
                "embedding precision insufficient for {k}-th root of {self}"
            )));
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};
    use crate::nf::field::NumberField;

    #[test]
    fn rational_roots() {
        let q = NumberField::rationals();
        let x = FieldElement::from_rat(&q, rat(-32, 243));
        assert_eq!(
            x.nth_root(5).unwrap(),
            Some(FieldElement::from_rat(&q, rat(-2, 3)))
        );
        assert_eq!(FieldElement::from_i64(&q, 2).nth_root(2).unwrap(), None);
    }

    #[test]
    fn gaussian_roots() {
        let k = NumberField::quadratic(-1).unwrap();
        let i = FieldElement::theta(&k);
        assert_eq!(
            FieldElement::from_i64(&k, -1)
                .nth_root(2)
                .unwrap()
                .map(|y| y.pow_u(2)),
            Some(FieldElement::from_i64(&k, -1))
        );
        let y = FieldElement::new(&k, vec![rat(3, 5), rat(-7, 2)]);
        for e in 2..=5u32 {
            let x = y.pow_u(e as u64);
            let r = x.nth_root(e).unwrap().expect("power has a root");
            assert_eq!(r.pow_u(e as u64), x);
        }
        assert_eq!(i.nth_root(3).unwrap().unwrap().pow_u(3), i);
        assert_eq!(FieldElement::from_i64(&k, 3).nth_root(2).unwrap(), None);
    }

    #[test]
    fn real_quadratic_roots() {
        let k = NumberField::quadratic(2).unwrap();
        let y = FieldElement::new(&k, vec![rat_int(1), rat_int(1)]);
        let x = y.pow_u(6);
        assert_eq!(x.nth_root(6).unwrap().unwrap().pow_u(6), x);
        assert_eq!(FieldElement::theta(&k).nth_root(2).unwrap(), None);
    }

    #[test]
    fn higher_degree_is_reported() {
        let k = NumberField::from_i64s(&[-2, 0, 0, 1], false).unwrap();
        let t = FieldElement::theta(&k);
        let x = t.pow_u(2);
        assert!(matches!(x.nth_root(2), Err(Error::RootExtractionFailed(_))));
        assert_eq!(
            FieldElement::from_i64(&k, 8).nth_root(3).unwrap(),
            Some(FieldElement::from_i64(&k, 2))
        );
    }
}
