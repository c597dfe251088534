//! Dense univariate polynomials over an exact field.
//!
//! Coefficients are stored constant term first with no trailing zeros, so the
//! zero polynomial is the empty vector. A coefficient type carries a context
//! (the modulus for `F_p`, the number field for field elements) so that zero
//! and one can be produced without a sample element.

use std::fmt;

use num_traits::{One, Zero};

use crate::arith::{divisors, Int, Rat};

pub trait Scalar: Clone + PartialEq + fmt::Debug {
    type Ctx: Clone + PartialEq + fmt::Debug;

    fn ctx(&self) -> Self::Ctx;
    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_i64(ctx: &Self::Ctx, n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, o: &Self) -> Self;
    fn sub_ref(&self, o: &Self) -> Self;
    fn mul_ref(&self, o: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one(&self.ctx())
    }
}

impl Scalar for Rat {
    type Ctx = ();

    fn ctx(&self) {}
    fn zero(_: &()) -> Self {
        <Rat as Zero>::zero()
    }
    fn one(_: &()) -> Self {
        <Rat as One>::one()
    }
    fn from_i64(_: &(), n: i64) -> Self {
        Rat::from_integer(Int::from(n))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
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
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct Poly<C: Scalar> {
    ctx: C::Ctx,
    coeffs: Vec<C>,
}

pub type QPoly = Poly<Rat>;

impl<C: Scalar> Poly<C> {
    pub fn new(ctx: C::Ctx, mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { ctx, coeffs }
    }

    pub fn zero(ctx: C::Ctx) -> Self {
        Poly {
            ctx,
            coeffs: Vec::new(),
        }
    }

    pub fn one(ctx: C::Ctx) -> Self {
        let one = C::one(&ctx);
        Poly::new(ctx, vec![one])
    }

    pub fn constant(c: C) -> Self {
        Poly::new(c.ctx(), vec![c])
    }

    /// The polynomial `z`.
    pub fn x(ctx: C::Ctx) -> Self {
        Self::monomial(C::one(&ctx), 1)
    }

    pub fn monomial(c: C, k: usize) -> Self {
        let ctx = c.ctx();
        let mut coeffs = vec![C::zero(&ctx); k];
        coeffs.push(c);
        Poly::new(ctx, coeffs)
    }

    /// `z - a`.
    pub fn linear_root(a: &C) -> Self {
        let ctx = a.ctx();
        Poly::new(ctx.clone(), vec![a.neg_ref(), C::one(&ctx)])
    }

    pub fn ctx(&self) -> &C::Ctx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> C {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| C::zero(&self.ctx))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial counted as degree 0.
    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lc(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.lc().is_some_and(|c| c.is_one())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), o.coeffs.get(i)) {
                (Some(a), Some(b)) => a.add_ref(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Poly::new(self.ctx.clone(), coeffs)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        Poly {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|c| c.neg_ref()).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(self.ctx.clone());
        }
        let mut out = vec![C::zero(&self.ctx); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
            }
        }
        Poly::new(self.ctx.clone(), out)
    }

    pub fn scale(&self, c: &C) -> Self {
        Poly::new(
            self.ctx.clone(),
            self.coeffs.iter().map(|a| a.mul_ref(c)).collect(),
        )
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Poly::one(self.ctx.clone());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("polynomial division by zero");
        let lc_inv = d.coeffs[dd]
            .inv()
            .expect("leading coefficient is invertible");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(self.ctx.clone()), self.clone());
        }
        let mut quot = vec![C::zero(&self.ctx); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].mul_ref(&lc_inv);
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] = rem[k + j].sub_ref(&c.mul_ref(dc));
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (
            Poly::new(self.ctx.clone(), quot),
            Poly::new(self.ctx.clone(), rem),
        )
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    /// Quotient of an exact division; `None` if a remainder is left.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Self {
        match self.lc() {
            Some(lc) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
            None => self.clone(),
        }
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns (g, s, t) with s*self + t*o = g, g monic.
    pub fn ext_gcd(&self, o: &Self) -> (Self, Self, Self) {
        let ctx = self.ctx.clone();
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Poly::one(ctx.clone()), Poly::zero(ctx.clone()));
        let (mut t0, mut t1) = (Poly::zero(ctx.clone()), Poly::one(ctx));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.lc().and_then(|c| c.inv()) {
            Some(inv) => (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)),
            None => (r0, s0, t0),
        }
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul_ref(&C::from_i64(&self.ctx, i as i64)))
            .collect();
        Poly::new(self.ctx.clone(), coeffs)
    }

    pub fn eval(&self, x: &C) -> C {
        let mut acc = C::zero(&self.ctx);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_ref(x).add_ref(c);
        }
        acc
    }

    /// `self(inner(z))`.
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = Poly::zero(self.ctx.clone());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&Poly::constant(c.clone()));
        }
        acc
    }

    /// Homogenized evaluation `sum c_i a^i b^(d-i)` for polynomial arguments.
    pub fn homogeneous_eval(&self, d: usize, a: &Self, b: &Self) -> Self {
        let mut a_pows = vec![Poly::one(self.ctx.clone())];
        let mut b_pows = vec![Poly::one(self.ctx.clone())];
        for _ in 0..d {
            a_pows.push(a_pows.last().unwrap().mul(a));
            b_pows.push(b_pows.last().unwrap().mul(b));
        }
        let mut acc = Poly::zero(self.ctx.clone());
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = acc.add(&a_pows[i].mul(&b_pows[d - i]).scale(c));
        }
        acc
    }

    /// `self / gcd(self, self')`: the product of the distinct irreducible
    /// factors. Characteristic zero only.
    pub fn squarefree_part(&self) -> Self {
        if self.is_constant() {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).expect("gcd divides").monic()
    }

    /// Yun's decomposition: pairs (a_i, i) with self = lc * prod a_i^i and the
    /// a_i squarefree and pairwise coprime. Characteristic zero only.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_exact(&a0).unwrap();
        let mut c = df.div_exact(&a0).unwrap();
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        loop {
            let a = b.gcd(&d);
            if !a.is_constant() {
                out.push((a.clone(), i));
            }
            b = b.div_exact(&a).unwrap();
            if b.is_constant() {
                break;
            }
            c = d.div_exact(&a).unwrap();
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    /// Root multiplicities (over the algebraic closure) of the distinct roots,
    /// as a list of (number of roots, multiplicity).
    pub fn multiplicity_profile(&self) -> Vec<(usize, usize)> {
        self.squarefree_decomposition()
            .into_iter()
            .map(|(a, i)| (a.deg0(), i))
            .collect()
    }

    /// Resultant over the coefficient field.
    pub fn resultant(&self, o: &Self) -> C {
        let ctx = self.ctx.clone();
        let (Some(_), Some(_)) = (self.degree(), o.degree()) else {
            return C::zero(&ctx);
        };
        let mut a = self.clone();
        let mut b = o.clone();
        let mut acc = C::one(&ctx);
        loop {
            let m = a.deg0();
            let n = b.deg0();
            if n == 0 {
                let mut p = C::one(&ctx);
                for _ in 0..m {
                    p = p.mul_ref(&b.coeffs[0]);
                }
                return acc.mul_ref(&p);
            }
            let r = a.rem(&b);
            if r.is_zero() {
                return C::zero(&ctx);
            }
            let k = r.deg0();
            // Res(a, b) = (-1)^(mn) lc(b)^(m - k) Res(b, r)
            if (m * n) % 2 == 1 {
                acc = acc.neg_ref();
            }
            let lb = b.lc().unwrap().clone();
            for _ in 0..(m - k) {
                acc = acc.mul_ref(&lb);
            }
            a = b;
            b = r;
        }
    }

    pub fn map<D: Scalar>(&self, ctx: D::Ctx, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::new(ctx, self.coeffs.iter().map(f).collect())
    }
}

impl QPoly {
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(
            (),
            coeffs
                .iter()
                .map(|&c| Rat::from_integer(Int::from(c)))
                .collect(),
        )
    }

    pub fn from_bigints(coeffs: &[Int]) -> Self {
        Poly::new(
            (),
            coeffs
                .iter()
                .map(|c| Rat::from_integer(c.clone()))
                .collect(),
        )
    }

    /// Number of distinct real roots, by a Sturm sequence evaluated at ±infinity.
    pub fn count_real_roots(&self) -> usize {
        if self.is_constant() {
            return 0;
        }
        let p = self.squarefree_part();
        let mut seq = vec![p.clone(), p.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let r = seq[n - 2].rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            seq.push(r.neg());
        }
        let signs_at = |plus: bool| -> Vec<i8> {
            seq.iter()
                .map(|q| {
                    let lc_pos = q.lc().map(|c| *c > <Rat as Zero>::zero()).unwrap_or(true);
                    let even = q.deg0() % 2 == 0;
                    let pos = if plus || even { lc_pos } else { !lc_pos };
                    if pos {
                        1
                    } else {
                        -1
                    }
                })
                .collect()
        };
        let variations = |s: Vec<i8>| s.windows(2).filter(|w| w[0] != w[1]).count();
        variations(signs_at(false)) - variations(signs_at(true))
    }

    /// Rational roots, ascending, via the rational root theorem. Returns `None`
    /// when the candidate set is too large to enumerate.
    pub fn rational_roots(&self) -> Option<Vec<Rat>> {
        if self.is_zero() {
            return None;
        }
        let denom = crate::arith::lcm_denominators(self.coeffs.iter());
        let ints: Vec<Int> = self
            .coeffs
            .iter()
            .map(|c| (c * Rat::from_integer(denom.clone())).to_integer())
            .collect();
        let mut roots = Vec::new();
        let shift = ints.iter().take_while(|c| c.is_zero()).count();
        if shift > 0 {
            roots.push(<Rat as Zero>::zero());
        }
        let ints = &ints[shift..];
        if ints.len() > 1 {
            let dn = divisors(&ints[0], 20_000)?;
            let dd = divisors(ints.last().unwrap(), 20_000)?;
            let reduced = QPoly::from_bigints(ints);
            let mut seen = std::collections::BTreeSet::new();
            for a in &dn {
                for b in &dd {
                    for sign in [1, -1] {
                        let r = Rat::new(a * Int::from(sign), b.clone());
                        if seen.insert(r.clone()) && Zero::is_zero(&reduced.eval(&r)) {
                            roots.push(r);
                        }
                    }
                }
            }
        }
        roots.sort();
        Some(roots)
    }
}

impl<C: Scalar + fmt::Display> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*z")?,
                _ => write!(f, "({c})*z^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};

    fn q(c: &[i64]) -> QPoly {
        QPoly::from_ints(c)
    }

    #[test]
    fn division_and_gcd() {
        // (z^2 - 1) / (z - 1) = z + 1
        let (quot, r) = q(&[-1, 0, 1]).divrem(&q(&[-1, 1]));
        assert_eq!(quot, q(&[1, 1]));
        assert!(r.is_zero());
        let g = q(&[-1, 0, 1]).gcd(&q(&[1, 2, 1]));
        assert_eq!(g, q(&[1, 1]));
        let (g, s, t) = q(&[1, 0, 1]).ext_gcd(&q(&[1, 1]));
        assert_eq!(g, q(&[1]));
        assert_eq!(s.mul(&q(&[1, 0, 1])).add(&t.mul(&q(&[1, 1]))), q(&[1]));
    }

    #[test]
    fn resultant_matches_product_of_values() {
        // Res(z^2 + 1, z + 1) = (i + 1)(-i + 1) = 2
        assert_eq!(q(&[1, 0, 1]).resultant(&q(&[1, 1])), rat_int(2));
        assert_eq!(q(&[-2, 0, 1]).resultant(&q(&[3])), rat_int(9));
        assert_eq!(q(&[-1, 0, 1]).resultant(&q(&[-1, 1])), rat_int(0));
    }

    #[test]
    fn squarefree_pieces() {
        // z^2 (z - 1)^3
        let f = q(&[0, 0, 1]).mul(&q(&[-1, 1]).pow(3));
        assert_eq!(f.squarefree_part(), q(&[0, -1, 1]));
        let mut prof = f.multiplicity_profile();
        prof.sort();
        assert_eq!(prof, vec![(1, 2), (1, 3)]);
        // (z^2 + 1)^2
        let g = q(&[1, 0, 1]).pow(2);
        assert_eq!(g.multiplicity_profile(), vec![(2, 2)]);
    }

    #[test]
    fn sturm_counts() {
        assert_eq!(q(&[1, 0, 1]).count_real_roots(), 0);
        assert_eq!(q(&[-2, 0, 1]).count_real_roots(), 2);
        assert_eq!(q(&[-2, 0, 0, 1]).count_real_roots(), 1);
        assert_eq!(q(&[0, 1]).count_real_roots(), 1);
    }

    #[test]
    fn rational_roots_found() {
        // 6z^2 - 5z + 1 = (2z - 1)(3z - 1)
        let roots = q(&[1, -5, 6]).rational_roots().unwrap();
        assert_eq!(roots, vec![rat(1, 3), rat(1, 2)]);
        assert_eq!(
            q(&[0, -1, 1]).rational_roots().unwrap(),
            vec![rat_int(0), rat_int(1)]
        );
        assert!(q(&[1, 0, 1]).rational_roots().unwrap().is_empty());
    }

    #[test]
    fn composition() {
        // (z^2) o (z + 1) = z^2 + 2z + 1
        assert_eq!(q(&[0, 0, 1]).compose(&q(&[1, 1])), q(&[1, 2, 1]));
        let h = q(&[1, 0, 2]).homogeneous_eval(2, &q(&[0, 1]), &q(&[1]));
        assert_eq!(h, q(&[1, 0, 2]));
    }
}
