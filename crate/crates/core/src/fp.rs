//! Prime fields `F_p` and factorization of polynomials over them
//! (squarefree split, distinct-degree split, Cantor-Zassenhaus).

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::Int;
use crate::poly::{Poly, Scalar};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct Fp {
    pub v: u64,
    pub p: u64,
}

impl Fp {
    pub fn new(v: u64, p: u64) -> Self {
        Fp { v: v % p, p }
    }

    pub fn from_int(n: &Int, p: u64) -> Self {
        let m = Int::from(p);
        let r = ((n % &m) + &m) % &m;
        Fp::new(u64::try_from(r).expect("reduced below p"), p)
    }

    fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
        ((a as u128 * b as u128) % p as u128) as u64
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self.v;
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = Self::mul_mod(acc, base, self.p);
            }
            base = Self::mul_mod(base, base, self.p);
            e >>= 1;
        }
        Fp { v: acc, p: self.p }
    }
}

impl Scalar for Fp {
    type Ctx = u64;

    fn ctx(&self) -> u64 {
        self.p
    }
    fn zero(p: &u64) -> Self {
        Fp { v: 0, p: *p }
    }
    fn one(p: &u64) -> Self {
        Fp::new(1, *p)
    }
    fn from_i64(p: &u64, n: i64) -> Self {
        Fp::new(n.rem_euclid(*p as i64) as u64, *p)
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn add_ref(&self, o: &Self) -> Self {
        Fp {
            v: ((self.v as u128 + o.v as u128) % self.p as u128) as u64,
            p: self.p,
        }
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self.add_ref(&o.neg_ref())
    }
    fn mul_ref(&self, o: &Self) -> Self {
        Fp {
            v: Self::mul_mod(self.v, o.v, self.p),
            p: self.p,
        }
    }
    fn neg_ref(&self) -> Self {
        Fp {
            v: (self.p - self.v) % self.p,
            p: self.p,
        }
    }
    fn inv(&self) -> Option<Self> {
        (self.v != 0).then(|| self.pow(self.p - 2))
    }
}

pub type FpPoly = Poly<Fp>;

pub fn reduce_poly(coeffs: &[Int], p: u64) -> FpPoly {
    Poly::new(p, coeffs.iter().map(|c| Fp::from_int(c, p)).collect())
}

/// Canonical lift with coefficients in `[0, p)`.
pub fn lift(f: &FpPoly) -> Vec<Int> {
    f.coeffs().iter().map(|c| Int::from(c.v)).collect()
}

pub fn residues(f: &FpPoly) -> Vec<u64> {
    f.coeffs().iter().map(|c| c.v).collect()
}

fn powmod(base: &FpPoly, e: &BigUint, m: &FpPoly) -> FpPoly {
    let mut acc = FpPoly::one(*m.ctx());
    let b = base.rem(m);
    for i in (0..e.bits()).rev() {
        acc = acc.mul(&acc).rem(m);
        if e.bit(i) {
            acc = acc.mul(&b).rem(m);
        }
    }
    acc
}

/// Squarefree factorization over `F_p`: pairs (g, e) with f = prod g^e.
fn squarefree_factorization(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let p = *f.ctx();
    let mut out = Vec::new();
    let df = f.derivative();
    if df.is_zero() {
        if !f.is_constant() {
            for (g, e) in squarefree_factorization(&pth_root(f)) {
                out.push((g, e * p as usize));
            }
        }
        return out;
    }
    let mut c = f.gcd(&df);
    let mut w = f.div_exact(&c).unwrap();
    let mut i = 1;
    while !w.is_constant() {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y).unwrap();
        if !fac.is_constant() {
            out.push((fac.monic(), i));
        }
        w = y;
        c = c.div_exact(&w).unwrap();
        i += 1;
    }
    if !c.is_constant() {
        for (g, e) in squarefree_factorization(&pth_root(&c.monic())) {
            out.push((g, e * p as usize));
        }
    }
    out
}

/// For f = g(z^p) returns g (coefficients are fixed by Frobenius on F_p).
fn pth_root(f: &FpPoly) -> FpPoly {
    let p = *f.ctx() as usize;
    let coeffs = f.coeffs().iter().step_by(p).cloned().collect();
    Poly::new(*f.ctx(), coeffs)
}

/// Distinct-degree split of a monic squarefree polynomial.
fn distinct_degree(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let p = *f.ctx();
    let x = FpPoly::x(p);
    let pe = BigUint::from(p);
    let mut out = Vec::new();
    let mut g = f.clone();
    let mut h = x.clone();
    let mut i = 1;
    while g.deg0() >= 2 * i {
        h = powmod(&h, &pe, &g);
        let d = g.gcd(&h.sub(&x));
        if !d.is_constant() {
            out.push((d.clone(), i));
            g = g.div_exact(&d).unwrap();
            h = h.rem(&g);
        }
        i += 1;
    }
    if !g.is_constant() {
        let k = g.deg0();
        out.push((g.monic(), k));
    }
    out
}

/// Splits a product of distinct monic irreducibles of degree `k` each.
fn equal_degree(f: &FpPoly, k: usize, rng: &mut ChaCha8Rng, out: &mut Vec<FpPoly>) {
    let n = f.deg0();
    if n == k {
        out.push(f.monic());
        return;
    }
    let p = *f.ctx();
    loop {
        let coeffs: Vec<Fp> = (0..n).map(|_| Fp::new(rng.gen_range(0..p), p)).collect();
        let a = Poly::new(p, coeffs);
        if a.is_constant() {
            continue;
        }
        let b = if p == 2 {
            // trace from F_{2^k} to F_2
            let mut t = a.rem(f);
            let mut acc = t.clone();
            for _ in 1..k {
                t = t.mul(&t).rem(f);
                acc = acc.add(&t);
            }
            acc
        } else {
            let e = (BigUint::from(p).pow(k as u32) - BigUint::one()) / BigUint::from(2u32);
            powmod(&a, &e, f).sub(&FpPoly::one(p))
        };
        let g = f.gcd(&b);
        if !g.is_constant() && g.deg0() < n {
            let rest = f.div_exact(&g).unwrap();
            equal_degree(&g, k, rng, out);
            equal_degree(&rest, k, rng, out);
            return;
        }
    }
}

/// Complete factorization into monic irreducibles with multiplicities,
/// sorted by (degree, residues from the constant term up).
pub fn factor(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    assert!(!f.is_zero());
    let f = f.monic();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ *f.ctx());
    let mut out = Vec::new();
    for (g, e) in squarefree_factorization(&f) {
        for (d, k) in distinct_degree(&g) {
            let mut pieces = Vec::new();
            equal_degree(&d, k, &mut rng, &mut pieces);
            out.extend(pieces.into_iter().map(|h| (h, e)));
        }
    }
    out.sort_by(|(a, _), (b, _)| {
        a.deg0()
            .cmp(&b.deg0())
            .then_with(|| residues(a).cmp(&residues(b)))
    });
    out
}

pub fn is_irreducible(f: &FpPoly) -> bool {
    let fs = factor(f);
    fs.len() == 1 && fs[0].1 == 1
}

pub fn is_zero_mod(n: &Int, p: u64) -> bool {
    (n % Int::from(p)).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(c: &[i64], p: u64) -> FpPoly {
        reduce_poly(&c.iter().map(|&x| Int::from(x)).collect::<Vec<_>>(), p)
    }

    fn product(fs: &[(FpPoly, usize)], p: u64) -> FpPoly {
        fs.iter()
            .fold(FpPoly::one(p), |acc, (g, e)| acc.mul(&g.pow(*e as u64)))
    }

    #[test]
    fn gaussian_integers_split() {
        // z^2 + 1 = (z + 2)(z + 3) mod 5
        let fs = factor(&fp(&[1, 0, 1], 5));
        assert_eq!(fs.len(), 2);
        assert_eq!(residues(&fs[0].0), vec![2, 1]);
        assert_eq!(residues(&fs[1].0), vec![3, 1]);
        // (z + 1)^2 mod 2
        let fs = factor(&fp(&[1, 0, 1], 2));
        assert_eq!(fs, vec![(fp(&[1, 1], 2), 2)]);
        // inert mod 3
        assert!(is_irreducible(&fp(&[1, 0, 1], 3)));
    }

    #[test]
    fn factors_multiply_back() {
        let cases: &[(&[i64], u64)] = &[
            (&[1, 0, 0, 0, 1], 17),
            (&[1, 0, 0, 0, 1], 3),
            (&[-2, 0, 0, 0, 0, 0, 1], 7),
            (&[0, 0, 1, 1, 0, 0, 0, 0, 1], 2),
            (&[4, 4, 1, 0, 2, 1], 3),
            (&[1, 1, 1, 1, 1, 1, 1, 1, 1], 2),
        ];
        for &(c, p) in cases {
            let f = fp(c, p);
            let fs = factor(&f);
            assert_eq!(product(&fs, p), f.monic(), "{c:?} mod {p}");
            for (g, _) in &fs {
                let gs = factor(g);
                assert!(gs.len() == 1 && gs[0].1 == 1, "factor not irreducible");
            }
        }
    }
}
