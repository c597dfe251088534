//! Specialized box scans over `K = Q`.
//!
//! A rational map is evaluated on `z = N/D` through its integral homogeneous
//! forms in `i128`, falling back to big integers on overflow. The results
//! are identical (including order) to the generic scans in `reductions`,
//! which the tests check on small boxes.

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::arith::{int_nth_root_exact, lcm_denominators, primes, strip_prime, Int, Rat};
use crate::dynamics::RationalMap;

/// `phi(N/D) = (a_scale * P(N, D)) / (b_scale * Q(N, D))` with `P`, `Q`
/// integral binary forms of the same degree.
#[derive(Clone, Debug)]
pub struct IntegerForms {
    degree: usize,
    p: Vec<Int>,
    q: Vec<Int>,
    a_scale: Int,
    b_scale: Int,
    p_small: Option<Vec<i128>>,
    q_small: Option<Vec<i128>>,
}

fn integral(coeffs: &[Rat]) -> (Vec<Int>, Int) {
    let l = lcm_denominators(coeffs.iter());
    let ints = coeffs
        .iter()
        .map(|c| (c * Rat::from(l.clone())).to_integer())
        .collect();
    (ints, l)
}

fn small(v: &[Int]) -> Option<Vec<i128>> {
    v.iter().map(|c| c.to_i128()).collect()
}

impl IntegerForms {
    /// `None` unless the map is defined over Q.
    pub fn new(phi: &RationalMap) -> Option<Self> {
        if !phi.field().is_rationals() {
            return None;
        }
        let rats = |cs: &[crate::nf::FieldElement]| -> Vec<Rat> {
            cs.iter().map(|c| c.coords()[0].clone()).collect()
        };
        let (mut p, lp) = integral(&rats(phi.num().coeffs()));
        let (mut q, lq) = integral(&rats(phi.den().coeffs()));
        let degree = phi.degree();
        p.resize(degree + 1, Int::zero());
        q.resize(degree + 1, Int::zero());
        Some(IntegerForms {
            degree,
            p_small: small(&p),
            q_small: small(&q),
            p,
            q,
            a_scale: lq,
            b_scale: lp,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// `D^0, ..., D^degree` if they fit.
    pub fn d_powers(&self, d: i64) -> Option<Vec<i128>> {
        let mut out = vec![1i128];
        for _ in 0..self.degree {
            out.push(out.last().unwrap().checked_mul(d as i128)?);
        }
        Some(out)
    }

    fn form_small(c: &[i128], n: i128, dp: &[i128]) -> Option<i128> {
        let k = c.len() - 1;
        let mut acc = c[k];
        for i in (0..k).rev() {
            acc = acc
                .checked_mul(n)?
                .checked_add(c[i].checked_mul(dp[k - i])?)?;
        }
        Some(acc)
    }

    /// Scaled `(A, B)` in `i128`, or `None` on overflow.
    pub fn eval_small(&self, n: i64, dp: &[i128]) -> Option<(i128, i128)> {
        let a = Self::form_small(self.p_small.as_ref()?, n as i128, dp)?;
        let b = Self::form_small(self.q_small.as_ref()?, n as i128, dp)?;
        Some((
            a.checked_mul(self.a_scale.to_i128()?)?,
            b.checked_mul(self.b_scale.to_i128()?)?,
        ))
    }

    fn form_big(c: &[Int], n: &Int, d: &Int) -> Int {
        let k = c.len() - 1;
        let mut acc = c[k].clone();
        let mut dk = Int::from(1);
        for i in (0..k).rev() {
            dk *= d;
            acc = acc * n + &c[i] * &dk;
        }
        acc
    }

    pub fn eval_big(&self, n: i64, d: i64) -> (Int, Int) {
        let (n, d) = (Int::from(n), Int::from(d));
        (
            Self::form_big(&self.p, &n, &d) * &self.a_scale,
            Self::form_big(&self.q, &n, &d) * &self.b_scale,
        )
    }

    pub fn eval(&self, n: i64, d: i64, dp: Option<&[i128]>) -> (Int, Int) {
        if let Some((a, b)) = dp.and_then(|dp| self.eval_small(n, dp)) {
            return (Int::from(a), Int::from(b));
        }
        self.eval_big(n, d)
    }

    /// The forms and scales reduced modulo `m`.
    fn reduce_mod(&self, m: u64) -> ModularForms {
        let r = |x: &Int| x.mod_floor(&Int::from(m)).to_u64().unwrap();
        ModularForms {
            m,
            p: self.p.iter().map(r).collect(),
            q: self.q.iter().map(r).collect(),
            a_scale: r(&self.a_scale),
            b_scale: r(&self.b_scale),
        }
    }
}

struct ModularForms {
    m: u64,
    p: Vec<u64>,
    q: Vec<u64>,
    a_scale: u64,
    b_scale: u64,
}

impl ModularForms {
    fn form(&self, c: &[u64], n: u64, d: u64) -> u64 {
        let m = self.m as u128;
        let k = c.len() - 1;
        let mut acc = c[k] as u128;
        let mut dk = 1u128;
        for i in (0..k).rev() {
            dk = dk * d as u128 % m;
            acc = (acc * n as u128 + c[i] as u128 * dk) % m;
        }
        acc as u64
    }

    /// Scaled `(A mod m, B mod m)`.
    fn eval(&self, n: u64, d: u64) -> (u64, u64) {
        let m = self.m as u128;
        let a = self.form(&self.p, n, d) as u128 * self.a_scale as u128 % m;
        let b = self.form(&self.q, n, d) as u128 * self.b_scale as u128 % m;
        (a as u64, b as u64)
    }
}

fn strip_small(mut x: i128, primes: &[i128]) -> i128 {
    x = x.abs();
    for &p in primes {
        if p == 2 {
            x >>= x.trailing_zeros();
            continue;
        }
        while x % p == 0 {
            x /= p;
        }
    }
    x
}

/// Every `z = N/D` in the height box with `phi(z)` an S-unit, in enumeration
/// order, as `(z, phi(z))`. `s_primes` are the finite places of S.
pub fn image_scan(phi: &RationalMap, s_primes: &[u64], height: u64) -> Vec<(Rat, Rat)> {
    let forms = IntegerForms::new(phi).expect("map over Q");
    let sp: Vec<i128> = s_primes.iter().map(|&p| p as i128).collect();
    let big_primes: Vec<Int> = s_primes.iter().map(|&p| Int::from(p)).collect();
    let h = height as i64;
    let rows: Vec<i64> = (1..=h).collect();
    rows.par_iter()
        .map(|&d| {
            let dp = forms.d_powers(d);
            let mut hits = Vec::new();
            for n in -h..=h {
                let unit = match dp.as_deref().and_then(|dp| forms.eval_small(n, dp)) {
                    Some((a, b)) => a != 0 && b != 0 && strip_small(a, &sp) == strip_small(b, &sp),
                    None => {
                        let (a, b) = forms.eval_big(n, d);
                        let strip = |x: &Int| {
                            big_primes
                                .iter()
                                .fold(x.abs(), |acc, p| strip_prime(&acc, p))
                        };
                        !a.is_zero() && !b.is_zero() && strip(&a) == strip(&b)
                    }
                };
                if unit && n.gcd(&d) == 1 {
                    let (a, b) = forms.eval(n, d, dp.as_deref());
                    hits.push((Rat::new(n.into(), d.into()), Rat::new(a, b)));
                }
            }
            hits
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// Discrete-log classes modulo `p` of the nonzero residues of `q`.
struct ResidueClasses {
    q: u64,
    class: Vec<u32>,
}

impl ResidueClasses {
    fn new(q: u64, p: u32) -> Self {
        let g = (2..q)
            .find(|&g| {
                let mut x = 1u64;
                (1..q - 1).all(|_| {
                    x = x * g % q;
                    x != 1
                })
            })
            .expect("prime modulus has a generator");
        let mut class = vec![u32::MAX; q as usize];
        let mut x = 1u64;
        for k in 0..q - 1 {
            class[x as usize] = (k % p as u64) as u32;
            x = x * g % q;
        }
        ResidueClasses { q, class }
    }

    /// Class of `a/b mod q`, `None` when either is divisible by `q`.
    fn of_fraction(&self, a: u64, b: u64, p: u32) -> Option<u32> {
        let (a, b) = (a % self.q, b % self.q);
        if a == 0 || b == 0 {
            return None;
        }
        Some((self.class[a as usize] + p - self.class[b as usize]) % p)
    }

    fn of_rat(&self, x: &Rat, p: u32) -> Option<u32> {
        let m = Int::from(self.q);
        let a = x.numer().mod_floor(&m).to_u64()?;
        let b = x.denom().mod_floor(&m).to_u64()?;
        self.of_fraction(a, b, p)
    }
}

/// For each twist `gamma_i`, the points `(z, y)` with `y^p = gamma_i phi(z)`,
/// `y != 0`, and `z` in the height box (one `y` per `z`).
pub fn curve_scan(phi: &RationalMap, gammas: &[Rat], p: u32, height: u64) -> Vec<Vec<(Rat, Rat)>> {
    let forms = IntegerForms::new(phi).expect("map over Q");
    // auxiliary primes q = 1 mod p that see every twist and the scales
    let mut bad = forms.a_scale.clone() * &forms.b_scale;
    for g in gammas {
        bad *= g.numer() * g.denom();
    }
    let max_aux = {
        let mut k = 0;
        while k < 6 && (p as u64).pow(k as u32 + 1) <= 1 << 22 {
            k += 1;
        }
        k
    };
    let aux: Vec<ResidueClasses> = primes()
        .filter(|&q| q % p as u64 == 1 && !(bad.clone() % Int::from(q)).is_zero())
        .take(max_aux)
        .map(|q| ResidueClasses::new(q, p))
        .collect();
    let k = aux.len();
    let modular: Vec<ModularForms> = aux.iter().map(|r| forms.reduce_mod(r.q)).collect();
    // required class vector for each twist: phi(z) must cancel gamma's class
    let want: Vec<Vec<u32>> = gammas
        .iter()
        .map(|g| {
            aux.iter()
                .map(|r| (p - r.of_rat(g, p).expect("q avoids the twists")) % p)
                .collect()
        })
        .collect();
    let code = |v: &[u32]| {
        v.iter()
            .rev()
            .fold(0usize, |acc, &c| acc * p as usize + c as usize)
    };
    let mut table: Vec<Vec<u32>> = vec![Vec::new(); (p as usize).pow(k as u32)];
    for (i, w) in want.iter().enumerate() {
        table[code(w)].push(i as u32);
    }
    let h = height as i64;
    let rows: Vec<i64> = (1..=h).collect();
    let per_row: Vec<Vec<(usize, Rat, Rat)>> = rows
        .par_iter()
        .map(|&d| {
            let dp = forms.d_powers(d);
            // class of phi(n/d) modulo each auxiliary prime, indexed by n mod q
            let row_tables: Vec<Vec<Option<u32>>> = aux
                .iter()
                .zip(&modular)
                .map(|(r, mf)| {
                    (0..r.q)
                        .map(|n| {
                            let (a, b) = mf.eval(n, d as u64 % r.q);
                            r.of_fraction(a, b, p)
                        })
                        .collect()
                })
                .collect();
            let mut res: Vec<usize> = aux
                .iter()
                .map(|r| (-h).rem_euclid(r.q as i64) as usize)
                .collect();
            let mut found = Vec::new();
            let mut classes = vec![0u32; k];
            for n in -h..=h {
                let mut wildcard = false;
                for j in 0..k {
                    match row_tables[j][res[j]] {
                        Some(c) => classes[j] = c,
                        None => wildcard = true,
                    }
                    res[j] += 1;
                    if res[j] == aux[j].q as usize {
                        res[j] = 0;
                    }
                }
                let candidates: Vec<u32> = if wildcard {
                    (0..gammas.len() as u32)
                        .filter(|&i| {
                            (0..k).all(|j| {
                                row_tables[j][(n.rem_euclid(aux[j].q as i64)) as usize]
                                    .is_none_or(|c| c == want[i as usize][j])
                            })
                        })
                        .collect()
                } else {
                    table[code(&classes)].clone()
                };
                if candidates.is_empty() || n.gcd(&d) != 1 {
                    continue;
                }
                let (a, b) = forms.eval(n, d, dp.as_deref());
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                let value = Rat::new(a, b);
                for i in candidates {
                    let v = &gammas[i as usize] * &value;
                    if let (Some(y0), Some(y1)) = (
                        int_nth_root_exact(v.numer(), p),
                        int_nth_root_exact(v.denom(), p),
                    ) {
                        found.push((i as usize, Rat::new(n.into(), d.into()), Rat::new(y0, y1)));
                    }
                }
            }
            found
        })
        .collect();
    let mut out = vec![Vec::new(); gammas.len()];
    for (i, z, y) in per_row.into_iter().flatten() {
        out[i].push((z, y));
    }
    out
}
