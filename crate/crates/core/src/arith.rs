//! Integer and rational helpers shared by every module.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// Parses `"a/b"` or `"a"`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("malformed rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: Int = n.trim().parse().map_err(|_| bad())?;
            let d: Int = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Rat::new(n, d))
        }
        None => Ok(Rat::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Serialized form: always `"num/den"` in lowest terms.
pub fn fmt_rat(q: &Rat) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Naive height of a rational: max(|num|, den).
pub fn rat_height(q: &Rat) -> Int {
    let n = q.numer().abs();
    let d = q.denom().clone();
    if n > d {
        n
    } else {
        d
    }
}

/// Exponent of the prime `p` in the nonzero integer `n`.
pub fn int_valuation(n: &Int, p: &Int) -> u64 {
    debug_assert!(!n.is_zero());
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// Exponent of `p` in a nonzero rational.
pub fn rat_valuation(q: &Rat, p: &Int) -> i64 {
    int_valuation(q.numer(), p) as i64 - int_valuation(q.denom(), p) as i64
}

/// Removes every factor `p` from `n`.
pub fn strip_prime(n: &Int, p: &Int) -> Int {
    let mut n = n.clone();
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return n;
        }
        n = q;
    }
}

pub fn is_prime_u64(p: u64) -> bool {
    num_prime::nt_funcs::is_prime64(p)
}

/// Prime factorization of |n|, ascending. `n` must be nonzero.
pub fn factor_int(n: &Int) -> Vec<(Int, u32)> {
    let m: BigUint = n.magnitude().clone();
    if m.is_one() || m.is_zero() {
        return Vec::new();
    }
    if let Some(small) = m.to_u128() {
        return num_prime::nt_funcs::factorize128(small)
            .into_iter()
            .map(|(p, e)| (Int::from(p), e as u32))
            .collect();
    }
    num_prime::nt_funcs::factorize(m)
        .into_iter()
        .map(|(p, e)| (Int::from_biguint(Sign::Plus, p), e as u32))
        .collect()
}

/// Distinct prime divisors of |n|.
pub fn prime_divisors(n: &Int) -> Vec<Int> {
    factor_int(n).into_iter().map(|(p, _)| p).collect()
}

/// All positive divisors of |n|, ascending; `None` when there are more than `cap`.
pub fn divisors(n: &Int, cap: usize) -> Option<Vec<Int>> {
    let mut divs = vec![Int::one()];
    for (p, e) in factor_int(n) {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = Int::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        if next.len() > cap {
            return None;
        }
        divs = next;
    }
    divs.sort();
    Some(divs)
}

/// Exact k-th root of an integer, if it exists.
pub fn int_nth_root_exact(n: &Int, k: u32) -> Option<Int> {
    if n.is_negative() && k.is_multiple_of(2) {
        return None;
    }
    let r = n.nth_root(k);
    if num_traits::pow(r.clone(), k as usize) == *n {
        Some(r)
    } else {
        None
    }
}

/// Exact k-th root of a rational, if it exists in Q.
pub fn rat_nth_root_exact(q: &Rat, k: u32) -> Option<Rat> {
    let n = int_nth_root_exact(q.numer(), k)?;
    let d = int_nth_root_exact(q.denom(), k)?;
    Some(Rat::new(n, d))
}

pub fn rat_pow(q: &Rat, e: u64) -> Rat {
    num_traits::pow(q.clone(), e as usize)
}

/// Approximate count of decimal digits of |n|.
pub fn decimal_digits(n: &Int) -> u64 {
    ((n.bits() as f64) * std::f64::consts::LOG10_2).ceil() as u64
}

/// The primes in increasing order, starting from 2.
pub fn primes() -> impl Iterator<Item = u64> {
    (2u64..).filter(|&n| is_prime_u64(n))
}

/// Least common multiple of the denominators.
pub fn lcm_denominators<'a>(qs: impl IntoIterator<Item = &'a Rat>) -> Int {
    qs.into_iter().fold(Int::one(), |acc, q| acc.lcm(q.denom()))
}

pub fn to_u64(n: &Int) -> Result<u64> {
    n.to_u64()
        .ok_or_else(|| Error::InvalidInput(format!("prime {n} exceeds the supported range")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rat("6/4").unwrap(), rat(3, 2));
        assert_eq!(parse_rat("-7").unwrap(), rat_int(-7));
        assert_eq!(fmt_rat(&rat_int(5)), "5/1");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn valuations_and_roots() {
        assert_eq!(int_valuation(&Int::from(12), &Int::from(2)), 2);
        assert_eq!(rat_valuation(&rat(9, 8), &Int::from(2)), -3);
        assert_eq!(int_nth_root_exact(&Int::from(7776), 5), Some(Int::from(6)));
        assert_eq!(int_nth_root_exact(&Int::from(-32), 5), Some(Int::from(-2)));
        assert_eq!(int_nth_root_exact(&Int::from(-4), 2), None);
        assert_eq!(rat_nth_root_exact(&rat(8, 27), 3), Some(rat(2, 3)));
    }

    #[test]
    fn factoring() {
        let f = factor_int(&Int::from(-360));
        assert_eq!(
            f,
            vec![(Int::from(2), 3), (Int::from(3), 2), (Int::from(5), 1)]
        );
        assert_eq!(divisors(&Int::from(12), 100).unwrap().len(), 6);
        assert!(factor_int(&Int::from(1)).is_empty());
    }
}
