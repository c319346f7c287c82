//! Arbitrary-precision rational numbers and small helpers on them.
//!
//! `Rat` is `num_rational::BigRational`: always reduced, denominator >= 1,
//! canonical zero 0/1. Everything in this crate that handles exponents,
//! inclinations or coefficients goes through this type.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Rat = num_rational::BigRational;

/// Rational from an integer pair; panics on zero denominator.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from an integer.
pub fn rint(n: i64) -> Rat {
    Rat::from(BigInt::from(n))
}

/// Falling factorial (m)_k = m (m-1) ... (m-k+1); (m)_0 = 1.
pub fn falling(m: &Rat, k: u32) -> Rat {
    let mut acc = Rat::one();
    for t in 0..k {
        acc *= m - rint(t as i64);
    }
    acc
}

/// k! as a rational.
pub fn factorial(k: u32) -> Rat {
    let mut acc = BigInt::one();
    for t in 2..=k as i64 {
        acc *= BigInt::from(t);
    }
    Rat::from(acc)
}

/// Binomial coefficient C(n, k) for machine-sized n.
pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for t in 0..k {
        num *= BigInt::from((n - t) as i64);
        den *= BigInt::from((t + 1) as i64);
    }
    num / den
}

/// Denominator of a reduced rational as an unsigned integer.
pub fn denom_u64(r: &Rat) -> Option<u64> {
    u64::try_from(r.denom().magnitude().clone()).ok()
}

/// lcm of the current ramification with the denominator of `r`.
pub fn lcm_with_denom(nu: u64, r: &Rat) -> Option<u64> {
    let d = denom_u64(r)?;
    nu.checked_mul(d / nu.gcd(&d))
}

/// Exact square test; returns the square root when `r` is a perfect square.
pub fn sqrt_exact(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let ns = r.numer().magnitude().sqrt();
    let ds = r.denom().magnitude().sqrt();
    if &(&ns * &ns) == r.numer().magnitude() && &(&ds * &ds) == r.denom().magnitude() {
        Some(Rat::new(BigInt::from(ns), BigInt::from(ds)))
    } else {
        None
    }
}

/// Serialize as "p/q" with an explicit denominator, e.g. "3/1", "-1/2".
pub fn to_frac_string(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parse "p/q" or "p" into a rational; `None` on malformed input.
pub fn parse_frac(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let num: BigInt = n.trim().parse().ok()?;
        let den: BigInt = d.trim().parse().ok()?;
        if den.is_zero() {
            return None;
        }
        Some(Rat::new(num, den))
    } else {
        let num: BigInt = s.parse().ok()?;
        Some(Rat::from(num))
    }
}

/// Human-oriented formatting: integers without denominator, otherwise p/q.
pub fn pretty(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// All positive divisors of a nonzero integer, by trial division.
pub fn divisors(n: &BigUint) -> Vec<BigUint> {
    let mut primes: Vec<(BigUint, u32)> = Vec::new();
    let mut m = n.clone();
    let mut p = BigUint::from(2u32);
    while &p * &p <= m {
        let mut e = 0u32;
        while (&m % &p).is_zero() {
            m /= &p;
            e += 1;
        }
        if e > 0 {
            primes.push((p.clone(), e));
        }
        p += 1u32;
    }
    if m > BigUint::one() {
        primes.push((m, 1));
    }
    let mut divs = vec![BigUint::one()];
    for (p, e) in primes {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigUint::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs.dedup();
    divs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn falling_factorial_values() {
        assert_eq!(falling(&rint(3), 2), rint(6));
        assert_eq!(falling(&rat(1, 2), 1), rat(1, 2));
        assert_eq!(falling(&rat(1, 2), 2), rat(-1, 4));
        assert_eq!(falling(&rint(5), 0), rint(1));
    }

    #[test]
    fn square_detection() {
        assert_eq!(sqrt_exact(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(sqrt_exact(&rint(2)), None);
        assert_eq!(sqrt_exact(&rat(-1, 1)), None);
    }

    #[test]
    fn divisor_enumeration() {
        let d = divisors(&BigUint::from(12u32));
        let got: Vec<u32> = d.iter().map(|x| u32::try_from(x.clone()).unwrap()).collect();
        assert_eq!(got, vec![1, 2, 3, 4, 6, 12]);
    }

    #[test]
    fn frac_round_trip() {
        let r = rat(-7, 3);
        assert_eq!(parse_frac(&to_frac_string(&r)), Some(r));
        assert_eq!(parse_frac("4"), Some(rint(4)));
        assert_eq!(parse_frac("1/0"), None);
    }
}
