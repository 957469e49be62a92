//! Exact rational scalars, Bernoulli numbers and zeta values at negative odd
//! integers.

use std::sync::{OnceLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision fraction, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `(-1)^n` as a rational.
pub fn sign(n: u32) -> Rational {
    if n % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Renders a rational as `num/den`, dropping the denominator when it is 1.
pub fn to_canonical_string(q: &Rational) -> String {
    q.to_string()
}

/// Parses `num/den` or a bare integer. The result is reduced.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

fn bernoulli_table() -> &'static RwLock<Vec<Rational>> {
    static TABLE: OnceLock<RwLock<Vec<Rational>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(vec![Rational::one()]))
}

/// The Bernoulli number `B_n`, with `B_1 = -1/2` (generating function
/// `t/(e^t - 1)`).
///
/// Values are produced by the recurrence `sum_{k=0}^{n} C(n+1,k) B_k = 0` and
/// memoized in a process-wide table.
pub fn bernoulli(n: u32) -> Rational {
    let n = n as usize;
    {
        let table = bernoulli_table().read().expect("bernoulli table poisoned");
        if let Some(b) = table.get(n) {
            return b.clone();
        }
    }
    let mut table = bernoulli_table().write().expect("bernoulli table poisoned");
    while table.len() <= n {
        let m = table.len() as u32;
        let value = if m > 1 && m % 2 == 1 {
            Rational::zero()
        } else {
            let mut acc = Rational::zero();
            for (k, b) in table.iter().enumerate() {
                if !b.is_zero() {
                    acc += b * Rational::from_integer(binomial(m + 1, k as u32));
                }
            }
            -acc / Rational::from_integer(BigInt::from(m + 1))
        };
        table.push(value);
    }
    table[n].clone()
}

/// `zeta(1 - 2g) = -B_{2g} / (2g)`.
pub fn zeta_negative_odd(g: u32) -> Result<Rational> {
    if g == 0 {
        return Err(Error::GenusZero(g));
    }
    Ok(-bernoulli(2 * g) / int(2 * g as i64))
}

/// The constant `(-1)^g zeta(1 - 2g)` multiplying the boundary class in
/// `lambda_g = c_g delta_g`. Always positive.
pub fn main_constant(g: u32) -> Result<Rational> {
    Ok(sign(g) * zeta_negative_odd(g)?)
}

/// Exact big-integer power `base^exp`.
pub fn pow_u(base: u64, exp: u32) -> BigUint {
    num_traits::pow(BigUint::from(base), exp as usize)
}

/// Serde adapters that write rationals in their canonical string form.
pub mod serde_string {
    use super::Rational;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&q.to_string())
    }

    pub mod option {
        use super::Rational;
        use serde::Serializer;

        pub fn serialize<S: Serializer>(q: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
            match q {
                Some(q) => s.serialize_str(&q.to_string()),
                None => s.serialize_none(),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    /// Independent check: `sum_{k=0}^{n} C(n+1,k) B_k` computed from scratch.
    fn recurrence_residual(n: u32) -> Rational {
        (0..=n)
            .map(|k| Rational::from_integer(binomial(n + 1, k)) * bernoulli(k))
            .fold(Rational::zero(), |a, b| a + b)
    }

    /// Akiyama-Tanigawa table; yields the `B_1 = +1/2` convention.
    fn akiyama_tanigawa(n: usize) -> Rational {
        let mut row: Vec<Rational> = (0..=n).map(|m| frac(1, m as i64 + 1)).collect();
        for m in 0..n {
            for j in 0..(n - m) {
                row[j] = int(j as i64 + 1) * (&row[j] - &row[j + 1]);
            }
        }
        row[0].clone()
    }

    #[test]
    fn matches_akiyama_tanigawa() {
        for n in 0..=24usize {
            let expected = if n == 1 { frac(-1, 2) } else { akiyama_tanigawa(n) };
            assert_eq!(bernoulli(n as u32), expected, "n = {n}");
        }
    }

    #[test]
    fn small_values() {
        assert_eq!(bernoulli(0), int(1));
        assert_eq!(bernoulli(1), frac(-1, 2));
        assert_eq!(bernoulli(2), frac(1, 6));
        assert_eq!(bernoulli(3), int(0));
        assert_eq!(bernoulli(4), frac(-1, 30));
        assert_eq!(bernoulli(12), frac(-691, 2730));
    }

    #[test]
    fn recurrence_holds() {
        for n in 1..=40 {
            assert!(recurrence_residual(n).is_zero(), "n = {n}");
        }
        for n in (3..60).step_by(2) {
            assert!(bernoulli(n).is_zero());
        }
    }

    #[test]
    fn zeta_values() {
        assert_eq!(zeta_negative_odd(1).unwrap(), frac(-1, 12));
        assert_eq!(zeta_negative_odd(2).unwrap(), frac(1, 120));
        assert_eq!(zeta_negative_odd(3).unwrap(), frac(-1, 252));
        assert_eq!(zeta_negative_odd(0), Err(Error::GenusZero(0)));
    }

    #[test]
    fn main_constant_values() {
        assert_eq!(main_constant(1).unwrap(), frac(1, 12));
        assert_eq!(main_constant(2).unwrap(), frac(1, 120));
        assert_eq!(main_constant(3).unwrap(), frac(1, 252));
        assert!(main_constant(0).is_err());
        for g in 1..=30 {
            let c = main_constant(g).unwrap();
            assert!(c.is_positive());
            assert_eq!(c, sign(g + 1) * bernoulli(2 * g) / int(2 * g as i64));
        }
    }

    #[test]
    fn canonical_strings() {
        assert_eq!(to_canonical_string(&frac(-691, 2730)), "-691/2730");
        assert_eq!(to_canonical_string(&int(12)), "12");
        assert_eq!(parse_rational("-1382/5460").unwrap(), frac(-691, 2730));
        assert_eq!(parse_rational(" 7 ").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn binomials_and_factorials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 5), BigInt::from(0));
        assert_eq!(factorial(0), BigInt::from(1));
        assert_eq!(factorial(6), BigInt::from(720));
    }
}
