//! Coefficients of natural cycle classes on the Satake compactification,
//! written against the pushed-down classes `l_alpha = q_*(lambda_alpha)`.
//!
//! The classes themselves are carried only as labels; the numbers are the
//! deliverable.

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{pow_u, sign, zeta_negative_odd, Rational};
use crate::taut::Subset;

/// Proviso attached to the stratum constants of [`stratum_constant`].
pub const POSITIVE_CHARACTERISTIC_NOTE: &str =
    "stratum relation established in characteristic p > 0; the coefficient itself is characteristic-free";

/// `coefficient * l_label`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatakeClassExpression {
    pub stratum: u32,
    pub coefficient: Rational,
    pub label: Subset,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// `(p - 1)(p^2 - 1) ... (p^g - 1)`, the multiple of `l_{g}` giving the
/// p-rank zero locus.
pub fn p_rank_constant(g: u32, p: u64) -> Result<BigUint> {
    if g == 0 {
        return Err(Error::GenusZero(0));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok((1..=g).fold(BigUint::one(), |acc, j| acc * (pow_u(p, j) - BigUint::one())))
}

/// `[A*_{g-i}] = (-1)^i / prod_{j=1}^{i} zeta(2j - 1 - 2g) * l_{g-i+1..g}`.
pub fn stratum_constant(g: u32, i: u32) -> Result<SatakeClassExpression> {
    if g == 0 {
        return Err(Error::GenusZero(0));
    }
    if i > g {
        return Err(Error::IndexOutOfRange { index: i, max: g });
    }
    let mut denominator = Rational::one();
    for j in 1..=i {
        // zeta(2j - 1 - 2g) = zeta(1 - 2(g - j + 1))
        denominator *= zeta_negative_odd(g - j + 1)?;
    }
    Ok(SatakeClassExpression {
        stratum: i,
        coefficient: sign(i) / denominator,
        label: Subset::from_indices(g - i + 1..=g),
    })
}

/// The top and next-to-top boundary strata:
/// `[A*_{g-1}] = (-1)^g / zeta(1-2g) l_{g}` and, for `g >= 2`,
/// `[A*_{g-2}] = 1 / (zeta(1-2g) zeta(3-2g)) l_{g-1,g}`.
pub fn theorem34_constants(g: u32) -> Result<(SatakeClassExpression, Option<SatakeClassExpression>)> {
    let z1 = zeta_negative_odd(g)?;
    let first = SatakeClassExpression { stratum: 1, coefficient: sign(g) / &z1, label: Subset::from_indices([g]) };
    let second = if g >= 2 {
        let z3 = zeta_negative_odd(g - 1)?;
        Some(SatakeClassExpression {
            stratum: 2,
            coefficient: Rational::one() / (z1 * z3),
            label: Subset::from_indices([g - 1, g]),
        })
    } else {
        None
    };
    Ok((first, second))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConsistencyEntry {
    pub i: u32,
    #[serde(with = "crate::rational::serde_string")]
    pub general: Rational,
    #[serde(with = "crate::rational::serde_string")]
    pub specific: Rational,
    pub equal: bool,
    /// `general / specific`.
    #[serde(with = "crate::rational::serde_string")]
    pub factor: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConsistencyReport {
    pub g: u32,
    pub entries: Vec<ConsistencyEntry>,
}

impl ConsistencyReport {
    pub fn entry(&self, i: u32) -> Option<&ConsistencyEntry> {
        self.entries.iter().find(|e| e.i == i)
    }
}

/// Compares the general stratum formula at `i = 1, 2` with the two explicit
/// constants, reporting the exact ratio when they differ.
pub fn consistency_report(g: u32) -> Result<ConsistencyReport> {
    if g < 2 {
        return Err(Error::IndexOutOfRange { index: g, max: u32::MAX });
    }
    let (first, second) = theorem34_constants(g)?;
    let second = second.expect("g >= 2");
    let mut entries = Vec::with_capacity(2);
    for (i, specific) in [(1, first), (2, second)] {
        let general = stratum_constant(g, i)?;
        let factor = &general.coefficient / &specific.coefficient;
        entries.push(ConsistencyEntry {
            i,
            equal: general.coefficient == specific.coefficient,
            general: general.coefficient,
            specific: specific.coefficient,
            factor,
        });
    }
    Ok(ConsistencyReport { g, entries })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecursionReport {
    pub g: u32,
    /// Each `i` in `1..=g` whose step relation holds.
    pub steps_checked: u32,
    pub failures: Vec<u32>,
    pub passed: bool,
}

/// Checks `c(g, i) = c(g, i-1) * (-1) / zeta(2i - 1 - 2g)` for `1 <= i <= g`.
pub fn recursion_check(g: u32) -> Result<RecursionReport> {
    if g == 0 {
        return Err(Error::GenusZero(0));
    }
    let mut failures = Vec::new();
    for i in 1..=g {
        let prev = stratum_constant(g, i - 1)?.coefficient;
        let cur = stratum_constant(g, i)?.coefficient;
        let z = zeta_negative_odd(g - i + 1)?;
        if cur != -prev / z {
            failures.push(i);
        }
    }
    Ok(RecursionReport { g, steps_checked: g, passed: failures.is_empty(), failures })
}

/// One row of the emitted stratum table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SatakeRow {
    pub g: u32,
    pub i: u32,
    #[serde(with = "crate::rational::serde_string")]
    pub coefficient: Rational,
    pub label: Vec<u32>,
    /// Agreement with the explicit constants; only defined for `i = 1, 2`.
    pub matches_thm34: Option<bool>,
}

/// Rows for `i` in `0..=g`, or only the requested `i`.
pub fn stratum_table(g: u32, only: Option<u32>) -> Result<Vec<SatakeRow>> {
    let report = if g >= 2 { Some(consistency_report(g)?) } else { None };
    let first_only = theorem34_constants(g)?.0;
    let range: Vec<u32> = match only {
        Some(i) => vec![i],
        None => (0..=g).collect(),
    };
    range
        .into_iter()
        .map(|i| {
            let expr = stratum_constant(g, i)?;
            let matches_thm34 = match (i, &report) {
                (1 | 2, Some(r)) => r.entry(i).map(|e| e.equal),
                (1, None) => Some(expr.coefficient == first_only.coefficient),
                _ => None,
            };
            Ok(SatakeRow { g, i, coefficient: expr.coefficient, label: expr.label.indices(), matches_thm34 })
        })
        .collect()
}
