//! Truncated univariate power series over the rationals.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{int, Rational};

/// `sum_{k=0}^{order} coefficients[k] t^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnivariateSeries {
    coefficients: Vec<Rational>,
}

impl UnivariateSeries {
    /// Panics on an empty coefficient vector; a series has at least order 0.
    pub fn new(coefficients: Vec<Rational>) -> Self {
        assert!(!coefficients.is_empty(), "series needs a constant coefficient");
        UnivariateSeries { coefficients }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Rational) -> Self {
        Self::new((0..=order).map(f).collect())
    }

    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    /// Zero beyond the retained order.
    pub fn coefficient(&self, k: usize) -> Rational {
        self.coefficients.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self::from_fn(order, |n| {
            (0..=n).fold(Rational::zero(), |acc, k| acc + &self.coefficients[k] * &other.coefficients[n - k])
        })
    }

    /// Multiplicative inverse; the constant coefficient must be nonzero.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coefficients[0];
        if c0.is_zero() {
            return Err(Error::NotInvertible);
        }
        let mut inv: Vec<Rational> = Vec::with_capacity(self.coefficients.len());
        inv.push(Rational::one() / c0);
        for n in 1..=self.order() {
            let s = (1..=n).fold(Rational::zero(), |acc, k| acc + &self.coefficients[k] * &inv[n - k]);
            inv.push(-s / c0);
        }
        Ok(Self::new(inv))
    }

    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::new(vec![Rational::zero()]);
        }
        Self::from_fn(self.order() - 1, |k| &self.coefficients[k + 1] * int(k as i64 + 1))
    }

    /// Antiderivative with zero constant term; the order grows by one.
    fn integral(&self) -> Self {
        Self::from_fn(self.order() + 1, |k| {
            if k == 0 {
                Rational::zero()
            } else {
                &self.coefficients[k - 1] / int(k as i64)
            }
        })
    }

    /// `log f = integral(f'/f)`; requires constant coefficient 1.
    pub fn log(&self) -> Result<Self> {
        if !self.coefficients[0].is_one() {
            return Err(Error::ConstantTermNotOne);
        }
        if self.order() == 0 {
            return Ok(Self::new(vec![Rational::zero()]));
        }
        let quotient = self.derivative().mul(&self.inverse()?);
        Ok(quotient.integral())
    }

    /// `exp(a t)`, to the given order.
    pub fn exponential(a: &Rational, order: usize) -> Self {
        let mut c = Rational::one();
        Self::from_fn(order, |k| {
            if k > 0 {
                c = &c * a / int(k as i64);
            }
            c.clone()
        })
    }

    /// Divides by `t`, dropping the (zero) constant term; the order drops by one.
    fn shift_down(&self) -> Result<Self> {
        if !self.coefficients[0].is_zero() {
            return Err(Error::NonzeroRemainder("series not divisible by t".into()));
        }
        Ok(Self::new(self.coefficients[1..].to_vec()))
    }
}

/// The generating series used to assemble Todd classes and their inverses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedSeries {
    /// `t / (e^t - 1)`
    ToddDualGen,
    /// `log(t / (1 - e^{-t}))`
    LogToddGen,
    /// `log(t / (e^t - 1))`
    LogToddDualGen,
    /// `log((1 - e^{-t}) / t)`
    LogOneMinusExpNegOverT,
}

impl NamedSeries {
    pub const ALL: [NamedSeries; 4] =
        [NamedSeries::ToddDualGen, NamedSeries::LogToddGen, NamedSeries::LogToddDualGen, NamedSeries::LogOneMinusExpNegOverT];

    pub fn name(self) -> &'static str {
        match self {
            NamedSeries::ToddDualGen => "todd_dual_gen",
            NamedSeries::LogToddGen => "log_todd_gen",
            NamedSeries::LogToddDualGen => "log_todd_dual_gen",
            NamedSeries::LogOneMinusExpNegOverT => "log_one_minus_exp_neg_over_t",
        }
    }
}

impl fmt::Display for NamedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NamedSeries {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|n| n.name() == s).ok_or_else(|| Error::UnknownSeries(s.to_string()))
    }
}

/// `(e^{sign t} - 1) / t` to the given order.
fn exp_minus_one_over_t(sign: i64, order: usize) -> UnivariateSeries {
    let e = UnivariateSeries::exponential(&int(sign), order + 1);
    let mut c = e.coefficients;
    c[0] = Rational::zero();
    UnivariateSeries::new(c).shift_down().expect("constant term removed")
}

/// Exact coefficients of one of the [`NamedSeries`] up to `t^order`.
pub fn named_series(name: NamedSeries, order: usize) -> UnivariateSeries {
    // (e^t - 1)/t and (1 - e^{-t})/t; both have constant term 1
    let forward = exp_minus_one_over_t(1, order);
    let backward = {
        let s = exp_minus_one_over_t(-1, order);
        UnivariateSeries::new(s.coefficients.iter().map(|c| -c).collect())
    };
    let negate = |s: UnivariateSeries| UnivariateSeries::new(s.coefficients.iter().map(|c| -c).collect());
    match name {
        NamedSeries::ToddDualGen => forward.inverse().expect("unit constant term"),
        NamedSeries::LogToddGen => negate(backward.log().expect("unit constant term")),
        NamedSeries::LogToddDualGen => negate(forward.log().expect("unit constant term")),
        NamedSeries::LogOneMinusExpNegOverT => backward.log().expect("unit constant term"),
    }
}
