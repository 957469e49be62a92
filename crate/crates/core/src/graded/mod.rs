//! Weighted-graded multivariate polynomials over the rationals.
//!
//! A single engine serves every alphabet in the crate: the `lambda_i` (weight
//! `i`), the Chern generators `c_i`, formal Chern roots `x_j` and the boundary
//! divisors `Pi`, `T` (all weight 1). Products are truncated at an optional
//! degree bound carried by each polynomial.

mod series;
mod text;

pub use series::{named_series, NamedSeries, UnivariateSeries};

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{int, Rational};

/// Generator names and their degrees.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    names: Vec<String>,
    weights: Vec<u32>,
}

impl Alphabet {
    pub fn new(names: Vec<String>, weights: Vec<u32>) -> Arc<Self> {
        assert_eq!(names.len(), weights.len(), "one weight per generator");
        assert!(weights.iter().all(|&w| w > 0), "weights must be positive");
        Arc::new(Alphabet { names, weights })
    }

    /// `prefix1, ..., prefixN` with the given weights.
    pub fn indexed(prefix: &str, weights: Vec<u32>) -> Arc<Self> {
        let names = (1..=weights.len()).map(|i| format!("{prefix}{i}")).collect();
        Self::new(names, weights)
    }

    /// `prefix1..prefixG` with `prefix_i` of weight `i`, the Chern-class grading.
    pub fn chern(prefix: &str, g: usize) -> Arc<Self> {
        Self::indexed(prefix, (1..=g as u32).collect())
    }

    /// `prefix1..prefixG`, all of weight 1.
    pub fn roots(prefix: &str, g: usize) -> Arc<Self> {
        Self::indexed(prefix, vec![1; g])
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn monomial(&self, exponents: Vec<u32>) -> ExponentVector {
        assert_eq!(exponents.len(), self.len(), "exponent vector length");
        let degree = exponents.iter().zip(&self.weights).map(|(e, w)| e * w).sum();
        ExponentVector { degree, exponents }
    }

    pub fn unit_monomial(&self) -> ExponentVector {
        self.monomial(vec![0; self.len()])
    }

    /// All exponent vectors of weighted degree exactly `degree`.
    pub fn monomials_of_degree(&self, degree: u32) -> Vec<ExponentVector> {
        fn walk(weights: &[u32], at: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if at == weights.len() {
                if left == 0 {
                    out.push(cur.clone());
                }
                return;
            }
            let w = weights[at];
            for e in 0..=left / w {
                cur[at] = e;
                walk(weights, at + 1, left - e * w, cur, out);
            }
            cur[at] = 0;
        }
        let mut out = Vec::new();
        let mut cur = vec![0; self.len()];
        walk(&self.weights, 0, degree, &mut cur, &mut out);
        let mut monos: Vec<_> = out.into_iter().map(|e| self.monomial(e)).collect();
        monos.sort();
        monos
    }
}

/// Exponents of a monomial together with its weighted degree.
///
/// Only an [`Alphabet`] builds these, so the degree always agrees with the
/// exponents. The derived order is graded lexicographic: degree first, then
/// exponents compared from the first generator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentVector {
    degree: u32,
    exponents: Vec<u32>,
}

impl ExponentVector {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn is_unit(&self) -> bool {
        self.degree == 0
    }

    pub fn is_square_free(&self) -> bool {
        self.exponents.iter().all(|&e| e <= 1)
    }

    fn product(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector {
            degree: self.degree + other.degree,
            exponents: self.exponents.iter().zip(&other.exponents).map(|(a, b)| a + b).collect(),
        }
    }

    fn divides(&self, other: &ExponentVector) -> bool {
        self.exponents.iter().zip(&other.exponents).all(|(a, b)| a <= b)
    }

    fn quotient(&self, divisor: &ExponentVector) -> ExponentVector {
        ExponentVector {
            degree: self.degree - divisor.degree,
            exponents: self.exponents.iter().zip(&divisor.exponents).map(|(a, b)| a - b).collect(),
        }
    }

    fn lex_cmp(&self, other: &ExponentVector) -> std::cmp::Ordering {
        self.exponents.cmp(&other.exponents)
    }
}

/// A finite sum of monomials with nonzero rational coefficients.
#[derive(Debug, Clone)]
pub struct GradedPolynomial {
    alphabet: Arc<Alphabet>,
    terms: BTreeMap<ExponentVector, Rational>,
    bound: Option<u32>,
}

impl PartialEq for GradedPolynomial {
    /// Equality of the underlying polynomials; truncation bounds are not compared.
    fn eq(&self, other: &Self) -> bool {
        self.alphabet == other.alphabet && self.terms == other.terms
    }
}

impl Eq for GradedPolynomial {}

impl GradedPolynomial {
    pub fn zero(alphabet: &Arc<Alphabet>, bound: Option<u32>) -> Self {
        GradedPolynomial { alphabet: Arc::clone(alphabet), terms: BTreeMap::new(), bound }
    }

    pub fn constant(alphabet: &Arc<Alphabet>, bound: Option<u32>, c: Rational) -> Self {
        let mut p = Self::zero(alphabet, bound);
        p.add_term(alphabet.unit_monomial(), c);
        p
    }

    pub fn one(alphabet: &Arc<Alphabet>, bound: Option<u32>) -> Self {
        Self::constant(alphabet, bound, Rational::one())
    }

    /// The `index`-th generator (zero-based).
    pub fn generator(alphabet: &Arc<Alphabet>, bound: Option<u32>, index: usize) -> Self {
        let mut e = vec![0; alphabet.len()];
        e[index] = 1;
        Self::monomial(alphabet, bound, e, Rational::one())
    }

    pub fn monomial(alphabet: &Arc<Alphabet>, bound: Option<u32>, exponents: Vec<u32>, c: Rational) -> Self {
        let mut p = Self::zero(alphabet, bound);
        p.add_term(alphabet.monomial(exponents), c);
        p
    }

    pub fn from_terms<I>(alphabet: &Arc<Alphabet>, bound: Option<u32>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut p = Self::zero(alphabet, bound);
        for (e, c) in terms {
            p.add_term(alphabet.monomial(e), c);
        }
        p
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn bound(&self) -> Option<u32> {
        self.bound
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExponentVector, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> Rational {
        let key = self.alphabet.monomial(exponents.to_vec());
        self.terms.get(&key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.terms.get(&self.alphabet.unit_monomial()).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(ExponentVector::degree)
    }

    pub fn is_homogeneous_of(&self, degree: u32) -> bool {
        self.terms.keys().all(|e| e.degree() == degree)
    }

    pub fn homogeneous_part(&self, degree: u32) -> Self {
        let terms = self.terms.iter().filter(|(e, _)| e.degree() == degree).map(|(e, c)| (e.clone(), c.clone()));
        GradedPolynomial { alphabet: Arc::clone(&self.alphabet), terms: terms.collect(), bound: self.bound }
    }

    /// Drops every term above `bound` and records the tighter bound.
    pub fn truncate(&self, bound: u32) -> Self {
        let bound = self.bound.map_or(bound, |b| b.min(bound));
        let terms = self.terms.iter().filter(|(e, _)| e.degree() <= bound).map(|(e, c)| (e.clone(), c.clone()));
        GradedPolynomial { alphabet: Arc::clone(&self.alphabet), terms: terms.collect(), bound: Some(bound) }
    }

    pub fn with_bound(mut self, bound: Option<u32>) -> Self {
        if let Some(b) = bound {
            self = self.truncate(b);
        }
        self.bound = bound;
        self
    }

    pub(crate) fn add_term(&mut self, e: ExponentVector, c: Rational) {
        if c.is_zero() || self.bound.is_some_and(|b| e.degree() > b) {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<Option<u32>> {
        if !Arc::ptr_eq(&self.alphabet, &other.alphabet) && self.alphabet != other.alphabet {
            return Err(Error::IncompatibleAlphabet(format!(
                "{:?} vs {:?}",
                self.alphabet.names, other.alphabet.names
            )));
        }
        Ok(match (self.bound, other.bound) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let bound = self.check_compatible(other)?;
        let mut out = self.clone().with_bound(bound);
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        let bound = self.check_compatible(other)?;
        let mut out = self.clone().with_bound(bound);
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    /// Product, discarding every term above the common truncation bound.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let bound = self.check_compatible(other)?;
        let mut out = Self::zero(&self.alphabet, bound);
        for (ea, ca) in &self.terms {
            if bound.is_some_and(|b| ea.degree() > b) {
                break;
            }
            for (eb, cb) in &other.terms {
                if bound.is_some_and(|b| ea.degree() + eb.degree() > b) {
                    break;
                }
                out.add_term(ea.product(eb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.alphabet, self.bound);
        }
        let terms = self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect();
        GradedPolynomial { alphabet: Arc::clone(&self.alphabet), terms, bound: self.bound }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.alphabet, self.bound);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Replaces the `i`-th generator by `images[i]`; the result lives in the
    /// images' alphabet.
    pub fn substitute(&self, images: &[GradedPolynomial]) -> Result<Self> {
        if images.len() != self.alphabet.len() {
            return Err(Error::IncompatibleAlphabet(format!(
                "{} images for {} generators",
                images.len(),
                self.alphabet.len()
            )));
        }
        let Some(first) = images.first() else {
            return Ok(self.clone());
        };
        let target = Arc::clone(&first.alphabet);
        let mut bound = first.bound;
        for img in &images[1..] {
            first.check_compatible(img)?;
            bound = match (bound, img.bound) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (a, b) => a.or(b),
            };
        }
        // powers[i][k] = images[i]^k, grown lazily
        let mut powers: Vec<Vec<GradedPolynomial>> =
            images.iter().map(|img| vec![GradedPolynomial::one(&target, bound), img.clone().with_bound(bound)]).collect();
        let mut out = GradedPolynomial::zero(&target, bound);
        for (e, c) in &self.terms {
            let mut term = GradedPolynomial::constant(&target, bound, c.clone());
            for (i, &k) in e.exponents.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[i].len() <= k as usize {
                    let next = &powers[i][powers[i].len() - 1] * &powers[i][1];
                    powers[i].push(next);
                }
                term = &term * &powers[i][k as usize];
                if term.is_zero() {
                    break;
                }
            }
            for (e2, c2) in term.terms {
                out.add_term(e2, c2);
            }
        }
        Ok(out)
    }

    /// Swaps generators `i` and `j` (which must carry equal weights).
    pub fn swap_generators(&self, i: usize, j: usize) -> Self {
        let mut out = Self::zero(&self.alphabet, self.bound);
        for (e, c) in &self.terms {
            let mut ex = e.exponents.clone();
            ex.swap(i, j);
            out.add_term(self.alphabet.monomial(ex), c.clone());
        }
        out
    }

    /// Lexicographically largest monomial (first generator most significant).
    pub fn lex_leading(&self) -> Option<(&ExponentVector, &Rational)> {
        self.terms.iter().max_by(|a, b| a.0.lex_cmp(b.0))
    }

    /// Division with remainder by `divisor`, using the lexicographic leading
    /// monomial of the divisor. The remainder has no term divisible by that
    /// leading monomial.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let bound = self.check_compatible(divisor)?;
        let (lead_e, lead_c) = match divisor.lex_leading() {
            Some((e, c)) => (e.clone(), c.clone()),
            None => return Err(Error::NotInvertible),
        };
        let mut quotient = Self::zero(&self.alphabet, bound);
        let mut remainder = Self::zero(&self.alphabet, bound);
        let mut rest = self.clone().with_bound(bound);
        loop {
            let candidate = rest
                .terms
                .iter()
                .filter(|(e, _)| lead_e.divides(e))
                .max_by(|a, b| a.0.lex_cmp(b.0))
                .map(|(e, c)| (e.clone(), c.clone()));
            let Some((e, c)) = candidate else { break };
            let q_e = e.quotient(&lead_e);
            let q_c = c / &lead_c;
            let q_term = GradedPolynomial { alphabet: Arc::clone(&self.alphabet), terms: [(q_e, q_c)].into(), bound };
            rest = &rest - &(&q_term * divisor);
            for (e, c) in q_term.terms {
                quotient.add_term(e, c);
            }
        }
        for (e, c) in rest.terms {
            remainder.add_term(e, c);
        }
        Ok((quotient, remainder))
    }
}

/// `sum_{k>=0} a^k / k!`, truncated at the bound of `a`.
pub fn graded_exp(a: &GradedPolynomial) -> Result<GradedPolynomial> {
    if !a.constant_term().is_zero() {
        return Err(Error::NonzeroConstantTerm);
    }
    let one = GradedPolynomial::one(&a.alphabet, a.bound);
    if a.is_zero() {
        return Ok(one);
    }
    let bound = a.bound.ok_or(Error::Unbounded)?;
    let mut out = one.clone();
    let mut power = one;
    for k in 1..=bound {
        power = (&power * a).scale(&(Rational::one() / int(k as i64)));
        if power.is_zero() {
            break;
        }
        out = &out + &power;
    }
    Ok(out)
}

/// `sum_{k>=1} (-1)^{k+1} (a - 1)^k / k`, truncated at the bound of `a`.
pub fn graded_log(a: &GradedPolynomial) -> Result<GradedPolynomial> {
    if !a.constant_term().is_one() {
        return Err(Error::ConstantTermNotOne);
    }
    let x = a - &GradedPolynomial::one(&a.alphabet, a.bound);
    if x.is_zero() {
        return Ok(x);
    }
    let bound = a.bound.ok_or(Error::Unbounded)?;
    let mut out = GradedPolynomial::zero(&a.alphabet, a.bound);
    let mut power = GradedPolynomial::one(&a.alphabet, a.bound);
    for k in 1..=bound {
        power = &power * &x;
        if power.is_zero() {
            break;
        }
        let c = if k % 2 == 1 { Rational::one() } else { -Rational::one() } / int(k as i64);
        out = &out + &power.scale(&c);
    }
    Ok(out)
}

/// `sum_k s_k p_k` where `power_sums[k-1]` is `p_k`, homogeneous of degree `k`.
pub fn substitute_power_sums(s: &UnivariateSeries, power_sums: &[GradedPolynomial]) -> Result<GradedPolynomial> {
    let Some(first) = power_sums.first() else {
        return Err(Error::IncompatibleAlphabet("no power sums supplied".into()));
    };
    if !s.coefficient(0).is_zero() {
        return Err(Error::NonzeroConstantTerm);
    }
    let mut out = GradedPolynomial::zero(&first.alphabet, first.bound);
    for (idx, p) in power_sums.iter().enumerate() {
        let k = idx + 1;
        if !p.is_homogeneous_of(k as u32) {
            return Err(Error::InhomogeneousPowerSum { index: k });
        }
        let c = s.coefficient(k);
        if !c.is_zero() {
            out = out.try_add(&p.scale(&c))?;
        }
    }
    Ok(out)
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&GradedPolynomial> for &GradedPolynomial {
            type Output = GradedPolynomial;

            /// Panics if the alphabets differ; use the `try_` form to handle that.
            fn $method(self, rhs: &GradedPolynomial) -> GradedPolynomial {
                self.$try(rhs).expect("operands share an alphabet")
            }
        }

        impl $trait<GradedPolynomial> for GradedPolynomial {
            type Output = GradedPolynomial;

            fn $method(self, rhs: GradedPolynomial) -> GradedPolynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &GradedPolynomial {
    type Output = GradedPolynomial;

    fn neg(self) -> GradedPolynomial {
        self.scale(&-Rational::one())
    }
}

impl Neg for GradedPolynomial {
    type Output = GradedPolynomial;

    fn neg(self) -> GradedPolynomial {
        -&self
    }
}

impl fmt::Display for GradedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::render(self))
    }
}

impl GradedPolynomial {
    /// Parses the canonical text form (`2*l2 - l1^2`, `1/2*x1^2 + 3`).
    pub fn parse(alphabet: &Arc<Alphabet>, bound: Option<u32>, input: &str) -> Result<Self> {
        text::parse(alphabet, bound, input)
    }
}
