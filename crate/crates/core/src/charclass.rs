//! Characteristic classes of a formal vector bundle: power sums, Chern
//! character, Todd and dual Todd classes, and the alternating sum of exterior
//! powers of the dual.
//!
//! Two representations are kept apart on purpose. In the Chern-generator
//! representation every class is assembled from `c_1..c_g` through Newton's
//! identities and multiplicative sequences; in the formal-root representation
//! classes are products over explicit roots `x_1..x_g` and are only turned
//! into `c_i`-polynomials at the end by [`symmetric_to_elementary`].

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graded::{graded_exp, named_series, substitute_power_sums, Alphabet, GradedPolynomial, NamedSeries};
use crate::rational::{factorial, int, sign, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Representation {
    ChernGenerators,
    FormalRoots,
}

/// Rank and Chern classes of a formal bundle.
#[derive(Debug, Clone)]
pub struct BundleClasses {
    rank: usize,
    /// `chern[i-1] = c_i`, for `1 <= i <= rank`.
    chern: Vec<GradedPolynomial>,
    roots: Option<Vec<GradedPolynomial>>,
    alphabet: Arc<Alphabet>,
    bound: Option<u32>,
}

impl BundleClasses {
    /// Rank-`g` bundle whose Chern classes are the free generators
    /// `prefix1..prefixG` of weights `1..g`.
    pub fn universal(prefix: &str, g: usize, bound: Option<u32>) -> Self {
        let alphabet = Alphabet::chern(prefix, g);
        let chern = (0..g).map(|i| GradedPolynomial::generator(&alphabet, bound, i)).collect();
        BundleClasses { rank: g, chern, roots: None, alphabet, bound }
    }

    /// Rank-`g` bundle split into formal roots `prefix1..prefixG`; its Chern
    /// classes are the elementary symmetric polynomials in the roots.
    pub fn formal_roots(prefix: &str, g: usize, bound: Option<u32>) -> Self {
        let alphabet = Alphabet::roots(prefix, g);
        let roots: Vec<_> = (0..g).map(|i| GradedPolynomial::generator(&alphabet, bound, i)).collect();
        let chern = elementary_symmetric(&alphabet, bound, &roots);
        BundleClasses { rank: g, chern, roots: Some(roots), alphabet, bound }
    }

    /// Bundle of the given rank with prescribed Chern classes; `chern[i-1] = c_i`.
    /// Classes beyond the rank must vanish and are dropped.
    pub fn from_chern(rank: usize, alphabet: &Arc<Alphabet>, bound: Option<u32>, mut chern: Vec<GradedPolynomial>) -> Self {
        assert!(chern.iter().skip(rank).all(GradedPolynomial::is_zero), "c_i must vanish above the rank");
        chern.truncate(rank);
        while chern.len() < rank {
            chern.push(GradedPolynomial::zero(alphabet, bound));
        }
        BundleClasses { rank, chern, roots: None, alphabet: Arc::clone(alphabet), bound }
    }

    /// Line bundle with first Chern class `c1`.
    pub fn line(c1: GradedPolynomial) -> Self {
        let alphabet = Arc::clone(c1.alphabet());
        let bound = c1.bound();
        BundleClasses { rank: 1, chern: vec![c1.clone()], roots: Some(vec![c1]), alphabet, bound }
    }

    pub fn zero(alphabet: &Arc<Alphabet>, bound: Option<u32>) -> Self {
        BundleClasses { rank: 0, chern: Vec::new(), roots: Some(Vec::new()), alphabet: Arc::clone(alphabet), bound }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn representation(&self) -> Representation {
        if self.roots.is_some() {
            Representation::FormalRoots
        } else {
            Representation::ChernGenerators
        }
    }

    /// `c_i`, zero for `i > rank`; `c_0 = 1`.
    pub fn chern_class(&self, i: usize) -> GradedPolynomial {
        match i {
            0 => GradedPolynomial::one(&self.alphabet, self.bound),
            i if i <= self.rank => self.chern[i - 1].clone(),
            _ => GradedPolynomial::zero(&self.alphabet, self.bound),
        }
    }

    pub fn roots(&self) -> Option<&[GradedPolynomial]> {
        self.roots.as_deref()
    }

    pub fn total_chern_class(&self) -> GradedPolynomial {
        (0..=self.rank).fold(GradedPolynomial::zero(&self.alphabet, self.bound), |acc, i| &acc + &self.chern_class(i))
    }

    /// `c(E + F) = c(E) c(F)`; roots are concatenated when both sides carry them.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        let total = self.total_chern_class().try_mul(&other.total_chern_class())?;
        let rank = self.rank + other.rank;
        let bound = total.bound();
        let chern = (1..=rank).map(|i| total.homogeneous_part(i as u32)).collect();
        let roots = match (&self.roots, &other.roots) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).cloned().collect()),
            _ => None,
        };
        Ok(BundleClasses { rank, chern, roots, alphabet: Arc::clone(&self.alphabet), bound })
    }

    /// `c_i(E^vee) = (-1)^i c_i(E)`; roots are negated.
    pub fn dual(&self) -> Self {
        let chern = self.chern.iter().enumerate().map(|(i, c)| c.scale(&sign(i as u32 + 1))).collect();
        let roots = self.roots.as_ref().map(|r| r.iter().map(|x| -x).collect());
        BundleClasses { rank: self.rank, chern, roots, alphabet: Arc::clone(&self.alphabet), bound: self.bound }
    }

    fn truncated(&self, bound: u32) -> Self {
        let bound = Some(self.bound.map_or(bound, |b| b.min(bound)));
        BundleClasses {
            rank: self.rank,
            chern: self.chern.iter().map(|c| c.clone().with_bound(bound)).collect(),
            roots: self.roots.as_ref().map(|r| r.iter().map(|x| x.clone().with_bound(bound)).collect()),
            alphabet: Arc::clone(&self.alphabet),
            bound,
        }
    }
}

/// `e_1..e_n` of the given polynomials.
pub fn elementary_symmetric(alphabet: &Arc<Alphabet>, bound: Option<u32>, vars: &[GradedPolynomial]) -> Vec<GradedPolynomial> {
    // e[k] after processing j variables; builds prod (1 + x_j) degree by degree
    let mut e = vec![GradedPolynomial::one(alphabet, bound)];
    for x in vars {
        e.push(GradedPolynomial::zero(alphabet, bound));
        for k in (1..e.len()).rev() {
            e[k] = &e[k] + &(&e[k - 1] * x);
        }
    }
    e.remove(0);
    e
}

/// Power sums `p_1..p_{k_max}` of the Chern roots, from Newton's identities
/// `p_k = e_1 p_{k-1} - e_2 p_{k-2} + ... + (-1)^{k-1} k e_k`.
pub fn newton_power_sums(b: &BundleClasses, k_max: usize) -> Vec<GradedPolynomial> {
    let mut p: Vec<GradedPolynomial> = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let mut pk = b.chern_class(k).scale(&(sign(k as u32 - 1) * int(k as i64)));
        for i in 1..k.min(b.rank + 1) {
            let term = &b.chern_class(i) * &p[k - i - 1];
            pk = &pk + &term.scale(&sign(i as u32 - 1));
        }
        p.push(pk);
    }
    p
}

/// `rank + sum_k p_k / k!`, truncated at `bound`.
pub fn chern_character(b: &BundleClasses, bound: u32) -> GradedPolynomial {
    let b = b.truncated(bound);
    let mut ch = GradedPolynomial::constant(&b.alphabet, b.bound, int(b.rank as i64));
    for (idx, pk) in newton_power_sums(&b, bound as usize).iter().enumerate() {
        ch = &ch + &pk.scale(&(Rational::one() / Rational::from_integer(factorial(idx as u32 + 1))));
    }
    ch
}

fn multiplicative_sequence(b: &BundleClasses, bound: u32, log_series: NamedSeries) -> GradedPolynomial {
    let b = b.truncated(bound);
    let one = GradedPolynomial::one(&b.alphabet, b.bound);
    if b.rank == 0 || bound == 0 {
        return one;
    }
    let p = newton_power_sums(&b, bound as usize);
    let s = named_series(log_series, bound as usize);
    let log = substitute_power_sums(&s, &p).expect("Newton power sums are homogeneous");
    graded_exp(&log).expect("log of a multiplicative sequence has no constant term")
}

/// `Td(E) = prod x_j / (1 - e^{-x_j})`, via its logarithm in the power sums.
pub fn todd(b: &BundleClasses, bound: u32) -> GradedPolynomial {
    multiplicative_sequence(b, bound, NamedSeries::LogToddGen)
}

/// `Td^vee(E) = prod x_j / (e^{x_j} - 1)`.
pub fn todd_dual(b: &BundleClasses, bound: u32) -> GradedPolynomial {
    multiplicative_sequence(b, bound, NamedSeries::LogToddDualGen)
}

/// `Td(E)^{-1} = prod (1 - e^{-x_j}) / x_j`.
pub fn todd_inverse(b: &BundleClasses, bound: u32) -> GradedPolynomial {
    multiplicative_sequence(b, bound, NamedSeries::LogOneMinusExpNegOverT)
}

pub fn dual_bundle(b: &BundleClasses) -> BundleClasses {
    b.dual()
}

/// Rewrites a symmetric polynomial in formal roots as a polynomial in the
/// elementary symmetric functions, named by `target` (an alphabet with one
/// generator of weight `i` per `e_i`).
///
/// Uses leading-monomial subtraction: the lexicographically largest monomial
/// `x^a` of a symmetric polynomial has `a_1 >= ... >= a_g` and equals the
/// leading monomial of `e_1^{a_1-a_2} ... e_g^{a_g}`.
pub fn symmetric_to_elementary(p: &GradedPolynomial, target: &Arc<Alphabet>) -> Result<GradedPolynomial> {
    let g = p.alphabet().len();
    if target.len() != g || target.weights().iter().enumerate().any(|(i, &w)| w as usize != i + 1) {
        return Err(Error::IncompatibleAlphabet(format!("target {:?} does not name e_1..e_{g}", target.names())));
    }
    if p.alphabet().weights().iter().any(|&w| w != 1) {
        return Err(Error::IncompatibleAlphabet("roots must have weight 1".into()));
    }
    for i in 0..g.saturating_sub(1) {
        if p.swap_generators(i, i + 1) != *p {
            return Err(Error::NotSymmetric);
        }
    }
    let bound = p.bound();
    let roots: Vec<_> = (0..g).map(|i| GradedPolynomial::generator(p.alphabet(), bound, i)).collect();
    let mut products = ElementaryProducts::new(elementary_symmetric(p.alphabet(), bound, &roots), p.alphabet(), bound);
    let mut rest = p.clone();
    let mut out = GradedPolynomial::zero(target, bound);
    loop {
        let leading = rest.terms().next_back().map(|(e, c)| (e.exponents().to_vec(), c.clone()));
        let Some((lead, c)) = leading else { break };
        if lead.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotSymmetric);
        }
        let mu: Vec<u32> = (0..g).map(|i| lead[i] - lead.get(i + 1).copied().unwrap_or(0)).collect();
        let expansion = products.get(&mu);
        rest = &rest - &expansion.scale(&c);
        out = &out + &GradedPolynomial::monomial(target, bound, mu, c);
    }
    Ok(out)
}

/// Memoized products `e_1^{m_1} ... e_g^{m_g}` in the root alphabet.
struct ElementaryProducts {
    elementary: Vec<GradedPolynomial>,
    cache: HashMap<Vec<u32>, GradedPolynomial>,
}

impl ElementaryProducts {
    fn new(elementary: Vec<GradedPolynomial>, alphabet: &Arc<Alphabet>, bound: Option<u32>) -> Self {
        let mut cache = HashMap::new();
        cache.insert(vec![0; elementary.len()], GradedPolynomial::one(alphabet, bound));
        ElementaryProducts { elementary, cache }
    }

    fn get(&mut self, mu: &[u32]) -> GradedPolynomial {
        if let Some(p) = self.cache.get(mu) {
            return p.clone();
        }
        let i = mu.iter().rposition(|&m| m > 0).expect("unit handled by the cache");
        let mut smaller = mu.to_vec();
        smaller[i] -= 1;
        let value = &self.get(&smaller) * &self.elementary[i];
        self.cache.insert(mu.to_vec(), value.clone());
        value
    }
}

/// `sum_i (-1)^i ch(wedge^i E^vee)` for a rank-`g` bundle, computed over formal
/// roots: the roots of `wedge^i E^vee` are the negated `i`-fold subset sums.
/// The result is expressed in the Chern generators `c1..cG`.
pub fn exterior_alternating_sum_dual(g: usize, bound: u32) -> Result<GradedPolynomial> {
    let roots = BundleClasses::formal_roots("x", g, Some(bound));
    let xs = roots.roots().expect("formal roots");
    let alphabet = Arc::clone(roots.alphabet());
    let mut total = GradedPolynomial::zero(&alphabet, Some(bound));
    for subset in 0u64..(1u64 << g) {
        let members: Vec<usize> = (0..g).filter(|j| subset >> j & 1 == 1).collect();
        let subset_sum = members.iter().fold(GradedPolynomial::zero(&alphabet, Some(bound)), |acc, &j| &acc - &xs[j]);
        let ch = graded_exp(&subset_sum)?;
        total = &total + &ch.scale(&sign(members.len() as u32));
    }
    symmetric_to_elementary(&total, &Alphabet::chern("c", g))
}

fn product_over_roots(g: usize, bound: u32, coefficients: impl Fn(usize) -> Rational) -> Result<GradedPolynomial> {
    let roots = BundleClasses::formal_roots("x", g, Some(bound));
    let alphabet = Arc::clone(roots.alphabet());
    let mut product = GradedPolynomial::one(&alphabet, Some(bound));
    for j in 0..g {
        let mut factor = GradedPolynomial::zero(&alphabet, Some(bound));
        for k in 0..=bound {
            let mut e = vec![0; g];
            e[j] = k;
            factor = &factor + &GradedPolynomial::monomial(&alphabet, Some(bound), e, coefficients(k as usize));
        }
        product = &product * &factor;
    }
    symmetric_to_elementary(&product, &Alphabet::chern("c", g))
}

/// Todd class of the rank-`g` universal bundle computed as a product over
/// formal roots, with each factor expanded from `t/(e^t - 1)` directly.
pub fn todd_via_roots(g: usize, bound: u32) -> Result<GradedPolynomial> {
    let s = named_series(NamedSeries::ToddDualGen, bound as usize);
    // x/(1 - e^{-x}) is t/(e^t - 1) at t = -x
    product_over_roots(g, bound, |k| s.coefficient(k) * sign(k as u32))
}

pub fn todd_dual_via_roots(g: usize, bound: u32) -> Result<GradedPolynomial> {
    let s = named_series(NamedSeries::ToddDualGen, bound as usize);
    product_over_roots(g, bound, |k| s.coefficient(k))
}

/// Outcome of comparing `ch(wedge^* E^vee)` (root route) with
/// `c_g Td(E)^{-1}` (multiplicative-sequence route).
#[derive(Debug, Clone, Serialize)]
pub struct BorelSerreReport {
    pub g: usize,
    pub bound: u32,
    pub lhs: String,
    pub rhs: String,
    pub difference: String,
    pub passed: bool,
}

/// Runs the Borel-Serre comparison at the socle degree `g(g+1)/2`.
pub fn borel_serre_check(g: usize) -> Result<BorelSerreReport> {
    borel_serre_check_with_bound(g, (g * (g + 1) / 2) as u32)
}

pub fn borel_serre_check_with_bound(g: usize, bound: u32) -> Result<BorelSerreReport> {
    if g == 0 {
        return Err(Error::GenusZero(0));
    }
    let lhs = exterior_alternating_sum_dual(g, bound)?;
    let e = BundleClasses::universal("c", g, Some(bound));
    let rhs = &e.chern_class(g) * &todd_inverse(&e, bound);
    let difference = lhs.try_sub(&rhs)?;
    Ok(BorelSerreReport {
        g,
        bound,
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        passed: difference.is_zero(),
        difference: difference.to_string(),
    })
}

/// The odd-degree terms of `p`.
pub fn odd_part(p: &GradedPolynomial) -> GradedPolynomial {
    let mut out = GradedPolynomial::zero(p.alphabet(), p.bound());
    for (e, c) in p.terms() {
        if e.degree() % 2 == 1 {
            out = &out + &GradedPolynomial::monomial(p.alphabet(), p.bound(), e.exponents().to_vec(), c.clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn parse(a: &Arc<Alphabet>, s: &str) -> GradedPolynomial {
        GradedPolynomial::parse(a, None, s).unwrap()
    }

    #[test]
    fn newton_examples() {
        let e = BundleClasses::universal("c", 3, Some(6));
        let p = newton_power_sums(&e, 3);
        let a = e.alphabet();
        assert_eq!(p[0], parse(a, "c1"));
        assert_eq!(p[1], parse(a, "c1^2 - 2*c2"));
        assert_eq!(p[2], parse(a, "c1^3 - 3*c1*c2 + 3*c3"));
    }

    #[test]
    fn newton_matches_explicit_roots() {
        for g in 1..=4 {
            let roots = BundleClasses::formal_roots("x", g, Some(10));
            let xs = roots.roots().unwrap();
            let e = BundleClasses::universal("c", g, Some(10));
            let p = newton_power_sums(&e, 10);
            let images: Vec<_> = (1..=g).map(|i| roots.chern_class(i)).collect();
            for k in 1..=10 {
                let direct = xs.iter().fold(GradedPolynomial::zero(roots.alphabet(), Some(10)), |acc, x| &acc + &x.pow(k as u32));
                assert_eq!(p[k - 1].substitute(&images).unwrap(), direct, "g = {g}, k = {k}");
            }
        }
    }

    #[test]
    fn chern_character_of_lines() {
        let a = Alphabet::roots("x", 2);
        let x = GradedPolynomial::generator(&a, Some(3), 0);
        let y = GradedPolynomial::generator(&a, Some(3), 1);
        let lx = BundleClasses::line(x.clone());
        let ly = BundleClasses::line(y.clone());
        assert_eq!(chern_character(&lx, 2), parse(&a, "1 + x1 + 1/2*x1^2"));
        let sum = lx.direct_sum(&ly).unwrap();
        assert_eq!(sum.rank(), 2);
        assert_eq!(chern_character(&sum, 3), &chern_character(&lx, 3) + &chern_character(&ly, 3));
    }

    #[test]
    fn chern_character_plus_dual_is_even() {
        for g in 1..=5 {
            let bound = (g * (g + 1) / 2) as u32;
            let e = BundleClasses::universal("c", g, Some(bound));
            let s = &chern_character(&e, bound) + &chern_character(&e.dual(), bound);
            assert!(odd_part(&s).is_zero(), "g = {g}");
            assert_eq!(s.constant_term(), int(2 * g as i64));
        }
    }

    #[test]
    fn todd_dual_of_a_line() {
        let a = Alphabet::roots("x", 1);
        let l = BundleClasses::line(GradedPolynomial::generator(&a, Some(2), 0));
        assert_eq!(todd_dual(&l, 2), parse(&a, "1 - 1/2*x1 + 1/12*x1^2"));
        assert_eq!(todd(&l, 2), parse(&a, "1 + 1/2*x1 + 1/12*x1^2"));
        let zero = BundleClasses::zero(&a, Some(4));
        assert_eq!(todd(&zero, 4), GradedPolynomial::one(&a, None));
    }

    #[test]
    fn dual_examples() {
        let e1 = BundleClasses::universal("c", 1, Some(4));
        assert_eq!(e1.dual().chern_class(1), parse(e1.alphabet(), "-c1"));
        let e2 = BundleClasses::universal("c", 2, Some(4));
        let d = dual_bundle(&e2);
        assert_eq!(d.chern_class(1), parse(e2.alphabet(), "-c1"));
        assert_eq!(d.chern_class(2), parse(e2.alphabet(), "c2"));
        let dd = d.dual();
        for i in 0..=3 {
            assert_eq!(dd.chern_class(i), e2.chern_class(i));
        }
    }

    #[test]
    fn todd_dual_is_todd_of_dual() {
        for g in 1..=4 {
            let bound = (g * (g + 1) / 2) as u32;
            let e = BundleClasses::universal("c", g, Some(bound));
            assert_eq!(todd_dual(&e, bound), todd(&e.dual(), bound));
        }
    }

    #[test]
    fn root_and_sequence_routes_agree() {
        for g in 1..=4 {
            let bound = (g * (g + 1) / 2) as u32;
            let e = BundleClasses::universal("c", g, Some(bound));
            assert_eq!(todd_via_roots(g, bound).unwrap(), todd(&e, bound), "Td, g = {g}");
            assert_eq!(todd_dual_via_roots(g, bound).unwrap(), todd_dual(&e, bound), "Td dual, g = {g}");
        }
    }

    #[test]
    fn symmetric_reduction_examples() {
        let x = Alphabet::roots("x", 2);
        let c = Alphabet::chern("c", 2);
        assert_eq!(symmetric_to_elementary(&parse(&x, "x1 + x2"), &c).unwrap(), parse(&c, "c1"));
        assert_eq!(symmetric_to_elementary(&parse(&x, "x1^2 + x2^2"), &c).unwrap(), parse(&c, "c1^2 - 2*c2"));
        assert_eq!(symmetric_to_elementary(&parse(&x, "x1^2*x2 + x1*x2^2"), &c).unwrap(), parse(&c, "c1*c2"));
        assert_eq!(symmetric_to_elementary(&parse(&x, "x1"), &c), Err(Error::NotSymmetric));
        assert!(symmetric_to_elementary(&parse(&x, "x1"), &Alphabet::chern("c", 3)).is_err());
    }

    #[test]
    fn exterior_sum_low_genus() {
        let s = exterior_alternating_sum_dual(1, 3).unwrap();
        assert_eq!(s, parse(&Alphabet::chern("c", 1), "c1 - 1/2*c1^2 + 1/6*c1^3"));
        for g in 1..=4 {
            let bound = (g * (g + 1) / 2) as u32;
            let s = exterior_alternating_sum_dual(g, bound).unwrap();
            assert!(s.constant_term().is_zero());
            for d in 1..g as u32 {
                assert!(s.homogeneous_part(d).is_zero(), "g = {g}, degree {d}");
            }
            let c = Alphabet::chern("c", g);
            assert_eq!(s.homogeneous_part(g as u32), GradedPolynomial::generator(&c, None, g - 1));
        }
    }

    #[test]
    fn borel_serre_small() {
        for g in 1..=3 {
            let r = borel_serre_check(g).unwrap();
            assert!(r.passed, "g = {g}: {}", r.difference);
            assert_eq!(r.difference, "0");
        }
        assert!(borel_serre_check(0).is_err());
    }

    #[test]
    fn chern_class_defaults() {
        let e = BundleClasses::universal("c", 2, Some(3));
        assert!(e.chern_class(3).is_zero());
        assert!(e.chern_class(0).constant_term().is_one());
        assert_eq!(e.representation(), Representation::ChernGenerators);
        assert_eq!(BundleClasses::formal_roots("x", 2, Some(3)).representation(), Representation::FormalRoots);
    }
}
