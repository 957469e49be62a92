//! The tautological ring `R_g = Q[lambda_1..lambda_g] / (c(E) c(E^vee) - 1)`.
//!
//! Normal forms come from exact row reduction, one degree at a time. In each
//! degree the span of `m * rel_{2k}` is reduced with the non-square-free
//! monomials as pivots; the ring is accepted only if every remaining row
//! vanishes, i.e. the square-free monomials form a basis of the quotient.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graded::{Alphabet, ExponentVector, GradedPolynomial};
use crate::linalg::Matrix;
use crate::rational::{sign, Rational};

pub const DEFAULT_MAX_GENUS: u32 = 8;

/// A subset of `{1..g}` stored as a bitmask (bit `i-1` for `lambda_i`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subset(u32);

impl Subset {
    pub fn from_indices(indices: impl IntoIterator<Item = u32>) -> Self {
        Subset(indices.into_iter().fold(0, |acc, i| acc | 1 << (i - 1)))
    }

    pub fn full(g: u32) -> Self {
        Subset(if g == 0 { 0 } else { u32::MAX >> (32 - g) })
    }

    pub fn empty() -> Self {
        Subset(0)
    }

    pub fn indices(self) -> Vec<u32> {
        (1..=32).filter(|i| self.0 >> (i - 1) & 1 == 1).collect()
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// `sum_{i in alpha} i`, the degree of `lambda_alpha`.
    pub fn degree(self) -> u32 {
        self.indices().iter().sum()
    }

    fn exponents(self, g: u32) -> Vec<u32> {
        (1..=g).map(|i| self.0 >> (i - 1) & 1).collect()
    }

    fn from_exponents(e: &[u32]) -> Self {
        Subset(e.iter().enumerate().fold(0, |acc, (i, &x)| if x > 0 { acc | 1 << i } else { acc }))
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices().iter().map(u32::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Coordinates in the square-free basis `lambda_alpha`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TautRingElement {
    coordinates: BTreeMap<Subset, Rational>,
}

impl TautRingElement {
    pub fn coordinate(&self, alpha: Subset) -> Rational {
        self.coordinates.get(&alpha).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coordinates(&self) -> impl Iterator<Item = (&Subset, &Rational)> {
        self.coordinates.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coordinates.is_empty()
    }

    fn add_scaled(&mut self, alpha: Subset, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.coordinates.entry(alpha).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coordinates.remove(&alpha);
        }
    }

    pub fn to_polynomial(&self, ring: &TautRing) -> GradedPolynomial {
        GradedPolynomial::from_terms(
            &ring.alphabet,
            None,
            self.coordinates.iter().map(|(a, c)| (a.exponents(ring.genus), c.clone())),
        )
    }
}

/// The ring `R_g` with precomputed per-degree reduction tables.
#[derive(Debug, Clone)]
pub struct TautRing {
    genus: u32,
    socle_degree: u32,
    alphabet: Arc<Alphabet>,
    relations: Vec<GradedPolynomial>,
    /// basis[d] lists the square-free subsets of degree d, sorted.
    basis: Vec<Vec<Subset>>,
    /// Normal forms of the monomials that are not square-free.
    reductions: HashMap<Vec<u32>, TautRingElement>,
}

impl TautRing {
    pub fn build(g: u32) -> Result<Self> {
        Self::build_with_max(g, DEFAULT_MAX_GENUS)
    }

    pub fn build_with_max(g: u32, max_genus: u32) -> Result<Self> {
        if g == 0 {
            return Err(Error::GenusZero(g));
        }
        if g > max_genus {
            return Err(Error::GenusTooLarge { genus: g, max: max_genus });
        }
        let socle = g * (g + 1) / 2;
        let alphabet = Alphabet::chern("l", g as usize);
        // rel_{2g} sits above the socle degree for g <= 2, so build the relation untruncated
        let bound = None;
        let lambda = |i: u32| -> GradedPolynomial {
            if i == 0 {
                GradedPolynomial::one(&alphabet, bound)
            } else {
                GradedPolynomial::generator(&alphabet, bound, i as usize - 1)
            }
        };
        let total: GradedPolynomial = (0..=g).fold(GradedPolynomial::zero(&alphabet, bound), |acc, i| &acc + &lambda(i));
        let total_dual = (0..=g).fold(GradedPolynomial::zero(&alphabet, bound), |acc, i| &acc + &lambda(i).scale(&sign(i)));
        let relation = &(&total * &total_dual) - &GradedPolynomial::one(&alphabet, bound);
        let relations: Vec<GradedPolynomial> = (1..=g).map(|k| relation.homogeneous_part(2 * k)).collect();

        let mut basis = Vec::with_capacity(socle as usize + 1);
        let mut reductions = HashMap::new();
        for d in 0..=socle {
            let (sqfree, reduced) = reduce_degree(&alphabet, &relations, d)?;
            basis.push(sqfree);
            reductions.extend(reduced);
        }
        Ok(TautRing { genus: g, socle_degree: socle, alphabet, relations, basis, reductions })
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn socle_degree(&self) -> u32 {
        self.socle_degree
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    /// `rel_2, rel_4, ..., rel_{2g}`.
    pub fn relations(&self) -> &[GradedPolynomial] {
        &self.relations
    }

    pub fn basis(&self, degree: u32) -> &[Subset] {
        self.basis.get(degree as usize).map_or(&[], Vec::as_slice)
    }

    pub fn dimension_profile(&self) -> Vec<usize> {
        self.basis.iter().map(Vec::len).collect()
    }

    /// `lambda_1 ... lambda_g`, the chosen socle generator.
    pub fn socle_generator(&self) -> Subset {
        Subset::full(self.genus)
    }

    pub fn polynomial(&self, text: &str) -> Result<GradedPolynomial> {
        GradedPolynomial::parse(&self.alphabet, None, text)
    }

    pub fn normal_form(&self, p: &GradedPolynomial) -> Result<TautRingElement> {
        if p.alphabet().weights() != self.alphabet.weights() {
            return Err(Error::IncompatibleAlphabet(format!("expected generators {:?}", self.alphabet.names())));
        }
        let mut out = TautRingElement::default();
        for (e, c) in p.terms() {
            self.accumulate(&mut out, e, c);
        }
        Ok(out)
    }

    fn accumulate(&self, out: &mut TautRingElement, e: &ExponentVector, c: &Rational) {
        if e.degree() > self.socle_degree {
            return;
        }
        if e.is_square_free() {
            out.add_scaled(Subset::from_exponents(e.exponents()), c.clone());
        } else {
            let nf = &self.reductions[e.exponents()];
            for (alpha, x) in &nf.coordinates {
                out.add_scaled(*alpha, x * c);
            }
        }
    }

    /// The `q` with `normal_form(p) = q * lambda_1 ... lambda_g`; `p` must be
    /// homogeneous of the socle degree.
    pub fn socle_ratio(&self, p: &GradedPolynomial) -> Result<Rational> {
        if !p.is_homogeneous_of(self.socle_degree) {
            return Err(Error::WrongDegree { expected: self.socle_degree });
        }
        Ok(self.normal_form(p)?.coordinate(self.socle_generator()))
    }

    fn monomial_of(&self, alpha: Subset, beta: Subset) -> GradedPolynomial {
        let e: Vec<u32> = alpha.exponents(self.genus).iter().zip(beta.exponents(self.genus)).map(|(a, b)| a + b).collect();
        GradedPolynomial::monomial(&self.alphabet, None, e, Rational::one())
    }

    /// `M[i][j] = socle_ratio(b_i b'_j)` over the degree-`d` and degree-`(D-d)` bases.
    pub fn pairing_matrix(&self, d: u32) -> Result<Matrix> {
        if d > self.socle_degree {
            return Err(Error::IndexOutOfRange { index: d, max: self.socle_degree });
        }
        let rows = self.basis(d);
        let cols = self.basis(self.socle_degree - d);
        let mut entries = Vec::with_capacity(rows.len());
        for &a in rows {
            let mut row = Vec::with_capacity(cols.len());
            for &b in cols {
                row.push(self.socle_ratio(&self.monomial_of(a, b))?);
            }
            entries.push(row);
        }
        Ok(Matrix::new(entries))
    }

    /// Structural checks: dimensions, palindromy, the socle, `lambda_g^2 = 0`,
    /// the relation itself and nondegeneracy of every pairing.
    pub fn structure_report(&self) -> Result<RingReport> {
        let profile = self.dimension_profile();
        let total: usize = profile.iter().sum();
        let palindromic = profile.iter().eq(profile.iter().rev());
        let top_one_dimensional = profile.last() == Some(&1) && self.basis(self.socle_degree) == [self.socle_generator()];
        let g = self.genus as usize;
        let lambda_g = GradedPolynomial::generator(&self.alphabet, None, g - 1);
        let lambda_g_squared_zero = self.normal_form(&lambda_g.pow(2))?.is_zero();
        let total_class = (0..g).fold(GradedPolynomial::one(&self.alphabet, None), |acc, i| {
            &acc + &GradedPolynomial::generator(&self.alphabet, None, i)
        });
        let dual_class = (0..g).fold(GradedPolynomial::one(&self.alphabet, None), |acc, i| {
            &acc + &GradedPolynomial::generator(&self.alphabet, None, i).scale(&sign(i as u32 + 1))
        });
        let product = self.normal_form(&(&total_class * &dual_class))?;
        let relation_reduces_to_one = product == self.normal_form(&GradedPolynomial::one(&self.alphabet, None))?;
        let mut pairing_nonsingular = true;
        for d in 0..=self.socle_degree {
            if self.pairing_matrix(d)?.determinant().is_zero() {
                pairing_nonsingular = false;
            }
        }
        let passed = total == 1 << g
            && palindromic
            && top_one_dimensional
            && lambda_g_squared_zero
            && relation_reduces_to_one
            && pairing_nonsingular;
        Ok(RingReport {
            g: self.genus,
            socle_degree: self.socle_degree,
            dimension_profile: profile,
            total_dimension: total,
            palindromic,
            top_one_dimensional,
            lambda_g_squared_zero,
            relation_reduces_to_one,
            pairing_nonsingular,
            passed,
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RingReport {
    pub g: u32,
    pub socle_degree: u32,
    pub dimension_profile: Vec<usize>,
    pub total_dimension: usize,
    pub palindromic: bool,
    pub top_one_dimensional: bool,
    pub lambda_g_squared_zero: bool,
    pub relation_reduces_to_one: bool,
    pub pairing_nonsingular: bool,
    pub passed: bool,
}

/// `sum_i e_i * i^2`. Every relation row `m * rel_{2k}` has `m * lambda_k^2`
/// as its unique term of least weight, which makes the pivot rows triangular.
fn weight(e: &[u32]) -> u64 {
    e.iter().enumerate().map(|(i, &x)| x as u64 * (i as u64 + 1).pow(2)).sum()
}

fn shifted_row(rel: &GradedPolynomial, m: &[u32]) -> Vec<(Vec<u32>, Rational)> {
    rel.terms().map(|(e, c)| (e.exponents().iter().zip(m).map(|(a, b)| a + b).collect(), c.clone())).collect()
}

/// Row-reduces the degree-`d` part of the relation ideal. Returns the
/// square-free basis of the quotient and the normal form of every other
/// monomial of degree `d`.
///
/// Each non-square-free monomial `M` gets the pivot row `(M / lambda_k^2) * rel_{2k}`
/// for the first `k` with `e_k >= 2`; these are eliminated in order of
/// decreasing weight. Every row of the span is then reduced against the
/// pivots and must vanish, otherwise the square-free monomials are dependent.
fn reduce_degree(
    alphabet: &Arc<Alphabet>,
    relations: &[GradedPolynomial],
    d: u32,
) -> Result<(Vec<Subset>, Vec<(Vec<u32>, TautRingElement)>)> {
    let monomials = alphabet.monomials_of_degree(d);
    let (mut pivots, sqfree): (Vec<_>, Vec<_>) =
        monomials.into_iter().map(|m| m.exponents().to_vec()).partition(|e| e.iter().any(|&x| x > 1));
    pivots.sort_by(|a, b| weight(b).cmp(&weight(a)).then_with(|| a.cmp(b)));
    let mut sqfree_subsets: Vec<Subset> = sqfree.iter().map(|e| Subset::from_exponents(e)).collect();
    sqfree_subsets.sort();

    let mut nf: HashMap<Vec<u32>, TautRingElement> = HashMap::with_capacity(pivots.len());
    for target in &pivots {
        let k = target.iter().position(|&x| x > 1).expect("not square-free");
        let mut m = target.clone();
        m[k] -= 2;
        let mut lead = Rational::zero();
        let mut rest = TautRingElement::default();
        for (e, c) in shifted_row(&relations[k], &m) {
            if &e == target {
                lead += c;
            } else if !e.iter().any(|&x| x > 1) {
                rest.add_scaled(Subset::from_exponents(&e), c);
            } else if let Some(r) = nf.get(&e).filter(|_| weight(&e) > weight(target)) {
                for (alpha, x) in &r.coordinates {
                    rest.add_scaled(*alpha, x * &c);
                }
            } else {
                return Err(Error::BasisSelection {
                    degree: d,
                    reason: format!("pivot row for {target:?} is not triangular at {e:?}"),
                });
            }
        }
        if lead.is_zero() {
            return Err(Error::BasisSelection { degree: d, reason: format!("no pivot for monomial {target:?}") });
        }
        let scale = -Rational::one() / lead;
        let mut r = TautRingElement::default();
        for (alpha, x) in rest.coordinates {
            r.add_scaled(alpha, x * &scale);
        }
        nf.insert(target.clone(), r);
    }

    for (k, rel) in relations.iter().enumerate() {
        let rel_degree = 2 * (k as u32 + 1);
        if rel_degree > d {
            break;
        }
        for m in alphabet.monomials_of_degree(d - rel_degree) {
            let mut residual = TautRingElement::default();
            for (e, c) in shifted_row(rel, m.exponents()) {
                match nf.get(&e) {
                    Some(r) => r.coordinates.iter().for_each(|(alpha, x)| residual.add_scaled(*alpha, x * &c)),
                    None => residual.add_scaled(Subset::from_exponents(&e), c),
                }
            }
            if !residual.is_zero() {
                return Err(Error::BasisSelection {
                    degree: d,
                    reason: "relations impose a dependency among square-free monomials".into(),
                });
            }
        }
    }
    Ok((sqfree_subsets, nf.into_iter().collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn ring(g: u32) -> TautRing {
        TautRing::build(g).unwrap()
    }

    #[test]
    fn relation_components() {
        assert_eq!(ring(1).relations()[0].to_string(), "-l1^2");
        let r2 = ring(2);
        assert_eq!(r2.relations()[0], r2.polynomial("2*l2 - l1^2").unwrap());
        assert_eq!(r2.relations()[1], r2.polynomial("l2^2").unwrap());
        let r3 = ring(3);
        assert_eq!(r3.relations()[0], r3.polynomial("2*l2 - l1^2").unwrap());
        assert_eq!(r3.relations()[1], r3.polynomial("l2^2 - 2*l1*l3").unwrap());
        assert_eq!(r3.relations()[2], r3.polynomial("-l3^2").unwrap());
    }

    #[test]
    fn dimension_profiles() {
        assert_eq!(ring(1).dimension_profile(), vec![1, 1]);
        assert_eq!(ring(2).dimension_profile(), vec![1, 1, 1, 1]);
        assert_eq!(ring(3).dimension_profile(), vec![1, 1, 1, 2, 1, 1, 1]);
        assert_eq!(ring(2).basis(3), &[Subset::from_indices([1, 2])]);
    }

    #[test]
    fn hand_reductions() {
        let r2 = ring(2);
        let nf = r2.normal_form(&r2.polynomial("l1^2").unwrap()).unwrap();
        assert_eq!(nf.to_polynomial(&r2).to_string(), "2*l2");
        let nf = r2.normal_form(&r2.polynomial("l1^3").unwrap()).unwrap();
        assert_eq!(nf.to_polynomial(&r2).to_string(), "2*l1*l2");
        let r3 = ring(3);
        let nf = r3.normal_form(&r3.polynomial("l1^6").unwrap()).unwrap();
        assert_eq!(nf.to_polynomial(&r3).to_string(), "16*l1*l2*l3");
    }

    #[test]
    fn socle_ratios() {
        assert_eq!(ring(2).socle_ratio(&ring(2).polynomial("l1^3").unwrap()).unwrap(), int(2));
        let r3 = ring(3);
        assert_eq!(r3.socle_ratio(&r3.polynomial("l1^6").unwrap()).unwrap(), int(16));
        let r4 = ring(4);
        assert_eq!(r4.socle_ratio(&r4.polynomial("l4*l3*l1^3").unwrap()).unwrap(), int(2));
        assert_eq!(r3.socle_ratio(&r3.polynomial("l1^5").unwrap()), Err(Error::WrongDegree { expected: 6 }));
        assert!(r3.socle_ratio(&r3.polynomial("l1^6 + l1").unwrap()).is_err());
    }

    #[test]
    fn degree_above_socle_vanishes() {
        let r2 = ring(2);
        assert!(r2.normal_form(&r2.polynomial("l1^4 + l2^3").unwrap()).unwrap().is_zero());
    }

    #[test]
    fn pairing_matrices() {
        let r2 = ring(2);
        let m = r2.pairing_matrix(0).unwrap();
        assert_eq!(m.rows(), 1);
        assert_eq!(m.get(0, 0), &int(1));
        let r3 = ring(3);
        let m = r3.pairing_matrix(3).unwrap();
        assert_eq!((m.rows(), m.cols()), (2, 2));
        assert!(!m.determinant().is_zero());
        assert!(r3.pairing_matrix(7).is_err());
    }

    #[test]
    fn normal_form_is_idempotent() {
        let r3 = ring(3);
        let p = r3.polynomial("l1^4 - 3*l2*l1^2 + 1/2*l3*l2 + l1 + 7").unwrap();
        let nf = r3.normal_form(&p).unwrap();
        assert_eq!(r3.normal_form(&nf.to_polynomial(&r3)).unwrap(), nf);
    }

    #[test]
    fn structure_up_to_five() {
        for g in 1..=5 {
            let report = ring(g).structure_report().unwrap();
            assert!(report.passed, "{report:?}");
            assert_eq!(report.total_dimension, 1 << g);
        }
    }

    #[test]
    fn genus_limits() {
        assert_eq!(TautRing::build(0).unwrap_err(), Error::GenusZero(0));
        assert_eq!(TautRing::build(9).unwrap_err(), Error::GenusTooLarge { genus: 9, max: 8 });
        assert!(TautRing::build_with_max(3, 2).is_err());
    }

    #[test]
    fn subsets() {
        let s = Subset::from_indices([2, 3]);
        assert_eq!(s.indices(), vec![2, 3]);
        assert_eq!(s.degree(), 5);
        assert_eq!(s.to_string(), "{2,3}");
        assert_eq!(Subset::full(3), Subset::from_indices([1, 2, 3]));
        assert!(Subset::empty().is_empty());
    }
}
