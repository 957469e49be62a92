//! Canonical text form: `coef*gen1^e1*gen2^e2` terms in graded-lex order,
//! unit coefficients and unit exponents omitted.

use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::{Alphabet, GradedPolynomial};
use crate::error::{Error, Result};
use crate::rational::{parse_rational, Rational};

pub(super) fn render(p: &GradedPolynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let names = p.alphabet().names();
    let mut out = String::new();
    for (i, (e, c)) in p.terms().enumerate() {
        let negative = c.is_negative();
        match (i, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let magnitude = c.abs();
        let factors: Vec<String> = e
            .exponents()
            .iter()
            .zip(names)
            .filter(|(&k, _)| k > 0)
            .map(|(&k, n)| if k == 1 { n.clone() } else { format!("{n}^{k}") })
            .collect();
        if factors.is_empty() {
            out.push_str(&magnitude.to_string());
        } else {
            if !magnitude.is_one() {
                out.push_str(&magnitude.to_string());
                out.push('*');
            }
            out.push_str(&factors.join("*"));
        }
    }
    out
}

pub(super) fn parse(alphabet: &Arc<Alphabet>, bound: Option<u32>, input: &str) -> Result<GradedPolynomial> {
    let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut out = GradedPolynomial::zero(alphabet, bound);
    let mut rest = compact.as_str();
    let mut first = true;
    while !rest.is_empty() {
        let mut negative = false;
        if let Some(r) = rest.strip_prefix('+') {
            rest = r;
        } else if let Some(r) = rest.strip_prefix('-') {
            negative = true;
            rest = r;
        } else if !first {
            return Err(Error::Parse(format!("expected `+` or `-` before `{rest}`")));
        }
        first = false;
        let end = rest.find(['+', '-']).unwrap_or(rest.len());
        let (term, tail) = rest.split_at(end);
        rest = tail;
        let (exponents, mut coef) = parse_term(alphabet, term)?;
        if negative {
            coef = -coef;
        }
        out.add_term(alphabet.monomial(exponents), coef);
    }
    Ok(out)
}

fn parse_term(alphabet: &Alphabet, term: &str) -> Result<(Vec<u32>, Rational)> {
    if term.is_empty() {
        return Err(Error::Parse("empty term".into()));
    }
    let mut exponents = vec![0u32; alphabet.len()];
    let mut coef = Rational::one();
    for factor in term.split('*') {
        if factor.is_empty() {
            return Err(Error::Parse(format!("empty factor in `{term}`")));
        }
        if factor.starts_with(|c: char| c.is_ascii_digit()) {
            coef *= parse_rational(factor)?;
            continue;
        }
        let (name, power) = match factor.split_once('^') {
            Some((n, p)) => {
                let p: u32 = p.parse().map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?;
                (n, p)
            }
            None => (factor, 1),
        };
        let idx = alphabet
            .index_of(name)
            .ok_or_else(|| Error::Parse(format!("unknown generator `{name}`; expected one of {:?}", alphabet.names())))?;
        exponents[idx] += power;
    }
    if coef.is_zero() {
        exponents.iter_mut().for_each(|e| *e = 0);
    }
    Ok((exponents, coef))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn parses_grammar() {
        let a = Alphabet::chern("l", 3);
        let p = GradedPolynomial::parse(&a, None, "l1^6").unwrap();
        assert_eq!(p.coefficient(&[6, 0, 0]), frac(1, 1));
        let p = GradedPolynomial::parse(&a, None, " -1/2*l1*l1 + 3 - l2 ").unwrap();
        assert_eq!(p.to_string(), "3 - l2 - 1/2*l1^2");
        assert!(GradedPolynomial::parse(&a, None, "l4").is_err());
        assert!(GradedPolynomial::parse(&a, None, "l1^x").is_err());
        assert!(GradedPolynomial::parse(&a, None, "").is_err());
        assert!(GradedPolynomial::parse(&a, None, "l1**l2").is_err());
    }

    #[test]
    fn renders_zero_and_constants() {
        let a = Alphabet::chern("l", 2);
        assert_eq!(GradedPolynomial::zero(&a, None).to_string(), "0");
        assert_eq!(GradedPolynomial::constant(&a, None, frac(-3, 4)).to_string(), "-3/4");
        assert_eq!(GradedPolynomial::parse(&a, None, "16*l1*l2").unwrap().to_string(), "16*l1*l2");
    }
}
