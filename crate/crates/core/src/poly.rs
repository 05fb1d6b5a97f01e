//! Noncommutative polynomials with exact rational coefficients.
//!
//! Terms live in a `BTreeMap` keyed by [`Word`], whose order is deg-lex, so
//! the leading term is always the last entry. Zero coefficients are never
//! stored.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::words::{parse_letter, Word, WordError};

pub type Scalar = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("the zero polynomial has no leading term")]
    Zero,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error(transparent)]
    Word(#[from] WordError),
}

/// `p/q` with `q > 0`, always written with the denominator.
pub fn scalar_string(c: &Scalar) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

pub fn scalar(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Word, Scalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    /// The unit, i.e. the empty word with coefficient 1.
    pub fn one() -> Self {
        Poly::monomial(Word::empty(), Scalar::one())
    }

    pub fn monomial(w: Word, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        Poly { terms }
    }

    pub fn word(w: Word) -> Self {
        Poly::monomial(w, Scalar::one())
    }

    /// `u - v`, the polynomial form of the relation `u = v`.
    pub fn binomial(u: Word, v: Word) -> Self {
        let mut p = Poly::word(u);
        p.add_term(v, -Scalar::one());
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, Scalar)>>(terms: I) -> Self {
        let mut p = Poly::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
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

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Terms in deg-lex ascending order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &Scalar)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn words(&self) -> impl DoubleEndedIterator<Item = &Word> {
        self.terms.keys()
    }

    /// In-place `self += c·w`, dropping the term if it cancels.
    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// In-place `self += c · a · q · b`.
    pub fn add_scaled_sandwich(&mut self, c: &Scalar, a: &Word, q: &Poly, b: &Word) {
        for (w, d) in &q.terms {
            self.add_term(w.sandwich(a, b), c * d);
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(w, d)| (w.clone(), d * c)).collect(),
        }
    }

    /// Bilinear extension of concatenation.
    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (u, c) in &self.terms {
            for (v, d) in &other.terms {
                out.add_term(u.concat(v), c * d);
            }
        }
        out
    }

    /// `a · self · b` for words `a`, `b`.
    pub fn sandwich(&self, a: &Word, b: &Word) -> Poly {
        // concatenation with fixed flanks is strictly monotone, so no merging
        Poly {
            terms: self.terms.iter().map(|(w, c)| (w.sandwich(a, b), c.clone())).collect(),
        }
    }

    pub fn left_mul(&self, a: &Word) -> Poly {
        self.sandwich(a, &Word::empty())
    }

    pub fn right_mul(&self, b: &Word) -> Poly {
        self.sandwich(&Word::empty(), b)
    }

    /// The deg-lex greatest supported word and its coefficient.
    pub fn leading(&self) -> Result<(&Word, &Scalar), PolyError> {
        self.terms.last_key_value().ok_or(PolyError::Zero)
    }

    pub fn leading_word(&self) -> Result<&Word, PolyError> {
        self.leading().map(|(w, _)| w)
    }

    /// `self` scaled so that its leading coefficient is 1.
    pub fn monic(&self) -> Result<Poly, PolyError> {
        let (_, c) = self.leading()?;
        if c.is_one() {
            return Ok(self.clone());
        }
        Ok(self.scale(&c.recip()))
    }

    pub fn is_monic(&self) -> bool {
        self.leading().map(|(_, c)| c.is_one()).unwrap_or(false)
    }

    /// Common degree of all supported words, if there is one. `None` for the
    /// zero polynomial and for inhomogeneous ones.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys();
        let d = it.next()?.degree();
        it.all(|w| w.degree() == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    /// Highest degree among supported words (0 for the zero polynomial).
    pub fn degree(&self) -> usize {
        self.terms.keys().next_back().map(Word::degree).unwrap_or(0)
    }

    pub fn max_letter(&self) -> usize {
        self.terms.keys().map(Word::max_letter).max().unwrap_or(0)
    }

    pub(crate) fn pop_leading(&mut self) -> Option<(Word, Scalar)> {
        self.terms.pop_last()
    }

    pub(crate) fn insert_fresh(&mut self, w: Word, c: Scalar) {
        debug_assert!(!c.is_zero());
        let prev = self.terms.insert(w, c);
        debug_assert!(prev.is_none());
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if w.degree() == 0 {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{a} * {w}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{self}]")
    }
}

/// Serialized as `{"terms": [{"coef": "p/q", "word": [..]}, ..]}`, leading
/// term first.
impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            coef: String,
            word: &'a Word,
        }
        let terms: Vec<Term<'_>> = self
            .terms
            .iter()
            .rev()
            .map(|(w, c)| Term {
                coef: scalar_string(c),
                word: w,
            })
            .collect();
        let mut s = serializer.serialize_struct("Poly", 2)?;
        s.serialize_field("text", &self.to_string())?;
        s.serialize_field("terms", &terms)?;
        s.end()
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Plus,
    Minus,
    Star,
    Num(Scalar),
    Letter(u8),
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>, PolyError> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |pos: usize, msg: &str| PolyError::Parse {
        pos,
        msg: msg.to_string(),
    };
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'+' => {
                out.push((i, Tok::Plus));
                i += 1;
            }
            b'-' => {
                out.push((i, Tok::Minus));
                i += 1;
            }
            b'*' => {
                out.push((i, Tok::Star));
                i += 1;
            }
            b'x' => {
                let start = i;
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let letter = parse_letter(&s[start..i]).map_err(|e| err(start, &e.to_string()))?;
                out.push((start, Tok::Letter(letter)));
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let numer: BigInt = s[start..i].parse().map_err(|_| err(start, "bad integer"))?;
                let mut value = Scalar::from_integer(numer);
                if i < bytes.len() && bytes[i] == b'/' {
                    i += 1;
                    let ds = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let denom: BigInt = s[ds..i].parse().map_err(|_| err(ds, "bad denominator"))?;
                    if denom.is_zero() {
                        return Err(err(ds, "zero denominator"));
                    }
                    value /= Scalar::from_integer(denom);
                }
                out.push((start, Tok::Num(value)));
            }
            _ => return Err(err(i, &format!("unexpected character `{}`", b as char))),
        }
    }
    Ok(out)
}

impl FromStr for Poly {
    type Err = PolyError;

    /// Signed terms `[coef *] word`, letters written `x<k>`; a lone
    /// coefficient is a multiple of the empty word; `0` is the zero
    /// polynomial.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let toks = lex(s)?;
        let end = s.len();
        let mut p = Poly::zero();
        let mut i = 0;
        let mut first = true;
        if toks.is_empty() {
            return Err(PolyError::Parse {
                pos: 0,
                msg: "empty polynomial".into(),
            });
        }
        while i < toks.len() {
            let mut sign = Scalar::one();
            match &toks[i].1 {
                Tok::Plus if !first => i += 1,
                Tok::Minus => {
                    sign = -sign;
                    i += 1;
                }
                _ if first => {}
                _ => {
                    return Err(PolyError::Parse {
                        pos: toks[i].0,
                        msg: "expected `+` or `-` between terms".into(),
                    })
                }
            }
            first = false;
            let mut coef = Scalar::one();
            let mut saw_coef = false;
            if let Some((_, Tok::Num(c))) = toks.get(i) {
                coef = c.clone();
                saw_coef = true;
                i += 1;
                if let Some((_, Tok::Star)) = toks.get(i) {
                    i += 1;
                } else {
                    // lone coefficient: constant term
                    p.add_term(Word::empty(), sign * coef);
                    continue;
                }
            }
            let mut letters = Vec::new();
            while let Some((_, Tok::Letter(l))) = toks.get(i) {
                letters.push(*l);
                i += 1;
            }
            if letters.is_empty() {
                return Err(PolyError::Parse {
                    pos: toks.get(i).map(|t| t.0).unwrap_or(end),
                    msg: if saw_coef {
                        "expected a word after `*`".into()
                    } else {
                        "expected a term".into()
                    },
                });
            }
            p.add_term(Word::from_raw(letters), sign * coef);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &[usize]) -> Word {
        Word::from_slice(s)
    }

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn add_examples() {
        assert_eq!(p("x1 - x2").add(&p("x2")), p("x1"));
        assert_eq!(p("x1 - x2").add(&Poly::zero()), p("x1 - x2"));
        assert!(p("x2 x1 - x1 x2").add(&p("x1 x2 - x2 x1")).is_zero());
    }

    #[test]
    fn mul_examples() {
        assert_eq!(p("x2").mul(&p("x1 x2 x3")), p("x2 x1 x2 x3"));
        assert_eq!(p("x2 x1 - x1 x2").mul(&p("x3")), p("x2 x1 x3 - x1 x2 x3"));
        assert_eq!(p("x2 x1 - x1 x2").right_mul(&w(&[3])), p("x2 x1 x3 - x1 x2 x3"));
        assert_eq!(Poly::one().mul(&p("x1 + 2 * x2")), p("x1 + 2 * x2"));
    }

    #[test]
    fn leading_examples() {
        let (lw, lc) = p("x2 x1 - x1 x2")
            .leading()
            .map(|(a, b)| (a.clone(), b.clone()))
            .unwrap();
        assert_eq!((lw, lc), (w(&[2, 1]), scalar(1)));
        // x2·x_ε − x_ε·x2 for n = 3
        let t2 = Poly::binomial(w(&[2, 1, 2, 3]), w(&[1, 2, 3, 2]));
        assert_eq!(t2.leading_word().unwrap(), &w(&[2, 1, 2, 3]));
        let five = Poly::monomial(w(&[1]), scalar(5));
        assert_eq!(five.leading().unwrap(), (&w(&[1]), &scalar(5)));
        assert_eq!(Poly::zero().leading(), Err(PolyError::Zero));
    }

    #[test]
    fn monic_examples() {
        assert_eq!(p("-2 * x2 x1 + 2 * x1 x2").monic().unwrap(), p("x2 x1 - x1 x2"));
        let q = p("1/3 * x1 x2 x3").monic().unwrap();
        assert_eq!(q, p("x1 x2 x3"));
        assert_eq!(q.monic().unwrap(), q);
        assert_eq!(Poly::zero().monic(), Err(PolyError::Zero));
    }

    #[test]
    fn format_and_parse() {
        assert_eq!(p("x2 x1 - x1 x2").to_string(), "x2 x1 - x1 x2");
        assert_eq!(p("1/2 * x1 x2 x3 + x2").to_string(), "1/2 * x1 x2 x3 + x2");
        assert_eq!(p("-x1 + 3").to_string(), "-x1 + 3");
        assert_eq!(p("0").to_string(), "0");
        assert_eq!(p("2/4 * x1").to_string(), "1/2 * x1");
        assert!("x1 x2 +".parse::<Poly>().is_err());
        assert!("x1 x0".parse::<Poly>().is_err());
        assert!("x1 ? x2".parse::<Poly>().is_err());
        assert!("1/0 * x1".parse::<Poly>().is_err());
        assert!("".parse::<Poly>().is_err());
        assert!("x1 x2 x1".parse::<Poly>().is_ok());
    }

    #[test]
    fn homogeneity() {
        assert_eq!(p("x2 x1 - x1 x2").homogeneous_degree(), Some(2));
        assert_eq!(p("x2 x1 - x1").homogeneous_degree(), None);
        assert!(Poly::zero().is_homogeneous());
    }

    #[test]
    fn scalar_strings() {
        assert_eq!(scalar_string(&scalar(-1)), "-1/1");
        assert_eq!(scalar_string(&(scalar(3) / scalar(6))), "1/2");
    }

    fn poly_strategy(n: u8, max_len: usize, max_terms: usize) -> impl Strategy<Value = Poly> {
        prop::collection::vec(
            (prop::collection::vec(1..=n, 0..=max_len), -3i64..=3, 1i64..=3),
            0..=max_terms,
        )
        .prop_map(|ts| {
            Poly::from_terms(
                ts.into_iter()
                    .map(|(l, a, b)| (Word::from_raw(l), scalar(a) / scalar(b))),
            )
        })
    }

    fn hom_strategy(n: u8, len: usize, max_terms: usize) -> impl Strategy<Value = Poly> {
        prop::collection::vec((prop::collection::vec(1..=n, len), -3i64..=3), 1..=max_terms)
            .prop_map(|ts| Poly::from_terms(ts.into_iter().map(|(l, a)| (Word::from_raw(l), scalar(a)))))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn ring_axioms(a in poly_strategy(3, 3, 4), b in poly_strategy(3, 3, 4), c in poly_strategy(3, 3, 4)) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.add(&b).mul(&c), a.mul(&c).add(&b.mul(&c)));
            prop_assert_eq!(Poly::one().mul(&a), a.clone());
            prop_assert_eq!(a.mul(&Poly::one()), a.clone());
            prop_assert!(a.sub(&a).is_zero());
        }

        #[test]
        fn no_zero_coefficients(a in poly_strategy(3, 3, 5), b in poly_strategy(3, 3, 5)) {
            for q in [a.add(&b), a.sub(&b), a.mul(&b)] {
                prop_assert!(q.terms().all(|(_, c)| !c.is_zero()));
            }
        }

        #[test]
        fn leading_of_product(a in poly_strategy(3, 3, 4), b in poly_strategy(3, 3, 4)) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            let prod = a.mul(&b);
            let (wa, ca) = a.leading().unwrap();
            let (wb, cb) = b.leading().unwrap();
            let (wp, cp) = prod.leading().unwrap();
            prop_assert_eq!(wp, &wa.concat(wb));
            prop_assert_eq!(cp, &(ca * cb));
        }

        #[test]
        fn homogeneous_products(a in hom_strategy(3, 2, 3), b in hom_strategy(3, 3, 3)) {
            let prod = a.mul(&b);
            if !prod.is_zero() {
                prop_assert_eq!(prod.homogeneous_degree(), Some(5));
            }
        }

        #[test]
        fn display_round_trip(a in poly_strategy(4, 4, 5)) {
            let text = a.to_string();
            let back: Poly = text.parse().unwrap();
            prop_assert_eq!(&back, &a);
            prop_assert_eq!(back.to_string(), text);
        }
    }
}
