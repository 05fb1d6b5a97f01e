//! Presentation files.
//!
//! ```text
//! # comment
//! gens: 3
//! rel: x3 x1 x2 = x1 x2 x3
//! rel: x2 x1 - x1 x2
//! ```
//!
//! A relation is either `word = word` or a single polynomial. Either side of
//! a word relation may be empty (the identity).

use gsb_core::poly::Poly;
use gsb_core::words::Word;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("duplicate `gens` line")]
    DuplicateGens,
    #[error("missing `gens` line before relations")]
    MissingGens,
    #[error("generator count must be a positive integer")]
    BadGens,
    #[error("generator x{letter} out of range 1..={n}")]
    UnknownGenerator { letter: usize, n: usize },
    #[error("malformed relation: {0}")]
    MalformedRelation(String),
    #[error("expected `gens:` or `rel:`")]
    UnknownDirective,
    #[error("no relations")]
    NoRelations,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Relation {
    Words(Word, Word),
    Poly(Poly),
}

impl Relation {
    pub fn to_poly(&self) -> Poly {
        match self {
            Relation::Words(u, v) => Poly::binomial(u.clone(), v.clone()),
            Relation::Poly(p) => p.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentationFile {
    pub gens: usize,
    pub relations: Vec<Relation>,
}

impl PresentationFile {
    /// Nonzero relation polynomials. Relations of the form `u = u` vanish.
    pub fn polys(&self) -> Vec<Poly> {
        self.relations
            .iter()
            .map(Relation::to_poly)
            .filter(|p| !p.is_zero())
            .collect()
    }
}

pub fn parse_presentation(text: &str) -> Result<PresentationFile, ParseError> {
    let mut gens: Option<usize> = None;
    let mut relations = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.split('#').next().unwrap_or("");
        let trimmed = line.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let indent = line.len() - trimmed.len();
        let err = |col: usize, kind| ParseError {
            line: line_no,
            col: col + 1,
            kind,
        };

        if let Some(rest) = trimmed.strip_prefix("gens:") {
            if gens.is_some() {
                return Err(err(indent, ParseErrorKind::DuplicateGens));
            }
            let n: usize = rest
                .trim()
                .parse()
                .map_err(|_| err(indent + 5, ParseErrorKind::BadGens))?;
            if n == 0 || n > gsb_core::words::MAX_GENERATORS {
                return Err(err(indent + 5, ParseErrorKind::BadGens));
            }
            gens = Some(n);
        } else if let Some(rest) = trimmed.strip_prefix("rel:") {
            let n = gens.ok_or_else(|| err(indent, ParseErrorKind::MissingGens))?;
            let body_col = indent + 4;
            let rel = parse_relation(rest).map_err(|m| err(body_col, ParseErrorKind::MalformedRelation(m)))?;
            let max = match &rel {
                Relation::Words(u, v) => u.max_letter().max(v.max_letter()),
                Relation::Poly(p) => p.max_letter(),
            };
            if max > n {
                return Err(err(body_col, ParseErrorKind::UnknownGenerator { letter: max, n }));
            }
            relations.push(rel);
        } else {
            return Err(err(indent, ParseErrorKind::UnknownDirective));
        }
    }

    let gens = gens.ok_or(ParseError {
        line: last_line.max(1),
        col: 1,
        kind: ParseErrorKind::MissingGens,
    })?;
    if relations.is_empty() {
        return Err(ParseError {
            line: last_line.max(1),
            col: 1,
            kind: ParseErrorKind::NoRelations,
        });
    }
    Ok(PresentationFile { gens, relations })
}

fn parse_relation(body: &str) -> Result<Relation, String> {
    let parts: Vec<&str> = body.split('=').collect();
    match parts.as_slice() {
        [lhs, rhs] => {
            let u: Word = lhs.parse().map_err(|e| format!("left side: {e}"))?;
            let v: Word = rhs.parse().map_err(|e| format!("right side: {e}"))?;
            if u.degree() == 0 && v.degree() == 0 {
                return Err("both sides empty".into());
            }
            Ok(Relation::Words(u, v))
        }
        [single] => {
            let p = single.parse::<Poly>().map_err(|e| e.to_string())?;
            if p.is_zero() {
                return Err("zero polynomial".into());
            }
            Ok(Relation::Poly(p))
        }
        _ => Err("more than one `=`".into()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_presentations() {
        let p = parse_presentation("gens: 2\nrel: x2 x1 = x1 x2").unwrap();
        assert_eq!(p.gens, 2);
        assert_eq!(p.relations.len(), 1);
        assert_eq!(p.polys()[0], "x2 x1 - x1 x2".parse::<Poly>().unwrap());

        let p = parse_presentation("gens: 3\nrel: x3 x1 x2 = x1 x2 x3").unwrap();
        assert_eq!(p.gens, 3);

        let p = parse_presentation("# c\n\ngens: 3  # three\nrel: 3 1 2 = 1 2 3\nrel: x2 x1 - x1 x2\n").unwrap();
        assert_eq!(p.relations.len(), 2);
        assert!(matches!(p.relations[1], Relation::Poly(_)));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_presentation("gens: 2\nrel: x3 = x1").unwrap_err();
        assert_eq!(e.line, 2);
        assert_eq!(e.kind, ParseErrorKind::UnknownGenerator { letter: 3, n: 2 });

        let e = parse_presentation("gens: 2\ngens: 3\nrel: x1 = x2").unwrap_err();
        assert_eq!((e.line, e.kind), (2, ParseErrorKind::DuplicateGens));

        let e = parse_presentation("rel: x1 = x2").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::MissingGens);

        let e = parse_presentation("gens: 2\nrel: x1 = x2 = x1").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::MalformedRelation(_)));

        let e = parse_presentation("gens: 2\nrel: x1 ? x2").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::MalformedRelation(_)));

        let e = parse_presentation("gens: 2\n  relation: x1").unwrap_err();
        assert_eq!((e.line, e.col, e.kind), (2, 3, ParseErrorKind::UnknownDirective));

        assert_eq!(
            parse_presentation("gens: 2\n").unwrap_err().kind,
            ParseErrorKind::NoRelations
        );
        assert_eq!(
            parse_presentation("gens: 0\nrel: x1 =").unwrap_err().kind,
            ParseErrorKind::BadGens
        );
    }

    #[test]
    fn identity_sides() {
        let p = parse_presentation("gens: 1\nrel: x1 x1 =").unwrap();
        assert_eq!(
            p.relations[0],
            Relation::Words(Word::from_slice(&[1, 1]), Word::empty())
        );
    }
}
