//! Ambiguities between rules, their compositions, and triviality checks.
//!
//! For rules `f`, `g` with leading words `F`, `G`:
//!
//! * intersection: `w = F·b = a·G` with `a`, `b` nonempty; composition
//!   `f·b − a·g`;
//! * inclusion: `w = F = a·G·b` with `f ≠ g`; composition `f − a·g·b`.
//!
//! A composition is trivial when it reduces to zero; for homogeneous rules
//! every word it supports lies strictly below `w`, and so does every word the
//! reduction touches.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::poly::Poly;
use crate::rewrite::{normal_form, Basis, ReductionTrace, RuleId};
use crate::words::{find_factor_occurrences, proper_overlaps, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComposeError {
    #[error("ambiguity refers to rule {0}, which is not in the basis")]
    UnknownRule(RuleId),
    #[error("ambiguity word does not match the rules' leading words")]
    StaleAmbiguity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AmbiguityKind {
    Intersection,
    Inclusion,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Ambiguity {
    pub kind: AmbiguityKind,
    pub f: RuleId,
    pub g: RuleId,
    pub w: Word,
    pub a: Word,
    pub b: Word,
}

impl Ambiguity {
    fn sort_key(&self) -> (&Word, RuleId, RuleId, usize, AmbiguityKind) {
        (&self.w, self.f, self.g, self.a.degree(), self.kind)
    }

    /// Checks the defining equations against `basis`.
    pub fn validate(&self, basis: &Basis) -> Result<(), ComposeError> {
        let f = basis.rule(self.f).ok_or(ComposeError::UnknownRule(self.f))?;
        let g = basis.rule(self.g).ok_or(ComposeError::UnknownRule(self.g))?;
        let ok = match self.kind {
            AmbiguityKind::Intersection => {
                !self.a.is_empty()
                    && !self.b.is_empty()
                    && f.lead.concat(&self.b) == self.w
                    && self.a.concat(&g.lead) == self.w
                    && f.lead.degree() + g.lead.degree() > self.w.degree()
            }
            AmbiguityKind::Inclusion => {
                self.f != self.g && f.lead == self.w && g.lead.sandwich(&self.a, &self.b) == self.w
            }
        };
        if ok {
            Ok(())
        } else {
            Err(ComposeError::StaleAmbiguity)
        }
    }
}

impl Ord for Ambiguity {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for Ambiguity {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct AmbiguitySet {
    pub ambiguities: Vec<Ambiguity>,
    /// Ambiguities whose word exceeds the degree bound.
    pub skipped: usize,
}

/// All ambiguities between rule pairs with `f` or `g` satisfying `involves`,
/// and `|w| <= bound`.
pub(crate) fn enumerate_filtered(
    basis: &Basis,
    bound: usize,
    involves: impl Fn(RuleId, RuleId) -> bool + Sync,
) -> AmbiguitySet {
    let rules = basis.rules();
    let per_f: Vec<(Vec<Ambiguity>, usize)> = rules
        .par_iter()
        .map(|f| {
            let mut found = Vec::new();
            let mut skipped = 0;
            for g in rules {
                if !involves(f.id, g.id) {
                    continue;
                }
                for k in proper_overlaps(&f.lead, &g.lead) {
                    let wlen = f.lead.degree() + g.lead.degree() - k;
                    if wlen > bound {
                        skipped += 1;
                        continue;
                    }
                    let b = g.lead.slice(k, g.lead.degree());
                    let w = f.lead.concat(&b);
                    let a = w.slice(0, wlen - g.lead.degree());
                    found.push(Ambiguity {
                        kind: AmbiguityKind::Intersection,
                        f: f.id,
                        g: g.id,
                        w,
                        a,
                        b,
                    });
                }
                if f.id != g.id && g.lead.degree() <= f.lead.degree() {
                    let offsets = find_factor_occurrences(&g.lead, &f.lead).expect("nonempty lead");
                    for off in offsets {
                        if f.lead.degree() > bound {
                            skipped += 1;
                            continue;
                        }
                        found.push(Ambiguity {
                            kind: AmbiguityKind::Inclusion,
                            f: f.id,
                            g: g.id,
                            w: f.lead.clone(),
                            a: f.lead.slice(0, off),
                            b: f.lead.slice(off + g.lead.degree(), f.lead.degree()),
                        });
                    }
                }
            }
            (found, skipped)
        })
        .collect();
    let mut out = AmbiguitySet::default();
    for (found, skipped) in per_f {
        out.ambiguities.extend(found);
        out.skipped += skipped;
    }
    out.ambiguities.sort();
    out
}

/// Every intersection (all ordered pairs, self-pairs included, all proper
/// overlaps) and inclusion ambiguity with `|w| <= bound`, sorted by `w`
/// (deg-lex), then `f`, `g`, offset. Ambiguities beyond the bound are only
/// counted.
pub fn enumerate_ambiguities(basis: &Basis, bound: usize) -> AmbiguitySet {
    enumerate_filtered(basis, bound, |_, _| true)
}

/// `f·b − a·g` for an intersection, `f − a·g·b` for an inclusion.
pub fn composition_poly(amb: &Ambiguity, basis: &Basis) -> Result<Poly, ComposeError> {
    amb.validate(basis)?;
    let f = &basis.rules()[amb.f].poly;
    let g = &basis.rules()[amb.g].poly;
    Ok(match amb.kind {
        AmbiguityKind::Intersection => f.right_mul(&amb.b).sub(&g.left_mul(&amb.a)),
        AmbiguityKind::Inclusion => f.sub(&g.sandwich(&amb.a, &amb.b)),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompositionResult {
    pub ambiguity: Ambiguity,
    pub composition: Poly,
    pub remainder: Poly,
    pub trivial: bool,
    /// Every word of the composition and every word rewritten while reducing
    /// it is strictly below `w`.
    pub below_w: bool,
    /// Degree of the composition when homogeneous.
    pub degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<ReductionTrace>,
}

/// Reduces the composition of `amb` modulo `basis`.
pub fn check_trivial(amb: &Ambiguity, basis: &Basis) -> Result<CompositionResult, ComposeError> {
    check_trivial_with(amb, basis, true)
}

pub(crate) fn check_trivial_with(
    amb: &Ambiguity,
    basis: &Basis,
    keep_trace: bool,
) -> Result<CompositionResult, ComposeError> {
    let composition = composition_poly(amb, basis)?;
    let (remainder, trace) = normal_form(&composition, basis, true);
    let trace = trace.expect("trace requested");
    let below_w = composition.words().all(|x| x < &amb.w) && trace.max_rewritten_word().is_none_or(|x| x < &amb.w);
    Ok(CompositionResult {
        ambiguity: amb.clone(),
        degree: composition.homogeneous_degree(),
        trivial: remainder.is_zero(),
        composition,
        remainder,
        below_w,
        trace: keep_trace.then_some(trace),
    })
}

/// Checks every ambiguity in parallel on the current rayon pool. Results come
/// back in input order. Traces are dropped for trivial compositions.
pub fn check_all(ambs: &[Ambiguity], basis: &Basis) -> Result<Vec<CompositionResult>, ComposeError> {
    ambs.par_iter()
        .map(|a| {
            let mut r = check_trivial_with(a, basis, true)?;
            if r.trivial {
                r.trace = None;
            }
            Ok(r)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::build_basis;
    use crate::words::all_words;

    fn w(s: &[usize]) -> Word {
        Word::from_slice(s)
    }

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn single_commutator_has_no_ambiguities() {
        let b = build_basis(&[p("x2 x1 - x1 x2")]).unwrap();
        let set = enumerate_ambiguities(&b, 8);
        assert!(set.ambiguities.is_empty());
        assert_eq!(set.skipped, 0);
    }

    #[test]
    fn type_one_pair_overlap() {
        let b = build_basis(&[p("x2 x1 x3 - x1 x2 x3"), p("x3 x2 x1 - x1 x2 x3")]).unwrap();
        let set = enumerate_ambiguities(&b, 8);
        let fg: Vec<&Ambiguity> = set.ambiguities.iter().filter(|a| a.f == 0 && a.g == 1).collect();
        assert_eq!(fg.len(), 1);
        assert_eq!(fg[0].w, w(&[2, 1, 3, 2, 1]));
        assert_eq!(fg[0].kind, AmbiguityKind::Intersection);
        assert_eq!(fg[0].a, w(&[2, 1]));
        assert_eq!(fg[0].b, w(&[2, 1]));

        let comp = composition_poly(fg[0], &b).unwrap();
        assert_eq!(comp, p("-x1 x2 x3 x2 x1 + x2 x1 x1 x2 x3"));
        assert!(comp.words().all(|x| x < &fg[0].w));
        assert_eq!(comp.homogeneous_degree(), Some(5));
    }

    #[test]
    fn inclusion_and_self_overlap() {
        let b = build_basis(&[p("x1 x1 x1 - x2"), p("x1 x1 - x2")]).unwrap();
        let set = enumerate_ambiguities(&b, 10);
        let kinds: Vec<(AmbiguityKind, RuleId, RuleId, usize)> = set
            .ambiguities
            .iter()
            .map(|a| (a.kind, a.f, a.g, a.a.degree()))
            .collect();
        // inclusions of x1x1 in x1x1x1 at offsets 0 and 1; no self-inclusion
        assert!(kinds.contains(&(AmbiguityKind::Inclusion, 0, 1, 0)));
        assert!(kinds.contains(&(AmbiguityKind::Inclusion, 0, 1, 1)));
        assert!(!kinds.iter().any(|k| k.0 == AmbiguityKind::Inclusion && k.1 == k.2));
        // self-overlaps of x1x1x1 at k = 1, 2
        assert_eq!(
            kinds
                .iter()
                .filter(|k| k.0 == AmbiguityKind::Intersection && k.1 == 0 && k.2 == 0)
                .count(),
            2
        );
        for a in &set.ambiguities {
            a.validate(&b).unwrap();
        }
    }

    #[test]
    fn bound_skips_are_counted() {
        let b = build_basis(&[p("x2 x1 x3 - x1 x2 x3"), p("x3 x2 x1 - x1 x2 x3")]).unwrap();
        let all = enumerate_ambiguities(&b, 100);
        // shortest overlap word is x3 x2 x1 x3 (length 4)
        let cut = enumerate_ambiguities(&b, 3);
        assert!(cut.ambiguities.is_empty());
        assert_eq!(cut.skipped, all.ambiguities.len());
    }

    #[test]
    fn stale_references_rejected() {
        let b = build_basis(&[p("x2 x1 x3 - x1 x2 x3"), p("x3 x2 x1 - x1 x2 x3")]).unwrap();
        let mut amb = enumerate_ambiguities(&b, 8).ambiguities[0].clone();
        amb.g = 7;
        assert_eq!(composition_poly(&amb, &b), Err(ComposeError::UnknownRule(7)));
        amb.g = amb.f;
        amb.w = w(&[1, 1, 1, 1, 1]);
        assert_eq!(composition_poly(&amb, &b), Err(ComposeError::StaleAmbiguity));
    }

    #[test]
    fn missing_rule_gives_nontrivial_remainder() {
        let b = build_basis(&[p("x2 x1 x3 - x1 x2 x3"), p("x3 x2 x1 - x1 x2 x3")]).unwrap();
        let amb = enumerate_ambiguities(&b, 8)
            .ambiguities
            .into_iter()
            .find(|a| a.f == 0 && a.g == 1)
            .unwrap();
        let r = check_trivial(&amb, &b).unwrap();
        assert!(!r.trivial);
        assert!(!r.remainder.is_zero());
        assert!(r.below_w);
        let trace = r.trace.unwrap();
        assert_eq!(trace.replay(&r.composition, &b), r.remainder);
    }

    /// Brute force: scan all words `w` up to the bound and test the defining
    /// equations directly.
    fn brute_force(basis: &Basis, bound: usize) -> Vec<Ambiguity> {
        let mut out = Vec::new();
        let n = basis.alphabet();
        for len in 1..=bound {
            for wd in all_words(n, len) {
                for f in basis.rules() {
                    for g in basis.rules() {
                        let (fl, gl) = (f.lead.degree(), g.lead.degree());
                        // intersection: w = F b = a G, a, b nonempty, |F|+|G| > |w|
                        if fl < len
                            && gl < len
                            && fl + gl > len
                            && wd.has_factor_at(&f.lead, 0)
                            && wd.has_factor_at(&g.lead, len - gl)
                        {
                            out.push(Ambiguity {
                                kind: AmbiguityKind::Intersection,
                                f: f.id,
                                g: g.id,
                                w: wd.clone(),
                                a: wd.slice(0, len - gl),
                                b: wd.slice(fl, len),
                            });
                        }
                        if f.id != g.id && f.lead == wd {
                            for off in 0..=len.saturating_sub(gl) {
                                if wd.has_factor_at(&g.lead, off) {
                                    out.push(Ambiguity {
                                        kind: AmbiguityKind::Inclusion,
                                        f: f.id,
                                        g: g.id,
                                        w: wd.clone(),
                                        a: wd.slice(0, off),
                                        b: wd.slice(off + gl, len),
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let systems = [
            vec![p("x2 x1 - x1 x2"), p("x2 x2 x1 - x1")],
            vec![p("x1 x1 x1 - x2"), p("x1 x1 - x1 x2"), p("x2 x1 x2 - x1")],
            vec![p("x1 x2 x1 - x2 x2"), p("x2 x1 - x1 x1"), p("x1 x2 - x2 x1 + x1 x1")],
            vec![p("x2 x1 x3 - x1 x2 x3"), p("x3 x2 x1 - x1 x2 x3"), p("x3 x1 - x1 x3")],
        ];
        for rules in systems {
            let b = build_basis(&rules).unwrap();
            let bound = 6;
            let got = enumerate_ambiguities(&b, bound);
            assert_eq!(got.ambiguities, brute_force(&b, bound));
            let dedup: std::collections::HashSet<_> = got.ambiguities.iter().collect();
            assert_eq!(dedup.len(), got.ambiguities.len());
        }
    }
}
