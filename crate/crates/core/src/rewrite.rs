//! Reduction of polynomials modulo a set of monic rules.
//!
//! A [`Basis`] keeps its rules monic with pairwise distinct leading words and
//! indexes those leading words in a [`FactorAutomaton`]. Reduction always
//! rewrites the deg-lex greatest reducible word at its leftmost reducible
//! position, using the rule with the greatest leading word that matches
//! there, so normal forms are a function of the input even when the basis is
//! not confluent.

use std::collections::HashMap;

use num_traits::One;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::automaton::FactorAutomaton;
use crate::poly::{scalar_string, Poly, PolyError, Scalar};
use crate::words::{Word, WordError};

pub type RuleId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("rule {0} is the zero polynomial")]
    ZeroRule(usize),
    #[error("rule {0} has a constant leading term; the ideal is the whole algebra")]
    ConstantRule(usize),
    #[error(transparent)]
    Word(#[from] WordError),
}

pub(crate) fn ser_scalar<S: Serializer>(c: &Scalar, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&scalar_string(c))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Rule {
    pub id: RuleId,
    pub lead: Word,
    pub poly: Poly,
}

#[derive(Debug, Clone)]
pub struct Basis {
    alphabet: usize,
    rules: Vec<Rule>,
    by_lead: HashMap<Word, RuleId>,
    index: FactorAutomaton,
}

impl Basis {
    /// An empty basis over `x1..x{alphabet}`.
    pub fn new(alphabet: usize) -> Self {
        let alphabet = alphabet.max(1);
        Basis {
            alphabet,
            rules: Vec::new(),
            by_lead: HashMap::new(),
            index: FactorAutomaton::new(alphabet, &[]),
        }
    }

    /// Builds a basis over `x1..x{alphabet}` from `rules`, normalizing each to
    /// monic and merging rules that share a leading word.
    pub fn with_alphabet(alphabet: usize, rules: &[Poly]) -> Result<Self, RewriteError> {
        let mut b = Basis::new(alphabet);
        for (i, r) in rules.iter().enumerate() {
            b.push_unindexed(i, r.clone())?;
        }
        b.reindex();
        Ok(b)
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn rule(&self, id: RuleId) -> Option<&Rule> {
        self.rules.get(id)
    }

    pub fn rule_for_lead(&self, lead: &Word) -> Option<RuleId> {
        self.by_lead.get(lead).copied()
    }

    pub fn leading_words(&self) -> impl Iterator<Item = &Word> {
        self.rules.iter().map(|r| &r.lead)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.rules.iter().all(|r| r.poly.is_homogeneous())
    }

    pub fn max_lead_degree(&self) -> usize {
        self.rules.iter().map(|r| r.lead.degree()).max().unwrap_or(0)
    }

    pub fn index(&self) -> &FactorAutomaton {
        &self.index
    }

    /// Adds `poly`, returning the id it was stored under, or `None` when it
    /// collapsed to zero against existing rules with the same leading word.
    pub fn insert(&mut self, poly: Poly) -> Result<Option<RuleId>, RewriteError> {
        let id = self.push_unindexed(self.rules.len(), poly)?;
        if id.is_some() {
            self.reindex();
        }
        Ok(id)
    }

    /// The first `len` rules as a basis of their own. Rule ids are preserved.
    pub fn prefix(&self, len: usize) -> Basis {
        let mut b = Basis::new(self.alphabet);
        for r in &self.rules[..len.min(self.rules.len())] {
            b.by_lead.insert(r.lead.clone(), r.id);
            b.rules.push(r.clone());
        }
        b.reindex();
        b
    }

    /// A copy without rule `id`. Later rules are renumbered down by one.
    pub fn without(&self, id: RuleId) -> Basis {
        let mut b = Basis::new(self.alphabet);
        for r in self.rules.iter().filter(|r| r.id != id) {
            let nid = b.rules.len();
            b.by_lead.insert(r.lead.clone(), nid);
            b.rules.push(Rule {
                id: nid,
                lead: r.lead.clone(),
                poly: r.poly.clone(),
            });
        }
        b.reindex();
        b
    }

    fn push_unindexed(&mut self, input_pos: usize, poly: Poly) -> Result<Option<RuleId>, RewriteError> {
        let mut p = poly.monic().map_err(|_| RewriteError::ZeroRule(input_pos))?;
        for w in p.words() {
            w.check_alphabet(self.alphabet)?;
        }
        loop {
            let lead = p.leading_word().expect("nonzero").clone();
            if lead.degree() == 0 {
                return Err(RewriteError::ConstantRule(input_pos));
            }
            match self.by_lead.get(&lead) {
                None => {
                    let id = self.rules.len();
                    self.by_lead.insert(lead.clone(), id);
                    self.rules.push(Rule { id, lead, poly: p });
                    return Ok(Some(id));
                }
                Some(&existing) => {
                    p = p.sub(&self.rules[existing].poly);
                    match p.monic() {
                        Ok(m) => p = m,
                        Err(PolyError::Zero) => return Ok(None),
                        Err(e) => unreachable!("{e}"),
                    }
                }
            }
        }
    }

    fn reindex(&mut self) {
        let leads: Vec<Word> = self.rules.iter().map(|r| r.lead.clone()).collect();
        self.index = FactorAutomaton::new(self.alphabet, &leads);
    }

    /// Leftmost reducible position in `w` and the rule with the greatest
    /// leading word matching there.
    pub fn find_redex(&self, w: &Word) -> Option<(RuleId, usize)> {
        let mut best: Option<(usize, RuleId)> = None;
        for m in self.index.find_all(w) {
            let better = match best {
                None => true,
                Some((start, rid)) => {
                    m.start < start || (m.start == start && self.rules[m.pattern].lead > self.rules[rid].lead)
                }
            };
            if better {
                best = Some((m.start, m.pattern));
            }
        }
        best.map(|(start, rid)| (rid, start))
    }

    pub fn is_reducible(&self, w: &Word) -> bool {
        self.index.matches_any(w)
    }
}

/// Builds a basis whose alphabet is the largest letter used by `rules`.
pub fn build_basis(rules: &[Poly]) -> Result<Basis, RewriteError> {
    let n = rules.iter().map(Poly::max_letter).max().unwrap_or(1);
    Basis::with_alphabet(n, rules)
}

/// One rewrite: `p ← p − coeff · a · rule · b`, where `word = a · lead · b`
/// and `a = word[..offset]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionStep {
    pub rule: RuleId,
    pub word: Word,
    pub offset: usize,
    #[serde(serialize_with = "ser_scalar")]
    pub coeff: Scalar,
}

impl ReductionStep {
    pub fn flanks(&self, basis: &Basis) -> (Word, Word) {
        let len = basis.rules[self.rule].lead.degree();
        (
            self.word.slice(0, self.offset),
            self.word.slice(self.offset + len, self.word.degree()),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
    pub terminal: Poly,
}

impl ReductionTrace {
    /// Re-applies every step to `input`. Equal to `terminal` for a sound
    /// trace.
    pub fn replay(&self, input: &Poly, basis: &Basis) -> Poly {
        let mut p = input.clone();
        for s in &self.steps {
            let (a, b) = s.flanks(basis);
            p.add_scaled_sandwich(&-s.coeff.clone(), &a, &basis.rules[s.rule].poly, &b);
        }
        p
    }

    /// The ideal-membership certificate `input − terminal = Σ coeff·a·s·b`,
    /// summed back up.
    pub fn certificate_sum(&self, basis: &Basis) -> Poly {
        let mut p = Poly::zero();
        for s in &self.steps {
            let (a, b) = s.flanks(basis);
            p.add_scaled_sandwich(&s.coeff, &a, &basis.rules[s.rule].poly, &b);
        }
        p
    }

    /// Largest word rewritten along the way.
    pub fn max_rewritten_word(&self) -> Option<&Word> {
        self.steps.iter().map(|s| &s.word).max()
    }
}

/// A single rewrite of `p`, or `None` when every supported word is
/// irreducible.
pub fn reduce_step(p: &Poly, basis: &Basis) -> Option<(Poly, ReductionStep)> {
    for (w, c) in p.terms().rev() {
        if let Some((rule, offset)) = basis.find_redex(w) {
            let step = ReductionStep {
                rule,
                word: w.clone(),
                offset,
                coeff: c.clone(),
            };
            let (a, b) = step.flanks(basis);
            let mut q = p.clone();
            q.add_scaled_sandwich(&-c.clone(), &a, &basis.rules[rule].poly, &b);
            return Some((q, step));
        }
    }
    None
}

/// Rewrites `p` until no supported word contains a leading word.
///
/// Equivalent to iterating [`reduce_step`] to a fixpoint: words are taken
/// from a work set in descending order, and each rewrite only introduces
/// words below the one it removes.
pub fn normal_form(p: &Poly, basis: &Basis, want_trace: bool) -> (Poly, Option<ReductionTrace>) {
    let mut work = p.clone();
    let mut done = Poly::zero();
    let mut steps = Vec::new();
    while let Some((w, c)) = work.pop_leading() {
        match basis.find_redex(&w) {
            None => done.insert_fresh(w, c),
            Some((rule, offset)) => {
                let r = &basis.rules[rule];
                let b = w.slice(offset + r.lead.degree(), w.degree());
                let a = w.slice(0, offset);
                // the leading term cancels exactly; push only the tail
                for (tw, tc) in r.poly.terms().rev().skip(1) {
                    work.add_term(tw.sandwich(&a, &b), -(&c * tc));
                }
                if want_trace {
                    steps.push(ReductionStep {
                        rule,
                        word: w,
                        offset,
                        coeff: c,
                    });
                }
            }
        }
    }
    let trace = want_trace.then(|| ReductionTrace {
        steps,
        terminal: done.clone(),
    });
    (done, trace)
}

/// Normal form of a single word.
pub fn normal_form_word(w: &Word, basis: &Basis) -> Poly {
    normal_form(&Poly::word(w.clone()), basis, false).0
}

/// Words of length `len` containing no leading word of `basis`, deg-lex
/// ascending.
pub fn irreducible_words(basis: &Basis, len: usize) -> Vec<Word> {
    basis.index.avoiding_words(len)
}

impl Basis {
    pub fn reduces_to_zero(&self, p: &Poly) -> bool {
        normal_form(p, self, false).0.is_zero()
    }
}

impl Rule {
    pub fn tail(&self) -> Poly {
        let mut t = self.poly.clone();
        t.add_term(self.lead.clone(), -Scalar::one());
        t
    }
}
