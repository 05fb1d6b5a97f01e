//! Degree-bounded Shirshov completion.
//!
//! Rounds alternate between checking every ambiguity not yet examined (in
//! parallel, against a snapshot of the basis) and committing the nontrivial
//! ones serially in ascending-`w` order. A committed rule is the monic normal
//! form of its composition modulo the basis *as it stood at commit time*,
//! which makes every added rule replayable from the rules before it.

use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::compose::{check_trivial_with, composition_poly, enumerate_filtered, Ambiguity};
use crate::poly::Poly;
use crate::rewrite::{build_basis, normal_form, Basis, RewriteError, Rule, RuleId};

pub const DEFAULT_BUDGET: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompletionError {
    #[error("degree bound {bound} is below the largest input leading degree {needed}")]
    BoundTooSmall { bound: usize, needed: usize },
    #[error("budget {budget} is smaller than the {input} input rules")]
    BudgetTooSmall { budget: usize, input: usize },
    #[error("composition of rules {f} and {g} reduced to a nonzero constant; the ideal is the whole algebra")]
    UnitIdeal { f: RuleId, g: RuleId },
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CompletionStatus {
    ClosedBelowBound,
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AddedRule {
    pub id: RuleId,
    pub poly: Poly,
    pub source: Ambiguity,
    pub round: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CompletionReport {
    pub degree_bound: usize,
    pub budget: usize,
    pub status: CompletionStatus,
    pub rounds: usize,
    pub input_rules: usize,
    /// Ambiguities examined over all rounds.
    pub checked: usize,
    /// Ambiguities whose word exceeded the bound.
    pub skipped: usize,
    pub added: Vec<AddedRule>,
    #[serde(rename = "rules", serialize_with = "ser_basis_rules")]
    pub basis: Basis,
}

fn ser_basis_rules<S: Serializer>(b: &Basis, s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(b.rules().iter())
}

impl CompletionReport {
    pub fn is_closed(&self) -> bool {
        self.status == CompletionStatus::ClosedBelowBound
    }

    /// Regenerates every added rule from its source ambiguity and the rules
    /// that preceded it. Returns the id of the first rule that does not
    /// replay.
    pub fn replay_provenance(&self) -> Result<(), RuleId> {
        for added in &self.added {
            let prefix = self.basis.prefix(added.id);
            let comp = composition_poly(&added.source, &prefix).map_err(|_| added.id)?;
            let (rem, trace) = normal_form(&comp, &prefix, true);
            let trace = trace.expect("trace requested");
            // comp − rem is a combination of earlier rules
            if comp.sub(&rem) != trace.certificate_sum(&prefix) {
                return Err(added.id);
            }
            match rem.monic() {
                Ok(m) if m == added.poly && self.basis.rules()[added.id].poly == m => {}
                _ => return Err(added.id),
            }
        }
        Ok(())
    }
}

/// Completes `rules` below `degree_bound`, adding at most `budget − |rules|`
/// new rules.
pub fn shirshov_complete(
    rules: &[Poly],
    degree_bound: usize,
    budget: usize,
) -> Result<CompletionReport, CompletionError> {
    complete_basis(build_basis(rules)?, degree_bound, budget)
}

/// As [`shirshov_complete`], starting from an already built basis.
pub fn complete_basis(
    mut basis: Basis,
    degree_bound: usize,
    budget: usize,
) -> Result<CompletionReport, CompletionError> {
    let needed = basis.max_lead_degree();
    if degree_bound < needed {
        return Err(CompletionError::BoundTooSmall {
            bound: degree_bound,
            needed,
        });
    }
    let input_rules = basis.len();
    if budget < input_rules {
        return Err(CompletionError::BudgetTooSmall {
            budget,
            input: input_rules,
        });
    }

    let mut status = CompletionStatus::ClosedBelowBound;
    let mut added = Vec::new();
    let mut rounds = 0;
    let mut checked = 0;
    let mut skipped = 0;
    let mut first_new = 0;

    'rounds: loop {
        rounds += 1;
        let set = enumerate_filtered(&basis, degree_bound, |f, g| f >= first_new || g >= first_new);
        checked += set.ambiguities.len();
        skipped += set.skipped;

        let snapshot = &basis;
        let nontrivial: Vec<bool> = set
            .ambiguities
            .par_iter()
            .map(|a| !check_trivial_with(a, snapshot, false).expect("fresh ambiguity").trivial)
            .collect();

        let round_start = basis.len();
        for (amb, _) in set.ambiguities.iter().zip(&nontrivial).filter(|(_, &nt)| nt) {
            let comp = composition_poly(amb, &basis).expect("ids are stable");
            let (rem, _) = normal_form(&comp, &basis, false);
            if rem.is_zero() {
                continue;
            }
            if basis.len() >= budget {
                status = CompletionStatus::BudgetExhausted;
                break 'rounds;
            }
            let rule = rem.monic().expect("nonzero");
            let id = match basis.insert(rule.clone()) {
                Ok(Some(id)) => id,
                Ok(None) => unreachable!("normal form collapsed against an existing leading word"),
                Err(RewriteError::ConstantRule(_)) => {
                    return Err(CompletionError::UnitIdeal { f: amb.f, g: amb.g });
                }
                Err(e) => return Err(e.into()),
            };
            added.push(AddedRule {
                id,
                poly: rule,
                source: amb.clone(),
                round: rounds,
            });
        }
        if basis.len() == round_start {
            break;
        }
        first_new = round_start;
    }

    Ok(CompletionReport {
        degree_bound,
        budget,
        status,
        rounds,
        input_rules,
        checked,
        skipped,
        added,
        basis,
    })
}

impl CompletionReport {
    pub fn rules(&self) -> &[Rule] {
        self.basis.rules()
    }
}
