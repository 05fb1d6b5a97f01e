//! The monoid `S_n(Sym_n) = ⟨x1..xn | x_σ = x_ε, σ ∈ Sym_n⟩`.
//!
//! Two rule sets live here: the defining relations `S = {x_σ − x_ε}` and the
//! five-family set `S̃`, truncated at a degree bound:
//!
//! | family | polynomial                                   | leading word     |
//! |--------|----------------------------------------------|------------------|
//! | 1      | `x_σ − x_ε`, σ ≠ ε                            | `x_σ`            |
//! | 2      | `x_i·x_ε − x_ε·x_i`, 2 ≤ i ≤ n                | `x_i·x_ε`        |
//! | 3      | `x_i·x1^m·x_ε − x1^m·x_ε·x_i`, m ≥ 1          | `x_i·x1^m·x_ε`   |
//! | 4      | `x_ε·u − x_ε·sort(u)`, u over 2..n, u unsorted | `x_ε·u`          |
//! | 5      | `x_ε·u·x1 − x1·x_ε·u`, u over 2..n, \|u\| ≥ 1  | `x_ε·u·x1`       |
//!
//! All rules are homogeneous, so truncating at degree `d` loses nothing for
//! words of length at most `d`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::automaton::FactorAutomaton;
use crate::complete::{shirshov_complete, CompletionError, CompletionStatus};
use crate::compose::{check_all, enumerate_ambiguities, AmbiguityKind, ComposeError, CompositionResult};
use crate::poly::Poly;
use crate::rewrite::{normal_form, Basis, RewriteError, RuleId};
use crate::words::{
    enumerate_permutations, identity_word, is_permutation_word, perm_word, sort_word, Letter, Permutation, Word,
    MAX_GENERATORS,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymnError {
    #[error("n must be at least {min}, got {n}")]
    NTooSmall { n: usize, min: usize },
    #[error("n = {0} exceeds the supported generator count")]
    NTooLarge(usize),
    #[error("degree bound must be at least {needed} for n = {n}, got {bound}")]
    BoundTooSmall { n: usize, bound: usize, needed: usize },
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    Compose(#[from] ComposeError),
    #[error(transparent)]
    Completion(#[from] CompletionError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    T1,
    T2,
    T3,
    T4,
    T5,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::T1, Family::T2, Family::T3, Family::T4, Family::T5];

    pub fn number(self) -> usize {
        self as usize + 1
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

impl Serialize for Family {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u64(self.number() as u64)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SymParams {
    Sigma(#[serde(serialize_with = "ser_perm")] Permutation),
    Letter { i: usize },
    LetterPower { i: usize, m: usize },
    Tail { u: Word },
}

fn ser_perm<S: Serializer>(p: &Permutation, s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(p.images().iter())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymRule {
    pub family: Family,
    pub params: SymParams,
    pub poly: Poly,
}

impl SymRule {
    fn t1(sigma: Permutation, n: usize) -> Self {
        let poly = Poly::binomial(perm_word(&sigma), identity_word(n));
        SymRule {
            family: Family::T1,
            params: SymParams::Sigma(sigma),
            poly,
        }
    }

    fn t2(i: usize, n: usize) -> Self {
        let e = identity_word(n);
        let xi = Word::single(i as Letter);
        SymRule {
            family: Family::T2,
            params: SymParams::Letter { i },
            poly: Poly::binomial(xi.concat(&e), e.concat(&xi)),
        }
    }

    fn t3(i: usize, m: usize, n: usize) -> Self {
        let e = identity_word(n);
        let xi = Word::single(i as Letter);
        let ones_e = Word::power(1, m).concat(&e);
        SymRule {
            family: Family::T3,
            params: SymParams::LetterPower { i, m },
            poly: Poly::binomial(xi.concat(&ones_e), ones_e.concat(&xi)),
        }
    }

    fn t4(u: Word, n: usize) -> Self {
        let e = identity_word(n);
        SymRule {
            family: Family::T4,
            poly: Poly::binomial(e.concat(&u), e.concat(&sort_word(&u))),
            params: SymParams::Tail { u },
        }
    }

    fn t5(u: Word, n: usize) -> Self {
        let e = identity_word(n);
        let x1 = Word::single(1);
        SymRule {
            family: Family::T5,
            poly: Poly::binomial(e.concat(&u).concat(&x1), x1.concat(&e).concat(&u)),
            params: SymParams::Tail { u },
        }
    }

    pub fn leading_word(&self) -> &Word {
        self.poly.leading_word().expect("rules are nonzero")
    }
}

fn check_n(n: usize, min: usize) -> Result<(), SymnError> {
    if n < min {
        return Err(SymnError::NTooSmall { n, min });
    }
    if n > MAX_GENERATORS {
        return Err(SymnError::NTooLarge(n));
    }
    Ok(())
}

/// Words of length `len` over letters `lo..=hi`, lexicographic.
fn tuples(lo: Letter, hi: Letter, len: usize) -> Vec<Word> {
    if lo > hi {
        return if len == 0 { vec![Word::empty()] } else { Vec::new() };
    }
    let k = (hi - lo + 1) as usize;
    crate::words::all_words(k, len)
        .map(|w| Word::from_raw(w.letters().iter().map(|&l| l + lo - 1).collect()))
        .collect()
}

/// The defining relations `x_σ − x_ε` for every σ ≠ ε, in lexicographic
/// order of σ.
pub fn build_s_rules(n: usize) -> Result<Vec<SymRule>, SymnError> {
    check_n(n, 2)?;
    Ok(enumerate_permutations(n)
        .expect("n checked")
        .into_iter()
        .filter(|s| !s.is_identity())
        .map(|s| SymRule::t1(s, n))
        .collect())
}

/// `S` as a basis: `n! − 1` rules.
pub fn build_s(n: usize) -> Result<Basis, SymnError> {
    let polys: Vec<Poly> = build_s_rules(n)?.into_iter().map(|r| r.poly).collect();
    Ok(Basis::with_alphabet(n, &polys)?)
}

/// `S̃` truncated at a degree bound, with each rule's family and parameters.
/// `rules[id]` describes basis rule `id`.
#[derive(Debug, Clone)]
pub struct SymBasis {
    pub n: usize,
    pub degree_bound: usize,
    pub basis: Basis,
    pub rules: Vec<SymRule>,
}

impl SymBasis {
    pub fn family(&self, id: RuleId) -> Family {
        self.rules[id].family
    }

    /// A copy without rule `id`, for negative-path checks.
    pub fn without(&self, id: RuleId) -> SymBasis {
        let mut rules = self.rules.clone();
        rules.remove(id);
        SymBasis {
            n: self.n,
            degree_bound: self.degree_bound,
            basis: self.basis.without(id),
            rules,
        }
    }

    pub fn family_counts(&self) -> BTreeMap<String, usize> {
        let mut out: BTreeMap<String, usize> = Family::ALL.iter().map(|f| (f.to_string(), 0)).collect();
        for r in &self.rules {
            *out.get_mut(&r.family.to_string()).unwrap() += 1;
        }
        out
    }
}

/// All members of the five families with degree at most `degree_bound`.
pub fn build_s_tilde(n: usize, degree_bound: usize) -> Result<SymBasis, SymnError> {
    check_n(n, 2)?;
    if degree_bound < n + 1 {
        return Err(SymnError::BoundTooSmall {
            n,
            bound: degree_bound,
            needed: n + 1,
        });
    }
    let d = degree_bound;
    let top = n as Letter;
    let mut rules = build_s_rules(n)?;
    rules.extend((2..=n).map(|i| SymRule::t2(i, n)));
    for m in 1..=d - n - 1 {
        rules.extend((2..=n).map(|i| SymRule::t3(i, m, n)));
    }
    // |u| = m + 1 with n + m + 1 <= d
    for len in 2..=d - n {
        rules.extend(
            tuples(2, top, len)
                .into_iter()
                .filter(|u| *u > sort_word(u))
                .map(|u| SymRule::t4(u, n)),
        );
    }
    // |u| = m with n + m + 1 <= d
    for len in 1..=d - n - 1 {
        rules.extend(tuples(2, top, len).into_iter().map(|u| SymRule::t5(u, n)));
    }

    let polys: Vec<Poly> = rules.iter().map(|r| r.poly.clone()).collect();
    let basis = Basis::with_alphabet(n, &polys)?;
    // leading words are pairwise distinct, so no rule merged away
    assert_eq!(basis.len(), rules.len());
    Ok(SymBasis {
        n,
        degree_bound,
        basis,
        rules,
    })
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct PairStats {
    pub checked: usize,
    pub intersections: usize,
    pub inclusions: usize,
    pub nontrivial: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub n: usize,
    pub degree_bound: usize,
    pub rules: usize,
    pub rules_per_family: BTreeMap<String, usize>,
    pub total_enumerated: usize,
    pub checked: usize,
    pub skipped_beyond_bound: usize,
    pub nontrivial: usize,
    /// Compositions with a word at or above their ambiguity word.
    pub below_w_violations: usize,
    /// Keyed `"i∧j"` for the families of `f` and `g`; every pair is present so
    /// unrealized pairs show up as zero.
    pub pairs: BTreeMap<String, PairStats>,
    pub failures: Vec<CompositionResult>,
    pub verdict: Verdict,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn pair(&self, f: Family, g: Family) -> PairStats {
        self.pairs[&pair_key(f, g)]
    }
}

pub fn pair_key(f: Family, g: Family) -> String {
    format!("{f}∧{g}")
}

/// Checks every ambiguity of `sb` with word length at most `degree_bound`.
pub fn verify_basis(sb: &SymBasis, degree_bound: usize) -> Result<VerificationReport, SymnError> {
    let set = enumerate_ambiguities(&sb.basis, degree_bound);
    let results = check_all(&set.ambiguities, &sb.basis)?;

    let mut pairs: BTreeMap<String, PairStats> = BTreeMap::new();
    for f in Family::ALL {
        for g in Family::ALL {
            pairs.insert(pair_key(f, g), PairStats::default());
        }
    }
    let mut failures = Vec::new();
    let mut below_w_violations = 0;
    for r in results {
        let amb = &r.ambiguity;
        let stats = pairs.get_mut(&pair_key(sb.family(amb.f), sb.family(amb.g))).unwrap();
        stats.checked += 1;
        match amb.kind {
            AmbiguityKind::Intersection => stats.intersections += 1,
            AmbiguityKind::Inclusion => stats.inclusions += 1,
        }
        if !r.below_w {
            below_w_violations += 1;
        }
        if !r.trivial {
            stats.nontrivial += 1;
            failures.push(r);
        }
    }
    let nontrivial = failures.len();
    let checked = set.ambiguities.len();
    Ok(VerificationReport {
        n: sb.n,
        degree_bound,
        rules: sb.rules.len(),
        rules_per_family: sb.family_counts(),
        total_enumerated: checked + set.skipped,
        checked,
        skipped_beyond_bound: set.skipped,
        nontrivial,
        below_w_violations,
        pairs,
        failures,
        verdict: if nontrivial == 0 { Verdict::Pass } else { Verdict::Fail },
    })
}

/// Builds `S̃(n, d)` and checks that all its compositions with `|w| <= d`
/// are trivial.
pub fn verify_theorem(n: usize, degree_bound: usize) -> Result<VerificationReport, SymnError> {
    check_n(n, 2)?;
    if degree_bound < n + 2 {
        return Err(SymnError::BoundTooSmall {
            n,
            bound: degree_bound,
            needed: n + 2,
        });
    }
    let sb = build_s_tilde(n, degree_bound)?;
    verify_basis(&sb, degree_bound)
}

#[derive(Debug, Clone, Serialize)]
pub struct MembershipFailure {
    pub rule: SymRule,
    pub remainder: Poly,
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaReport {
    pub n: usize,
    pub degree_bound: usize,
    pub completion_status: CompletionStatus,
    pub completion_rounds: usize,
    pub completed_rules: usize,
    pub members_checked: usize,
    pub members_per_family: BTreeMap<String, usize>,
    pub failures: Vec<MembershipFailure>,
    pub verdict: Verdict,
}

/// Completes `S` below the bound, then reduces every member of `S̃(n, d)`
/// modulo the result. An exhausted budget makes the verdict inconclusive.
pub fn verify_lemma_membership(n: usize, degree_bound: usize, budget: usize) -> Result<LemmaReport, SymnError> {
    let sb = build_s_tilde(n, degree_bound)?;
    let s_rules: Vec<Poly> = build_s_rules(n)?.into_iter().map(|r| r.poly).collect();
    let completion = shirshov_complete(&s_rules, degree_bound, budget)?;
    let completed = &completion.basis;

    let failures: Vec<MembershipFailure> = sb
        .rules
        .iter()
        .filter_map(|r| {
            let (rem, _) = normal_form(&r.poly, completed, false);
            (!rem.is_zero()).then(|| MembershipFailure {
                rule: r.clone(),
                remainder: rem,
            })
        })
        .collect();

    let verdict = match (completion.status, failures.is_empty()) {
        (CompletionStatus::BudgetExhausted, _) => Verdict::Inconclusive,
        (_, true) => Verdict::Pass,
        (_, false) => Verdict::Fail,
    };
    Ok(LemmaReport {
        n,
        degree_bound,
        completion_status: completion.status,
        completion_rounds: completion.rounds,
        completed_rules: completed.len(),
        members_checked: sb.rules.len(),
        members_per_family: sb.family_counts(),
        failures,
        verdict,
    })
}

/// Whether `w = x1^{m1}·x_ε·x2^{m2}⋯xn^{mn}` for some `m_i >= 0`.
pub fn is_special_word(w: &[Letter], n: usize) -> bool {
    let lead_ones = w.iter().take_while(|&&l| l == 1).count();
    if lead_ones == 0 || w.len() < lead_ones - 1 + n {
        return false;
    }
    let core = &w[lead_ones - 1..lead_ones - 1 + n];
    let tail = &w[lead_ones - 1 + n..];
    core.iter().enumerate().all(|(k, &l)| l as usize == k + 1)
        && tail.iter().all(|&l| l >= 2 && l as usize <= n)
        && tail.windows(2).all(|p| p[0] <= p[1])
}

/// Whether no length-`n` factor of `w` is a permutation word.
pub fn avoids_permutation_factors(w: &[Letter], n: usize) -> bool {
    w.len() < n || w.windows(n).all(|f| !is_permutation_word(f, n))
}

/// Membership in the closed-form normal-form set: words with no
/// permutation-word factor (x_ε included), together with the special words
/// `x1^{m1}·x_ε·x2^{m2}⋯xn^{mn}`.
pub fn irr_member(w: &Word, n: usize) -> bool {
    avoids_permutation_factors(w, n) || is_special_word(w, n)
}

/// Special words of length `len`, deg-lex ascending.
pub fn special_words(n: usize, len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    if n == 0 || len < n {
        return out;
    }
    let e = identity_word(n);
    let extra = len - n;
    for m1 in 0..=extra {
        let head = Word::power(1, m1).concat(&e);
        for tail in nondecreasing(2, n as Letter, extra - m1) {
            out.push(head.concat(&tail));
        }
    }
    out.sort();
    out
}

/// Nondecreasing words of length `len` over `lo..=hi`, lexicographic.
fn nondecreasing(lo: Letter, hi: Letter, len: usize) -> Vec<Word> {
    fn rec(lo: Letter, hi: Letter, len: usize, buf: &mut Vec<Letter>, out: &mut Vec<Word>) {
        if len == 0 {
            out.push(Word::from_raw(buf.clone()));
            return;
        }
        for l in lo..=hi {
            buf.push(l);
            rec(l, hi, len - 1, buf, out);
            buf.pop();
        }
    }
    let mut out = Vec::new();
    if len == 0 {
        out.push(Word::empty());
    } else if lo <= hi {
        rec(lo, hi, len, &mut Vec::new(), &mut out);
    }
    out
}

/// The automaton recognizing the `n!` permutation words.
pub fn permutation_automaton(n: usize) -> Result<FactorAutomaton, SymnError> {
    check_n(n, 1)?;
    let pats: Vec<Word> = enumerate_permutations(n)
        .expect("n checked")
        .iter()
        .map(perm_word)
        .collect();
    Ok(FactorAutomaton::new(n, &pats))
}

/// All normal-form words of length `len`, deg-lex ascending.
pub fn irr_enumerate(n: usize, len: usize) -> Result<Vec<Word>, SymnError> {
    let aut = permutation_automaton(n)?;
    let mut out = aut.avoiding_words(len);
    out.extend(special_words(n, len));
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::irreducible_words;

    fn w(s: &[usize]) -> Word {
        Word::from_slice(s)
    }

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn s_for_small_n() {
        let s2 = build_s(2).unwrap();
        assert_eq!(s2.len(), 1);
        assert_eq!(s2.rules()[0].poly, p("x2 x1 - x1 x2"));
        let s3 = build_s(3).unwrap();
        assert_eq!(s3.len(), 5);
        let e = identity_word(3);
        for r in s3.rules() {
            assert!(r.lead > e);
            assert!(is_permutation_word(&r.lead, 3));
        }
        assert_eq!(build_s(1).unwrap_err(), SymnError::NTooSmall { n: 1, min: 2 });
        assert_eq!(build_s(4).unwrap().len(), 23);
    }

    #[test]
    fn s_tilde_n2_d3() {
        let sb = build_s_tilde(2, 3).unwrap();
        let polys: Vec<Poly> = sb.rules.iter().map(|r| r.poly.clone()).collect();
        assert_eq!(polys, vec![p("x2 x1 - x1 x2"), p("x2 x1 x2 - x1 x2 x2")]);
        assert_eq!(sb.rules[1].family, Family::T2);
        assert!(matches!(build_s_tilde(2, 2), Err(SymnError::BoundTooSmall { .. })));
    }

    #[test]
    fn s_tilde_family_four_cutoff() {
        // the smallest family-4 member, x_ε·x3x2 − x_ε·x2x3, has degree 5
        let sb = build_s_tilde(3, 4).unwrap();
        assert!(!sb.rules.iter().any(|r| r.family == Family::T4));
        let sb = build_s_tilde(3, 5).unwrap();
        let t4: Vec<&SymRule> = sb.rules.iter().filter(|r| r.family == Family::T4).collect();
        assert_eq!(t4.len(), 1);
        assert_eq!(t4[0].poly, p("x1 x2 x3 x3 x2 - x1 x2 x3 x2 x3"));
    }

    #[test]
    fn s_tilde_family_sizes() {
        let sb = build_s_tilde(3, 8).unwrap();
        let counts = sb.family_counts();
        assert_eq!(counts["1"], 5);
        assert_eq!(counts["2"], 2);
        // 1 + m + 3 <= 8
        assert_eq!(counts["3"], 2 * 4);
        // unsorted words over {2,3} of length 2..=5: (4-3)+(8-4)+(16-5)+(32-6)
        assert_eq!(counts["4"], 1 + 4 + 11 + 26);
        // words over {2,3} of length 1..=4
        assert_eq!(counts["5"], 2 + 4 + 8 + 16);
        for r in &sb.rules {
            assert!(r.poly.is_monic());
            assert!(r.poly.homogeneous_degree().unwrap() <= 8);
            let lead = r.leading_word();
            let e = identity_word(3);
            match (&r.family, &r.params) {
                (Family::T1, SymParams::Sigma(s)) => assert_eq!(lead, &perm_word(s)),
                (Family::T2, SymParams::Letter { i }) => assert_eq!(lead, &Word::single(*i as u8).concat(&e)),
                (Family::T3, SymParams::LetterPower { i, m }) => {
                    assert_eq!(lead, &Word::single(*i as u8).concat(&Word::power(1, *m)).concat(&e))
                }
                (Family::T4, SymParams::Tail { u }) => assert_eq!(lead, &e.concat(u)),
                (Family::T5, SymParams::Tail { u }) => {
                    assert_eq!(lead, &e.concat(u).concat(&Word::single(1)));
                    assert_eq!(lead.last(), Some(&1));
                }
                other => panic!("mismatched params {other:?}"),
            }
        }
    }

    #[test]
    fn theorem_small_cases() {
        let r = verify_theorem(2, 8).unwrap();
        assert!(r.passed(), "{:?}", r.failures.first());
        assert_eq!(r.total_enumerated, r.checked + r.skipped_beyond_bound);
        assert_eq!(r.below_w_violations, 0);
        assert!(verify_theorem(3, 4).is_err());
    }

    #[test]
    fn lemma_small_case() {
        let r = verify_lemma_membership(2, 6, 10_000).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.completion_status, CompletionStatus::ClosedBelowBound);
    }

    #[test]
    fn t1_reduce_modulo_s() {
        let s = build_s(3).unwrap();
        for r in build_s_rules(3).unwrap() {
            assert!(s.reduces_to_zero(&r.poly));
        }
    }

    #[test]
    fn membership_examples() {
        assert!(irr_member(&w(&[1, 2, 3, 2]), 3));
        assert!(!irr_member(&w(&[2, 1, 3]), 3));
        assert!(irr_member(&w(&[1, 1, 2, 2]), 2));
        assert!(irr_member(&w(&[1, 2, 3]), 3));
        assert!(!irr_member(&w(&[1, 2, 3, 1]), 3));
        assert!(!irr_member(&w(&[1, 2, 3, 3, 2]), 3));
        assert!(irr_member(&w(&[1, 1, 2, 3, 2, 3, 3]), 3));
        assert!(irr_member(&w(&[3, 3]), 3));
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(irr_enumerate(2, 2).unwrap(), vec![w(&[1, 1]), w(&[1, 2]), w(&[2, 2])]);
        let e3 = irr_enumerate(3, 3).unwrap();
        assert_eq!(e3.len(), 22);
        assert!(e3.contains(&identity_word(3)));
        for n in 2..=4 {
            for len in 0..n {
                assert_eq!(irr_enumerate(n, len).unwrap().len(), n.pow(len as u32));
            }
        }
    }

    #[test]
    fn special_words_counted_by_binomial() {
        // C(len − 1, n − 1)
        assert_eq!(special_words(3, 3).len(), 1);
        assert_eq!(special_words(3, 4).len(), 3);
        assert_eq!(special_words(3, 6).len(), 10);
        assert_eq!(special_words(2, 5).len(), 4);
        assert!(special_words(3, 2).is_empty());
        for n in 2..=4 {
            for len in 0..=7 {
                let brute: Vec<Word> = crate::words::all_words(n, len)
                    .filter(|x| is_special_word(x, n))
                    .collect();
                assert_eq!(special_words(n, len), brute);
                for x in &brute {
                    assert!(!avoids_permutation_factors(x, n));
                }
            }
        }
    }

    #[test]
    fn closed_form_matches_leading_word_avoidance() {
        let sb = build_s_tilde(3, 7).unwrap();
        for len in 0..=7 {
            assert_eq!(
                irr_enumerate(3, len).unwrap(),
                irreducible_words(&sb.basis, len),
                "len {len}"
            );
        }
    }

    #[test]
    fn removing_a_family_four_rule_breaks_closure() {
        let sb = build_s_tilde(3, 7).unwrap();
        let id = sb.rules.iter().position(|r| r.family == Family::T4).unwrap();
        let r = verify_basis(&sb.without(id), 7).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        assert!(r.failures.iter().all(|f| !f.remainder.is_zero()));
    }
}
