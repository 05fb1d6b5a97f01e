//! Ground truth for `S_n(Sym_n)` that does not go through rewriting.
//!
//! The oracle enumerates every word of one length and merges words related by
//! a single defining relation with union-find. The relations preserve length,
//! so the classes it finds are exactly the congruence classes. The growth
//! counter gets the same numbers without enumerating words, by iterating the
//! transfer map of the permutation-word automaton.

use num_bigint::BigUint;
use num_integer::binomial;
use num_traits::{One, Zero};
use petgraph::unionfind::UnionFind;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::automaton::FactorAutomaton;
use crate::symn::{irr_member, permutation_automaton, SymnError};
use crate::words::{is_permutation_word, Letter, Word};

pub const DEFAULT_ORACLE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("{n}^{len} words exceeds the enumeration budget of {budget}")]
    BudgetExceeded { n: usize, len: usize, budget: u64 },
    #[error(transparent)]
    Symn(#[from] SymnError),
}

/// Congruence classes of all words of one length.
#[derive(Debug, Clone)]
pub struct ClassPartition {
    pub n: usize,
    pub len: usize,
    /// Class id of each word, indexed by the word's rank in deg-lex order.
    class_of: Vec<u32>,
    /// Rank of the least word of each class; ascending.
    representatives: Vec<u64>,
    sizes: Vec<u64>,
}

impl ClassPartition {
    pub fn class_count(&self) -> usize {
        self.representatives.len()
    }

    pub fn word_count(&self) -> usize {
        self.class_of.len()
    }

    pub fn representative(&self, class: usize) -> Word {
        decode(self.representatives[class], self.n, self.len)
    }

    pub fn class_size(&self, class: usize) -> u64 {
        self.sizes[class]
    }

    pub fn class_of(&self, w: &Word) -> usize {
        self.class_of[encode(w, self.n) as usize] as usize
    }

    /// Every class as a sorted word list, ordered by representative.
    pub fn classes(&self) -> Vec<Vec<Word>> {
        let mut out = vec![Vec::new(); self.class_count()];
        for (rank, &c) in self.class_of.iter().enumerate() {
            out[c as usize].push(decode(rank as u64, self.n, self.len));
        }
        out
    }
}

fn decode(mut rank: u64, n: usize, len: usize) -> Word {
    let mut v = vec![0 as Letter; len];
    for slot in v.iter_mut().rev() {
        *slot = (rank % n as u64) as Letter + 1;
        rank /= n as u64;
    }
    Word::from_raw(v)
}

fn encode(w: &[Letter], n: usize) -> u64 {
    w.iter().fold(0u64, |acc, &l| acc * n as u64 + (l as u64 - 1))
}

fn word_budget(n: usize, len: usize, budget: u64) -> Result<u64, CensusError> {
    (n as u64)
        .checked_pow(len as u32)
        .filter(|&t| t <= budget && t <= u32::MAX as u64)
        .ok_or(CensusError::BudgetExceeded { n, len, budget })
}

/// Partitions all `n^len` words into congruence classes.
pub fn oracle_classes(n: usize, len: usize, budget: u64) -> Result<ClassPartition, CensusError> {
    if n < 1 {
        return Err(SymnError::NTooSmall { n, min: 1 }.into());
    }
    let total = word_budget(n, len, budget)?;
    let mut uf: UnionFind<u32> = UnionFind::new(total as usize);
    let mut letters = vec![0 as Letter; len];
    if len >= n {
        for rank in 0..total {
            let mut r = rank;
            for slot in letters.iter_mut().rev() {
                *slot = (r % n as u64) as Letter + 1;
                r /= n as u64;
            }
            for start in 0..=len - n {
                let window = &letters[start..start + n];
                if !is_permutation_word(window, n) {
                    continue;
                }
                if window.iter().enumerate().all(|(k, &l)| l as usize == k + 1) {
                    continue;
                }
                let mut other = letters.clone();
                for (k, slot) in other[start..start + n].iter_mut().enumerate() {
                    *slot = (k + 1) as Letter;
                }
                uf.union(rank as u32, encode(&other, n) as u32);
            }
        }
    }

    let mut class_of = vec![u32::MAX; total as usize];
    let mut root_class = vec![u32::MAX; total as usize];
    let mut representatives = Vec::new();
    let mut sizes = Vec::new();
    for (rank, slot) in class_of.iter_mut().enumerate() {
        let root = uf.find(rank as u32) as usize;
        if root_class[root] == u32::MAX {
            root_class[root] = representatives.len() as u32;
            representatives.push(rank as u64);
            sizes.push(0);
        }
        let c = root_class[root];
        *slot = c;
        sizes[c as usize] += 1;
    }
    Ok(ClassPartition {
        n,
        len,
        class_of,
        representatives,
        sizes,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BadClass {
    pub representative: Word,
    pub size: u64,
    pub irr_members: Vec<Word>,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub n: usize,
    pub len: usize,
    pub words: usize,
    pub classes: usize,
    pub irr_words: usize,
    /// Classes without exactly one normal-form word.
    pub bad_classes: Vec<BadClass>,
    /// Classes whose deg-lex least word is not a normal-form word.
    pub least_not_irr: usize,
    pub pass: bool,
}

/// Checks that every class contains exactly one normal-form word.
pub fn oracle_check_irr(n: usize, len: usize, budget: u64) -> Result<OracleReport, CensusError> {
    let part = oracle_classes(n, len, budget)?;
    let mut irr_per_class: Vec<Vec<u64>> = vec![Vec::new(); part.class_count()];
    let mut irr_words = 0;
    for rank in 0..part.word_count() as u64 {
        let w = decode(rank, n, len);
        if irr_member(&w, n) {
            irr_words += 1;
            irr_per_class[part.class_of[rank as usize] as usize].push(rank);
        }
    }
    let mut bad_classes = Vec::new();
    let mut least_not_irr = 0;
    for (c, members) in irr_per_class.iter().enumerate() {
        if members.first() != Some(&part.representatives[c]) {
            least_not_irr += 1;
        }
        if members.len() != 1 {
            bad_classes.push(BadClass {
                representative: part.representative(c),
                size: part.sizes[c],
                irr_members: members.iter().map(|&r| decode(r, n, len)).collect(),
            });
        }
    }
    Ok(OracleReport {
        n,
        len,
        words: part.word_count(),
        classes: part.class_count(),
        irr_words,
        pass: bad_classes.is_empty(),
        bad_classes,
        least_not_irr,
    })
}

fn ser_big<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrowthRow {
    pub len: usize,
    #[serde(serialize_with = "ser_big")]
    pub avoiders: BigUint,
    #[serde(serialize_with = "ser_big")]
    pub special: BigUint,
    #[serde(serialize_with = "ser_big")]
    pub total: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrowthSeries {
    pub n: usize,
    pub rows: Vec<GrowthRow>,
}

impl GrowthSeries {
    pub fn totals(&self) -> Vec<BigUint> {
        self.rows.iter().map(|r| r.total.clone()).collect()
    }

    /// Two-column `length count` table, one row per line.
    pub fn table(&self) -> String {
        self.rows.iter().map(|r| format!("{} {}\n", r.len, r.total)).collect()
    }
}

/// Number of words of each length `0..=max_len` avoiding every pattern of
/// `aut`, by iterating the automaton's transfer map.
pub fn count_avoiders(aut: &FactorAutomaton, max_len: usize) -> Vec<BigUint> {
    let live = aut.live_transitions();
    let mut slot = vec![usize::MAX; aut.state_count()];
    for (k, (s, _)) in live.iter().enumerate() {
        slot[*s as usize] = k;
    }
    let mut counts = vec![BigUint::zero(); live.len()];
    if let Some(&root) = slot.get(aut.start() as usize).filter(|&&k| k != usize::MAX) {
        counts[root] = BigUint::one();
    }
    let mut out = Vec::with_capacity(max_len + 1);
    for len in 0..=max_len {
        out.push(counts.iter().sum());
        if len == max_len {
            break;
        }
        let mut next = vec![BigUint::zero(); live.len()];
        for (k, (_, succ)) in live.iter().enumerate() {
            if counts[k].is_zero() {
                continue;
            }
            for &t in succ {
                next[slot[t as usize]] += &counts[k];
            }
        }
        counts = next;
    }
    out
}

/// Counts normal forms of each length: permutation-factor avoiders plus
/// `C(len − 1, n − 1)` special words once `len >= n`.
pub fn count_normal_forms(n: usize, max_len: usize) -> Result<GrowthSeries, CensusError> {
    let aut = permutation_automaton(n)?;
    let avoiders = count_avoiders(&aut, max_len);
    let rows = avoiders
        .into_iter()
        .enumerate()
        .map(|(len, avoiders)| {
            let special = if len >= n {
                binomial(BigUint::from(len - 1), BigUint::from(n - 1))
            } else {
                BigUint::zero()
            };
            GrowthRow {
                len,
                total: &avoiders + &special,
                avoiders,
                special,
            }
        })
        .collect();
    Ok(GrowthSeries { n, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symn::irr_enumerate;
    use crate::words::all_words;

    fn w(s: &[usize]) -> Word {
        Word::from_slice(s)
    }

    #[test]
    fn oracle_small_partitions() {
        let p = oracle_classes(2, 2, DEFAULT_ORACLE_BUDGET).unwrap();
        assert_eq!(p.class_count(), 3);
        assert_eq!(
            p.classes(),
            vec![vec![w(&[1, 1])], vec![w(&[1, 2]), w(&[2, 1])], vec![w(&[2, 2])]]
        );
        let p = oracle_classes(3, 3, DEFAULT_ORACLE_BUDGET).unwrap();
        assert_eq!(p.class_count(), 22);
        let perm_class = p.class_of(&w(&[1, 2, 3]));
        assert_eq!(p.class_size(perm_class), 6);
        for n in 2..=4 {
            for len in 0..n {
                let p = oracle_classes(n, len, DEFAULT_ORACLE_BUDGET).unwrap();
                assert_eq!(p.class_count(), n.pow(len as u32));
            }
        }
    }

    #[test]
    fn oracle_classes_are_closed_under_relations() {
        let p = oracle_classes(3, 5, DEFAULT_ORACLE_BUDGET).unwrap();
        let perms: Vec<Word> = all_words(3, 3).filter(|x| is_permutation_word(x, 3)).collect();
        for x in all_words(3, 5) {
            for start in 0..=2 {
                if !is_permutation_word(&x[start..start + 3], 3) {
                    continue;
                }
                for q in &perms {
                    let mut y = x.letters().to_vec();
                    y[start..start + 3].copy_from_slice(q);
                    assert_eq!(p.class_of(&x), p.class_of(&Word::from_raw(y)));
                }
            }
        }
    }

    #[test]
    fn oracle_budget_refusal() {
        assert_eq!(
            oracle_classes(3, 20, 1000).unwrap_err(),
            CensusError::BudgetExceeded {
                n: 3,
                len: 20,
                budget: 1000
            }
        );
    }

    #[test]
    fn oracle_confirms_normal_forms() {
        let r = oracle_check_irr(2, 8, DEFAULT_ORACLE_BUDGET).unwrap();
        assert!(r.pass);
        assert_eq!(r.classes, 9);
        let r = oracle_check_irr(3, 4, DEFAULT_ORACLE_BUDGET).unwrap();
        assert!(r.pass);
        assert_eq!(r.classes, 54);
        assert_eq!(r.least_not_irr, 0);
        let r = oracle_check_irr(3, 2, DEFAULT_ORACLE_BUDGET).unwrap();
        assert!(r.pass);
        assert_eq!(r.classes, 9);
    }

    #[test]
    fn growth_matches_known_values() {
        let g = count_normal_forms(2, 8).unwrap();
        let totals: Vec<u64> = g.totals().iter().map(|t| t.try_into().unwrap()).collect();
        assert_eq!(totals, (1..=9).collect::<Vec<u64>>());
        let g = count_normal_forms(3, 4).unwrap();
        assert_eq!(g.rows[3].avoiders, BigUint::from(21u32));
        assert_eq!(g.rows[3].special, BigUint::from(1u32));
        assert_eq!(g.rows[4].avoiders, BigUint::from(51u32));
        assert_eq!(g.rows[4].special, BigUint::from(3u32));
        assert_eq!(g.rows[4].total, BigUint::from(54u32));
        assert_eq!(g.table().lines().nth(4), Some("4 54"));
    }

    #[test]
    fn growth_below_n_is_free() {
        for n in 2..=5 {
            let g = count_normal_forms(n, n - 1).unwrap();
            for r in &g.rows {
                assert_eq!(r.avoiders, BigUint::from(n).pow(r.len as u32));
                assert!(r.special.is_zero());
            }
        }
    }

    #[test]
    fn counter_matches_enumerator() {
        for n in 2..=4 {
            let g = count_normal_forms(n, 7).unwrap();
            for r in &g.rows {
                assert_eq!(r.total, BigUint::from(irr_enumerate(n, r.len).unwrap().len()));
            }
        }
    }

    #[test]
    fn counts_exceed_machine_words() {
        let g = count_normal_forms(3, 60).unwrap();
        assert!(g.rows[60].total > BigUint::from(u64::MAX));
    }
}
