//! Multi-pattern factor automaton over the alphabet `x1..xn`.
//!
//! A trie of the patterns with failure links, flattened into a dense DFA.
//! Each state knows every pattern that ends at it (its own plus those reached
//! through the failure chain), so one left-to-right pass reports every
//! occurrence of every pattern.

use std::collections::VecDeque;

use crate::words::{Letter, Word};

pub type StateId = u32;

const ROOT: StateId = 0;

#[derive(Debug, Clone)]
pub struct FactorAutomaton {
    alphabet: usize,
    /// `delta[state * alphabet + (letter - 1)]`
    delta: Vec<StateId>,
    /// Patterns ending at each state, including failure-chain outputs.
    outputs: Vec<Vec<usize>>,
    pattern_lens: Vec<usize>,
}

/// One pattern occurrence: `pattern` occupies `subject[start..start + len]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Match {
    pub pattern: usize,
    pub start: usize,
}

impl FactorAutomaton {
    /// Builds the automaton for `patterns` over letters `1..=alphabet`.
    /// Patterns must be nonempty and use only letters in range; pattern ids
    /// are positions in the slice.
    pub fn new(alphabet: usize, patterns: &[Word]) -> Self {
        assert!(alphabet >= 1, "alphabet must be nonempty");
        let mut trie: Vec<Vec<Option<StateId>>> = vec![vec![None; alphabet]];
        let mut own: Vec<Vec<usize>> = vec![Vec::new()];
        for (id, p) in patterns.iter().enumerate() {
            assert!(p.degree() > 0, "empty pattern");
            let mut s = ROOT as usize;
            for &l in p.letters() {
                let c = l as usize - 1;
                assert!(c < alphabet, "letter x{l} outside alphabet {alphabet}");
                s = match trie[s][c] {
                    Some(t) => t as usize,
                    None => {
                        trie.push(vec![None; alphabet]);
                        own.push(Vec::new());
                        let t = trie.len() - 1;
                        trie[s][c] = Some(t as StateId);
                        t
                    }
                };
            }
            own[s].push(id);
        }

        let states = trie.len();
        let mut delta = vec![ROOT; states * alphabet];
        let mut fail = vec![ROOT; states];
        let mut outputs = own;
        let mut queue = VecDeque::new();
        for c in 0..alphabet {
            if let Some(t) = trie[0][c] {
                delta[c] = t;
                queue.push_back(t);
            }
        }
        // BFS order guarantees fail[s] is finalized before s's children
        while let Some(s) = queue.pop_front() {
            let s = s as usize;
            let f = fail[s] as usize;
            if s != 0 {
                let inherited = outputs[f].clone();
                outputs[s].extend(inherited);
            }
            for c in 0..alphabet {
                match trie[s][c] {
                    Some(t) => {
                        fail[t as usize] = if s == 0 { ROOT } else { delta[f * alphabet + c] };
                        delta[s * alphabet + c] = t;
                        queue.push_back(t);
                    }
                    None => {
                        delta[s * alphabet + c] = if s == 0 { ROOT } else { delta[f * alphabet + c] };
                    }
                }
            }
        }
        for out in &mut outputs {
            out.sort_unstable();
            out.dedup();
        }

        FactorAutomaton {
            alphabet,
            delta,
            outputs,
            pattern_lens: patterns.iter().map(Word::degree).collect(),
        }
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.outputs.len()
    }

    pub fn start(&self) -> StateId {
        ROOT
    }

    /// Transition on `letter`. Letters beyond the alphabet cannot take part in
    /// any match, so they send the automaton back to the root.
    #[inline]
    pub fn next(&self, state: StateId, letter: Letter) -> StateId {
        let c = letter as usize;
        if c == 0 || c > self.alphabet {
            return ROOT;
        }
        self.delta[state as usize * self.alphabet + c - 1]
    }

    /// Whether some pattern ends at `state`.
    #[inline]
    pub fn is_accepting(&self, state: StateId) -> bool {
        !self.outputs[state as usize].is_empty()
    }

    pub fn outputs(&self, state: StateId) -> &[usize] {
        &self.outputs[state as usize]
    }

    /// Every occurrence of every pattern in `subject`, ordered by end
    /// position, then pattern id.
    pub fn find_all(&self, subject: &[Letter]) -> Vec<Match> {
        let mut out = Vec::new();
        let mut s = ROOT;
        for (i, &l) in subject.iter().enumerate() {
            s = self.next(s, l);
            for &p in &self.outputs[s as usize] {
                out.push(Match {
                    pattern: p,
                    start: i + 1 - self.pattern_lens[p],
                });
            }
        }
        out
    }

    /// Whether any pattern occurs in `subject`.
    pub fn matches_any(&self, subject: &[Letter]) -> bool {
        let mut s = ROOT;
        for &l in subject {
            s = self.next(s, l);
            if self.is_accepting(s) {
                return true;
            }
        }
        false
    }

    /// All words of length `len` avoiding every pattern, deg-lex ascending.
    pub fn avoiding_words(&self, len: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let mut buf = Vec::with_capacity(len);
        self.avoid_dfs(ROOT, len, &mut buf, &mut out);
        out
    }

    fn avoid_dfs(&self, s: StateId, remaining: usize, buf: &mut Vec<Letter>, out: &mut Vec<Word>) {
        if remaining == 0 {
            out.push(Word::from_raw(buf.clone()));
            return;
        }
        for l in 1..=self.alphabet as Letter {
            let t = self.next(s, l);
            if self.is_accepting(t) {
                continue;
            }
            buf.push(l);
            self.avoid_dfs(t, remaining - 1, buf, out);
            buf.pop();
        }
    }

    /// Live (non-accepting) states and, for each, its transitions into live
    /// states. Used by transfer-matrix counting.
    pub fn live_transitions(&self) -> Vec<(StateId, Vec<StateId>)> {
        (0..self.state_count() as StateId)
            .filter(|&s| !self.is_accepting(s))
            .map(|s| {
                let succ = (1..=self.alphabet as Letter)
                    .map(|l| self.next(s, l))
                    .filter(|&t| !self.is_accepting(t))
                    .collect();
                (s, succ)
            })
            .collect()
    }
}
