//! Words over generators `x1..xn`, the degree-lexicographic order, factor
//! search, overlaps, and permutation utilities.
//!
//! Letters are 1-based generator indices. The empty word is the monoid
//! identity. [`Word`]'s `Ord` instance *is* the deg-lex order: shorter words
//! come first, and words of equal length compare letter by letter with
//! `x1 < x2 < ... < xn`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

/// A generator index. Generators are numbered from 1.
pub type Letter = u8;

/// Largest generator index a word may carry.
pub const MAX_GENERATORS: usize = Letter::MAX as usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("empty pattern")]
    EmptyPattern,
    #[error("generator index must be at least 1")]
    ZeroLetter,
    #[error("generator x{letter} out of range 1..={n}")]
    LetterOutOfRange { letter: usize, n: usize },
    #[error("malformed word token `{0}`")]
    BadToken(String),
    #[error("permutation size must be at least 1")]
    ZeroSize,
    #[error("images {0:?} are not a permutation of 1..n")]
    NotAPermutation(Vec<usize>),
}

/// A word in the free monoid on `x1..xn`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Builds a word from raw letters. Every letter must be nonzero.
    pub fn new(letters: Vec<Letter>) -> Result<Self, WordError> {
        if letters.contains(&0) {
            return Err(WordError::ZeroLetter);
        }
        Ok(Word(letters))
    }

    /// Builds a word from letters the caller guarantees are nonzero.
    pub(crate) fn from_raw(letters: Vec<Letter>) -> Self {
        debug_assert!(!letters.contains(&0));
        Word(letters)
    }

    /// Convenience constructor for tests and literals; panics on a zero or
    /// oversized letter.
    pub fn from_slice(letters: &[usize]) -> Self {
        let v = letters
            .iter()
            .map(|&l| {
                assert!((1..=MAX_GENERATORS).contains(&l), "bad letter {l}");
                l as Letter
            })
            .collect();
        Word(v)
    }

    pub fn single(letter: Letter) -> Self {
        assert!(letter >= 1);
        Word(vec![letter])
    }

    /// `letter^k`.
    pub fn power(letter: Letter, k: usize) -> Self {
        assert!(letter >= 1);
        Word(vec![letter; k])
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    /// Largest letter occurring in the word, 0 for the empty word.
    pub fn max_letter(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0) as usize
    }

    pub fn check_alphabet(&self, n: usize) -> Result<(), WordError> {
        match self.0.iter().find(|&&l| l as usize > n) {
            Some(&l) => Err(WordError::LetterOutOfRange { letter: l as usize, n }),
            None => Ok(()),
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `a · self · b`.
    pub fn sandwich(&self, a: &Word, b: &Word) -> Word {
        let mut v = Vec::with_capacity(a.0.len() + self.0.len() + b.0.len());
        v.extend_from_slice(&a.0);
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&b.0);
        Word(v)
    }

    /// The factor `self[start..end]` as a word.
    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    /// Whether `pattern` occurs at `offset`.
    pub fn has_factor_at(&self, pattern: &Word, offset: usize) -> bool {
        offset + pattern.degree() <= self.degree() && self.0[offset..offset + pattern.degree()] == pattern.0[..]
    }

    /// Whether `pattern` occurs anywhere as a factor.
    pub fn contains_factor(&self, pattern: &Word) -> bool {
        if pattern.0.is_empty() {
            return true;
        }
        self.0.windows(pattern.degree()).any(|w| w == &pattern.0[..])
    }

    /// Formats as bare integers (`3 1 2`), the form accepted by most shells
    /// without quoting trouble.
    pub fn to_int_string(&self) -> String {
        self.0.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ")
    }
}

impl Deref for Word {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

/// Degree-lexicographic comparison.
pub fn compare_deglex(u: &Word, v: &Word) -> Ordering {
    u.0.len().cmp(&v.0.len()).then_with(|| u.0.cmp(&v.0))
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        compare_deglex(self, other)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "x{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word[{self}]")
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.0.iter())
    }
}

/// Parses one letter token: `x<k>` or a bare integer `k`.
pub(crate) fn parse_letter(token: &str) -> Result<Letter, WordError> {
    let digits = token.strip_prefix('x').unwrap_or(token);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(WordError::BadToken(token.to_string()));
    }
    let k: usize = digits.parse().map_err(|_| WordError::BadToken(token.to_string()))?;
    if k == 0 {
        return Err(WordError::ZeroLetter);
    }
    if k > MAX_GENERATORS {
        return Err(WordError::LetterOutOfRange {
            letter: k,
            n: MAX_GENERATORS,
        });
    }
    Ok(k as Letter)
}

impl FromStr for Word {
    type Err = WordError;

    /// Whitespace-separated `x<k>` or bare-integer tokens. A lone `1` is the
    /// single letter `x1`; the empty string is the empty word.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.split_whitespace()
            .map(parse_letter)
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }
}

/// Nondecreasing rearrangement of the letters of `w`.
pub fn sort_word(w: &Word) -> Word {
    let mut v = w.0.clone();
    v.sort_unstable();
    Word(v)
}

/// All offsets where `pattern` occurs in `subject`, ascending.
pub fn find_factor_occurrences(pattern: &Word, subject: &Word) -> Result<Vec<usize>, WordError> {
    if pattern.0.is_empty() {
        return Err(WordError::EmptyPattern);
    }
    if pattern.degree() > subject.degree() {
        return Ok(Vec::new());
    }
    Ok(subject
        .0
        .windows(pattern.degree())
        .enumerate()
        .filter(|(_, w)| *w == &pattern.0[..])
        .map(|(i, _)| i)
        .collect())
}

/// Overlap lengths `k` where the length-`k` suffix of `u` equals the
/// length-`k` prefix of `v` and both flanks of `w = u·b = a·v` are nonempty,
/// i.e. `1 <= k < min(|u|, |v|)`. Ascending.
pub fn proper_overlaps(u: &Word, v: &Word) -> Vec<usize> {
    let limit = u.degree().min(v.degree());
    (1..limit).filter(|&k| u.0[u.degree() - k..] == v.0[..k]).collect()
}

/// A bijection on `1..=n`, stored by its image sequence.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<Letter>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, WordError> {
        let n = images.len();
        if n == 0 {
            return Err(WordError::ZeroSize);
        }
        if n > MAX_GENERATORS {
            return Err(WordError::LetterOutOfRange {
                letter: n,
                n: MAX_GENERATORS,
            });
        }
        let mut seen = vec![false; n + 1];
        for &i in &images {
            if i == 0 || i > n || seen[i] {
                return Err(WordError::NotAPermutation(images));
            }
            seen[i] = true;
        }
        Ok(Permutation(images.into_iter().map(|i| i as Letter).collect()))
    }

    /// The identity permutation.
    pub fn identity(n: usize) -> Result<Self, WordError> {
        Self::new((1..=n).collect())
    }

    /// The n-cycle `1 -> 2 -> ... -> n -> 1`, with images `(2, 3, ..., n, 1)`.
    pub fn cyclic(n: usize) -> Result<Self, WordError> {
        Self::new((1..=n).map(|i| i % n + 1).collect())
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[Letter] {
        &self.0
    }

    /// `σ(i)` for 1-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.0[i - 1] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &l)| l as usize == i + 1)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, ")")
    }
}

/// All `n!` permutations of `1..=n`, lexicographic by image sequence. The
/// identity comes first.
pub fn enumerate_permutations(n: usize) -> Result<Vec<Permutation>, WordError> {
    if n == 0 {
        return Err(WordError::ZeroSize);
    }
    if n > MAX_GENERATORS {
        return Err(WordError::LetterOutOfRange {
            letter: n,
            n: MAX_GENERATORS,
        });
    }
    let mut current: Vec<Letter> = (1..=n as Letter).collect();
    let mut out = vec![Permutation(current.clone())];
    // next lexicographic permutation, in place
    while let Some(i) = (0..n - 1).rev().find(|&i| current[i] < current[i + 1]) {
        let j = (i + 1..n).rev().find(|&j| current[j] > current[i]).unwrap();
        current.swap(i, j);
        current[i + 1..].reverse();
        out.push(Permutation(current.clone()));
    }
    Ok(out)
}

/// `x_σ = x_{σ(1)} x_{σ(2)} ... x_{σ(n)}`.
pub fn perm_word(sigma: &Permutation) -> Word {
    Word(sigma.0.clone())
}

/// `x_ε = x1 x2 ... xn`.
pub fn identity_word(n: usize) -> Word {
    Word((1..=n as Letter).collect())
}

/// Whether `w` uses each of `1..=n` exactly once (i.e. `w = x_σ` for some σ).
pub fn is_permutation_word(w: &[Letter], n: usize) -> bool {
    if w.len() != n {
        return false;
    }
    let mut seen = [false; MAX_GENERATORS + 1];
    for &l in w {
        let l = l as usize;
        if l == 0 || l > n || seen[l] {
            return false;
        }
        seen[l] = true;
    }
    true
}

/// All words of length `len` over `1..=n`, deg-lex ascending.
pub fn all_words(n: usize, len: usize) -> impl Iterator<Item = Word> {
    let total = (n as u128).checked_pow(len as u32).unwrap_or(u128::MAX);
    (0..total).map(move |mut idx| {
        let mut v = vec![0 as Letter; len];
        for slot in v.iter_mut().rev() {
            *slot = (idx % n as u128) as Letter + 1;
            idx /= n as u128;
        }
        Word(v)
    })
}
