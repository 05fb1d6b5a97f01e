//! Noncommutative Gröbner–Shirshov bases in the free associative algebra
//! `Q⟨x1, .., xn⟩`, and a workbench for the permutation-relation monoid
//! `S_n(Sym_n)`.
//!
//! * [`words`]: words, the deg-lex order, overlaps, permutations
//! * [`poly`]: exact rational polynomials
//! * [`rewrite`]: bases, reduction, normal forms
//! * [`compose`]: ambiguities and compositions
//! * [`complete`]: degree-bounded Shirshov completion
//! * [`symn`]: the rule sets for `S_n(Sym_n)` and their verification
//! * [`census`]: brute-force congruence oracle and growth counting

pub mod automaton;
pub mod census;
pub mod complete;
pub mod compose;
pub mod poly;
pub mod rewrite;
pub mod symn;
pub mod words;

pub use complete::{shirshov_complete, CompletionReport, CompletionStatus};
pub use compose::{
    check_trivial, composition_poly, enumerate_ambiguities, Ambiguity, AmbiguityKind, CompositionResult,
};
pub use poly::{Poly, Scalar};
pub use rewrite::{build_basis, irreducible_words, normal_form, reduce_step, Basis, ReductionTrace};
pub use words::{compare_deglex, Permutation, Word};
