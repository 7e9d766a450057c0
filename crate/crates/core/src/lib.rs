//! Forkable regular expressions.
//!
//! Regular expressions over an event alphabet extended with a fork operator
//! `F(r)`, whose traces interleave with everything that follows. The crate
//! provides:
//!
//! - [`syntax`]: the term language, parser and printer
//! - [`oracle`]: exact bounded-length trace semantics, used as ground truth
//! - [`decompose`]: concurrent/sequential parts, nullable and emptiness tests
//! - [`similarity`]: canonical normal forms deciding similarity
//! - [`derivative`]: derivatives and the derivative-based matcher
//! - [`automaton`]: well-behavedness certification, derivative automata,
//!   containment and equivalence
//! - [`gen`]: seeded random expressions for fuzzing

pub mod automaton;
pub mod decompose;
pub mod derivative;
pub mod gen;
pub mod oracle;
pub mod similarity;
pub mod syntax;

pub use automaton::{
    check_well_behaved, contains, count_reachable_states, equivalent, explore, Dfa,
    StateExplosion, Verdict, WellBehavedReport,
};
pub use decompose::{conc_part, is_empty, nullable, seq_part};
pub use derivative::{deriv, deriv_canonical, deriv_word, matches};
pub use oracle::{lang, BoundedLanguage, Word};
pub use similarity::{normalize, similar, Canonical};
pub use syntax::{parse, Alphabet, Behavior, ParseError, Symbol};
