//! Parameterized regular expressions.
//!
//! A parameterized regular expression is a regular expression over letters
//! and variables. Substituting letters (or words from per-variable regular
//! domains) for the variables yields ordinary regular expressions; the
//! *certainty* language is the intersection of all of them and the
//! *possibility* language their union.
//!
//! The crate provides
//! * [`syntax`]: parsing and printing,
//! * [`automata`]: NFAs/DFAs with products, complements and witnesses,
//! * [`valuations`]: enumeration and application of substitutions, regular domains,
//! * [`semantics`]: the decision problems under both semantics,
//! * [`fast_paths`]: specialized membership and nonemptiness algorithms,
//! * [`constructions`]: the emptiness-preserving combinator, witness families and fooling sets.

pub mod automata;
pub mod constructions;
pub mod error;
pub mod fast_paths;
pub mod semantics;
pub mod syntax;
pub mod valuations;

pub use automata::{Dfa, Label, Nfa, Symbol};
pub use error::{Error, Result};
pub use semantics::{DecisionReport, Limits, Problem, Semantics, Solver, Stats};
pub use syntax::{parse, print, word_to_string, Alphabet, Letter, ParamRegex, VarName, Word};
pub use valuations::{DomainSpec, FinitaryValuation, Valuation};
