//! Possibilistic answer set programming for propositional normal programs
//! with rational certainty weights.
//!
//! The certainty of a conclusion is the weakest link in its derivation,
//! and `not a` is read as "to the extent that `a` is not certain": a rule
//! blocked by a low-certainty atom still fires, attenuated. Three
//! independent solvers implement this semantics and cross-check each
//! other, next to a baseline implementing the prior semantics that
//! attaches weights to classical answer sets after the fact:
//!
//! - [`preduct`]: the direct solver — a weight-attenuating reduct with a
//!   weighted least-fixpoint check, searched over a finite certainty grid.
//! - [`translate`]: compilation into a classical program over
//!   level-indexed atoms, solved classically and lifted back.
//! - [`possdist`]: the semantic reference — explicit possibility
//!   distributions over all interpretations, constrained rule by rule;
//!   exponential in the base size and meant as a desk-scale oracle.
//! - [`preduct::baseline_answer_sets`]: the prior semantics, kept for
//!   comparison.
//!
//! [`classical`] provides the underlying answer set machinery and
//! [`syntax`]/[`parse`] the shared program representation. All types are
//! immutable values; every solver returns its answer sets deduplicated in
//! ascending order, and with [`SearchOptions::parallel`] the guess spaces
//! are partitioned across threads without changing any output.

pub mod classical;
pub mod error;
pub mod parse;
pub mod possdist;
pub mod preduct;
pub mod search;
pub mod syntax;
pub mod translate;
pub mod weight;

pub use classical::Interpretation;
pub use error::{Error, ParseError};
pub use parse::parse_program;
pub use preduct::Valuation;
pub use search::SearchOptions;
pub use syntax::{render_program, Atom, PossRule, Program, ProgramKind, Rule};
pub use weight::{CertaintyScale, Weight};
