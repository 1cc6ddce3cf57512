//! Error types shared across the crate.

use thiserror::Error;

use crate::syntax::Atom;
use crate::weight::Weight;

/// Everything that can go wrong while parsing, validating or solving.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0}")]
    Parse(#[from] ParseError),

    #[error("weight `{literal}` is outside [0, 1]")]
    WeightOutOfRange { literal: String },

    #[error("weight `{literal}` has more than 6 fractional digits")]
    TooManyFractionDigits { literal: String },

    #[error("malformed weight literal `{literal}`")]
    MalformedWeight { literal: String },

    #[error("program is not definite: rule {rule_index} uses negation as failure")]
    NotDefinite { rule_index: usize },

    #[error("program is not classical: rule {rule_index} has weight {weight}")]
    NotClassical { rule_index: usize, weight: Weight },

    #[error("unknown atom `{0}`")]
    UnknownAtom(Atom),

    #[error("invalid atom name `{0}` (lowercase letter, then letters, digits or underscores)")]
    InvalidAtomName(String),

    #[error("no guess value for naf atom `{0}`")]
    MissingGuess(Atom),

    #[error(
        "rule weight {weight} is not on the scale; extend the scale to include it \
         (for the CLI, add it to --grid/--scale or use the automatic closure)"
    )]
    OffScaleWeight { weight: Weight },

    #[error("value {value} of atom `{atom}` is not on the scale, so no scaled image exists")]
    OffScaleValue { atom: Atom, value: Weight },

    #[error("atom `{0}` collides with generated scaled-atom names (pattern `name__N`)")]
    ScaledNameCollision(Atom),

    #[error(
        "search size {needed} exceeds the guard limit of {limit}; \
         raise the limit to proceed (results are never silently truncated)"
    )]
    GuardExceeded { needed: u128, limit: u128 },
}

/// A syntax error with its position in the source text.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}
