use thiserror::Error;

use crate::report::Violation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("vector does not belong to the expected graded space")]
    SpaceMismatch,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),

    #[error("{0} is not homogeneous")]
    NotHomogeneous(String),

    #[error("duplicate basis label `{0}`")]
    DuplicateLabel(String),

    #[error("unknown basis label `{0}`")]
    UnknownLabel(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid splitting: {0}")]
    InvalidSplitting(String),

    #[error("invalid pairing: {0}")]
    InvalidPairing(String),

    #[error("{0} is not a cocycle")]
    NotCocycle(String),

    #[error("the chosen H0 is not closed under the bracket: [{0}, {1}] leaves H0")]
    NotBracketClosed(String, String),

    #[error("the chosen H0 does not project isomorphically onto H^0(L): {0}")]
    NotCohomologyComplement(String),

    #[error("the subspace is not closed under the structure maps: {0}")]
    NotSubalgebra(String),

    #[error("arity {arity} is outside the computed range 1..={bound}")]
    ArityOutOfRange { arity: usize, bound: usize },

    #[error("structure constants violate the DG-Lie axioms ({} violation(s))", .0.len())]
    InvalidAlgebra(Vec<Violation>),

    #[error("hypothesis of the formality theorem fails: {}", summarize(.0))]
    Hypothesis(Vec<Violation>),

    #[error("normalization of the splitting failed: {0}")]
    Normalization(String),

    #[error("the witness algorithm only covers degree n <= 2; got n = {0} (formality can fail for n >= 3)")]
    DegreeUnsupported(i32),

    #[error("lemma assertion `{lemma}` failed at {tuple} ({})", if *.hypotheses_hold { "hypotheses hold: implementation defect" } else { "input violates a hypothesis" })]
    LemmaViolation { lemma: String, tuple: String, hypotheses_hold: bool },

    #[error("linear system for {0} has no unique solution")]
    Singular(String),
}

fn summarize(v: &[Violation]) -> String {
    match v.first() {
        Some(first) if v.len() == 1 => first.to_string(),
        Some(first) => format!("{first} (+{} more)", v.len() - 1),
        None => "unspecified".to_string(),
    }
}
