//! Error type shared by every engine layer.

use thiserror::Error;

/// Errors raised by the engine.
///
/// Everything here is a *definitive* failure: operations that merely cannot
/// decide a question return an `Unknown`-style verdict instead of an error.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("inexact division: {divisor} does not divide {dividend}")]
    InexactDivision { dividend: String, divisor: String },

    #[error("zero polynomial has no leading term")]
    ZeroPolynomial,

    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),

    #[error("free-module rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },

    #[error("ill-defined morphism: relation {relation} maps to {image} != 0")]
    IllDefinedMorphism { relation: String, image: String },

    #[error("ill-defined module map: relation image {0} does not reduce to zero")]
    IllDefinedMap(String),

    #[error("operation requires an asserted domain: {0}")]
    NotADomain(String),

    #[error("exterior power degree out of range: n = {n}, rank = {rank}")]
    DegreeOutOfRange { n: usize, rank: usize },

    #[error("reduced-structure candidate rejected: {0}")]
    CandidateRejected(String),

    #[error("membership method inapplicable: {0}")]
    MethodInapplicable(String),

    #[error("injectivity criterion inapplicable: {0}")]
    CriterionInapplicable(String),

    #[error("invalid cover diagram: {0}")]
    DiagramInvalid(String),

    #[error("hyperplane is zero on the variety: {0}")]
    DegenerateHyperplane(String),

    #[error("unknown scenario: {0}")]
    UnknownScenario(String),

    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
