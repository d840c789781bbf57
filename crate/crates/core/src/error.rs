use thiserror::Error;

/// Errors produced across the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("ground set size {n} exceeds the single-word cap of 64; enable wide mode")]
    WidthLimit { n: usize },

    #[error("duplicate set at positions {first} and {second}")]
    DuplicateSet { first: usize, second: usize },

    #[error("distance set contains 0; close-Sperner checks need positive distances, use the sd-family check instead")]
    SpecMismatch,

    #[error("distance {value} lies outside [0, {n}]")]
    DistanceOutOfRange { value: usize, n: usize },

    #[error("skew-distance profile needs at least two sets, got {0}")]
    EmptyProfile(usize),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("degenerate range: n = {n} is below 2t = {}", 2 * .t)]
    DegenerateRange { n: usize, t: usize },

    #[error("unsupported projective plane order {0}: only prime orders are built")]
    UnsupportedOrder(usize),

    #[error("projective plane axiom failed: {0}")]
    PlaneAxiom(String),

    #[error("certificate undefined: 0 in L makes every diagonal value vanish")]
    CertificateUndefined,

    #[error("precondition violated: sets {i} and {j} have skew distance {distance}, not in L")]
    PreconditionViolation { i: usize, j: usize, distance: usize },

    #[error("unsupported distance set: {0}")]
    UnsupportedSpec(String),

    #[error("the family {{∅}} is excluded: its polynomial is a constant multiple of 1")]
    ExcludedFamily,

    #[error("polynomial of degree {degree} does not fit in a monomial space of degree cap {cap}")]
    SpaceTooSmall { degree: usize, cap: usize },

    #[error("n = {n} exceeds the configured search cap {cap}")]
    SizeLimit { n: usize, cap: usize },

    #[error(
        "representative-set dichotomy fails on level {level}: neither |∩| = i-1 nor |∪| = i+1"
    )]
    LemmaViolation { level: usize },

    #[error("no special element exists: {0}")]
    ProofHypothesis(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
