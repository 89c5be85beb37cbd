use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("omega undefined at zero")]
    OmegaAtZero,
    #[error("not a tropical polynomial: negative exponent in {0}")]
    NotTropicalPolynomial(String),
    #[error("empty hypersurface")]
    EmptyHypersurface,
    #[error("window too small: vertex {0} lies outside")]
    WindowTooSmall(String),
    #[error("too many terms: {found} > {limit}")]
    TooManyTerms { found: usize, limit: usize },
    #[error("n = {n} outside supported range 1..={bound}")]
    OutOfBound { n: usize, bound: usize },
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("invalid direction: {0}")]
    InvalidDirection(String),
    #[error("invalid subgraph: {0}")]
    InvalidSubgraph(String),
    #[error("curve is disconnected")]
    Disconnected,
    #[error("functions live on different curves")]
    CurveMismatch,
    #[error("invalid function: {0}")]
    InvalidFunction(String),
    #[error("operation undefined for the zero function")]
    ZeroFunction,
    #[error("empty generator list")]
    EmptyGenerators,
    #[error("not an element of the pseudodirect product")]
    NotPseudoDirect,
    #[error("slope must be a negative integer, got {0}")]
    NonNegativeSlope(i64),
    #[error("slope too shallow: descent does not fit on edge {edge}; use |s| >= {min_abs}")]
    SlopeTooShallow { edge: String, min_abs: i64 },
    #[error("rays of class {class} carry different slopes at infinity")]
    ParallelViolation { class: String },
    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),
    #[error("functions disagree on the shared subgraph at {point}: {left} vs {right}")]
    GlueMismatch { point: String, left: String, right: String },
    #[error("invalid morphism: {}", .0.join("; "))]
    InvalidMorphism(Vec<String>),
    #[error("morphism is not a weight")]
    NotAWeight,
    #[error("non-constant slope on edge {0}")]
    NonConstantSlope(String),
    #[error("weight undetermined on level edge")]
    WeightUndetermined,
    #[error("non-transversal intersection at {point}: condition ({condition}) fails: {detail}")]
    NonTransversal { point: String, condition: u8, detail: String },
    #[error("realization is not injective")]
    NotInjective,
    #[error("complex is not balanced")]
    NotBalanced,
    #[error("complex is not connected")]
    ComplexDisconnected,
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("not a hypersurface: inconsistent exponents around cycle {0}")]
    NotHypersurface(String),
    #[error("internal verification failed: {0}")]
    Internal(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("malformed input at line {line}, column {column}: {msg}")]
    Malformed { line: usize, column: usize, msg: String },
}
