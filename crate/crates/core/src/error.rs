use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("field mismatch")]
    FieldMismatch,
    #[error("zero scalar where a nonzero one is required")]
    ZeroScalar,
    #[error("zero input")]
    ZeroInput,
    #[error("polynomial span exceeds {max} coefficients")]
    SpanOverflow { max: usize },
    #[error("generator is catastrophic")]
    Catastrophic,
    #[error("generator is not self-orthogonal")]
    NotSelfOrthogonal,
    #[error("budget exhausted: {0}")]
    Budget(String),
    #[error("weight cutoff {0} exceeded before remerge")]
    Cutoff(u32),
    #[error("tail-biting length {l} too small (need at least {min})")]
    TooShort { l: usize, min: usize },
    #[error("empty generator set")]
    EmptyGenerators,
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("incompatible: {0}")]
    Incompatible(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
