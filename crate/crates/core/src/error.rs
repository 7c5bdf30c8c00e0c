use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("degree overflow: {left} + {right} exceeds ambient dimension {n}")]
    DegreeOverflow { left: usize, right: usize, n: usize },
    #[error("invalid multi-index {indices:?} for ambient dimension {n}")]
    InvalidIndex { indices: Vec<usize>, n: usize },
    #[error("vector of length {len} in ambient dimension {ambient}")]
    VectorLength { len: usize, ambient: usize },
    #[error("matrix shape {rows}x{cols} does not match {expected}")]
    Shape { rows: usize, cols: usize, expected: String },
    #[error("basis is rank deficient: rank {rank} < {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error("planes are not transverse: intersection has dimension {0}")]
    NotTransverse(usize),
    #[error("zero vector where a nonzero point is required")]
    ZeroPoint,
    #[error("singular linear map")]
    Singular,
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("unsupported parameter: {0}")]
    Unsupported(String),
    #[error("search exhausted after {tries} tries")]
    SearchExhausted { tries: u64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("data error: {0}")]
    Data(String),
}

pub type Result<T> = std::result::Result<T, Error>;
