use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("operator is not Hermitian: max |A - A^dag| = {deviation:.3e} exceeds {tol:.3e}")]
    NotHermitian { deviation: f64, tol: f64 },

    #[error("partial trace needs at least one kept party")]
    EmptyKeepSet,

    #[error("party index {index} out of range for {parties} parties")]
    PartyIndex { index: usize, parties: usize },

    #[error("eigensolver did not converge (dim {dim})")]
    EigenConvergence { dim: usize },

    #[error("invalid dimension profile: {0}")]
    InvalidProfile(String),

    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    #[error("state is not normalized: norm {norm}")]
    Normalization { norm: f64 },

    #[error("rank {rank} out of bounds for dimension {dim}")]
    RankOutOfBounds { rank: usize, dim: usize },

    #[error("unknown state '{0}'")]
    UnknownState(String),

    #[error("invalid cut: {0}")]
    InvalidCut(String),

    #[error("Kraus operators are not trace preserving: |sum K^dag K - I| = {deviation:.3e}")]
    NotTracePreserving { deviation: f64 },

    #[error("invalid channel: {0}")]
    InvalidChannel(String),

    #[error("unknown relation id '{0}'")]
    UnknownRelation(String),

    #[error("relation {id} is not applicable: {reason}")]
    Inapplicable { id: String, reason: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
