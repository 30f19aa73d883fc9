use thiserror::Error;

/// Errors for state validation, game evaluation, and search.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {expected} vs {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("empty ensemble")]
    EmptyEnsemble,

    #[error("state is not normalized (norm {0})")]
    NotNormalized(f64),

    #[error("operator is not Hermitian (max asymmetry {0:.3e})")]
    NotHermitian(f64),

    #[error("operator is not positive semidefinite (min eigenvalue {0:.3e})")]
    NotPsd(f64),

    #[error("trace is not 1 (got {0})")]
    InvalidTrace(f64),

    #[error("measurement effects do not sum to identity (max deviation {0:.3e})")]
    EffectsSumNotIdentity(f64),

    #[error("state label {label} out of range for ensemble of {count}")]
    LabelOutOfRange { label: usize, count: usize },

    #[error("invariant order must be at least {min} (got {got})")]
    OrderTooSmall { min: usize, got: usize },

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("Gram matrix has no positive eigenvalues")]
    ZeroRankGram,

    #[error("Gram matrices disagree (max deviation {0:.3e})")]
    GramMismatch(f64),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("objective evaluated to a non-finite value")]
    NonFiniteObjective,

    #[error("unknown strategy id: {0:?}")]
    UnknownStrategy(String),
}

pub type Result<T> = std::result::Result<T, Error>;
