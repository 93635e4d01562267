use thiserror::Error;

/// Errors raised by model construction and analysis.
///
/// Invariant violations of an otherwise well-formed model are not errors;
/// they are collected in a [`crate::hmm::ValidationReport`].
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid probability distribution: {0}")]
    InvalidDistribution(String),

    #[error("model failed validation: {0}")]
    Validation(String),

    #[error("stationary distribution is not unique ({0}); supply `initial` explicitly")]
    NonUniqueStationary(String),

    #[error("{what} did not converge after {iterations} iterations (residual {residual:e})")]
    NonConvergence {
        what: &'static str,
        iterations: usize,
        residual: f64,
    },

    #[error("word enumeration budget exceeded: {symbols}^{length} words exceeds the cap of {cap}")]
    BudgetExceeded { symbols: usize, length: usize, cap: usize },

    #[error("model is not unifilar (state {state}, symbol {symbol} has several successors); exact excess entropy from the channel needs an epsilon-machine")]
    NotUnifilar { state: usize, symbol: usize },

    #[error("negative eigenvalue {0:e} below tolerance; density matrix is corrupt")]
    NegativeEigenvalue(f64),

    #[error("all outcome probabilities vanished; quantum state is corrupt")]
    VanishingProbability,

    #[error("unknown catalog entry `{0}`")]
    UnknownCatalogEntry(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("internal consistency violation: {0}")]
    InternalConsistency(String),

    #[error("model file: {0}")]
    Format(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
