use thiserror::Error;

/// Errors raised by graph construction, matrix validation and the numerical solvers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("unsupported family {name} for n = {n}")]
    UnsupportedFamily { name: String, n: usize },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("graph is not a tree")]
    NotATree,

    #[error("invalid weight: {0}")]
    InvalidWeight(String),

    #[error("expected {expected} weights, got {got}")]
    WeightCount { expected: usize, got: usize },

    #[error("matrix is not symmetric (max asymmetry {0:.3e})")]
    NotSymmetric(f64),

    #[error("matrix is not skew-symmetric (max deviation {0:.3e})")]
    NotSkewSymmetric(f64),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid basis matrix P: {0}")]
    InvalidBasis(String),

    #[error("pattern mismatch: {0}")]
    PatternMismatch(String),

    #[error("order {n} exceeds the limit {max} for brute-force enumeration")]
    TooLarge { n: usize, max: usize },

    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),

    #[error("start matrix does not have the SSPWL")]
    NotStrong,

    #[error("no s-relation recorded for family {0}")]
    NoRelation(String),

    #[error("ambiguous eigenvalue multiplicity: gap {gap:.3e} is within a factor 10 of the threshold {threshold:.3e}")]
    AmbiguousMultiplicity { gap: f64, threshold: f64 },

    #[error("symmetric eigensolver did not converge")]
    EigenNonConvergence,

    #[error("Jacobian is rank deficient at iterate {weights:?}")]
    RankDeficientIterate { weights: Vec<f64> },

    #[error("weight floor reached at iterate {weights:?}")]
    WeightFloor { weights: Vec<f64> },

    #[error("iteration budget exhausted (residual {residual:.3e})")]
    IterationBudget { residual: f64 },

    #[error(
        "residual is not contracting; retry with a smaller seed weight such as {suggested_eps:.3e}"
    )]
    NotContracting { suggested_eps: f64 },

    #[error("retry budget exhausted: {0}")]
    RetryBudget(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// True for failures of a numerical procedure, as opposed to rejected input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::AmbiguousMultiplicity { .. }
                | Error::EigenNonConvergence
                | Error::RankDeficientIterate { .. }
                | Error::WeightFloor { .. }
                | Error::IterationBudget { .. }
                | Error::NotContracting { .. }
                | Error::RetryBudget(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
