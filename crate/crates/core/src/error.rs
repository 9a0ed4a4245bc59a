use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square: {rows} x {cols}")]
    NotSquare { rows: usize, cols: usize },

    /// An agent has neither a neighbor nor a self-loop on a layer, so its
    /// adjacency row would be all zero.
    #[error("agent `{agent}` has an empty neighbor set on layer {layer}")]
    EmptyNeighborSet { agent: String, layer: u8 },

    #[error("stationary system is singular beyond normalization (chain is not uniquely ergodic)")]
    Reducible,

    #[error("no positive diagonal entry in the recurrent class; aperiodicity cannot be established")]
    Aperiodicity,

    #[error("activation period {0} is not supported by the analysis (only 2)")]
    UnsupportedPeriod(usize),

    #[error("assumption violated: {0}")]
    AssumptionViolated(String),

    #[error("chain has {} closed classes: {classes:?}", classes.len())]
    MultipleClosedClasses { classes: Vec<Vec<usize>> },

    #[error("numerical inconsistency: {0}")]
    NumericalInconsistency(String),

    #[error("bound calibration failed: {0}")]
    Calibration(String),

    #[error("opinion {value} of agent {index} is outside [0, 10]")]
    OpinionOutOfRange { index: usize, value: f64 },

    #[error("network file: {0}")]
    Schema(String),

    #[error("network file is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
