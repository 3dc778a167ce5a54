use thiserror::Error;

use crate::hamiltonian::Model;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("photon truncation n_max must be at least 1 (got {0})")]
    InvalidTruncation(usize),

    #[error("photon occupancy ({n_left}, {n_right}) exceeds truncation n_max = {n_max}")]
    OccupancyOutOfRange {
        n_left: usize,
        n_right: usize,
        n_max: usize,
    },

    #[error("invalid model parameters: {0}")]
    InvalidParams(String),

    #[error("operation requires the {expected} model, got {found}")]
    ModelMismatch { expected: Model, found: Model },

    #[error("matrix is not Hermitian (max |M - M^dagger| = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("trajectory extinguished: survival probability {survival:e} below 1e-12")]
    TrajectoryExtinguished { survival: f64 },

    #[error("state has amplitude {leakage:e} outside the computational subspace")]
    OutsideComputationalSubspace { leakage: f64 },

    #[error("unexpected subspace: {0}")]
    UnexpectedSubspace(String),

    #[error("singular matrix in {0}")]
    Singular(&'static str),
}
