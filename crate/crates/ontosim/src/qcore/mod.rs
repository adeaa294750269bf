//! Finite-dimensional quantum mechanics used as ground truth: states,
//! projectors, measurements, instruments, the Born rule, Lüders update, and
//! sequential-outcome probabilities.

mod instrument;
mod measurement;
mod ops;
mod state;
mod unitary;

pub use instrument::{CoarseGraining, Instrument};
pub use measurement::{ProjectiveMeasurement, Projector};
pub use ops::{born_probability, luders_update, sequential_probability};
pub use state::{DensityMatrix, PureState};
pub use unitary::Unitary;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum QcoreError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("outcome index {outcome} out of range for {num_outcomes} outcomes")]
    OutcomeOutOfRange { outcome: usize, num_outcomes: usize },
    #[error("undefined update: zero-probability branch")]
    UndefinedUpdate,
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("invalid operator: {0}")]
    InvalidOperator(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type QcoreResult<T> = Result<T, QcoreError>;
