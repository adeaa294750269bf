//! Simulation and verification toolkit for ontological models of quantum
//! theory with sequential-measurement state update.
//!
//! The crate has three layers:
//!
//! * [`qcore`] — finite-dimensional quantum mechanics (states, projective
//!   measurements, instruments, Born rule, Lüders update). This is the ground
//!   truth every model is checked against. The core is generic over the
//!   floating-point [`scalar::Scalar`]; the crate-root aliases pin `f64`.
//! * [`model`] — the ontological-model contract (ontic space Λ, preparation
//!   distribution μ, transition Γ, response ξ, update η), verification
//!   harnesses, epistemicity classification, and generic combinators.
//! * [`models`], [`stabilizer`], [`nogo`], [`hmm`] — the concrete models from
//!   the literature, the qupit stabilizer machinery behind the discrete-Wigner
//!   model, executable no-go witness constructions, and the hidden-Markov
//!   channel view of a model.

pub mod hmm;
pub mod linalg;
pub mod model;
pub mod models;
pub mod nogo;
pub mod qcore;
pub mod scalar;
pub mod stabilizer;

pub use scalar::Scalar;

/// `f64` instantiations of the quantum core, the precision every model and
/// verification path in this crate runs at.
pub type PureState = qcore::PureState<f64>;
pub type DensityMatrix = qcore::DensityMatrix<f64>;
pub type Projector = qcore::Projector<f64>;
pub type ProjectiveMeasurement = qcore::ProjectiveMeasurement<f64>;
pub type Instrument = qcore::Instrument<f64>;
pub type Unitary = qcore::Unitary<f64>;

/// Single-precision aliases for callers that trade accuracy for size.
pub type PureState32 = qcore::PureState<f32>;
pub type DensityMatrix32 = qcore::DensityMatrix<f32>;
pub type Projector32 = qcore::Projector<f32>;
pub type ProjectiveMeasurement32 = qcore::ProjectiveMeasurement<f32>;

/// Absolute tolerance for structural invariants at `f64`.
pub const STRUCT_TOL: f64 = <f64 as Scalar>::STRUCT_TOL;
/// Absolute tolerance for probability comparisons at `f64`.
pub const PROB_TOL: f64 = <f64 as Scalar>::OP_TOL;
/// Threshold below which densities and probabilities count as zero.
pub const ZERO_PROB_TOL: f64 = <f64 as Scalar>::ZERO_PROB_TOL;
/// Monte-Carlo acceptance width in standard errors.
pub const MC_SIGMA: f64 = 4.0;
/// Default Monte-Carlo sample count.
pub const DEFAULT_SAMPLES: u64 = 1_000_000;
