//! Floating-point scalar abstraction for the quantum core.
//!
//! All linear algebra in [`crate::qcore`] is generic over a [`Scalar`] so the
//! same formulas run at `f32` or `f64` precision. Tolerances scale with the
//! precision; the documented defaults (and everything in the model layer) use
//! `f64`.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Floating-point scalar: `f32` or `f64`.
pub trait Scalar:
    Float + FloatConst + NumAssign + FromPrimitive + Sum + Debug + Display + Send + Sync + 'static
{
    /// Absolute tolerance for structural invariants (normalization,
    /// hermiticity, unit trace).
    const STRUCT_TOL: Self;
    /// Absolute tolerance for derived operator identities (idempotence,
    /// completeness, probability comparisons).
    const OP_TOL: Self;
    /// Threshold below which a probability or density is treated as zero.
    const ZERO_PROB_TOL: Self;
    /// Floor on eigenvalues for positive-semidefiniteness checks.
    const PSD_TOL: Self;

    /// Lossless-enough conversion from an `f64` constant.
    fn from_f64_c(x: f64) -> Self {
        Self::from_f64(x).expect("f64 constant representable in scalar type")
    }
}

impl Scalar for f64 {
    const STRUCT_TOL: f64 = 1e-12;
    const OP_TOL: f64 = 1e-10;
    const ZERO_PROB_TOL: f64 = 1e-12;
    const PSD_TOL: f64 = 1e-10;
}

impl Scalar for f32 {
    const STRUCT_TOL: f32 = 1e-5;
    const OP_TOL: f32 = 1e-4;
    const ZERO_PROB_TOL: f32 = 1e-6;
    const PSD_TOL: f32 = 1e-4;
}
