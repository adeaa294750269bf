//! Pure states and density matrices.

use ndarray::{Array1, Array2};
use num_complex::Complex;
use num_traits::Zero;
use rand::Rng;

use super::{ProjectiveMeasurement, Projector, QcoreError, QcoreResult};
use crate::linalg;
use crate::scalar::Scalar;

/// A normalized pure state with the global phase fixed so the first nonzero
/// amplitude is real and positive. The canonical form makes equality tests on
/// projective Hilbert space deterministic.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState<S: Scalar = f64> {
    amplitudes: Array1<Complex<S>>,
}

impl<S: Scalar> PureState<S> {
    /// Build from amplitudes that are already normalized (within tolerance).
    pub fn new(amplitudes: Array1<Complex<S>>) -> QcoreResult<Self> {
        if amplitudes.is_empty() {
            return Err(QcoreError::InvalidState("empty amplitude vector".into()));
        }
        let norm_sq: S = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if (norm_sq - S::one()).abs() > S::STRUCT_TOL {
            return Err(QcoreError::InvalidState(format!(
                "state not normalized: |ψ|² = {norm_sq}"
            )));
        }
        Ok(Self::canonicalized(amplitudes))
    }

    /// Build from any nonzero vector, rescaling to unit norm.
    pub fn normalized(amplitudes: Array1<Complex<S>>) -> QcoreResult<Self> {
        let norm: S = amplitudes.iter().map(|z| z.norm_sqr()).sum::<S>().sqrt();
        if norm <= S::ZERO_PROB_TOL {
            return Err(QcoreError::InvalidState("cannot normalize zero vector".into()));
        }
        Ok(Self::canonicalized(amplitudes.mapv(|z| z / norm)))
    }

    fn canonicalized(mut amplitudes: Array1<Complex<S>>) -> Self {
        let pivot = amplitudes.iter().position(|z| z.norm() > S::STRUCT_TOL);
        if let Some(i) = pivot {
            let first = amplitudes[i];
            // Already canonical: leave bits untouched so serialization
            // round-trips exactly.
            if !(first.im.is_zero() && first.re > S::zero()) {
                let norm = first.norm();
                let inv = (first / Complex::from(norm)).conj();
                amplitudes.mapv_inplace(|z| z * inv);
                // The pivot is real by construction; pin it exactly so
                // canonicalization is idempotent.
                amplitudes[i] = Complex::new(norm, S::zero());
            }
        }
        Self { amplitudes }
    }

    /// Computational basis state |j⟩.
    pub fn basis_state(d: usize, j: usize) -> Self {
        assert!(j < d, "basis index out of range");
        let mut amplitudes = Array1::zeros(d);
        amplitudes[j] = Complex::new(S::one(), S::zero());
        Self { amplitudes }
    }

    /// Equal superposition of the listed basis vectors.
    pub fn uniform_superposition(d: usize, indices: &[usize]) -> Self {
        let mut amplitudes: Array1<Complex<S>> = Array1::zeros(d);
        let w = Complex::new(S::one() / S::from_f64_c(indices.len() as f64).sqrt(), S::zero());
        for &j in indices {
            amplitudes[j] = w;
        }
        Self::canonicalized(amplitudes)
    }

    pub fn dimension(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &Array1<Complex<S>> {
        &self.amplitudes
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &Self) -> Complex<S> {
        self.amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .map(|(a, b)| a.conj() * *b)
            .sum()
    }

    /// |⟨self|other⟩|².
    pub fn overlap_sq(&self, other: &Self) -> S {
        self.inner(other).norm_sqr()
    }

    pub fn is_orthogonal_to(&self, other: &Self, tol: S) -> bool {
        self.inner(other).norm() <= tol
    }

    /// Equality on projective Hilbert space, decided on canonical forms.
    pub fn approx_eq(&self, other: &Self, tol: S) -> bool {
        self.dimension() == other.dimension()
            && self
                .amplitudes
                .iter()
                .zip(other.amplitudes.iter())
                .all(|(a, b)| (*a - *b).norm() <= tol)
    }

    pub fn projector(&self) -> Projector<S> {
        Projector::from_state(self)
    }

    pub fn density(&self) -> DensityMatrix<S> {
        DensityMatrix::from_pure(self)
    }

    pub(crate) fn outer(&self) -> Array2<Complex<S>> {
        let d = self.dimension();
        Array2::from_shape_fn((d, d), |(i, j)| {
            self.amplitudes[i] * self.amplitudes[j].conj()
        })
    }
}

impl PureState<f64> {
    /// Haar-random pure state.
    pub fn haar<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Self {
        Self::canonicalized(linalg::haar_state_amplitudes(d, rng))
    }
}

impl serde::Serialize for PureState<f64> {
    fn serialize<Se: serde::Serializer>(&self, serializer: Se) -> Result<Se::Ok, Se::Error> {
        let pairs: Vec<[f64; 2]> = self.amplitudes.iter().map(|z| [z.re, z.im]).collect();
        pairs.serialize(serializer)
    }
}

impl<'de> serde::Deserialize<'de> for PureState<f64> {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let pairs = Vec::<[f64; 2]>::deserialize(deserializer)?;
        let amplitudes: Array1<Complex<f64>> =
            pairs.iter().map(|[re, im]| Complex::new(*re, *im)).collect();
        PureState::new(amplitudes).map_err(serde::de::Error::custom)
    }
}

/// A d×d density matrix: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone)]
pub struct DensityMatrix<S: Scalar = f64> {
    matrix: Array2<Complex<S>>,
}

impl<S: Scalar> DensityMatrix<S> {
    pub fn from_matrix(matrix: Array2<Complex<S>>) -> QcoreResult<Self> {
        if matrix.nrows() != matrix.ncols() || matrix.nrows() == 0 {
            return Err(QcoreError::InvalidOperator("density matrix must be square".into()));
        }
        if !linalg::is_hermitian(&matrix, S::STRUCT_TOL) {
            return Err(QcoreError::InvalidOperator("density matrix not Hermitian".into()));
        }
        let tr = linalg::trace(&matrix);
        if (tr.re - S::one()).abs() > S::STRUCT_TOL || tr.im.abs() > S::STRUCT_TOL {
            return Err(QcoreError::InvalidOperator(format!(
                "density matrix trace {tr} != 1"
            )));
        }
        let eigs = linalg::hermitian_eigenvalues(&matrix);
        if eigs.first().copied().unwrap_or_else(S::zero) < -S::PSD_TOL {
            return Err(QcoreError::InvalidOperator(format!(
                "density matrix not positive semidefinite (min eigenvalue {})",
                eigs[0]
            )));
        }
        Ok(Self { matrix })
    }

    pub fn from_pure(state: &PureState<S>) -> Self {
        Self { matrix: state.outer() }
    }

    /// Convex mixture Σ wᵢ |ψᵢ⟩⟨ψᵢ|. Weights must sum to 1.
    pub fn mixture(parts: &[(S, PureState<S>)]) -> QcoreResult<Self> {
        if parts.is_empty() {
            return Err(QcoreError::InvalidArgument("empty mixture".into()));
        }
        let d = parts[0].1.dimension();
        let mut matrix = Array2::zeros((d, d));
        for (w, psi) in parts {
            if psi.dimension() != d {
                return Err(QcoreError::DimensionMismatch { expected: d, found: psi.dimension() });
            }
            matrix = matrix + psi.outer().mapv(|z| z * Complex::from(*w));
        }
        Self::from_matrix(matrix)
    }

    pub fn dimension(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &Array2<Complex<S>> {
        &self.matrix
    }

    /// tr ρ².
    pub fn purity(&self) -> S {
        linalg::trace(&self.matrix.dot(&self.matrix)).re
    }

    pub fn approx_eq(&self, other: &Self, tol: S) -> bool {
        self.dimension() == other.dimension()
            && linalg::max_abs_diff(&self.matrix, &other.matrix) <= tol
    }

    /// Outcome probability tr(Π_k ρ).
    pub fn born(&self, measurement: &ProjectiveMeasurement<S>, k: usize) -> QcoreResult<S> {
        if measurement.dimension() != self.dimension() {
            return Err(QcoreError::DimensionMismatch {
                expected: self.dimension(),
                found: measurement.dimension(),
            });
        }
        let num = measurement.num_outcomes();
        if k >= num {
            return Err(QcoreError::OutcomeOutOfRange { outcome: k, num_outcomes: num });
        }
        let p = linalg::trace(&measurement.projector(k).matrix().dot(&self.matrix)).re;
        Ok(p.max(S::zero()).min(S::one()))
    }
}

impl<S: Scalar> From<PureState<S>> for DensityMatrix<S> {
    fn from(state: PureState<S>) -> Self {
        Self::from_pure(&state)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;
    use num_complex::Complex64 as C64;

    fn plus() -> PureState {
        PureState::uniform_superposition(2, &[0, 1])
    }

    #[test]
    fn canonical_phase_first_nonzero_real_positive() {
        let raw = array![C64::new(0.0, 0.5), C64::new(0.5, -0.5), C64::new(0.0, 0.5)];
        let psi = PureState::normalized(raw).unwrap();
        let a0 = psi.amplitudes()[0];
        assert!(a0.im.abs() < 1e-12 && a0.re > 0.0);
    }

    #[test]
    fn equal_up_to_global_phase() {
        let a = plus();
        let raw = array![C64::new(0.0, 1.0), C64::new(0.0, 1.0)];
        let b = PureState::normalized(raw).unwrap();
        assert!(a.approx_eq(&b, 1e-12));
    }

    #[test]
    fn rejects_unnormalized() {
        let raw = array![C64::new(1.0, 0.0), C64::new(1.0, 0.0)];
        assert!(PureState::new(raw).is_err());
    }

    #[test]
    fn mixture_purity() {
        let rho = DensityMatrix::mixture(&[
            (0.5, PureState::basis_state(2, 0)),
            (0.5, PureState::basis_state(2, 1)),
        ])
        .unwrap();
        assert!((rho.purity() - 0.5).abs() < 1e-12);
        let pure = DensityMatrix::from_pure(&plus());
        assert!((pure.purity() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn non_psd_rejected() {
        let m = array![
            [C64::new(1.5, 0.0), C64::new(0.0, 0.0)],
            [C64::new(0.0, 0.0), C64::new(-0.5, 0.0)]
        ];
        assert!(DensityMatrix::from_matrix(m).is_err());
    }
}
