//! Projectors and projective measurements.

use ndarray::{Array1, Array2};
use num_complex::Complex;

use super::{PureState, QcoreError, QcoreResult};
use crate::linalg;
use crate::scalar::Scalar;

/// An orthogonal projector Π with Π² = Π, Π = Π† and rank = tr Π.
#[derive(Debug, Clone)]
pub struct Projector<S: Scalar = f64> {
    matrix: Array2<Complex<S>>,
    rank: usize,
}

impl<S: Scalar> Projector<S> {
    pub fn from_matrix(matrix: Array2<Complex<S>>) -> QcoreResult<Self> {
        if matrix.nrows() != matrix.ncols() || matrix.nrows() == 0 {
            return Err(QcoreError::InvalidOperator("projector must be square".into()));
        }
        if !linalg::is_hermitian(&matrix, S::STRUCT_TOL) {
            return Err(QcoreError::InvalidOperator("projector not Hermitian".into()));
        }
        let sq = matrix.dot(&matrix);
        if linalg::max_abs_diff(&sq, &matrix) > S::OP_TOL {
            return Err(QcoreError::InvalidOperator("projector not idempotent".into()));
        }
        let tr = linalg::trace(&matrix).re;
        let rank = tr.round();
        if (tr - rank).abs() > S::OP_TOL || rank < S::zero() {
            return Err(QcoreError::InvalidOperator(format!(
                "projector trace {tr} is not a nonnegative integer"
            )));
        }
        Ok(Self { matrix, rank: rank.to_f64().map(|r| r as usize).unwrap_or(0) })
    }

    /// The zero operator, used to pad measurements to a fixed outcome count.
    pub fn zero(d: usize) -> Self {
        Self { matrix: Array2::zeros((d, d)), rank: 0 }
    }

    pub fn identity(d: usize) -> Self {
        Self { matrix: linalg::identity(d), rank: d }
    }

    pub fn from_state(state: &PureState<S>) -> Self {
        Self { matrix: state.outer(), rank: 1 }
    }

    /// Sum of projectors onto the given mutually orthogonal states.
    pub fn from_states(states: &[PureState<S>]) -> QcoreResult<Self> {
        if states.is_empty() {
            return Err(QcoreError::InvalidArgument("no states given".into()));
        }
        let d = states[0].dimension();
        let mut matrix = Array2::zeros((d, d));
        for s in states {
            matrix = matrix + s.outer();
        }
        Self::from_matrix(matrix)
    }

    pub fn dimension(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0
    }

    pub fn matrix(&self) -> &Array2<Complex<S>> {
        &self.matrix
    }

    /// Unnormalized image Π|ψ⟩.
    pub fn apply(&self, state: &PureState<S>) -> Array1<Complex<S>> {
        self.matrix.dot(state.amplitudes())
    }

    /// ⟨ψ|Π|ψ⟩, clamped into [0, 1].
    pub fn expectation(&self, state: &PureState<S>) -> S {
        let image = self.apply(state);
        let p: S = image.iter().map(|z| z.norm_sqr()).sum();
        p.min(S::one())
    }

    /// tr(Π ρ-of-φ): overlap with another pure state's projector.
    pub fn trace_with(&self, state: &PureState<S>) -> S {
        self.expectation(state)
    }

    /// 𝕀 − Π.
    pub fn complement(&self) -> Self {
        Self {
            matrix: linalg::identity(self.dimension()) - &self.matrix,
            rank: self.dimension() - self.rank,
        }
    }

    /// For a rank-1 projector, the state it projects onto.
    pub fn principal_state(&self) -> QcoreResult<PureState<S>> {
        if self.rank != 1 {
            return Err(QcoreError::InvalidOperator(format!(
                "principal state of a rank-{} projector",
                self.rank
            )));
        }
        // Π = |φ⟩⟨φ|: the column with the largest diagonal entry is φ·conj(φ_j).
        let j = (0..self.dimension())
            .max_by(|&a, &b| {
                self.matrix[(a, a)]
                    .re
                    .partial_cmp(&self.matrix[(b, b)].re)
                    .expect("real diagonal")
            })
            .expect("nonempty matrix");
        PureState::normalized(self.matrix.column(j).to_owned())
    }

    pub fn approx_eq(&self, other: &Self, tol: S) -> bool {
        self.dimension() == other.dimension()
            && linalg::max_abs_diff(&self.matrix, &other.matrix) <= tol
    }
}

pub(crate) fn matrix_to_pairs(m: &ndarray::Array2<Complex<f64>>) -> Vec<Vec<[f64; 2]>> {
    m.rows().into_iter().map(|row| row.iter().map(|z| [z.re, z.im]).collect()).collect()
}

pub(crate) fn pairs_to_matrix(
    rows: &[Vec<[f64; 2]>],
) -> Result<ndarray::Array2<Complex<f64>>, String> {
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err("matrix rows must be square and nonempty".to_string());
    }
    Ok(Array2::from_shape_fn((n, n), |(i, j)| {
        Complex::new(rows[i][j][0], rows[i][j][1])
    }))
}

impl serde::Serialize for Projector<f64> {
    fn serialize<Se: serde::Serializer>(&self, serializer: Se) -> Result<Se::Ok, Se::Error> {
        matrix_to_pairs(&self.matrix).serialize(serializer)
    }
}

impl<'de> serde::Deserialize<'de> for Projector<f64> {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<[f64; 2]>>::deserialize(deserializer)?;
        let m = pairs_to_matrix(&rows).map_err(serde::de::Error::custom)?;
        Projector::from_matrix(m).map_err(serde::de::Error::custom)
    }
}

/// An ordered, complete family of pairwise-orthogonal projectors. Outcome
/// labels are the indices 0..num_outcomes.
#[derive(Debug, Clone)]
pub struct ProjectiveMeasurement<S: Scalar = f64> {
    projectors: Vec<Projector<S>>,
}

impl<S: Scalar> ProjectiveMeasurement<S> {
    pub fn new(projectors: Vec<Projector<S>>) -> QcoreResult<Self> {
        if projectors.is_empty() {
            return Err(QcoreError::InvalidArgument("measurement with no outcomes".into()));
        }
        let d = projectors[0].dimension();
        for p in &projectors {
            if p.dimension() != d {
                return Err(QcoreError::DimensionMismatch { expected: d, found: p.dimension() });
            }
        }
        for i in 0..projectors.len() {
            for j in (i + 1)..projectors.len() {
                let prod = projectors[i].matrix().dot(projectors[j].matrix());
                if linalg::frobenius_norm(&prod) > S::OP_TOL {
                    return Err(QcoreError::InvalidOperator(format!(
                        "projectors {i} and {j} not orthogonal"
                    )));
                }
            }
        }
        let mut sum = Array2::zeros((d, d));
        for p in &projectors {
            sum = sum + p.matrix();
        }
        if linalg::max_abs_diff(&sum, &linalg::identity(d)) > S::OP_TOL {
            return Err(QcoreError::InvalidOperator("measurement not complete".into()));
        }
        Ok(Self { projectors })
    }

    /// The computational (standard) basis measurement.
    pub fn computational(d: usize) -> Self {
        let projectors = (0..d)
            .map(|j| Projector::from_state(&PureState::basis_state(d, j)))
            .collect();
        Self { projectors }
    }

    /// Rank-1 measurement from an orthonormal basis.
    pub fn from_basis(states: &[PureState<S>]) -> QcoreResult<Self> {
        Self::new(states.iter().map(Projector::from_state).collect())
    }

    /// The two-outcome measurement {Π, 𝕀 − Π}.
    pub fn two_outcome(projector: Projector<S>) -> QcoreResult<Self> {
        let complement = projector.complement();
        Self::new(vec![projector, complement])
    }

    pub fn dimension(&self) -> usize {
        self.projectors[0].dimension()
    }

    pub fn num_outcomes(&self) -> usize {
        self.projectors.len()
    }

    pub fn projector(&self, k: usize) -> &Projector<S> {
        &self.projectors[k]
    }

    pub fn projectors(&self) -> &[Projector<S>] {
        &self.projectors
    }

    /// All non-padding projectors are rank 1.
    pub fn is_rank_one(&self) -> bool {
        self.projectors.iter().all(|p| p.rank() <= 1)
    }

    /// Pad with zero projectors up to `len` outcomes.
    pub fn padded(&self, len: usize) -> Self {
        let mut projectors = self.projectors.clone();
        while projectors.len() < len {
            projectors.push(Projector::zero(self.dimension()));
        }
        Self { projectors }
    }

    pub fn approx_eq(&self, other: &Self, tol: S) -> bool {
        self.num_outcomes() == other.num_outcomes()
            && self
                .projectors
                .iter()
                .zip(other.projectors.iter())
                .all(|(a, b)| a.approx_eq(b, tol))
    }

    pub(crate) fn from_projectors_unchecked(projectors: Vec<Projector<S>>) -> Self {
        Self { projectors }
    }
}

impl serde::Serialize for ProjectiveMeasurement<f64> {
    fn serialize<Se: serde::Serializer>(&self, serializer: Se) -> Result<Se::Ok, Se::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.projectors.len()))?;
        for p in &self.projectors {
            seq.serialize_element(p)?;
        }
        seq.end()
    }
}

impl<'de> serde::Deserialize<'de> for ProjectiveMeasurement<f64> {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let projectors = Vec::<Projector<f64>>::deserialize(deserializer)?;
        ProjectiveMeasurement::new(projectors).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;
    use num_complex::Complex64 as C64;

    #[test]
    fn projector_rank_and_trace() {
        let p = Projector::from_states(&[
            PureState::basis_state(3, 0),
            PureState::basis_state(3, 2),
        ])
        .unwrap();
        assert_eq!(p.rank(), 2);
        assert_eq!(p.complement().rank(), 1);
    }

    #[test]
    fn non_idempotent_rejected() {
        let m = array![
            [C64::new(0.5, 0.0), C64::new(0.0, 0.0)],
            [C64::new(0.0, 0.0), C64::new(0.5, 0.0)]
        ];
        assert!(Projector::from_matrix(m).is_err());
    }

    #[test]
    fn incomplete_measurement_rejected() {
        let p = Projector::from_state(&PureState::basis_state(3, 0));
        assert!(ProjectiveMeasurement::new(vec![p]).is_err());
    }

    #[test]
    fn overlapping_projectors_rejected() {
        let p0 = Projector::from_state(&PureState::basis_state(2, 0));
        let plus = Projector::from_state(&PureState::uniform_superposition(2, &[0, 1]));
        assert!(ProjectiveMeasurement::new(vec![p0, plus]).is_err());
    }

    #[test]
    fn principal_state_roundtrip() {
        let psi: PureState = PureState::normalized(array![
            C64::new(0.6, 0.0),
            C64::new(0.0, 0.8)
        ])
        .unwrap();
        let back = psi.projector().principal_state().unwrap();
        assert!(psi.approx_eq(&back, 1e-12));
    }
}
