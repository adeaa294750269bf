//! Unitary transformations.

use ndarray::Array2;
use num_complex::Complex;
use rand::Rng;

use super::{ProjectiveMeasurement, Projector, PureState, QcoreError, QcoreResult};
use crate::linalg;
use crate::scalar::Scalar;

#[derive(Debug, Clone)]
pub struct Unitary<S: Scalar = f64> {
    matrix: Array2<Complex<S>>,
}

impl<S: Scalar> Unitary<S> {
    pub fn from_matrix(matrix: Array2<Complex<S>>) -> QcoreResult<Self> {
        if matrix.nrows() != matrix.ncols() || matrix.nrows() == 0 {
            return Err(QcoreError::InvalidOperator("unitary must be square".into()));
        }
        let prod = linalg::dag(&matrix).dot(&matrix);
        if linalg::max_abs_diff(&prod, &linalg::identity(matrix.nrows())) > S::OP_TOL {
            return Err(QcoreError::InvalidOperator("matrix is not unitary".into()));
        }
        Ok(Self { matrix })
    }

    pub fn identity(d: usize) -> Self {
        Self { matrix: linalg::identity(d) }
    }

    pub fn dimension(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &Array2<Complex<S>> {
        &self.matrix
    }

    pub fn apply(&self, state: &PureState<S>) -> QcoreResult<PureState<S>> {
        if state.dimension() != self.dimension() {
            return Err(QcoreError::DimensionMismatch {
                expected: self.dimension(),
                found: state.dimension(),
            });
        }
        PureState::normalized(self.matrix.dot(state.amplitudes()))
    }

    /// U Π U†.
    pub fn conjugate_projector(&self, p: &Projector<S>) -> Projector<S> {
        let m = self.matrix.dot(p.matrix()).dot(&linalg::dag(&self.matrix));
        Projector::from_matrix(m).expect("conjugation preserves projectors")
    }

    /// {U Π_k U†}: the measurement transported by this unitary.
    pub fn conjugate_measurement(&self, m: &ProjectiveMeasurement<S>) -> ProjectiveMeasurement<S> {
        ProjectiveMeasurement::from_projectors_unchecked(
            m.projectors().iter().map(|p| self.conjugate_projector(p)).collect(),
        )
    }

    pub fn dagger(&self) -> Self {
        Self { matrix: linalg::dag(&self.matrix) }
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self { matrix: self.matrix.dot(&other.matrix) }
    }

    /// The rank-1 measurement whose k-th outcome projects onto column k.
    pub fn measurement_from_columns(&self) -> ProjectiveMeasurement<S> {
        let states: Vec<PureState<S>> = (0..self.dimension())
            .map(|j| PureState::normalized(self.matrix.column(j).to_owned()).expect("unit column"))
            .collect();
        ProjectiveMeasurement::from_basis(&states).expect("unitary columns are orthonormal")
    }
}

impl Unitary<f64> {
    /// Haar-random unitary.
    pub fn haar<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Self {
        Self { matrix: linalg::haar_unitary_matrix(d, rng) }
    }
}

impl serde::Serialize for Unitary<f64> {
    fn serialize<Se: serde::Serializer>(&self, serializer: Se) -> Result<Se::Ok, Se::Error> {
        super::measurement::matrix_to_pairs(&self.matrix).serialize(serializer)
    }
}

impl<'de> serde::Deserialize<'de> for Unitary<f64> {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<[f64; 2]>>::deserialize(deserializer)?;
        let m = super::measurement::pairs_to_matrix(&rows).map_err(serde::de::Error::custom)?;
        Unitary::from_matrix(m).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn haar_columns_form_measurement() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let u = Unitary::haar(4, &mut rng);
        let m = u.measurement_from_columns();
        assert_eq!(m.num_outcomes(), 4);
    }

    #[test]
    fn conjugated_measurement_transports_probabilities() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let psi = PureState::haar(3, &mut rng);
        let u = Unitary::haar(3, &mut rng);
        let m = ProjectiveMeasurement::computational(3);
        let m2 = u.conjugate_measurement(&m);
        let phi = u.apply(&psi).unwrap();
        for k in 0..3 {
            let a = crate::qcore::born_probability(&phi, &m2, k).unwrap();
            let b = crate::qcore::born_probability(&psi, &m, k).unwrap();
            assert!((a - b).abs() < 1e-12);
        }
    }
}
