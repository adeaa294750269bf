//! Instruments: outcome-indexed Kraus decompositions. Unlike a POVM, an
//! instrument fixes how the state updates, so coherent and decoherent
//! coarse-grainings of the same measurement are distinct objects.

use ndarray::Array2;
use num_complex::Complex;

use super::{DensityMatrix, ProjectiveMeasurement, QcoreError, QcoreResult};
use crate::linalg;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoarseGraining {
    /// Measure the coarse projectors directly: one Kraus operator per group.
    Coherent,
    /// Measure the fine projectors and forget which outcome in the group
    /// occurred: one Kraus operator per group member.
    Decoherent,
}

#[derive(Debug, Clone)]
pub struct Instrument<S: Scalar = f64> {
    kraus_sets: Vec<Vec<Array2<Complex<S>>>>,
}

impl<S: Scalar> Instrument<S> {
    pub fn new(kraus_sets: Vec<Vec<Array2<Complex<S>>>>) -> QcoreResult<Self> {
        if kraus_sets.is_empty() || kraus_sets.iter().all(|s| s.is_empty()) {
            return Err(QcoreError::InvalidArgument("instrument with no Kraus operators".into()));
        }
        let d = kraus_sets
            .iter()
            .flat_map(|s| s.iter())
            .next()
            .map(|k| k.nrows())
            .unwrap_or(0);
        let mut total = Array2::zeros((d, d));
        for set in &kraus_sets {
            for k in set {
                if k.nrows() != d || k.ncols() != d {
                    return Err(QcoreError::DimensionMismatch { expected: d, found: k.nrows() });
                }
                total = total + linalg::dag(k).dot(k);
            }
        }
        if linalg::max_abs_diff(&total, &linalg::identity(d)) > S::OP_TOL {
            return Err(QcoreError::InvalidOperator("Kraus operators do not sum to identity".into()));
        }
        Ok(Self { kraus_sets })
    }

    /// The instrument that measures `m` projectively (Lüders update).
    pub fn projective(m: &ProjectiveMeasurement<S>) -> Self {
        Self {
            kraus_sets: m.projectors().iter().map(|p| vec![p.matrix().clone()]).collect(),
        }
    }

    /// Coarse-grain `m` by the given outcome partition, either coherently or
    /// decoherently. The two produce the same POVM but different updates.
    pub fn coarse_grained(
        m: &ProjectiveMeasurement<S>,
        partition: &[Vec<usize>],
        mode: CoarseGraining,
    ) -> QcoreResult<Self> {
        let mut seen = vec![false; m.num_outcomes()];
        for group in partition {
            for &k in group {
                if k >= m.num_outcomes() || seen[k] {
                    return Err(QcoreError::InvalidArgument(
                        "partition must cover each outcome exactly once".into(),
                    ));
                }
                seen[k] = true;
            }
        }
        if !seen.iter().all(|&s| s) {
            return Err(QcoreError::InvalidArgument("partition does not cover all outcomes".into()));
        }
        let kraus_sets = partition
            .iter()
            .map(|group| match mode {
                CoarseGraining::Coherent => {
                    let d = m.dimension();
                    let mut sum = Array2::zeros((d, d));
                    for &k in group {
                        sum = sum + m.projector(k).matrix();
                    }
                    vec![sum]
                }
                CoarseGraining::Decoherent => {
                    group.iter().map(|&k| m.projector(k).matrix().clone()).collect()
                }
            })
            .collect();
        Self::new(kraus_sets)
    }

    pub fn num_outcomes(&self) -> usize {
        self.kraus_sets.len()
    }

    pub fn dimension(&self) -> usize {
        self.kraus_sets
            .iter()
            .flat_map(|s| s.iter())
            .next()
            .map(|k| k.nrows())
            .unwrap_or(0)
    }

    /// Outcome probability and normalized post-measurement state.
    pub fn apply(&self, state: &DensityMatrix<S>, k: usize) -> QcoreResult<(S, DensityMatrix<S>)> {
        if k >= self.num_outcomes() {
            return Err(QcoreError::OutcomeOutOfRange {
                outcome: k,
                num_outcomes: self.num_outcomes(),
            });
        }
        if state.dimension() != self.dimension() {
            return Err(QcoreError::DimensionMismatch {
                expected: self.dimension(),
                found: state.dimension(),
            });
        }
        let d = state.dimension();
        let mut post = Array2::zeros((d, d));
        for kraus in &self.kraus_sets[k] {
            post = post + kraus.dot(state.matrix()).dot(&linalg::dag(kraus));
        }
        let p = linalg::trace(&post).re;
        if p <= S::ZERO_PROB_TOL {
            return Err(QcoreError::UndefinedUpdate);
        }
        let normalized = post.mapv(|z| z / Complex::from(p));
        Ok((p.min(S::one()), DensityMatrix::from_matrix(normalized)?))
    }
}

/// Outcome probability and post-state for an instrument applied to `state`.
pub use self::apply_instrument_fn as apply_instrument;

/// Free-function form of [`Instrument::apply`].
pub fn apply_instrument_fn<S: Scalar>(
    state: &DensityMatrix<S>,
    instrument: &Instrument<S>,
    k: usize,
) -> QcoreResult<(S, DensityMatrix<S>)> {
    instrument.apply(state, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{ProjectiveMeasurement, PureState, QcoreError};

    fn superpos_01() -> DensityMatrix<f64> {
        PureState::uniform_superposition(3, &[0, 1]).density()
    }

    #[test]
    fn coherent_coarse_graining_preserves_superposition() {
        let m = ProjectiveMeasurement::computational(3);
        let inst =
            Instrument::coarse_grained(&m, &[vec![0, 1], vec![2]], CoarseGraining::Coherent)
                .unwrap();
        let (p, post) = inst.apply(&superpos_01(), 0).unwrap();
        assert!((p - 1.0).abs() < 1e-12);
        assert!(post.approx_eq(&superpos_01(), 1e-12));
        assert!((post.purity() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn decoherent_coarse_graining_mixes() {
        let m = ProjectiveMeasurement::computational(3);
        let inst =
            Instrument::coarse_grained(&m, &[vec![0, 1], vec![2]], CoarseGraining::Decoherent)
                .unwrap();
        let (p, post) = inst.apply(&superpos_01(), 0).unwrap();
        assert!((p - 1.0).abs() < 1e-12);
        let expected = DensityMatrix::mixture(&[
            (0.5, PureState::basis_state(3, 0)),
            (0.5, PureState::basis_state(3, 1)),
        ])
        .unwrap();
        assert!(post.approx_eq(&expected, 1e-12));
        assert!((post.purity() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn zero_probability_outcome_is_undefined() {
        let m = ProjectiveMeasurement::computational(3);
        let two = PureState::basis_state(3, 2).density();
        for mode in [CoarseGraining::Coherent, CoarseGraining::Decoherent] {
            let inst = Instrument::coarse_grained(&m, &[vec![0, 1], vec![2]], mode).unwrap();
            let err = inst.apply(&two, 0);
            assert!(matches!(err, Err(QcoreError::UndefinedUpdate)));
        }
    }

    #[test]
    fn projective_instrument_matches_born() {
        let m = ProjectiveMeasurement::computational(2);
        let inst = Instrument::projective(&m);
        let plus = PureState::uniform_superposition(2, &[0, 1]).density();
        let (p, post) = inst.apply(&plus, 0).unwrap();
        assert!((p - 0.5).abs() < 1e-12);
        assert!(post.approx_eq(&PureState::basis_state(2, 0).density(), 1e-12));
    }
}
