//! Born rule, Lüders update, and sequential-outcome probabilities.

use super::{ProjectiveMeasurement, Projector, PureState, QcoreError, QcoreResult};
use crate::scalar::Scalar;

/// Pr(k | M, ψ) = ⟨ψ|Π_k|ψ⟩ in a prepare-and-measure-once experiment.
pub fn born_probability<S: Scalar>(
    state: &PureState<S>,
    measurement: &ProjectiveMeasurement<S>,
    k: usize,
) -> QcoreResult<S> {
    if measurement.dimension() != state.dimension() {
        return Err(QcoreError::DimensionMismatch {
            expected: state.dimension(),
            found: measurement.dimension(),
        });
    }
    if k >= measurement.num_outcomes() {
        return Err(QcoreError::OutcomeOutOfRange {
            outcome: k,
            num_outcomes: measurement.num_outcomes(),
        });
    }
    Ok(measurement.projector(k).expectation(state))
}

/// Post-measurement state Π|ψ⟩/√⟨Π⟩. Only defined when ⟨ψ|Π|ψ⟩ > 0; the
/// zero-probability branch is an explicit error, not a NaN.
pub fn luders_update<S: Scalar>(
    state: &PureState<S>,
    projector: &Projector<S>,
) -> QcoreResult<PureState<S>> {
    if projector.dimension() != state.dimension() {
        return Err(QcoreError::DimensionMismatch {
            expected: state.dimension(),
            found: projector.dimension(),
        });
    }
    if projector.expectation(state) <= S::ZERO_PROB_TOL {
        return Err(QcoreError::UndefinedUpdate);
    }
    PureState::normalized(projector.apply(state))
}

/// Pr(k_n, …, k_1 | M_n, …, M_1, ψ): chained Born probabilities with Lüders
/// updates in between. A zero-probability branch makes the whole chain
/// impossible, so it contributes probability 0 rather than an error.
pub fn sequential_probability<S: Scalar>(
    state: &PureState<S>,
    measurements: &[&ProjectiveMeasurement<S>],
    outcomes: &[usize],
) -> QcoreResult<S> {
    if measurements.is_empty() || measurements.len() != outcomes.len() {
        return Err(QcoreError::InvalidArgument(format!(
            "need equal-length nonempty lists, got {} measurements and {} outcomes",
            measurements.len(),
            outcomes.len()
        )));
    }
    let mut current = state.clone();
    let mut probability = S::one();
    for (m, &k) in measurements.iter().zip(outcomes) {
        let p = born_probability(&current, m, k)?;
        if p <= S::ZERO_PROB_TOL {
            return Ok(S::zero());
        }
        probability = probability * p;
        current = luders_update(&current, m.projector(k))?;
    }
    Ok(probability)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::QcoreError;

    type State = PureState<f64>;

    fn z_basis(d: usize) -> ProjectiveMeasurement<f64> {
        ProjectiveMeasurement::computational(d)
    }

    fn x_basis_qubit() -> ProjectiveMeasurement<f64> {
        let plus = State::uniform_superposition(2, &[0, 1]);
        let minus = PureState::normalized(ndarray::array![
            num_complex::Complex64::new(1.0, 0.0),
            num_complex::Complex64::new(-1.0, 0.0)
        ])
        .unwrap();
        ProjectiveMeasurement::from_basis(&[plus, minus]).unwrap()
    }

    #[test]
    fn born_eigenstate() {
        let zero = State::basis_state(2, 0);
        assert_eq!(born_probability(&zero, &z_basis(2), 0).unwrap(), 1.0);
        assert_eq!(born_probability(&zero, &z_basis(2), 1).unwrap(), 0.0);
    }

    #[test]
    fn born_plus_state_half() {
        let plus = State::uniform_superposition(2, &[0, 1]);
        let p = born_probability(&plus, &z_basis(2), 0).unwrap();
        assert!((p - 0.5).abs() < 1e-12);
    }

    #[test]
    fn born_rank2_projector_fixed_state() {
        // |0⟩ in d=3 with Π = |0⟩⟨0| + |2⟩⟨2|: Π|0⟩ = |0⟩ so probability 1.
        let alpha = State::basis_state(3, 0);
        let pi = Projector::from_states(&[State::basis_state(3, 0), State::basis_state(3, 2)])
            .unwrap();
        let m = ProjectiveMeasurement::two_outcome(pi).unwrap();
        assert!((born_probability(&alpha, &m, 0).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn born_probabilities_sum_to_one() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for d in [2usize, 3, 5] {
            let psi = State::haar(d, &mut rng);
            let u = crate::qcore::Unitary::haar(d, &mut rng);
            let m = u.measurement_from_columns();
            let total: f64 = (0..d).map(|k| born_probability(&psi, &m, k).unwrap()).sum();
            assert!((total - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn luders_plus_to_zero() {
        let plus = State::uniform_superposition(2, &[0, 1]);
        let updated = luders_update(&plus, &State::basis_state(2, 0).projector()).unwrap();
        assert!(updated.approx_eq(&State::basis_state(2, 0), 1e-12));
    }

    #[test]
    fn luders_state_in_range_unchanged() {
        // β = (|0⟩+|2⟩)/√2 is in the range of Π = |0⟩⟨0| + |2⟩⟨2|.
        let beta = State::uniform_superposition(3, &[0, 2]);
        let pi = Projector::from_states(&[State::basis_state(3, 0), State::basis_state(3, 2)])
            .unwrap();
        let updated = luders_update(&beta, &pi).unwrap();
        assert!(updated.approx_eq(&beta, 1e-12));
    }

    #[test]
    fn luders_orthogonal_is_undefined() {
        let one = State::basis_state(2, 1);
        let err = luders_update(&one, &State::basis_state(2, 0).projector());
        assert!(matches!(err, Err(QcoreError::UndefinedUpdate)));
    }

    #[test]
    fn luders_idempotent() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        let psi = State::haar(3, &mut rng);
        let pi = Projector::from_states(&[State::basis_state(3, 0), State::basis_state(3, 1)])
            .unwrap();
        let once = luders_update(&psi, &pi).unwrap();
        let twice = luders_update(&once, &pi).unwrap();
        assert!(once.approx_eq(&twice, 1e-10));
    }

    #[test]
    fn sequential_repeatability() {
        let zero = State::basis_state(2, 0);
        let m = z_basis(2);
        let p = sequential_probability(&zero, &[&m, &m], &[0, 0]).unwrap();
        assert!((p - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sequential_x_then_z() {
        let zero = State::basis_state(2, 0);
        let x = x_basis_qubit();
        let z = z_basis(2);
        let p = sequential_probability(&zero, &[&x, &z], &[0, 0]).unwrap();
        assert!((p - 0.25).abs() < 1e-12);
    }

    #[test]
    fn sequential_rank2_then_z_oracle() {
        // Expected value from the dense-matrix oracle: with ψ = |0⟩ and
        // Π = |0⟩⟨0| + |2⟩⟨2|, the chain probability is
        //   tr(P0 Πρ Π) with ρ = |0⟩⟨0|, which the oracle below evaluates to 1.
        let zero = State::basis_state(3, 0);
        let pi = Projector::from_states(&[State::basis_state(3, 0), State::basis_state(3, 2)])
            .unwrap();
        let coarse = ProjectiveMeasurement::two_outcome(pi.clone()).unwrap();
        let z = z_basis(3);

        // independent oracle: explicit matrix products
        let rho = zero.outer();
        let after = pi.matrix().dot(&rho).dot(pi.matrix());
        let p0 = State::basis_state(3, 0).outer();
        let oracle = crate::linalg::trace(&p0.dot(&after)).re;
        assert!((oracle - 1.0).abs() < 1e-12);

        let p = sequential_probability(&zero, &[&coarse, &z], &[0, 0]).unwrap();
        assert!((p - oracle).abs() < 1e-12);
    }

    #[test]
    fn sequential_single_equals_born() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        let psi = State::haar(3, &mut rng);
        let m = z_basis(3);
        for k in 0..3 {
            let a = sequential_probability(&psi, &[&m], &[k]).unwrap();
            let b = born_probability(&psi, &m, k).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn sequential_outcome_strings_sum_to_one() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        let psi = State::haar(3, &mut rng);
        let m1 = crate::qcore::Unitary::haar(3, &mut rng).measurement_from_columns();
        let m2 = crate::qcore::Unitary::haar(3, &mut rng).measurement_from_columns();
        let mut total = 0.0;
        for k1 in 0..3 {
            for k2 in 0..3 {
                total += sequential_probability(&psi, &[&m1, &m2], &[k1, k2]).unwrap();
            }
        }
        assert!((total - 1.0).abs() < 1e-10);
    }

    #[test]
    fn impossible_chain_is_zero() {
        let zero = State::basis_state(2, 0);
        let z = z_basis(2);
        let p = sequential_probability(&zero, &[&z, &z], &[1, 0]).unwrap();
        assert_eq!(p, 0.0);
    }
}
