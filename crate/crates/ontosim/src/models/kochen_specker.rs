//! The Kochen-Specker model of a qubit: ontic space S², preparation density
//! (1/π) Θ(ψ⃗·λ⃗) ψ⃗·λ⃗ on the hemisphere around ψ⃗, deterministic hemisphere
//! response ξ(k|λ⃗, M_φ) = Θ(k φ⃗·λ⃗), rotations for unitaries, and the rank-1
//! re-preparation update.

use std::f64::consts::PI;

use rand::{Rng, RngCore};

use super::bloch::{dot3, normalize3, orthogonal3, rotate3, rotation_from_unitary, BlochVector};
use crate::model::{
    rank1_update, Catalog, ModelError, ModelResult, OntologicalModel, OnticPoint,
    UpdateCapability,
};
use crate::{ProjectiveMeasurement, PureState, Unitary, ZERO_PROB_TOL};

pub struct KochenSpeckerModel {
    catalog: Catalog,
}

/// Build the Kochen-Specker qubit model.
pub fn build_kochen_specker() -> KochenSpeckerModel {
    KochenSpeckerModel { catalog: Catalog::default() }
}

impl KochenSpeckerModel {
    fn sphere(point: &OnticPoint) -> ModelResult<&[f64; 3]> {
        match point {
            OnticPoint::Sphere(v) => Ok(v),
            _ => Err(ModelError::WrongOnticVariant {
                model: "kochen-specker",
                expected: "Sphere",
            }),
        }
    }

    /// Bloch direction of a two-outcome rank-1 qubit measurement; outcome 0
    /// corresponds to +φ⃗.
    fn measurement_axis(m: &ProjectiveMeasurement) -> ModelResult<[f64; 3]> {
        if m.dimension() != 2 || m.num_outcomes() != 2 || !m.is_rank_one() {
            return Err(ModelError::Unsupported(
                "qubit models take two-outcome rank-1 measurements".into(),
            ));
        }
        let state = m.projector(0).principal_state()?;
        Ok(BlochVector::from_state(&state)?.0)
    }

    /// Draw from the hemisphere density ∝ cos θ around `axis` by inverse
    /// transform: cos θ = √u, azimuth uniform.
    fn sample_hemisphere(axis: &[f64; 3], rng: &mut dyn RngCore) -> [f64; 3] {
        let u: f64 = rng.random();
        let cos_theta = u.sqrt();
        let sin_theta = (1.0 - cos_theta * cos_theta).max(0.0).sqrt();
        let phi: f64 = rng.random::<f64>() * 2.0 * PI;
        let e1 = orthogonal3(axis);
        let e2 = super::bloch::cross3(axis, &e1);
        let v = [
            cos_theta * axis[0] + sin_theta * (phi.cos() * e1[0] + phi.sin() * e2[0]),
            cos_theta * axis[1] + sin_theta * (phi.cos() * e1[1] + phi.sin() * e2[1]),
            cos_theta * axis[2] + sin_theta * (phi.cos() * e1[2] + phi.sin() * e2[2]),
        ];
        normalize3(v).expect("unit by construction")
    }
}

impl OntologicalModel for KochenSpeckerModel {
    fn name(&self) -> &str {
        "kochen-specker"
    }

    fn dimension(&self) -> usize {
        2
    }

    fn catalog(&self) -> &Catalog {
        &self.catalog
    }

    fn catalog_mut(&mut self) -> &mut Catalog {
        &mut self.catalog
    }

    fn sample_preparation(
        &self,
        state: &PureState,
        rng: &mut dyn RngCore,
    ) -> ModelResult<OnticPoint> {
        let axis = BlochVector::from_state(state)?.0;
        Ok(OnticPoint::Sphere(Self::sample_hemisphere(&axis, rng)))
    }

    fn mu_density(&self, point: &OnticPoint, state: &PureState) -> ModelResult<f64> {
        let lambda = Self::sphere(point)?;
        let psi = BlochVector::from_state(state)?.0;
        Ok(dot3(&psi, lambda).max(0.0) / PI)
    }

    fn response(
        &self,
        k: usize,
        point: &OnticPoint,
        m: &ProjectiveMeasurement,
    ) -> ModelResult<f64> {
        let lambda = Self::sphere(point)?;
        let phi = Self::measurement_axis(m)?;
        // ties (φ⃗·λ⃗ = 0) go to outcome 0, i.e. k = +1
        let first = dot3(&phi, lambda) >= 0.0;
        Ok(match k {
            0 => f64::from(first),
            1 => f64::from(!first),
            _ => 0.0,
        })
    }

    fn has_transformations(&self) -> bool {
        true
    }

    fn sample_transform(
        &self,
        point: &OnticPoint,
        u: &Unitary,
        _rng: &mut dyn RngCore,
    ) -> ModelResult<OnticPoint> {
        self.transform_point(point, u)
    }

    fn transform_point(&self, point: &OnticPoint, u: &Unitary) -> ModelResult<OnticPoint> {
        let lambda = Self::sphere(point)?;
        let r = rotation_from_unitary(u)?;
        Ok(OnticPoint::Sphere(rotate3(&r, lambda)))
    }

    fn update_capability(&self) -> UpdateCapability {
        UpdateCapability::Capable
    }

    fn sample_update(
        &self,
        _point: &OnticPoint,
        k: usize,
        m: &ProjectiveMeasurement,
        rng: &mut dyn RngCore,
    ) -> ModelResult<OnticPoint> {
        rank1_update(self, k, m, rng)
    }

    fn eta_density(
        &self,
        next: &OnticPoint,
        k: usize,
        _point: &OnticPoint,
        m: &ProjectiveMeasurement,
    ) -> ModelResult<f64> {
        let lambda = Self::sphere(next)?;
        let phi = Self::measurement_axis(m)?;
        let axis = if k == 0 { phi } else { [-phi[0], -phi[1], -phi[2]] };
        Ok(dot3(&axis, lambda).max(0.0) / PI)
    }

    fn in_support(&self, state: &PureState, point: &OnticPoint) -> ModelResult<bool> {
        let lambda = Self::sphere(point)?;
        let psi = BlochVector::from_state(state)?.0;
        Ok(dot3(&psi, lambda) > 0.0)
    }

    fn indistinct(&self, a: &PureState, b: &PureState) -> ModelResult<bool> {
        // hemispheres intersect exactly when the states are nonorthogonal
        Ok(a.overlap_sq(b) > ZERO_PROB_TOL)
    }

    fn overlap_point(&self, a: &PureState, b: &PureState) -> ModelResult<Option<OnticPoint>> {
        let va = BlochVector::from_state(a)?.0;
        let vb = BlochVector::from_state(b)?.0;
        let sum = [va[0] + vb[0], va[1] + vb[1], va[2] + vb[2]];
        Ok(normalize3(sum).map(OnticPoint::Sphere))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{check_prepare_measure, Evaluation};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn z_state() -> PureState {
        PureState::basis_state(2, 0)
    }

    #[test]
    fn density_at_center_is_one_over_pi() {
        // direct substitution in (1/π) Θ(ψ⃗·λ⃗) ψ⃗·λ⃗ at λ⃗ = ψ⃗
        let model = build_kochen_specker();
        let point = OnticPoint::Sphere([0.0, 0.0, 1.0]);
        let mu = model.mu_density(&point, &z_state()).unwrap();
        assert!((mu - 1.0 / PI).abs() < 1e-12);
    }

    #[test]
    fn density_outside_hemisphere_is_zero() {
        let model = build_kochen_specker();
        // ψ⃗·λ⃗ = −0.5
        let point = OnticPoint::Sphere([(0.75f64).sqrt(), 0.0, -0.5]);
        assert_eq!(model.mu_density(&point, &z_state()).unwrap(), 0.0);
    }

    #[test]
    fn response_at_measurement_axis() {
        let model = build_kochen_specker();
        let m = super::super::bloch::qubit_measurement(BlochVector([1.0, 0.0, 0.0]));
        let point = OnticPoint::Sphere([1.0, 0.0, 0.0]);
        assert_eq!(model.response(0, &point, &m).unwrap(), 1.0);
        assert_eq!(model.response(1, &point, &m).unwrap(), 0.0);
    }

    #[test]
    fn samples_lie_in_support() {
        let model = build_kochen_specker();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..30 {
            let psi = PureState::haar(2, &mut rng);
            for _ in 0..50 {
                let point = model.sample_preparation(&psi, &mut rng).unwrap();
                assert!(model.in_support(&psi, &point).unwrap());
            }
        }
    }

    #[test]
    fn z_state_x_basis_is_half() {
        let mut model = build_kochen_specker();
        model.register_preparation("z", z_state()).unwrap();
        model
            .register_measurement(
                "x",
                super::super::bloch::qubit_measurement(BlochVector([1.0, 0.0, 0.0])),
            )
            .unwrap();
        let reports = check_prepare_measure(
            &model,
            "z",
            "x",
            Evaluation::MonteCarlo { samples: 200_000, seed: 7 },
        )
        .unwrap();
        for r in &reports {
            assert!((r.quantum_probability - 0.5).abs() < 1e-12);
            assert!(r.pass, "estimate {} vs 0.5", r.model_probability);
        }
    }

    #[test]
    fn hemisphere_sampler_matches_born_statistics() {
        // cos²(θ/2) law over a few random state/measurement pairs
        let mut model = build_kochen_specker();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for i in 0..5 {
            let psi = PureState::haar(2, &mut rng);
            let direction = BlochVector::from_state(&PureState::haar(2, &mut rng)).unwrap();
            model.register_preparation(&format!("p{i}"), psi).unwrap();
            model
                .register_measurement(&format!("m{i}"), super::super::bloch::qubit_measurement(direction))
                .unwrap();
            let reports = check_prepare_measure(
                &model,
                &format!("p{i}"),
                &format!("m{i}"),
                Evaluation::MonteCarlo { samples: 100_000, seed: 100 + i as u64 },
            )
            .unwrap();
            assert!(reports.iter().all(|r| r.pass));
        }
    }
}
