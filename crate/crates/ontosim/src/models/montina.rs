//! Montina's qubit model: ontic space S² × S² × {±1} × {±1}. The two Bloch
//! vectors x⃗₊, x⃗₋ move only under transformations; measurement updates touch
//! only the bits r (which vector is active) and s (the stored standard-basis
//! outcome).

use rand::RngCore;
use rand_distr::{Distribution, UnitSphere};

use super::bloch::{dot3, normalize3, orthogonal3, rotate3, rotation_from_unitary, BlochVector};
use crate::model::{
    Catalog, ModelError, ModelResult, OntologicalModel, OnticPoint, UpdateCapability,
};
use crate::{ProjectiveMeasurement, PureState, Unitary, ZERO_PROB_TOL};

const N_AXIS: [f64; 3] = [0.0, 0.0, 1.0];

pub struct MontinaModel {
    catalog: Catalog,
}

/// Build Montina's qubit model.
pub fn build_montina() -> MontinaModel {
    MontinaModel { catalog: Catalog::default() }
}

/// Sign with ties broken toward +1.
fn sgn(x: f64) -> i8 {
    if x >= 0.0 {
        1
    } else {
        -1
    }
}

struct Fields<'a> {
    x_plus: &'a [f64; 3],
    x_minus: &'a [f64; 3],
    r: i8,
    s: i8,
}

impl<'a> Fields<'a> {
    fn active(&self) -> &'a [f64; 3] {
        if self.r > 0 {
            self.x_plus
        } else {
            self.x_minus
        }
    }

    fn vector(&self, which: i8) -> &'a [f64; 3] {
        if which > 0 {
            self.x_plus
        } else {
            self.x_minus
        }
    }
}

impl MontinaModel {
    fn fields<'a>(point: &'a OnticPoint) -> ModelResult<Fields<'a>> {
        match point {
            OnticPoint::Montina { x_plus, x_minus, r, s } => {
                Ok(Fields { x_plus, x_minus, r: *r, s: *s })
            }
            _ => Err(ModelError::WrongOnticVariant { model: "montina", expected: "Montina" }),
        }
    }

    fn measurement_axis(m: &ProjectiveMeasurement) -> ModelResult<[f64; 3]> {
        if m.dimension() != 2 || m.num_outcomes() != 2 || !m.is_rank_one() {
            return Err(ModelError::Unsupported(
                "qubit models take two-outcome rank-1 measurements".into(),
            ));
        }
        let state = m.projector(0).principal_state()?;
        Ok(BlochVector::from_state(&state)?.0)
    }

    /// Deterministic outcome index: 0 when s(x⃗_r·n⃗)(x⃗_r·φ⃗) ≥ 0 (the paper's
    /// k = +1), else 1.
    fn outcome(fields: &Fields<'_>, phi: &[f64; 3]) -> usize {
        let active = fields.active();
        let value = fields.s as f64 * dot3(active, &N_AXIS) * dot3(active, phi);
        usize::from(value < 0.0)
    }

    fn bits_for_state(x_plus: &[f64; 3], x_minus: &[f64; 3], psi: &[f64; 3]) -> (i8, i8) {
        let r = sgn(dot3(x_plus, psi).powi(2) - dot3(x_minus, psi).powi(2));
        let active = if r > 0 { x_plus } else { x_minus };
        let s = sgn(dot3(active, psi) * dot3(active, &N_AXIS));
        (r, s)
    }
}

impl OntologicalModel for MontinaModel {
    fn name(&self) -> &str {
        "montina"
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
        let psi = BlochVector::from_state(state)?.0;
        let x_plus: [f64; 3] = UnitSphere.sample(rng);
        let x_minus: [f64; 3] = UnitSphere.sample(rng);
        let (r, s) = Self::bits_for_state(&x_plus, &x_minus, &psi);
        Ok(OnticPoint::Montina { x_plus, x_minus, r, s })
    }

    fn response(
        &self,
        k: usize,
        point: &OnticPoint,
        m: &ProjectiveMeasurement,
    ) -> ModelResult<f64> {
        let fields = Self::fields(point)?;
        let phi = Self::measurement_axis(m)?;
        Ok(f64::from(Self::outcome(&fields, &phi) == k))
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
        let fields = Self::fields(point)?;
        let rot = rotation_from_unitary(u)?;
        let x_plus = rotate3(&rot, fields.x_plus);
        let x_minus = rotate3(&rot, fields.x_minus);
        // s flips when the active vector crosses the equator
        let active_before = dot3(fields.active(), &N_AXIS);
        let active_after = dot3(if fields.r > 0 { &x_plus } else { &x_minus }, &N_AXIS);
        let s = fields.s * sgn(active_before * active_after);
        Ok(OnticPoint::Montina { x_plus, x_minus, r: fields.r, s })
    }

    fn update_capability(&self) -> UpdateCapability {
        UpdateCapability::Capable
    }

    fn sample_update(
        &self,
        point: &OnticPoint,
        k: usize,
        m: &ProjectiveMeasurement,
        _rng: &mut dyn RngCore,
    ) -> ModelResult<OnticPoint> {
        let fields = Self::fields(point)?;
        let phi = Self::measurement_axis(m)?;
        if Self::outcome(&fields, &phi) != k {
            return Err(ModelError::ModelViolation(
                "update requested for an outcome outside the support of ξ".into(),
            ));
        }
        // r' selects the vector more aligned with the measured axis; s'
        // follows from the Θ factor; x⃗± do not change during measurement.
        let r_next = sgn(dot3(fields.x_plus, &phi).powi(2) - dot3(fields.x_minus, &phi).powi(2));
        let active = fields.active();
        let next_active = fields.vector(r_next);
        let factor = dot3(active, &N_AXIS)
            * dot3(active, &phi)
            * dot3(next_active, &N_AXIS)
            * dot3(next_active, &phi);
        let s_next = fields.s * sgn(factor);
        Ok(OnticPoint::Montina {
            x_plus: *fields.x_plus,
            x_minus: *fields.x_minus,
            r: r_next,
            s: s_next,
        })
    }

    fn in_support(&self, state: &PureState, point: &OnticPoint) -> ModelResult<bool> {
        let fields = Self::fields(point)?;
        let psi = BlochVector::from_state(state)?.0;
        let (r, s) = Self::bits_for_state(fields.x_plus, fields.x_minus, &psi);
        Ok(r == fields.r && s == fields.s)
    }

    fn indistinct(&self, a: &PureState, b: &PureState) -> ModelResult<bool> {
        Ok(a.overlap_sq(b) > ZERO_PROB_TOL)
    }

    fn overlap_point(&self, a: &PureState, b: &PureState) -> ModelResult<Option<OnticPoint>> {
        let va = BlochVector::from_state(a)?.0;
        let vb = BlochVector::from_state(b)?.0;
        let Some(x_plus) = normalize3([va[0] + vb[0], va[1] + vb[1], va[2] + vb[2]]) else {
            return Ok(None);
        };
        // pick x⃗₋ orthogonal to both states so r = +1 for each
        let x_minus = match normalize3(super::bloch::cross3(&va, &vb)) {
            Some(v) => v,
            None => orthogonal3(&x_plus),
        };
        let s = sgn(dot3(&x_plus, &va) * dot3(&x_plus, &N_AXIS));
        Ok(Some(OnticPoint::Montina { x_plus, x_minus, r: 1, s }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{check_prepare_measure, check_sequential, Evaluation};
    use crate::models::bloch::qubit_measurement;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn z_measurement() -> ProjectiveMeasurement {
        qubit_measurement(BlochVector([0.0, 0.0, 1.0]))
    }

    #[test]
    fn standard_basis_reveals_s() {
        let model = build_montina();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let m = z_measurement();
        for _ in 0..200 {
            let psi = PureState::haar(2, &mut rng);
            let point = model.sample_preparation(&psi, &mut rng).unwrap();
            let OnticPoint::Montina { s, .. } = point else { unreachable!() };
            let outcome = if model.response(0, &point, &m).unwrap() == 1.0 { 1i8 } else { -1 };
            assert_eq!(outcome, s);
        }
    }

    #[test]
    fn update_leaves_vectors_bitwise_fixed() {
        let model = build_montina();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let m = qubit_measurement(BlochVector::normalized([1.0, 2.0, -0.5]).unwrap().0);
        for _ in 0..200 {
            let psi = PureState::haar(2, &mut rng);
            let point = model.sample_preparation(&psi, &mut rng).unwrap();
            let k = usize::from(model.response(0, &point, &m).unwrap() == 0.0);
            let next = model.sample_update(&point, k, &m, &mut rng).unwrap();
            let (OnticPoint::Montina { x_plus: a, x_minus: b, .. },
                 OnticPoint::Montina { x_plus: a2, x_minus: b2, .. }) = (&point, &next)
            else {
                unreachable!()
            };
            assert_eq!(a, a2);
            assert_eq!(b, b2);
        }
    }

    #[test]
    fn updated_r_matches_brute_force_over_theta_factor() {
        // brute-force oracle: the Θ factors of η admit exactly one (r', s'),
        // with r' = argmax over r of (x⃗_r·φ⃗)²
        let model = build_montina();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let phi = BlochVector::normalized([0.3, -1.1, 0.4]).unwrap().0;
        let m = qubit_measurement(BlochVector(phi));
        for _ in 0..200 {
            let psi = PureState::haar(2, &mut rng);
            let point = model.sample_preparation(&psi, &mut rng).unwrap();
            let k = usize::from(model.response(0, &point, &m).unwrap() == 0.0);
            let next = model.sample_update(&point, k, &m, &mut rng).unwrap();
            let (OnticPoint::Montina { x_plus, x_minus, r: r0, s: s0 },
                 OnticPoint::Montina { r, s, .. }) = (&point, &next)
            else {
                unreachable!()
            };

            // oracle: enumerate candidate (r', s') and keep those allowed by
            // both Θ factors (nonnegative arguments)
            let mut allowed = Vec::new();
            for r_c in [1i8, -1] {
                for s_c in [1i8, -1] {
                    let xr = if *r0 > 0 { x_plus } else { x_minus };
                    let xr_c = if r_c > 0 { x_plus } else { x_minus };
                    let theta1 = (*s0 as f64)
                        * (s_c as f64)
                        * dot3(xr, &N_AXIS)
                        * dot3(xr, &phi)
                        * dot3(xr_c, &N_AXIS)
                        * dot3(xr_c, &phi);
                    let theta2 = (r_c as f64)
                        * (dot3(x_plus, &phi).powi(2) - dot3(x_minus, &phi).powi(2));
                    if theta1 >= 0.0 && theta2 >= 0.0 {
                        allowed.push((r_c, s_c));
                    }
                }
            }
            assert!(allowed.contains(&(*r, *s)), "sampled (r', s') not allowed by Θ factors");
            let best_r = if dot3(x_plus, &phi).powi(2) >= dot3(x_minus, &phi).powi(2) { 1i8 } else { -1 };
            assert_eq!(*r, best_r);
        }
    }

    #[test]
    fn born_statistics() {
        let mut model = build_montina();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for i in 0..5 {
            let psi = PureState::haar(2, &mut rng);
            let dir = BlochVector::from_state(&PureState::haar(2, &mut rng)).unwrap();
            model.register_preparation(&format!("p{i}"), psi).unwrap();
            model.register_measurement(&format!("m{i}"), qubit_measurement(dir)).unwrap();
            let reports = check_prepare_measure(
                &model,
                &format!("p{i}"),
                &format!("m{i}"),
                Evaluation::MonteCarlo { samples: 100_000, seed: 50 + i as u64 },
            )
            .unwrap();
            assert!(reports.iter().all(|r| r.pass));
        }
    }

    #[test]
    fn repeatability_is_exact() {
        let mut model = build_montina();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let psi = PureState::haar(2, &mut rng);
        let dir = BlochVector::from_state(&PureState::haar(2, &mut rng)).unwrap();
        model.register_preparation("p", psi.clone()).unwrap();
        model.register_measurement("m", qubit_measurement(dir)).unwrap();
        let m = model.catalog().measurement("m").unwrap().clone();
        // immediate re-measurement repeats the outcome with certainty
        for _ in 0..500 {
            let point = model.sample_preparation(&psi, &mut rng).unwrap();
            let k = usize::from(model.response(0, &point, &m).unwrap() == 0.0);
            let next = model.sample_update(&point, k, &m, &mut rng).unwrap();
            assert_eq!(model.response(k, &next, &m).unwrap(), 1.0);
        }
    }

    #[test]
    fn sequential_statistics_match_quantum() {
        let mut model = build_montina();
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let psi = PureState::haar(2, &mut rng);
        model.register_preparation("p", psi).unwrap();
        model
            .register_measurement("m1", qubit_measurement(BlochVector([1.0, 0.0, 0.0])))
            .unwrap();
        let dir = BlochVector::from_state(&PureState::haar(2, &mut rng)).unwrap();
        model.register_measurement("m2", qubit_measurement(dir)).unwrap();
        for k1 in 0..2 {
            for k2 in 0..2 {
                let report = check_sequential(
                    &model,
                    "p",
                    &["m1", "m2"],
                    &[k1, k2],
                    Evaluation::MonteCarlo { samples: 100_000, seed: 77 },
                )
                .unwrap();
                assert!(
                    report.pass,
                    "({k1},{k2}): model {} quantum {}",
                    report.model_probability, report.quantum_probability
                );
            }
        }
    }
}
