//! The Beltrametti-Bugajski model: the ontic state is the quantum state
//! itself. Preparations are deltas, ξ is the Born rule, Γ and η follow the
//! unitary and Lüders dynamics exactly, so every check reduces to closed form.

use rand::RngCore;

use crate::model::{
    Catalog, ModelError, ModelResult, OntologicalModel, OnticPoint, UpdateCapability,
};
use crate::qcore::{born_probability, luders_update, sequential_probability};
use crate::{ProjectiveMeasurement, PureState, Unitary};

pub struct BeltramettiBugajskiModel {
    dimension: usize,
    catalog: Catalog,
}

/// Build the Beltrametti-Bugajski model in dimension d ≥ 2.
pub fn build_beltrametti_bugajski(d: usize) -> ModelResult<BeltramettiBugajskiModel> {
    if d < 2 {
        return Err(ModelError::InvalidConfig(format!("dimension must be ≥ 2, got {d}")));
    }
    Ok(BeltramettiBugajskiModel { dimension: d, catalog: Catalog::default() })
}

impl BeltramettiBugajskiModel {
    fn state(point: &OnticPoint) -> ModelResult<&PureState> {
        match point {
            OnticPoint::State(s) => Ok(s),
            _ => Err(ModelError::WrongOnticVariant {
                model: "beltrametti-bugajski",
                expected: "State",
            }),
        }
    }
}

impl OntologicalModel for BeltramettiBugajskiModel {
    fn name(&self) -> &str {
        "beltrametti-bugajski"
    }

    fn dimension(&self) -> usize {
        self.dimension
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
        _rng: &mut dyn RngCore,
    ) -> ModelResult<OnticPoint> {
        Ok(OnticPoint::State(state.clone()))
    }

    fn response(
        &self,
        k: usize,
        point: &OnticPoint,
        m: &ProjectiveMeasurement,
    ) -> ModelResult<f64> {
        let state = Self::state(point)?;
        Ok(born_probability(state, m, k)?)
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
        Ok(OnticPoint::State(u.apply(Self::state(point)?)?))
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
        let state = Self::state(point)?;
        Ok(OnticPoint::State(luders_update(state, m.projector(k))?))
    }

    fn in_support(&self, state: &PureState, point: &OnticPoint) -> ModelResult<bool> {
        Ok(Self::state(point)?.approx_eq(state, 1e-10))
    }

    fn indistinct(&self, a: &PureState, b: &PureState) -> ModelResult<bool> {
        Ok(a.approx_eq(b, 1e-10))
    }

    fn overlap_point(&self, a: &PureState, b: &PureState) -> ModelResult<Option<OnticPoint>> {
        Ok(a.approx_eq(b, 1e-10).then(|| OnticPoint::State(a.clone())))
    }

    fn supported_state(&self, point: &OnticPoint) -> ModelResult<PureState> {
        Ok(Self::state(point)?.clone())
    }

    fn closed_form_sequential(
        &self,
        state: &PureState,
        measurements: &[&ProjectiveMeasurement],
        outcomes: &[usize],
    ) -> Option<f64> {
        // delta dynamics: the ontic chain is exactly the Born-Lüders chain
        sequential_probability(state, measurements, outcomes).ok()
    }

    fn closed_form_transformed(
        &self,
        state: &PureState,
        u: &Unitary,
        m: &ProjectiveMeasurement,
        k: usize,
    ) -> Option<f64> {
        let transformed = u.apply(state).ok()?;
        born_probability(&transformed, m, k).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn response_is_born_rule() {
        let model = build_beltrametti_bugajski(2).unwrap();
        let plus = PureState::uniform_superposition(2, &[0, 1]);
        let m = ProjectiveMeasurement::computational(2);
        let point = OnticPoint::State(plus);
        assert!((model.response(0, &point, &m).unwrap() - 0.5).abs() < 1e-12);
        assert!((model.response(1, &point, &m).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn update_is_luders_exactly() {
        let model = build_beltrametti_bugajski(2).unwrap();
        let plus = PureState::uniform_superposition(2, &[0, 1]);
        let m = ProjectiveMeasurement::computational(2);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let next = model.sample_update(&OnticPoint::State(plus), 0, &m, &mut rng).unwrap();
        let OnticPoint::State(s) = next else { unreachable!() };
        assert!(s.approx_eq(&PureState::basis_state(2, 0), 1e-12));
    }

    #[test]
    fn psi_ontic_supported_state() {
        let model = build_beltrametti_bugajski(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let psi = PureState::haar(3, &mut rng);
        let point = model.sample_preparation(&psi, &mut rng).unwrap();
        let recovered = model.supported_state(&point).unwrap();
        assert!(recovered.approx_eq(&psi, 1e-12));
    }
}
