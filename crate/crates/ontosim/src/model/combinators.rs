//! Generic constructions over models: the rank-1 re-preparation update, the
//! ψ-ontic update, and convex combinations of two models.

use std::sync::Arc;

use rand::{Rng, RngCore};

use super::{
    Catalog, ModelError, ModelResult, OntologicalModel, OnticPoint, UpdateCapability,
};
use crate::qcore::luders_update;
use crate::{ProjectiveMeasurement, PureState, Unitary};

/// Update by re-preparing the measured state: η(λ'|k, λ, M) = μ(λ'|P_{Π_k}).
///
/// Valid only when every non-padding projector of `m` is rank 1; it is
/// independent of the previous ontic state.
pub fn rank1_update(
    model: &dyn OntologicalModel,
    k: usize,
    m: &ProjectiveMeasurement,
    rng: &mut dyn RngCore,
) -> ModelResult<OnticPoint> {
    if let Some(bad) = m.projectors().iter().position(|p| p.rank() >= 2) {
        return Err(ModelError::Unsupported(format!(
            "rank-1 update rule: projector {bad} has rank {}",
            m.projector(bad).rank()
        )));
    }
    let target = m.projector(k);
    if target.rank() != 1 {
        return Err(ModelError::Unsupported(
            "rank-1 update rule: selected outcome is a zero projector".into(),
        ));
    }
    let measured = target.principal_state()?;
    model.sample_preparation(&measured, rng)
}

/// Update for ψ-ontic models: Lüders-update the unique quantum state the
/// point is consistent with, then re-prepare it.
pub fn psi_ontic_update(
    model: &dyn OntologicalModel,
    point: &OnticPoint,
    k: usize,
    m: &ProjectiveMeasurement,
    rng: &mut dyn RngCore,
) -> ModelResult<OnticPoint> {
    let state = model.supported_state(point)?;
    let post = luders_update(&state, m.projector(k))?;
    model.sample_preparation(&post, rng)
}

/// Convex combination of two models over the disjoint union of their ontic
/// spaces: μ₃ = pμ₁ + (1−p)μ₂, with ξ and η acting componentwise and the
/// update rule η₃ = η₁ + η₂ on the respective branches.
pub fn convex_combination(
    first: Arc<dyn OntologicalModel>,
    second: Arc<dyn OntologicalModel>,
    p: f64,
) -> ModelResult<MixtureModel> {
    MixtureModel::new(first, second, p)
}

pub struct MixtureModel {
    name: String,
    dimension: usize,
    weights: [f64; 2],
    parts: [Arc<dyn OntologicalModel>; 2],
    catalog: Catalog,
}

impl MixtureModel {
    pub fn new(
        first: Arc<dyn OntologicalModel>,
        second: Arc<dyn OntologicalModel>,
        p: f64,
    ) -> ModelResult<Self> {
        if !(p > 0.0 && p < 1.0) {
            return Err(ModelError::InvalidConfig(format!(
                "mixing weight must lie strictly inside (0,1), got {p}"
            )));
        }
        if first.dimension() != second.dimension() {
            return Err(ModelError::InvalidConfig(
                "cannot mix models of different dimension".into(),
            ));
        }
        // The components must declare the same operational sets.
        let ca = first.catalog();
        let cb = second.catalog();
        for (label, state) in &ca.preparations {
            let other = cb.preparation(label)?;
            if !state.approx_eq(other, 1e-10) {
                return Err(ModelError::InvalidConfig(format!(
                    "preparation '{label}' differs between mixture components"
                )));
            }
        }
        for (label, m) in &ca.measurements {
            let other = cb.measurement(label)?;
            if !m.approx_eq(other, 1e-10) {
                return Err(ModelError::InvalidConfig(format!(
                    "measurement '{label}' differs between mixture components"
                )));
            }
        }
        if ca.preparations.len() != cb.preparations.len()
            || ca.measurements.len() != cb.measurements.len()
        {
            return Err(ModelError::InvalidConfig(
                "mixture components declare different operational sets".into(),
            ));
        }
        let name = format!("mix({}, {}; p={p})", first.name(), second.name());
        let dimension = first.dimension();
        let catalog = ca.clone();
        Ok(Self { name, dimension, weights: [p, 1.0 - p], parts: [first, second], catalog })
    }

    pub fn weights(&self) -> [f64; 2] {
        self.weights
    }

    pub fn part(&self, branch: usize) -> &Arc<dyn OntologicalModel> {
        &self.parts[branch]
    }

    fn split<'a>(&self, point: &'a OnticPoint) -> ModelResult<(usize, &'a OnticPoint)> {
        match point {
            OnticPoint::Component(i, inner) if *i < 2 => Ok((*i, inner)),
            _ => Err(ModelError::WrongOnticVariant {
                model: "mixture",
                expected: "Component(0|1, ..)",
            }),
        }
    }

    fn lift_error(&self, branch: usize, err: ModelError) -> ModelError {
        match err {
            ModelError::UpdateImpossible { witness, .. } => ModelError::UpdateImpossible {
                model: self.name.clone(),
                witness: Box::new(witness.into_component(branch, &self.name)),
            },
            other => other,
        }
    }
}

impl OntologicalModel for MixtureModel {
    fn name(&self) -> &str {
        &self.name
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

    fn register_preparation(&mut self, _label: &str, _state: PureState) -> ModelResult<()> {
        Err(ModelError::InvalidConfig(
            "register preparations on the components before mixing".into(),
        ))
    }

    fn register_measurement(&mut self, _label: &str, _m: ProjectiveMeasurement) -> ModelResult<()> {
        Err(ModelError::InvalidConfig(
            "register measurements on the components before mixing".into(),
        ))
    }

    fn register_transformation(&mut self, _label: &str, _u: Unitary) -> ModelResult<()> {
        Err(ModelError::InvalidConfig(
            "register transformations on the components before mixing".into(),
        ))
    }

    fn sample_preparation(
        &self,
        state: &PureState,
        rng: &mut dyn RngCore,
    ) -> ModelResult<OnticPoint> {
        let branch = usize::from(rng.random::<f64>() >= self.weights[0]);
        let inner = self.parts[branch].sample_preparation(state, rng)?;
        Ok(OnticPoint::Component(branch, Box::new(inner)))
    }

    fn response(
        &self,
        k: usize,
        point: &OnticPoint,
        m: &ProjectiveMeasurement,
    ) -> ModelResult<f64> {
        let (branch, inner) = self.split(point)?;
        self.parts[branch].response(k, inner, m)
    }

    fn update_capability(&self) -> UpdateCapability {
        for (branch, part) in self.parts.iter().enumerate() {
            if let UpdateCapability::Incapable { witness } = part.update_capability() {
                return UpdateCapability::Incapable {
                    witness: Box::new(witness.into_component(branch, &self.name)),
                };
            }
        }
        if self.parts.iter().all(|p| p.update_capability().is_capable()) {
            UpdateCapability::Capable
        } else {
            UpdateCapability::Unspecified {
                reason: "some mixture component specifies no update rule".into(),
            }
        }
    }

    fn sample_update(
        &self,
        point: &OnticPoint,
        k: usize,
        m: &ProjectiveMeasurement,
        rng: &mut dyn RngCore,
    ) -> ModelResult<OnticPoint> {
        let (branch, inner) = self.split(point)?;
        let next = self.parts[branch]
            .sample_update(inner, k, m, rng)
            .map_err(|e| self.lift_error(branch, e))?;
        Ok(OnticPoint::Component(branch, Box::new(next)))
    }

    fn in_support(&self, state: &PureState, point: &OnticPoint) -> ModelResult<bool> {
        let (branch, inner) = self.split(point)?;
        self.parts[branch].in_support(state, inner)
    }

    fn indistinct(&self, a: &PureState, b: &PureState) -> ModelResult<bool> {
        Ok(self.parts[0].indistinct(a, b)? || self.parts[1].indistinct(a, b)?)
    }

    fn overlap_point(&self, a: &PureState, b: &PureState) -> ModelResult<Option<OnticPoint>> {
        for (branch, part) in self.parts.iter().enumerate() {
            if let Some(inner) = part.overlap_point(a, b)? {
                return Ok(Some(OnticPoint::Component(branch, Box::new(inner))));
            }
        }
        Ok(None)
    }

    fn supported_state(&self, point: &OnticPoint) -> ModelResult<PureState> {
        let (branch, inner) = self.split(point)?;
        self.parts[branch].supported_state(inner)
    }

    fn is_enumerable(&self) -> bool {
        self.parts.iter().all(|p| p.is_enumerable())
    }

    fn enumerate_points(&self) -> Option<Vec<OnticPoint>> {
        if !self.is_enumerable() {
            return None;
        }
        let mut points = Vec::new();
        for (branch, part) in self.parts.iter().enumerate() {
            for inner in part.enumerate_points()? {
                points.push(OnticPoint::Component(branch, Box::new(inner)));
            }
        }
        Some(points)
    }

    fn mu_density(&self, point: &OnticPoint, state: &PureState) -> ModelResult<f64> {
        let (branch, inner) = self.split(point)?;
        Ok(self.weights[branch] * self.parts[branch].mu_density(inner, state)?)
    }

    fn eta_density(
        &self,
        next: &OnticPoint,
        k: usize,
        point: &OnticPoint,
        m: &ProjectiveMeasurement,
    ) -> ModelResult<f64> {
        let (branch, inner) = self.split(point)?;
        let (next_branch, next_inner) = self.split(next)?;
        if branch != next_branch {
            return Ok(0.0);
        }
        self.parts[branch]
            .eta_density(next_inner, k, inner, m)
            .map_err(|e| self.lift_error(branch, e))
    }

    fn has_transformations(&self) -> bool {
        self.parts.iter().all(|p| p.has_transformations())
    }

    fn sample_transform(
        &self,
        point: &OnticPoint,
        u: &Unitary,
        rng: &mut dyn RngCore,
    ) -> ModelResult<OnticPoint> {
        let (branch, inner) = self.split(point)?;
        let next = self.parts[branch].sample_transform(inner, u, rng)?;
        Ok(OnticPoint::Component(branch, Box::new(next)))
    }

    fn transform_point(&self, point: &OnticPoint, u: &Unitary) -> ModelResult<OnticPoint> {
        let (branch, inner) = self.split(point)?;
        let next = self.parts[branch].transform_point(inner, u)?;
        Ok(OnticPoint::Component(branch, Box::new(next)))
    }

    fn closed_form_sequential(
        &self,
        state: &PureState,
        measurements: &[&ProjectiveMeasurement],
        outcomes: &[usize],
    ) -> Option<f64> {
        let a = self.parts[0].closed_form_sequential(state, measurements, outcomes)?;
        let b = self.parts[1].closed_form_sequential(state, measurements, outcomes)?;
        Some(self.weights[0] * a + self.weights[1] * b)
    }

    fn closed_form_transformed(
        &self,
        state: &PureState,
        u: &Unitary,
        m: &ProjectiveMeasurement,
        k: usize,
    ) -> Option<f64> {
        let a = self.parts[0].closed_form_transformed(state, u, m, k)?;
        let b = self.parts[1].closed_form_transformed(state, u, m, k)?;
        Some(self.weights[0] * a + self.weights[1] * b)
    }
}
