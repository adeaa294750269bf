//! The ontological-model abstraction: ontic space Λ, preparation distribution
//! μ, transition matrix Γ, response function ξ, and state update rule η,
//! together with the support structure that the no-go machinery interrogates.

mod classify;
mod combinators;
mod verify;

pub use classify::{classify_epistemicity, ClassifyOptions, EpistemicityReport};
pub use combinators::{convex_combination, psi_ontic_update, rank1_update, MixtureModel};
pub use verify::{
    check_prepare_measure, check_prepare_transform_measure, check_sequential, enumerated_mu,
    exact_sequential_via_enumeration, Evaluation, ExperimentSpec, VerificationReport,
};

use std::collections::BTreeMap;

use rand::RngCore;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::nogo::ContradictionWitness;
use crate::qcore::QcoreError;
use crate::stabilizer::PhasePoint;
use crate::{ProjectiveMeasurement, PureState, Unitary};

/// A model-specific ontic state λ. Each model owns exactly one variant shape;
/// handing a model the wrong variant is a contract violation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum OnticPoint {
    /// Unit vector on the Bloch sphere (Kochen-Specker).
    Sphere([f64; 3]),
    /// Two Bloch vectors plus the bits r, s (Montina).
    Montina { x_plus: [f64; 3], x_minus: [f64; 3], r: i8, s: i8 },
    /// A point of projective Hilbert space (Beltrametti-Bugajski).
    State(PureState),
    /// A quantum state paired with an interval coordinate p ∈ [0,1]
    /// (Bell, LJBR, ABCL).
    StateInterval { state: PureState, p: f64 },
    /// One outcome per declared measurement (Kitchen Sink).
    OutcomeTuple(Vec<usize>),
    /// A phase-space point over ℤ_p (discrete-Wigner model).
    Phase(PhasePoint),
    /// A point of a disjoint-union ontic space: branch index plus the
    /// component's own point (convex combinations).
    Component(usize, Box<OnticPoint>),
}

impl OnticPoint {
    /// Short human-readable form for reports and error messages.
    pub fn describe(&self) -> String {
        match self {
            OnticPoint::Sphere(v) => format!("sphere({:.6}, {:.6}, {:.6})", v[0], v[1], v[2]),
            OnticPoint::Montina { r, s, .. } => format!("montina(r={r}, s={s}, ..)"),
            OnticPoint::State(_) => "state(..)".to_string(),
            OnticPoint::StateInterval { p, .. } => format!("state-interval(p={p:.6})"),
            OnticPoint::OutcomeTuple(t) => format!("outcomes{t:?}"),
            OnticPoint::Phase(pt) => format!("phase(x={:?}, z={:?})", pt.x, pt.z),
            OnticPoint::Component(i, inner) => format!("branch{i}:{}", inner.describe()),
        }
    }
}

/// Whether a model carries a state update rule η.
#[derive(Debug, Clone)]
pub enum UpdateCapability {
    /// η is defined everywhere ξ > 0.
    Capable,
    /// No η can exist; the witness proves it.
    Incapable { witness: Box<ContradictionWitness> },
    /// No update rule is specified (neither given nor refuted).
    Unspecified { reason: String },
}

impl UpdateCapability {
    pub fn is_capable(&self) -> bool {
        matches!(self, UpdateCapability::Capable)
    }
}

#[derive(Debug, Error)]
pub enum ModelError {
    #[error(transparent)]
    Qcore(#[from] QcoreError),
    #[error("unknown {kind} label '{label}'")]
    UnknownLabel { kind: &'static str, label: String },
    #[error("model '{model}' expects {expected} ontic points")]
    WrongOnticVariant { model: &'static str, expected: &'static str },
    #[error("model '{model}' cannot represent state update: contradiction witness attached")]
    UpdateImpossible { model: String, witness: Box<ContradictionWitness> },
    #[error("model '{model}' specifies no update rule: {reason}")]
    NoUpdateRule { model: String, reason: String },
    #[error("model '{model}' declares no transformations")]
    NoTransformations { model: String },
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    #[error("model '{0}' is not ψ-ontic: ontic point consistent with several states")]
    NotPsiOntic(String),
    #[error("undecidable for model '{model}': {reason}")]
    Undecidable { model: String, reason: String },
    #[error("model '{model}' exposes no exact {quantity} density")]
    DensityUnavailable { model: &'static str, quantity: &'static str },
    #[error("model '{0}' is not enumerable")]
    NotEnumerable(String),
    #[error("preparation '{state}' is negatively represented: value {value:.6e} at {point}")]
    Negativity { state: String, point: String, value: f64 },
    #[error("model violation: {0}")]
    ModelViolation(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("resource limit: {0}")]
    ResourceLimit(String),
}

pub type ModelResult<T> = Result<T, ModelError>;

/// Labeled sets of declared preparations, transformations, and measurements.
#[derive(Debug, Clone, Default)]
pub struct Catalog {
    pub preparations: BTreeMap<String, PureState>,
    pub transformations: BTreeMap<String, Unitary>,
    pub measurements: BTreeMap<String, ProjectiveMeasurement>,
}

impl Catalog {
    pub fn preparation(&self, label: &str) -> ModelResult<&PureState> {
        self.preparations.get(label).ok_or_else(|| ModelError::UnknownLabel {
            kind: "preparation",
            label: label.to_string(),
        })
    }

    pub fn transformation(&self, label: &str) -> ModelResult<&Unitary> {
        self.transformations.get(label).ok_or_else(|| ModelError::UnknownLabel {
            kind: "transformation",
            label: label.to_string(),
        })
    }

    pub fn measurement(&self, label: &str) -> ModelResult<&ProjectiveMeasurement> {
        self.measurements.get(label).ok_or_else(|| ModelError::UnknownLabel {
            kind: "measurement",
            label: label.to_string(),
        })
    }
}

/// The ontological-model contract.
///
/// Samplers draw from the model's distributions through an explicit random
/// stream; densities are exposed exactly where a model has them (always, for
/// enumerable models). All methods take quantum objects directly — label
/// resolution happens in the verification layer via [`Catalog`].
pub trait OntologicalModel: Send + Sync {
    fn name(&self) -> &str;
    fn dimension(&self) -> usize;
    fn catalog(&self) -> &Catalog;
    fn catalog_mut(&mut self) -> &mut Catalog;

    /// Subtheory gate for preparations; full-quantum-theory models accept any
    /// state of the right dimension.
    fn admit_preparation(&self, _state: &PureState) -> ModelResult<()> {
        Ok(())
    }
    fn admit_measurement(&self, _m: &ProjectiveMeasurement) -> ModelResult<()> {
        Ok(())
    }
    fn admit_transformation(&self, _u: &Unitary) -> ModelResult<()> {
        Ok(())
    }

    fn register_preparation(&mut self, label: &str, state: PureState) -> ModelResult<()> {
        if state.dimension() != self.dimension() {
            return Err(QcoreError::DimensionMismatch {
                expected: self.dimension(),
                found: state.dimension(),
            }
            .into());
        }
        self.admit_preparation(&state)?;
        self.catalog_mut().preparations.insert(label.to_string(), state);
        Ok(())
    }

    fn register_measurement(&mut self, label: &str, m: ProjectiveMeasurement) -> ModelResult<()> {
        if m.dimension() != self.dimension() {
            return Err(QcoreError::DimensionMismatch {
                expected: self.dimension(),
                found: m.dimension(),
            }
            .into());
        }
        self.admit_measurement(&m)?;
        self.catalog_mut().measurements.insert(label.to_string(), m);
        Ok(())
    }

    fn register_transformation(&mut self, label: &str, u: Unitary) -> ModelResult<()> {
        if u.dimension() != self.dimension() {
            return Err(QcoreError::DimensionMismatch {
                expected: self.dimension(),
                found: u.dimension(),
            }
            .into());
        }
        self.admit_transformation(&u)?;
        self.catalog_mut().transformations.insert(label.to_string(), u);
        Ok(())
    }

    /// Draw λ ~ μ(·|P_ψ).
    fn sample_preparation(&self, state: &PureState, rng: &mut dyn RngCore)
        -> ModelResult<OnticPoint>;

    /// ξ(k | λ, M) ∈ [0, 1].
    fn response(&self, k: usize, point: &OnticPoint, m: &ProjectiveMeasurement)
        -> ModelResult<f64>;

    /// Draw λ' ~ Γ(·|λ, T_U).
    fn sample_transform(
        &self,
        point: &OnticPoint,
        u: &Unitary,
        rng: &mut dyn RngCore,
    ) -> ModelResult<OnticPoint> {
        let _ = (point, u, rng);
        Err(ModelError::NoTransformations { model: self.name().to_string() })
    }

    fn has_transformations(&self) -> bool {
        false
    }

    fn update_capability(&self) -> UpdateCapability;

    /// Draw λ' ~ η(·|k, λ, M). Only defined for λ in the support of ξ(k|·,M).
    fn sample_update(
        &self,
        point: &OnticPoint,
        k: usize,
        m: &ProjectiveMeasurement,
        rng: &mut dyn RngCore,
    ) -> ModelResult<OnticPoint>;

    /// Whether λ lies in Δ_ψ, the support of ψ's preparation distribution.
    fn in_support(&self, state: &PureState, point: &OnticPoint) -> ModelResult<bool>;

    /// Whether Δ_ψ ∩ Δ_φ ≠ ∅, decided analytically (or by shared support
    /// points for enumerable models) — never estimated from samples.
    fn indistinct(&self, a: &PureState, b: &PureState) -> ModelResult<bool>;

    /// A point of Δ_a ∩ Δ_b when the supports overlap.
    fn overlap_point(&self, a: &PureState, b: &PureState) -> ModelResult<Option<OnticPoint>>;

    /// For ψ-ontic points: the unique quantum state consistent with λ.
    fn supported_state(&self, point: &OnticPoint) -> ModelResult<PureState> {
        let _ = point;
        Err(ModelError::NotPsiOntic(self.name().to_string()))
    }

    /// `Some` for models with a finite ontic space.
    fn enumerate_points(&self) -> Option<Vec<OnticPoint>> {
        None
    }

    fn is_enumerable(&self) -> bool {
        false
    }

    /// Exact μ(λ|P_ψ): probability mass for enumerable models, density for
    /// continuous models that have a closed form.
    fn mu_density(&self, point: &OnticPoint, state: &PureState) -> ModelResult<f64> {
        let _ = (point, state);
        Err(ModelError::DensityUnavailable { model: "model", quantity: "mu" })
    }

    /// Exact η(λ'|k, λ, M) for enumerable models.
    fn eta_density(
        &self,
        next: &OnticPoint,
        k: usize,
        point: &OnticPoint,
        m: &ProjectiveMeasurement,
    ) -> ModelResult<f64> {
        let _ = (next, k, point, m);
        Err(ModelError::DensityUnavailable { model: "model", quantity: "eta" })
    }

    /// Deterministic Γ for models whose transformations permute the ontic
    /// space (all enumerable models here).
    fn transform_point(&self, point: &OnticPoint, u: &Unitary) -> ModelResult<OnticPoint> {
        let _ = (point, u);
        Err(ModelError::NoTransformations { model: self.name().to_string() })
    }

    /// Closed-form joint probability of an outcome chain, for models whose
    /// dynamics are delta-plus-uniform (no Monte Carlo, no enumeration).
    fn closed_form_sequential(
        &self,
        state: &PureState,
        measurements: &[&ProjectiveMeasurement],
        outcomes: &[usize],
    ) -> Option<f64> {
        let _ = (state, measurements, outcomes);
        None
    }

    /// Closed-form prepare-transform-measure probability.
    fn closed_form_transformed(
        &self,
        state: &PureState,
        u: &Unitary,
        m: &ProjectiveMeasurement,
        k: usize,
    ) -> Option<f64> {
        let _ = (state, u, m, k);
        None
    }
}

/// Index of `point` in an enumerated point list (discrete variants only).
pub fn point_index(points: &[OnticPoint], point: &OnticPoint) -> Option<usize> {
    points.iter().position(|p| p == point)
}

/// Serializable verdict entry for the transformation-constraint check: two
/// pairs with (numerically) equal inner products but different ontological
/// distinctness.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TransformationViolation {
    pub first_pair: (String, String),
    pub second_pair: (String, String),
    pub inner_product: f64,
    pub first_indistinct: bool,
    pub second_indistinct: bool,
}
