//! Epistemicity classification: ψ-epistemic, pairwise ψ-epistemic, and
//! never-ψ-ontic, decided from each model's analytic support structure.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{ModelResult, OntologicalModel};
use crate::{PureState, ZERO_PROB_TOL};

#[derive(Debug, Clone, Copy)]
pub struct ClassifyOptions {
    /// Examine every pair even after a witness pair is found.
    pub exhaustive: bool,
    /// λ samples per preparation for the never-ψ-ontic check on models with
    /// continuous ontic spaces.
    pub support_samples: u64,
    pub seed: u64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self { exhaustive: true, support_samples: 200, seed: 0 }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EpistemicityReport {
    /// Some pair of distinct states is ontologically indistinct.
    pub psi_epistemic: bool,
    /// Labels of one indistinct pair, when ψ-epistemic.
    pub witness_pair: Option<(String, String)>,
    /// Every nonorthogonal pair in the supplied set is indistinct.
    pub pairwise: bool,
    /// Every enumerated (or sampled) ontic point supports at least two of the
    /// supplied states.
    pub never_psi_ontic: bool,
}

/// Classify a model over a supplied set of labeled states.
///
/// Overlap decisions come from the model's `indistinct` predicate (analytic,
/// or shared-support-point search for enumerable models) — never from density
/// estimates. Models without a predicate fail with an undecidable error.
pub fn classify_epistemicity(
    model: &dyn OntologicalModel,
    states: &[(String, PureState)],
    options: ClassifyOptions,
) -> ModelResult<EpistemicityReport> {
    let mut psi_epistemic = false;
    let mut witness_pair = None;
    let mut pairwise = true;

    'outer: for (i, (label_a, a)) in states.iter().enumerate() {
        for (label_b, b) in states.iter().skip(i + 1) {
            let identical = a.approx_eq(b, 1e-10);
            let overlapping = model.indistinct(a, b)?;
            if overlapping && !identical && !psi_epistemic {
                psi_epistemic = true;
                witness_pair = Some((label_a.clone(), label_b.clone()));
            }
            let nonorthogonal = a.overlap_sq(b) > ZERO_PROB_TOL;
            if nonorthogonal && !identical && !overlapping {
                pairwise = false;
            }
            if psi_epistemic && !pairwise && !options.exhaustive {
                break 'outer;
            }
        }
    }

    let never_psi_ontic = if model.is_enumerable() {
        never_ontic_enumerated(model, states)?
    } else {
        never_ontic_sampled(model, states, &options)?
    };

    Ok(EpistemicityReport { psi_epistemic, witness_pair, pairwise, never_psi_ontic })
}

fn never_ontic_enumerated(
    model: &dyn OntologicalModel,
    states: &[(String, PureState)],
) -> ModelResult<bool> {
    let points = model
        .enumerate_points()
        .ok_or_else(|| super::ModelError::NotEnumerable(model.name().to_string()))?;
    for point in &points {
        let mut supporting = 0usize;
        for (_, state) in states {
            if model.in_support(state, point)? {
                supporting += 1;
                if supporting >= 2 {
                    break;
                }
            }
        }
        if supporting < 2 {
            return Ok(false);
        }
    }
    Ok(true)
}

fn never_ontic_sampled(
    model: &dyn OntologicalModel,
    states: &[(String, PureState)],
    options: &ClassifyOptions,
) -> ModelResult<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    for (_, prep) in states {
        for _ in 0..options.support_samples {
            let point = model.sample_preparation(prep, &mut rng)?;
            let mut supporting = 0usize;
            for (_, state) in states {
                if model.in_support(state, &point)? {
                    supporting += 1;
                    if supporting >= 2 {
                        break;
                    }
                }
            }
            if supporting < 2 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
