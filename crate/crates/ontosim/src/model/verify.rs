//! Consistency checkers: compare a model's statistics against operational
//! quantum theory, exactly where the model allows it and by seeded Monte
//! Carlo otherwise.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{ModelError, ModelResult, OntologicalModel, OnticPoint};
use crate::qcore::{born_probability, sequential_probability};
use crate::{ProjectiveMeasurement, PureState, MC_SIGMA, PROB_TOL, ZERO_PROB_TOL};

/// How a check evaluates model probabilities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Evaluation {
    /// Exact: enumeration for finite ontic spaces, closed form where the
    /// model provides one.
    Exact,
    /// Seeded Monte Carlo over independent sample streams.
    MonteCarlo { samples: u64, seed: u64 },
}

/// Descriptor of one experiment, embedded in every report for replay.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub preparation: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transformation: Option<String>,
    pub measurements: Vec<String>,
    pub outcomes: Vec<usize>,
}

/// Per-experiment comparison of model versus quantum probabilities.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub experiment: ExperimentSpec,
    pub model_probability: f64,
    pub quantum_probability: f64,
    pub std_error: f64,
    pub samples: u64,
    pub pass: bool,
}

impl VerificationReport {
    fn new(
        experiment: ExperimentSpec,
        model_probability: f64,
        quantum_probability: f64,
        std_error: f64,
        samples: u64,
    ) -> Self {
        let tolerance = PROB_TOL.max(MC_SIGMA * std_error);
        let pass = (model_probability - quantum_probability).abs() <= tolerance;
        Self { experiment, model_probability, quantum_probability, std_error, samples, pass }
    }
}

/// All ontic points with their μ(·|ψ) masses; enumerable models only.
pub fn enumerated_mu(
    model: &dyn OntologicalModel,
    state: &PureState,
) -> ModelResult<(Vec<OnticPoint>, Vec<f64>)> {
    let points = model
        .enumerate_points()
        .ok_or_else(|| ModelError::NotEnumerable(model.name().to_string()))?;
    let weights = points
        .iter()
        .map(|pt| model.mu_density(pt, state))
        .collect::<ModelResult<Vec<f64>>>()?;
    Ok((points, weights))
}

/// Exact joint outcome-chain probability by summing over the ontic space.
pub fn exact_sequential_via_enumeration(
    model: &dyn OntologicalModel,
    state: &PureState,
    measurements: &[&ProjectiveMeasurement],
    outcomes: &[usize],
) -> ModelResult<f64> {
    let (points, mut weights) = enumerated_mu(model, state)?;
    let last = measurements.len() - 1;
    for (step, (m, &k)) in measurements.iter().zip(outcomes).enumerate() {
        let responses = points
            .iter()
            .map(|pt| model.response(k, pt, m))
            .collect::<ModelResult<Vec<f64>>>()?;
        if step == last {
            return Ok(weights.iter().zip(&responses).map(|(w, xi)| w * xi).sum());
        }
        let mut next = vec![0.0; points.len()];
        for (i, pt) in points.iter().enumerate() {
            let mass = weights[i] * responses[i];
            if mass <= ZERO_PROB_TOL {
                continue;
            }
            for (j, pt_next) in points.iter().enumerate() {
                let eta = model.eta_density(pt_next, k, pt, m)?;
                if eta > 0.0 {
                    next[j] += mass * eta;
                }
            }
        }
        weights = next;
    }
    unreachable!("measurement chain is nonempty")
}

fn batch_sizes(samples: u64) -> Vec<u64> {
    let batches = 64u64.min(samples.max(1));
    let base = samples / batches;
    let extra = samples % batches;
    (0..batches).map(|b| base + u64::from(b < extra)).filter(|&n| n > 0).collect()
}

fn batch_rng(seed: u64, batch: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(batch + 1);
    rng
}

/// Mean of ξ(k|λ, M) over μ-samples, one accumulator per outcome.
fn mc_prepare_measure(
    model: &dyn OntologicalModel,
    state: &PureState,
    m: &ProjectiveMeasurement,
    transform: Option<&crate::Unitary>,
    samples: u64,
    seed: u64,
) -> ModelResult<Vec<f64>> {
    let sizes = batch_sizes(samples);
    let totals: Vec<ModelResult<Vec<f64>>> = sizes
        .par_iter()
        .enumerate()
        .map(|(b, &n)| {
            let mut rng = batch_rng(seed, b as u64);
            let mut sums = vec![0.0; m.num_outcomes()];
            for _ in 0..n {
                let mut point = model.sample_preparation(state, &mut rng)?;
                if let Some(u) = transform {
                    point = model.sample_transform(&point, u, &mut rng)?;
                }
                for (k, sum) in sums.iter_mut().enumerate() {
                    *sum += model.response(k, &point, m)?;
                }
            }
            Ok(sums)
        })
        .collect();
    let mut merged = vec![0.0; m.num_outcomes()];
    for batch in totals {
        for (acc, s) in merged.iter_mut().zip(batch?) {
            *acc += s;
        }
    }
    Ok(merged.into_iter().map(|s| s / samples as f64).collect())
}

/// Draw an outcome from the distribution ξ(·|λ, M).
pub(crate) fn sample_response(
    model: &dyn OntologicalModel,
    point: &OnticPoint,
    m: &ProjectiveMeasurement,
    rng: &mut dyn RngCore,
) -> ModelResult<usize> {
    let u: f64 = rng.random();
    let mut cumulative = 0.0;
    let last = m.num_outcomes() - 1;
    for k in 0..m.num_outcomes() {
        cumulative += model.response(k, point, m)?;
        if u < cumulative {
            return Ok(k);
        }
    }
    Ok(last)
}

/// Prepare-and-measure-once check, one report per outcome.
pub fn check_prepare_measure(
    model: &dyn OntologicalModel,
    preparation: &str,
    measurement: &str,
    eval: Evaluation,
) -> ModelResult<Vec<VerificationReport>> {
    let state = model.catalog().preparation(preparation)?.clone();
    let m = model.catalog().measurement(measurement)?.clone();
    let quantum: Vec<f64> = (0..m.num_outcomes())
        .map(|k| born_probability(&state, &m, k).map_err(ModelError::from))
        .collect::<ModelResult<_>>()?;

    let (estimates, std_errors, samples) = match eval {
        Evaluation::Exact => {
            let est = exact_outcome_probabilities(model, &state, &m, None)?;
            (est, vec![0.0; m.num_outcomes()], 0)
        }
        Evaluation::MonteCarlo { samples, seed } => {
            let est = mc_prepare_measure(model, &state, &m, None, samples, seed)?;
            let se = est.iter().map(|p| (p * (1.0 - p) / samples as f64).max(0.0).sqrt()).collect();
            (est, se, samples)
        }
    };

    Ok((0..m.num_outcomes())
        .map(|k| {
            VerificationReport::new(
                ExperimentSpec {
                    preparation: preparation.to_string(),
                    transformation: None,
                    measurements: vec![measurement.to_string()],
                    outcomes: vec![k],
                },
                estimates[k],
                quantum[k],
                std_errors[k],
                samples,
            )
        })
        .collect())
}

fn exact_outcome_probabilities(
    model: &dyn OntologicalModel,
    state: &PureState,
    m: &ProjectiveMeasurement,
    transform: Option<&crate::Unitary>,
) -> ModelResult<Vec<f64>> {
    if model.is_enumerable() {
        let (points, weights) = enumerated_mu(model, state)?;
        let mapped: Vec<OnticPoint> = match transform {
            Some(u) => points
                .iter()
                .map(|pt| model.transform_point(pt, u))
                .collect::<ModelResult<_>>()?,
            None => points,
        };
        (0..m.num_outcomes())
            .map(|k| {
                mapped
                    .iter()
                    .zip(&weights)
                    .map(|(pt, w)| Ok(w * model.response(k, pt, m)?))
                    .sum::<ModelResult<f64>>()
            })
            .collect()
    } else {
        (0..m.num_outcomes())
            .map(|k| {
                let value = match transform {
                    Some(u) => model.closed_form_transformed(state, u, m, k),
                    None => model.closed_form_sequential(state, &[m], &[k]),
                };
                value.ok_or_else(|| ModelError::Unsupported(format!(
                    "model '{}' has no exact evaluation path; use Monte Carlo",
                    model.name()
                )))
            })
            .collect()
    }
}

/// Prepare-transform-measure check, one report per outcome.
pub fn check_prepare_transform_measure(
    model: &dyn OntologicalModel,
    preparation: &str,
    transformation: &str,
    measurement: &str,
    eval: Evaluation,
) -> ModelResult<Vec<VerificationReport>> {
    if !model.has_transformations() {
        return Err(ModelError::NoTransformations { model: model.name().to_string() });
    }
    let state = model.catalog().preparation(preparation)?.clone();
    let u = model.catalog().transformation(transformation)?.clone();
    let m = model.catalog().measurement(measurement)?.clone();
    let transformed = u.apply(&state)?;
    let quantum: Vec<f64> = (0..m.num_outcomes())
        .map(|k| born_probability(&transformed, &m, k).map_err(ModelError::from))
        .collect::<ModelResult<_>>()?;

    let (estimates, std_errors, samples) = match eval {
        Evaluation::Exact => {
            let est = exact_outcome_probabilities(model, &state, &m, Some(&u))?;
            (est, vec![0.0; m.num_outcomes()], 0)
        }
        Evaluation::MonteCarlo { samples, seed } => {
            let est = mc_prepare_measure(model, &state, &m, Some(&u), samples, seed)?;
            let se = est.iter().map(|p| (p * (1.0 - p) / samples as f64).max(0.0).sqrt()).collect();
            (est, se, samples)
        }
    };

    Ok((0..m.num_outcomes())
        .map(|k| {
            VerificationReport::new(
                ExperimentSpec {
                    preparation: preparation.to_string(),
                    transformation: Some(transformation.to_string()),
                    measurements: vec![measurement.to_string()],
                    outcomes: vec![k],
                },
                estimates[k],
                quantum[k],
                std_errors[k],
                samples,
            )
        })
        .collect())
}

/// Sequential-measurement check for a single outcome string.
///
/// Sampling models run rejection-free conditional chains: draw λ ~ μ, then an
/// outcome from ξ, then λ' ~ η, and so on, tallying how often the whole chain
/// matches. Update-incapable models surface their contradiction witness here.
pub fn check_sequential(
    model: &dyn OntologicalModel,
    preparation: &str,
    measurements: &[&str],
    outcomes: &[usize],
    eval: Evaluation,
) -> ModelResult<VerificationReport> {
    if measurements.is_empty() || measurements.len() != outcomes.len() {
        return Err(ModelError::InvalidConfig(
            "need equally many measurements and outcomes (at least one)".into(),
        ));
    }
    let state = model.catalog().preparation(preparation)?.clone();
    let ms: Vec<ProjectiveMeasurement> = measurements
        .iter()
        .map(|label| model.catalog().measurement(label).cloned())
        .collect::<ModelResult<_>>()?;
    let m_refs: Vec<&ProjectiveMeasurement> = ms.iter().collect();
    for (m, &k) in m_refs.iter().zip(outcomes) {
        if k >= m.num_outcomes() {
            return Err(crate::qcore::QcoreError::OutcomeOutOfRange {
                outcome: k,
                num_outcomes: m.num_outcomes(),
            }
            .into());
        }
    }
    let quantum = sequential_probability(&state, &m_refs, outcomes)?;

    let (estimate, std_error, samples) = match eval {
        Evaluation::Exact => {
            let value = if model.is_enumerable() {
                exact_sequential_via_enumeration(model, &state, &m_refs, outcomes)?
            } else {
                model.closed_form_sequential(&state, &m_refs, outcomes).ok_or_else(|| {
                    ModelError::Unsupported(format!(
                        "model '{}' has no exact sequential path; use Monte Carlo",
                        model.name()
                    ))
                })?
            };
            (value, 0.0, 0)
        }
        Evaluation::MonteCarlo { samples, seed } => {
            let hits = mc_sequential_hits(model, &state, &m_refs, outcomes, samples, seed)?;
            let p = hits as f64 / samples as f64;
            (p, (p * (1.0 - p) / samples as f64).max(0.0).sqrt(), samples)
        }
    };

    Ok(VerificationReport::new(
        ExperimentSpec {
            preparation: preparation.to_string(),
            transformation: None,
            measurements: measurements.iter().map(|s| s.to_string()).collect(),
            outcomes: outcomes.to_vec(),
        },
        estimate,
        quantum,
        std_error,
        samples,
    ))
}

fn mc_sequential_hits(
    model: &dyn OntologicalModel,
    state: &PureState,
    measurements: &[&ProjectiveMeasurement],
    outcomes: &[usize],
    samples: u64,
    seed: u64,
) -> ModelResult<u64> {
    let sizes = batch_sizes(samples);
    let counts: Vec<ModelResult<u64>> = sizes
        .par_iter()
        .enumerate()
        .map(|(b, &n)| {
            let mut rng = batch_rng(seed, b as u64);
            let mut hits = 0u64;
            'trial: for _ in 0..n {
                let mut point = model.sample_preparation(state, &mut rng)?;
                for (step, (m, &target)) in measurements.iter().zip(outcomes).enumerate() {
                    let drawn = sample_response(model, &point, m, &mut rng)?;
                    if drawn != target {
                        continue 'trial;
                    }
                    if step + 1 < measurements.len() {
                        point = model.sample_update(&point, target, m, &mut rng)?;
                    }
                }
                hits += 1;
            }
            Ok(hits)
        })
        .collect();
    let mut total = 0u64;
    for c in counts {
        total += c?;
    }
    Ok(total)
}
