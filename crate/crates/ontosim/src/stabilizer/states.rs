//! Enumeration of stabilizer states: maximal isotropic subspaces of the
//! label space paired with characters, realized as dense states.

use ndarray::Array2;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::pauli::{pauli_matrix, symplectic_product, PauliLabel};
use super::phase_space::all_labels;
use super::{check_odd_prime, StabilizerError};
use crate::linalg;
use crate::PureState;

/// One stabilizer generator: ω^{phase} T_{(x,z)} stabilizes the state.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorRecord {
    pub phase: u64,
    pub x: Vec<u64>,
    pub z: Vec<u64>,
}

/// A stabilizer state: n independent commuting generators with phases, plus
/// the dense realization of the unique joint +1 eigenvector.
#[derive(Debug, Clone)]
pub struct StabilizerState {
    pub p: u64,
    pub n: usize,
    pub generators: Vec<GeneratorRecord>,
    state: PureState,
}

impl StabilizerState {
    pub fn state(&self) -> &PureState {
        &self.state
    }

    /// Rebuild from generator records, recomputing the dense state.
    pub fn from_generators(
        p: u64,
        n: usize,
        generators: Vec<GeneratorRecord>,
    ) -> Result<Self, StabilizerError> {
        check_odd_prime(p)?;
        if generators.len() != n {
            return Err(StabilizerError::Invalid(format!(
                "need exactly {n} generators, got {}",
                generators.len()
            )));
        }
        let labels: Vec<PauliLabel> = generators
            .iter()
            .map(|g| PauliLabel::new(g.x.clone(), g.z.clone(), p))
            .collect::<Result<_, _>>()?;
        for (i, a) in labels.iter().enumerate() {
            if a.is_identity() {
                return Err(StabilizerError::Invalid("identity generator".into()));
            }
            for b in labels.iter().skip(i + 1) {
                if symplectic_product(a, b, p) != 0 {
                    return Err(StabilizerError::Invalid("generators do not commute".into()));
                }
            }
        }
        let phases: Vec<u64> = generators.iter().map(|g| g.phase % p).collect();
        let state = stabilized_state(p, n, &labels, &phases)?;
        Ok(Self { p, n, generators, state })
    }

    /// The group projector (1/p^n) Σ_g ω^{c(g)} T_g.
    pub fn group_projector(&self) -> Result<Array2<C64>, StabilizerError> {
        let labels: Vec<PauliLabel> = self
            .generators
            .iter()
            .map(|g| PauliLabel::new(g.x.clone(), g.z.clone(), self.p))
            .collect::<Result<_, _>>()?;
        let phases: Vec<u64> = self.generators.iter().map(|g| g.phase % self.p).collect();
        group_projector(self.p, self.n, &labels, &phases)
    }
}

fn omega(p: u64, exponent: u64) -> C64 {
    let angle = 2.0 * std::f64::consts::PI * (exponent % p) as f64 / p as f64;
    C64::new(angle.cos(), angle.sin())
}

fn group_projector(
    p: u64,
    n: usize,
    generators: &[PauliLabel],
    phases: &[u64],
) -> Result<Array2<C64>, StabilizerError> {
    let d = (p as usize).pow(n as u32);
    let mut proj: Array2<C64> = Array2::zeros((d, d));
    let count = (p as usize).pow(n as u32);
    for idx in 0..count {
        let mut coeffs = vec![0u64; n];
        let mut rem = idx;
        for c in coeffs.iter_mut() {
            *c = (rem % p as usize) as u64;
            rem /= p as usize;
        }
        let mut vector = PauliLabel::new(vec![0; n], vec![0; n], p).unwrap();
        let mut phase = 0u64;
        for (i, &a) in coeffs.iter().enumerate() {
            vector = vector.add(&generators[i].scaled(a, p), p);
            phase = (phase + a * phases[i]) % p;
        }
        let t = pauli_matrix(&vector, p, n)?;
        let w = omega(p, phase);
        proj = proj + t.mapv(|v| v * w);
    }
    proj.mapv_inplace(|v| v / C64::from(count as f64));
    Ok(proj)
}

fn stabilized_state(
    p: u64,
    n: usize,
    generators: &[PauliLabel],
    phases: &[u64],
) -> Result<PureState, StabilizerError> {
    let proj = group_projector(p, n, generators, phases)?;
    let tr = linalg::trace(&proj);
    if (tr.re - 1.0).abs() > 1e-10 || tr.im.abs() > 1e-10 {
        return Err(StabilizerError::Invalid(format!(
            "group projector has trace {tr}, not 1 (inconsistent phases?)"
        )));
    }
    let d = proj.nrows();
    let j = (0..d)
        .max_by(|&a, &b| proj[(a, a)].re.partial_cmp(&proj[(b, b)].re).expect("real diagonal"))
        .expect("nonempty");
    let state = PureState::normalized(proj.column(j).to_owned())
        .map_err(|e| StabilizerError::Invalid(format!("state extraction: {e}")))?;
    // confirm the extracted state is the +1 eigenvector
    let residual = &proj.dot(state.amplitudes()) - state.amplitudes();
    let err: f64 = residual.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if err > 1e-10 {
        return Err(StabilizerError::Invalid(format!("projector does not fix the state ({err})")));
    }
    Ok(state)
}

/// Row-reduce a set of label-space vectors over GF(p); returns the canonical
/// basis of their span.
fn rref(rows: Vec<Vec<u64>>, p: u64) -> Vec<Vec<u64>> {
    let mut rows = rows;
    let width = rows.first().map(|r| r.len()).unwrap_or(0);
    let inv = |a: u64| -> u64 {
        // Fermat inverse; p is a small prime.
        let mut result = 1u64;
        let mut base = a % p;
        let mut exp = p - 2;
        while exp > 0 {
            if exp & 1 == 1 {
                result = result * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        result
    };
    let mut pivot_row = 0usize;
    for col in 0..width {
        let Some(found) = (pivot_row..rows.len()).find(|&r| rows[r][col] % p != 0) else {
            continue;
        };
        rows.swap(pivot_row, found);
        let scale = inv(rows[pivot_row][col]);
        for v in rows[pivot_row].iter_mut() {
            *v = *v * scale % p;
        }
        for r in 0..rows.len() {
            if r != pivot_row && rows[r][col] % p != 0 {
                let factor = rows[r][col] % p;
                for c in 0..width {
                    let sub = factor * rows[pivot_row][c] % p;
                    rows[r][c] = (rows[r][c] + p * p - sub) % p;
                }
            }
        }
        pivot_row += 1;
        if pivot_row == rows.len() {
            break;
        }
    }
    rows.truncate(pivot_row);
    rows
}

/// All maximal isotropic subspaces of ℤ_p^{2n}, each as a canonical basis.
fn maximal_isotropic_subspaces(p: u64, n: usize) -> Vec<Vec<PauliLabel>> {
    let nonzero: Vec<PauliLabel> =
        all_labels(p, n).into_iter().filter(|l| !l.is_identity()).collect();
    let mut seen = std::collections::BTreeSet::new();
    let mut result = Vec::new();
    match n {
        1 => {
            for v in &nonzero {
                let basis = rref(vec![v.coordinates()], p);
                if seen.insert(basis.clone()) {
                    result.push(vec![PauliLabel::from_coordinates(&basis[0], p)]);
                }
            }
        }
        2 => {
            for v1 in &nonzero {
                for v2 in &nonzero {
                    if symplectic_product(v1, v2, p) != 0 {
                        continue;
                    }
                    let basis = rref(vec![v1.coordinates(), v2.coordinates()], p);
                    if basis.len() != 2 {
                        continue; // dependent pair
                    }
                    if seen.insert(basis.clone()) {
                        result.push(
                            basis.iter().map(|r| PauliLabel::from_coordinates(r, p)).collect(),
                        );
                    }
                }
            }
        }
        _ => {}
    }
    result
}

/// Complete duplicate-free list of stabilizer states for n qupits of odd
/// prime dimension p. The count is p^n · Π_{k=1..n} (p^k + 1).
pub fn enumerate_stabilizer_states(p: u64, n: usize) -> Result<Vec<StabilizerState>, StabilizerError> {
    check_odd_prime(p)?;
    if n == 0 || n > 2 {
        return Err(StabilizerError::ResourceLimit(format!(
            "stabilizer enumeration supported for 1 ≤ n ≤ 2, got n = {n}"
        )));
    }
    let subspaces = maximal_isotropic_subspaces(p, n);
    let mut states = Vec::new();
    let char_count = (p as usize).pow(n as u32);
    for basis in subspaces {
        for idx in 0..char_count {
            let mut phases = vec![0u64; n];
            let mut rem = idx;
            for c in phases.iter_mut() {
                *c = (rem % p as usize) as u64;
                rem /= p as usize;
            }
            let generators: Vec<GeneratorRecord> = basis
                .iter()
                .zip(&phases)
                .map(|(g, &phase)| GeneratorRecord { phase, x: g.x.clone(), z: g.z.clone() })
                .collect();
            states.push(StabilizerState::from_generators(p, n, generators)?);
        }
    }
    Ok(states)
}
