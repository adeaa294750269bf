//! Generalized Pauli operators T_{(x,z)} on n qupits and the symplectic
//! structure of their label space ℤ_p^n × ℤ_p^n.

use ndarray::linalg::kron;
use ndarray::Array2;
use num_complex::Complex64 as C64;

use super::{check_odd_prime, StabilizerError};
use crate::qcore::{ProjectiveMeasurement, Projector};
use serde::{Deserialize, Serialize};

/// Label (x⃗, z⃗) of a generalized Pauli operator; components reduced mod p.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PauliLabel {
    pub x: Vec<u64>,
    pub z: Vec<u64>,
}

impl PauliLabel {
    pub fn new(x: Vec<u64>, z: Vec<u64>, p: u64) -> Result<Self, StabilizerError> {
        if x.len() != z.len() || x.is_empty() {
            return Err(StabilizerError::Invalid(
                "x and z vectors must be nonempty and of equal length".into(),
            ));
        }
        Ok(Self { x: x.into_iter().map(|v| v % p).collect(), z: z.into_iter().map(|v| v % p).collect() })
    }

    pub fn sites(&self) -> usize {
        self.x.len()
    }

    pub fn is_identity(&self) -> bool {
        self.x.iter().all(|&v| v == 0) && self.z.iter().all(|&v| v == 0)
    }

    /// Scalar multiple m·(x⃗, z⃗) mod p.
    pub fn scaled(&self, m: u64, p: u64) -> Self {
        Self {
            x: self.x.iter().map(|&v| (v * m) % p).collect(),
            z: self.z.iter().map(|&v| (v * m) % p).collect(),
        }
    }

    pub fn add(&self, other: &Self, p: u64) -> Self {
        Self {
            x: self.x.iter().zip(&other.x).map(|(&a, &b)| (a + b) % p).collect(),
            z: self.z.iter().zip(&other.z).map(|(&a, &b)| (a + b) % p).collect(),
        }
    }

    /// Flattened (x⃗, z⃗) coordinates, for subspace arithmetic.
    pub fn coordinates(&self) -> Vec<u64> {
        self.x.iter().chain(self.z.iter()).copied().collect()
    }

    pub fn from_coordinates(coords: &[u64], p: u64) -> Self {
        let n = coords.len() / 2;
        Self {
            x: coords[..n].iter().map(|&v| v % p).collect(),
            z: coords[n..].iter().map(|&v| v % p).collect(),
        }
    }
}

/// Symplectic inner product [(x⃗,z⃗), (x⃗′,z⃗′)] = z⃗·x⃗′ − x⃗·z⃗′ mod p.
pub fn symplectic_product(a: &PauliLabel, b: &PauliLabel, p: u64) -> u64 {
    let mut total: u64 = 0;
    for i in 0..a.sites() {
        total = (total + a.z[i] * b.x[i]) % p;
        total = (total + p * p - a.x[i] * b.z[i] % (p * p)) % p;
    }
    total % p
}

fn omega(p: u64, exponent: u64) -> C64 {
    let angle = 2.0 * std::f64::consts::PI * (exponent % p) as f64 / p as f64;
    C64::new(angle.cos(), angle.sin())
}

/// Multiplicative inverse of 2 mod p (p odd).
pub(crate) fn inv2(p: u64) -> u64 {
    (p + 1) / 2
}

fn single_site_pauli(x: u64, z: u64, p: u64) -> Array2<C64> {
    let d = p as usize;
    let mut m = Array2::zeros((d, d));
    // T = ω^{xz/2} X^x Z^z with X|j⟩ = |j+1⟩ and Z|j⟩ = ω^j |j⟩.
    let phase = (x * z % p) * inv2(p) % p;
    for j in 0..d {
        let ju = j as u64;
        let row = ((ju + x) % p) as usize;
        m[(row, j)] = omega(p, phase + z * ju);
    }
    m
}

/// Dense matrix of T_{(x⃗,z⃗)} for p an odd prime.
pub fn pauli_matrix(label: &PauliLabel, p: u64, n: usize) -> Result<Array2<C64>, StabilizerError> {
    check_odd_prime(p)?;
    if label.sites() != n {
        return Err(StabilizerError::Invalid(format!(
            "label has {} sites, expected {n}",
            label.sites()
        )));
    }
    let mut m = single_site_pauli(label.x[0], label.z[0], p);
    for i in 1..n {
        m = kron(&m, &single_site_pauli(label.x[i], label.z[i], p));
    }
    Ok(m)
}

/// Measurement of the Pauli observable T_a: outcome k is the eigenvalue-ω^k
/// eigenspace projector Π_k = (1/p) Σ_m ω^{−km} T_{ma}, each of rank p^{n−1}.
pub fn pauli_measurement(
    label: &PauliLabel,
    p: u64,
    n: usize,
) -> Result<ProjectiveMeasurement<f64>, StabilizerError> {
    check_odd_prime(p)?;
    if label.is_identity() {
        return Err(StabilizerError::Invalid("cannot measure the identity Pauli".into()));
    }
    let d = (p as usize).pow(n as u32);
    let powers: Vec<Array2<C64>> = (0..p)
        .map(|m| pauli_matrix(&label.scaled(m, p), p, n))
        .collect::<Result<_, _>>()?;
    let mut projectors = Vec::with_capacity(p as usize);
    for k in 0..p {
        let mut sum: Array2<C64> = Array2::zeros((d, d));
        for (m, t) in powers.iter().enumerate() {
            // ω^{−km} = ω^{(p−k)m}
            let phase = omega(p, (p - k % p) % p * m as u64);
            sum = sum + t.mapv(|v| v * phase);
        }
        sum.mapv_inplace(|v| v / C64::from(p as f64));
        projectors.push(
            Projector::from_matrix(sum)
                .map_err(|e| StabilizerError::Invalid(format!("eigenprojector: {e}")))?,
        );
    }
    ProjectiveMeasurement::new(projectors)
        .map_err(|e| StabilizerError::Invalid(format!("Pauli measurement: {e}")))
}

/// Canonical measurement labels: one representative per line through the
/// origin of the label space (first nonzero coordinate scaled to 1), giving
/// (p^{2n} − 1)/(p − 1) distinct Pauli measurements.
pub fn pauli_measurement_labels(p: u64, n: usize) -> Vec<PauliLabel> {
    let dim = 2 * n;
    let total = (p as usize).pow(dim as u32);
    let mut labels = Vec::new();
    for idx in 0..total {
        let mut coords = vec![0u64; dim];
        let mut rem = idx;
        for c in coords.iter_mut() {
            *c = (rem % p as usize) as u64;
            rem /= p as usize;
        }
        if coords.iter().all(|&c| c == 0) {
            continue;
        }
        // canonical representative: first nonzero coordinate equals 1
        let first = coords.iter().copied().find(|&c| c != 0).unwrap();
        if first != 1 {
            continue;
        }
        labels.push(PauliLabel::from_coordinates(&coords, p));
    }
    labels
}

/// Readable name like "XZ2" or "X*Z" (sites joined by '*').
pub fn pauli_name(label: &PauliLabel) -> String {
    let site = |x: u64, z: u64| -> String {
        let mut s = String::new();
        match x {
            0 => {}
            1 => s.push('X'),
            _ => s.push_str(&format!("X{x}")),
        }
        match z {
            0 => {}
            1 => s.push('Z'),
            _ => s.push_str(&format!("Z{z}")),
        }
        if s.is_empty() {
            s.push('I');
        }
        s
    };
    (0..label.sites())
        .map(|i| site(label.x[i], label.z[i]))
        .collect::<Vec<_>>()
        .join("*")
}
