//! Phase space ℤ_p^n × ℤ_p^n and the phase-point operators A_λ, the
//! symplectic Fourier transform of the Pauli operators.

use ndarray::Array2;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::pauli::{pauli_matrix, symplectic_product, PauliLabel};
use super::{check_odd_prime, StabilizerError};
use crate::linalg;

/// A point λ = (x⃗, z⃗) of phase space; the space has exactly p^{2n} points.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PhasePoint {
    pub x: Vec<u64>,
    pub z: Vec<u64>,
}

impl PhasePoint {
    pub fn new(x: Vec<u64>, z: Vec<u64>, p: u64) -> Result<Self, StabilizerError> {
        let label = PauliLabel::new(x, z, p)?;
        Ok(Self { x: label.x, z: label.z })
    }

    pub fn label(&self) -> PauliLabel {
        PauliLabel { x: self.x.clone(), z: self.z.clone() }
    }
}

impl From<PauliLabel> for PhasePoint {
    fn from(label: PauliLabel) -> Self {
        Self { x: label.x, z: label.z }
    }
}

/// A_λ = (1/p^n) Σ_{λ'} ω^{[λ,λ']} T_{λ'}.
pub fn phase_point_operator(
    point: &PhasePoint,
    p: u64,
    n: usize,
) -> Result<Array2<C64>, StabilizerError> {
    check_odd_prime(p)?;
    let d = (p as usize).pow(n as u32);
    let mut sum: Array2<C64> = Array2::zeros((d, d));
    let lam = point.label();
    for label in all_labels(p, n) {
        let exp = symplectic_product(&lam, &label, p);
        let angle = 2.0 * std::f64::consts::PI * exp as f64 / p as f64;
        let phase = C64::new(angle.cos(), angle.sin());
        let t = pauli_matrix(&label, p, n)?;
        sum = sum + t.mapv(|v| v * phase);
    }
    sum.mapv_inplace(|v| v / C64::from(d as f64));
    Ok(sum)
}

pub(crate) fn all_labels(p: u64, n: usize) -> Vec<PauliLabel> {
    let dim = 2 * n;
    let total = (p as usize).pow(dim as u32);
    (0..total)
        .map(|idx| {
            let mut coords = vec![0u64; dim];
            let mut rem = idx;
            for c in coords.iter_mut() {
                *c = (rem % p as usize) as u64;
                rem /= p as usize;
            }
            PauliLabel::from_coordinates(&coords, p)
        })
        .collect()
}

/// Cached table of all phase points and their A_λ operators.
pub struct PhaseSpace {
    pub p: u64,
    pub n: usize,
    pub dimension: usize,
    points: Vec<PhasePoint>,
    operators: Vec<Array2<C64>>,
}

impl PhaseSpace {
    pub fn new(p: u64, n: usize) -> Result<Self, StabilizerError> {
        check_odd_prime(p)?;
        if n == 0 || n > 2 {
            return Err(StabilizerError::ResourceLimit(format!(
                "phase space supported for 1 ≤ n ≤ 2 qupits, got n = {n}"
            )));
        }
        let dimension = (p as usize).pow(n as u32);
        let points: Vec<PhasePoint> =
            all_labels(p, n).into_iter().map(PhasePoint::from).collect();
        let operators = points
            .iter()
            .map(|pt| phase_point_operator(pt, p, n))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { p, n, dimension, points, operators })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[PhasePoint] {
        &self.points
    }

    pub fn operator(&self, idx: usize) -> &Array2<C64> {
        &self.operators[idx]
    }

    pub fn index_of(&self, point: &PhasePoint) -> Option<usize> {
        self.points.iter().position(|p| p == point)
    }

    /// Index of the phase point whose operator matches `m` within `tol`.
    pub fn match_operator(&self, m: &Array2<C64>, tol: f64) -> Option<usize> {
        self.operators.iter().position(|a| linalg::max_abs_diff(a, m) < tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phase_space_size() {
        let ps = PhaseSpace::new(3, 1).unwrap();
        assert_eq!(ps.len(), 9);
        let ps2 = PhaseSpace::new(3, 2).unwrap();
        assert_eq!(ps2.len(), 81);
    }

    #[test]
    fn unit_trace_everywhere() {
        // Only the identity term contributes trace, so tr A_λ = 1.
        let ps = PhaseSpace::new(3, 1).unwrap();
        for idx in 0..ps.len() {
            let tr = linalg::trace(ps.operator(idx));
            assert!((tr.re - 1.0).abs() < 1e-12 && tr.im.abs() < 1e-12);
        }
    }

    #[test]
    fn hermitian_everywhere() {
        let ps = PhaseSpace::new(3, 1).unwrap();
        for idx in 0..ps.len() {
            assert!(linalg::is_hermitian(ps.operator(idx), 1e-12));
        }
    }

    #[test]
    fn orthogonality_oracle() {
        // Enumeration oracle over the double sum: tr(A_λ A_λ') = 3 δ_{λλ'}.
        let ps = PhaseSpace::new(3, 1).unwrap();
        for i in 0..ps.len() {
            for j in 0..ps.len() {
                let prod = ps.operator(i).dot(ps.operator(j));
                let tr = linalg::trace(&prod);
                let expected = if i == j { 3.0 } else { 0.0 };
                assert!((tr.re - expected).abs() < 1e-10, "tr(A_{i} A_{j}) = {}", tr.re);
                assert!(tr.im.abs() < 1e-10);
            }
        }
    }

    #[test]
    fn completeness() {
        // Σ_λ A_λ = p^n 𝕀.
        let ps = PhaseSpace::new(3, 1).unwrap();
        let mut sum: Array2<C64> = Array2::zeros((3, 3));
        for idx in 0..ps.len() {
            sum = sum + ps.operator(idx);
        }
        let expected = linalg::identity::<f64>(3).mapv(|v| v * C64::from(3.0));
        assert!(linalg::max_abs_diff(&sum, &expected) < 1e-10);
    }

    #[test]
    fn eigenvalues_from_dense_oracle() {
        // Dense eigensolver oracle: every A_λ at (3,1) has spectrum {1, 1, −1}.
        let ps = PhaseSpace::new(3, 1).unwrap();
        for idx in 0..ps.len() {
            let eigs = linalg::hermitian_eigenvalues(ps.operator(idx));
            assert!((eigs[0] + 1.0).abs() < 1e-10);
            assert!((eigs[1] - 1.0).abs() < 1e-10);
            assert!((eigs[2] - 1.0).abs() < 1e-10);
        }
    }
}
