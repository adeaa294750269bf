//! Bloch-sphere coordinates for qubit states and the rotation induced by a
//! qubit unitary.

use ndarray::array;
use num_complex::Complex64 as C64;

use crate::model::{ModelError, ModelResult};
use crate::qcore::QcoreError;
use crate::{ProjectiveMeasurement, PureState, Unitary};

/// A unit 3-vector on the Bloch sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector(pub [f64; 3]);

impl BlochVector {
    pub fn new(v: [f64; 3]) -> ModelResult<Self> {
        let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(
                QcoreError::InvalidArgument(format!("Bloch vector norm {norm} != 1")).into()
            );
        }
        Ok(Self(v))
    }

    pub fn normalized(v: [f64; 3]) -> ModelResult<Self> {
        let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if norm <= 1e-12 {
            return Err(QcoreError::InvalidArgument("cannot normalize zero vector".into()).into());
        }
        Ok(Self([v[0] / norm, v[1] / norm, v[2] / norm]))
    }

    pub fn from_state(state: &PureState) -> ModelResult<Self> {
        if state.dimension() != 2 {
            return Err(QcoreError::DimensionMismatch { expected: 2, found: state.dimension() }
                .into());
        }
        let a0 = state.amplitudes()[0];
        let a1 = state.amplitudes()[1];
        let cross = a0.conj() * a1;
        Ok(Self([2.0 * cross.re, 2.0 * cross.im, a0.norm_sqr() - a1.norm_sqr()]))
    }

    pub fn to_state(&self) -> PureState {
        let [x, y, z] = self.0;
        let theta = z.clamp(-1.0, 1.0).acos();
        let phi = y.atan2(x);
        let amplitudes = array![
            C64::new((theta / 2.0).cos(), 0.0),
            C64::from_polar((theta / 2.0).sin(), phi)
        ];
        PureState::normalized(amplitudes).expect("Bloch vector defines a unit state")
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.0[0] * other.0[0] + self.0[1] * other.0[1] + self.0[2] * other.0[2]
    }
}

pub(crate) fn dot3(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn cross3(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub(crate) fn normalize3(v: [f64; 3]) -> Option<[f64; 3]> {
    let norm = dot3(&v, &v).sqrt();
    if norm <= 1e-12 {
        return None;
    }
    Some([v[0] / norm, v[1] / norm, v[2] / norm])
}

/// Any unit vector orthogonal to `v`.
pub(crate) fn orthogonal3(v: &[f64; 3]) -> [f64; 3] {
    let trial = if v[2].abs() < 0.9 { [0.0, 0.0, 1.0] } else { [1.0, 0.0, 0.0] };
    normalize3(cross3(v, &trial)).expect("trial axis not parallel")
}

/// The qubit measurement along direction n⃗: outcome 0 projects onto +n⃗.
pub fn qubit_measurement(direction: BlochVector) -> ProjectiveMeasurement {
    let plus = direction.to_state();
    let minus = BlochVector([-direction.0[0], -direction.0[1], -direction.0[2]]).to_state();
    ProjectiveMeasurement::from_basis(&[plus, minus]).expect("antipodal states are orthogonal")
}

/// The SO(3) rotation R_U with (U σ·v U†) = σ·(R_U v).
pub fn rotation_from_unitary(u: &Unitary) -> ModelResult<[[f64; 3]; 3]> {
    if u.dimension() != 2 {
        return Err(QcoreError::DimensionMismatch { expected: 2, found: u.dimension() }.into());
    }
    let paulis = [
        array![[C64::new(0.0, 0.0), C64::new(1.0, 0.0)], [C64::new(1.0, 0.0), C64::new(0.0, 0.0)]],
        array![[C64::new(0.0, 0.0), C64::new(0.0, -1.0)], [C64::new(0.0, 1.0), C64::new(0.0, 0.0)]],
        array![[C64::new(1.0, 0.0), C64::new(0.0, 0.0)], [C64::new(0.0, 0.0), C64::new(-1.0, 0.0)]],
    ];
    let udag = crate::linalg::dag(u.matrix());
    let mut r = [[0.0; 3]; 3];
    for (j, sigma) in paulis.iter().enumerate() {
        let conj = u.matrix().dot(sigma).dot(&udag);
        for (i, target) in paulis.iter().enumerate() {
            r[i][j] = 0.5 * crate::linalg::trace(&target.dot(&conj)).re;
        }
    }
    // sanity: R must be orthogonal
    for a in 0..3 {
        for b in 0..3 {
            let dot: f64 = (0..3).map(|k| r[k][a] * r[k][b]).sum();
            let expected = if a == b { 1.0 } else { 0.0 };
            if (dot - expected).abs() > 1e-9 {
                return Err(ModelError::ModelViolation(
                    "unitary does not induce an orthogonal Bloch rotation".into(),
                ));
            }
        }
    }
    Ok(r)
}

pub(crate) fn rotate3(r: &[[f64; 3]; 3], v: &[f64; 3]) -> [f64; 3] {
    [
        r[0][0] * v[0] + r[0][1] * v[1] + r[0][2] * v[2],
        r[1][0] * v[0] + r[1][1] * v[1] + r[1][2] * v[2],
        r[2][0] * v[0] + r[2][1] * v[1] + r[2][2] * v[2],
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn state_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let psi = PureState::haar(2, &mut rng);
            let v = BlochVector::from_state(&psi).unwrap();
            assert!((dot3(&v.0, &v.0) - 1.0).abs() < 1e-12);
            let back = v.to_state();
            assert!(psi.approx_eq(&back, 1e-10));
        }
    }

    #[test]
    fn rotation_matches_state_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let u = Unitary::haar(2, &mut rng);
            let r = rotation_from_unitary(&u).unwrap();
            let psi = PureState::haar(2, &mut rng);
            let v = BlochVector::from_state(&psi).unwrap();
            let rotated = rotate3(&r, &v.0);
            let direct = BlochVector::from_state(&u.apply(&psi).unwrap()).unwrap();
            for i in 0..3 {
                assert!((rotated[i] - direct.0[i]).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn measurement_outcome_zero_projects_on_direction() {
        let m = qubit_measurement(BlochVector([0.0, 0.0, 1.0]));
        let zero = PureState::basis_state(2, 0);
        assert!((crate::qcore::born_probability(&zero, &m, 0).unwrap() - 1.0).abs() < 1e-12);
    }
}
