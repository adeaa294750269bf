//! Dense complex linear algebra helpers shared across the crate.
//!
//! Everything here works on `ndarray` arrays of `Complex<S>`. The eigensolver
//! is a cyclic Jacobi iteration, which is exact enough and fast at the matrix
//! sizes this crate deals with (d ≤ ~81).

use ndarray::{Array1, Array2};
use num_complex::Complex;
use num_traits::Zero;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::scalar::Scalar;

pub type C64 = Complex<f64>;

/// Conjugate transpose.
pub fn dag<S: Scalar>(m: &Array2<Complex<S>>) -> Array2<Complex<S>> {
    m.t().mapv(|z| z.conj())
}

pub fn identity<S: Scalar>(d: usize) -> Array2<Complex<S>> {
    Array2::from_shape_fn((d, d), |(i, j)| {
        if i == j {
            Complex::new(S::one(), S::zero())
        } else {
            Complex::zero()
        }
    })
}

pub fn trace<S: Scalar>(m: &Array2<Complex<S>>) -> Complex<S> {
    m.diag().iter().copied().sum()
}

/// Largest absolute entry of `a - b`.
pub fn max_abs_diff<S: Scalar>(a: &Array2<Complex<S>>, b: &Array2<Complex<S>>) -> S {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (*x - *y).norm())
        .fold(S::zero(), S::max)
}

pub fn frobenius_norm<S: Scalar>(m: &Array2<Complex<S>>) -> S {
    m.iter().map(|z| z.norm_sqr()).sum::<S>().sqrt()
}

pub fn is_hermitian<S: Scalar>(m: &Array2<Complex<S>>, tol: S) -> bool {
    max_abs_diff(m, &dag(m)) <= tol
}

/// Eigenvalues of a Hermitian matrix by cyclic Jacobi rotations, ascending.
///
/// The input is assumed Hermitian; only the strict upper triangle drives the
/// rotations.
pub fn hermitian_eigenvalues<S: Scalar>(m: &Array2<Complex<S>>) -> Vec<S> {
    let d = m.nrows();
    assert_eq!(d, m.ncols(), "eigenvalues of a non-square matrix");
    if d == 0 {
        return Vec::new();
    }
    let mut a = m.clone();
    let scale = frobenius_norm(&a).max(S::one());
    let tol = S::STRUCT_TOL * scale * S::from_f64_c(1e-3);
    for _ in 0..60 {
        let mut off = S::zero();
        for p in 0..d {
            for q in (p + 1)..d {
                off = off + a[(p, q)].norm_sqr();
            }
        }
        if off.sqrt() <= tol {
            break;
        }
        for p in 0..d {
            for q in (p + 1)..d {
                let b = a[(p, q)];
                if b.norm() <= tol * S::from_f64_c(1e-2) {
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let phi = b.im.atan2(b.re);
                let theta = S::from_f64_c(0.5) * (S::from_f64_c(2.0) * b.norm()).atan2(app - aqq);
                let c = theta.cos();
                let s = Complex::from_polar(theta.sin(), phi);
                // G differs from identity on rows/cols p,q:
                //   G[p][p]=c, G[p][q]=-s, G[q][p]=conj(s), G[q][q]=c
                // apply A <- G† A G
                for k in 0..d {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * c + akq * s.conj();
                    a[(k, q)] = -(akp * s) + akq * c;
                }
                for k in 0..d {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = apk * c + aqk * s;
                    a[(q, k)] = -(apk * s.conj()) + aqk * c;
                }
            }
        }
    }
    let mut eigs: Vec<S> = a.diag().iter().map(|z| z.re).collect();
    eigs.sort_by(|x, y| x.partial_cmp(y).expect("real eigenvalues"));
    eigs
}

/// Amplitudes of a Haar-random pure state: normalized complex Gaussian vector.
pub fn haar_state_amplitudes<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Array1<C64> {
    loop {
        let v: Array1<C64> = (0..d)
            .map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            return v.mapv(|z| z / norm);
        }
    }
}

/// Haar-random unitary: QR of a complex Gaussian matrix with the phases of R's
/// diagonal absorbed (Mezzadri's recipe), orthonormalized by two passes of
/// modified Gram-Schmidt.
pub fn haar_unitary_matrix<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Array2<C64> {
    let mut cols: Vec<Array1<C64>> = (0..d)
        .map(|_| {
            (0..d)
                .map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
                .collect()
        })
        .collect();
    for _pass in 0..2 {
        for j in 0..d {
            for i in 0..j {
                let proj: C64 = cols[i].iter().zip(cols[j].iter()).map(|(a, b)| a.conj() * b).sum();
                let prev = cols[i].clone();
                cols[j].zip_mut_with(&prev, |x, y| *x -= proj * y);
            }
            let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            cols[j].mapv_inplace(|z| z / norm);
        }
    }
    let mut u = Array2::zeros((d, d));
    for (j, col) in cols.iter().enumerate() {
        for i in 0..d {
            u[(i, j)] = col[i];
        }
    }
    u
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn jacobi_diagonal_matrix() {
        let m = array![
            [C64::new(2.0, 0.0), C64::new(0.0, 0.0)],
            [C64::new(0.0, 0.0), C64::new(-1.0, 0.0)]
        ];
        let e = hermitian_eigenvalues(&m);
        assert!((e[0] + 1.0).abs() < 1e-12);
        assert!((e[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn jacobi_pauli_x() {
        let m = array![
            [C64::new(0.0, 0.0), C64::new(1.0, 0.0)],
            [C64::new(1.0, 0.0), C64::new(0.0, 0.0)]
        ];
        let e = hermitian_eigenvalues(&m);
        assert!((e[0] + 1.0).abs() < 1e-12);
        assert!((e[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn jacobi_pauli_y() {
        let m = array![
            [C64::new(0.0, 0.0), C64::new(0.0, -1.0)],
            [C64::new(0.0, 1.0), C64::new(0.0, 0.0)]
        ];
        let e = hermitian_eigenvalues(&m);
        assert!((e[0] + 1.0).abs() < 1e-12);
        assert!((e[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn jacobi_random_hermitian_trace_and_psd() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for d in [2usize, 3, 5, 9] {
            let g = haar_unitary_matrix(d, &mut rng);
            // B = G† G is positive semidefinite with trace d
            let b = dag(&g).dot(&g);
            let eigs = hermitian_eigenvalues(&b);
            let tr: f64 = eigs.iter().sum();
            assert!((tr - trace(&b).re).abs() < 1e-9);
            assert!(eigs.iter().all(|&e| e > -1e-10));
        }
    }

    #[test]
    fn haar_unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for d in [2usize, 3, 5] {
            let u = haar_unitary_matrix(d, &mut rng);
            let prod = dag(&u).dot(&u);
            assert!(max_abs_diff(&prod, &identity(d)) < 1e-12);
        }
    }
}
