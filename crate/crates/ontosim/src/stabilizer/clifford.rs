//! Clifford transformations as dense unitaries, and their action on phase
//! space located by exhaustive matching against the A_λ table.

use ndarray::linalg::kron;
use ndarray::Array2;
use num_complex::Complex64 as C64;
use rand::{Rng, RngCore};

use super::pauli::inv2;
use super::phase_space::PhaseSpace;
use super::{check_odd_prime, StabilizerError};
use crate::linalg;
use crate::Unitary;

fn omega(p: u64, exponent: u64) -> C64 {
    let angle = 2.0 * std::f64::consts::PI * (exponent % p) as f64 / p as f64;
    C64::new(angle.cos(), angle.sin())
}

fn fourier(p: u64) -> Array2<C64> {
    let d = p as usize;
    let norm = 1.0 / (p as f64).sqrt();
    Array2::from_shape_fn((d, d), |(k, j)| omega(p, (k as u64 * j as u64) % p) * norm)
}

fn quadratic_phase(p: u64) -> Array2<C64> {
    let d = p as usize;
    Array2::from_shape_fn((d, d), |(i, j)| {
        if i == j {
            omega(p, (j as u64 * j as u64 % p) * inv2(p) % p)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

fn shift(p: u64) -> Array2<C64> {
    let d = p as usize;
    Array2::from_shape_fn((d, d), |(i, j)| {
        if i == (j + 1) % d {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

fn clock(p: u64) -> Array2<C64> {
    let d = p as usize;
    Array2::from_shape_fn(
        (d, d),
        |(i, j)| if i == j { omega(p, j as u64) } else { C64::new(0.0, 0.0) },
    )
}

/// SUM|i,j⟩ = |i, i+j⟩ — the ℤ_p analogue of CNOT.
fn sum_gate(p: u64) -> Array2<C64> {
    let d = p as usize;
    let dd = d * d;
    let mut m = Array2::zeros((dd, dd));
    for i in 0..d {
        for j in 0..d {
            let col = i * d + j;
            let row = i * d + (i + j) % d;
            m[(row, col)] = C64::new(1.0, 0.0);
        }
    }
    m
}

fn swap_gate(p: u64) -> Array2<C64> {
    let d = p as usize;
    let dd = d * d;
    let mut m = Array2::zeros((dd, dd));
    for i in 0..d {
        for j in 0..d {
            m[(j * d + i, i * d + j)] = C64::new(1.0, 0.0);
        }
    }
    m
}

/// Named Clifford generators for n qupits: Fourier, quadratic phase, and the
/// Pauli shifts per site, plus SUM and SWAP at n = 2.
pub fn clifford_generators(p: u64, n: usize) -> Result<Vec<(String, Unitary)>, StabilizerError> {
    check_odd_prime(p)?;
    let mk = |m: Array2<C64>| -> Unitary {
        Unitary::from_matrix(m).expect("generator matrices are unitary")
    };
    let singles: Vec<(&str, Array2<C64>)> = vec![
        ("F", fourier(p)),
        ("S", quadratic_phase(p)),
        ("X", shift(p)),
        ("Z", clock(p)),
    ];
    match n {
        1 => Ok(singles.into_iter().map(|(name, m)| (name.to_string(), mk(m))).collect()),
        2 => {
            let d = p as usize;
            let eye = linalg::identity::<f64>(d);
            let mut gens: Vec<(String, Unitary)> = Vec::new();
            for (name, m) in &singles {
                gens.push((format!("{name}0"), mk(kron(m, &eye))));
                gens.push((format!("{name}1"), mk(kron(&eye, m))));
            }
            gens.push(("SUM".to_string(), mk(sum_gate(p))));
            gens.push(("SWAP".to_string(), mk(swap_gate(p))));
            Ok(gens)
        }
        _ => Err(StabilizerError::ResourceLimit(format!(
            "Clifford generators supported for 1 ≤ n ≤ 2, got n = {n}"
        ))),
    }
}

/// Random word in the Clifford generators.
pub fn random_clifford(
    p: u64,
    n: usize,
    length: usize,
    rng: &mut dyn RngCore,
) -> Result<(String, Unitary), StabilizerError> {
    let gens = clifford_generators(p, n)?;
    let mut name = String::new();
    let d = (p as usize).pow(n as u32);
    let mut matrix = linalg::identity::<f64>(d);
    for _ in 0..length.max(1) {
        let (gname, g) = &gens[rng.random_range(0..gens.len())];
        if !name.is_empty() {
            name.push('.');
        }
        name.push_str(gname);
        matrix = g.matrix().dot(&matrix);
    }
    Ok((name, Unitary::from_matrix(matrix).expect("product of unitaries")))
}

/// The permutation f_U with U A_λ U† = A_{f_U(λ)}, found by exhaustive
/// matching at tolerance 1e-8. Fails loudly when `u` is not covariant.
pub fn find_phase_point_permutation(
    space: &PhaseSpace,
    u: &Unitary,
) -> Result<Vec<usize>, StabilizerError> {
    let udag = linalg::dag(u.matrix());
    let mut permutation = Vec::with_capacity(space.len());
    let mut hit = vec![false; space.len()];
    for idx in 0..space.len() {
        let conjugated = u.matrix().dot(space.operator(idx)).dot(&udag);
        let target = space
            .match_operator(&conjugated, 1e-8)
            .ok_or(StabilizerError::NotCliffordCovariant)?;
        if hit[target] {
            return Err(StabilizerError::NotCliffordCovariant);
        }
        hit[target] = true;
        permutation.push(target);
    }
    Ok(permutation)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_are_covariant() {
        let space = PhaseSpace::new(3, 1).unwrap();
        for (name, u) in clifford_generators(3, 1).unwrap() {
            let perm = find_phase_point_permutation(&space, &u)
                .unwrap_or_else(|_| panic!("{name} is not covariant"));
            assert_eq!(perm.len(), 9);
        }
    }

    #[test]
    fn two_qupit_generators_are_covariant() {
        let space = PhaseSpace::new(3, 2).unwrap();
        for (name, u) in clifford_generators(3, 2).unwrap() {
            let perm = find_phase_point_permutation(&space, &u)
                .unwrap_or_else(|_| panic!("{name} is not covariant"));
            assert_eq!(perm.len(), 81);
        }
    }

    #[test]
    fn random_words_are_covariant() {
        let space = PhaseSpace::new(3, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..10 {
            let (_, u) = random_clifford(3, 1, 6, &mut rng).unwrap();
            assert!(find_phase_point_permutation(&space, &u).is_ok());
        }
    }

    #[test]
    fn haar_unitary_is_not_covariant() {
        let space = PhaseSpace::new(3, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        let u = Unitary::haar(3, &mut rng);
        assert!(matches!(
            find_phase_point_permutation(&space, &u),
            Err(StabilizerError::NotCliffordCovariant)
        ));
    }
}
