//! Qupit stabilizer subtheory over ℤ_p for odd prime p: generalized Pauli
//! operators, phase-point operators (the discrete Wigner basis), stabilizer
//! state enumeration, and Clifford transformations.

mod clifford;
mod pauli;
mod phase_space;
mod states;

pub use clifford::{clifford_generators, find_phase_point_permutation, random_clifford};
pub use pauli::{
    pauli_matrix, pauli_measurement, pauli_measurement_labels, pauli_name, symplectic_product,
    PauliLabel,
};
pub use phase_space::{phase_point_operator, PhasePoint, PhaseSpace};
pub use states::{enumerate_stabilizer_states, GeneratorRecord, StabilizerState};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum StabilizerError {
    #[error("p = {0} is not an odd prime")]
    UnsupportedPrime(u64),
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    #[error("invalid stabilizer data: {0}")]
    Invalid(String),
    #[error("no phase-point permutation exists for this unitary")]
    NotCliffordCovariant,
}

pub(crate) fn check_odd_prime(p: u64) -> Result<(), StabilizerError> {
    let is_prime = p >= 2 && (2..p).take_while(|k| k * k <= p).all(|k| p % k != 0);
    if !is_prime || p == 2 {
        return Err(StabilizerError::UnsupportedPrime(p));
    }
    Ok(())
}
