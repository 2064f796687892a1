//! Dense-matrix ground truth: gate unitaries, circuit simulation,
//! Hamiltonian matrices and equivalence checking.

mod equiv;
mod hamiltonian;
mod linalg;
mod sim;

pub use equiv::{data_unitary, equivalent_up_to_phase, EquivOptions, EquivReport};
pub use hamiltonian::{
    exact_evolution, hamiltonian, hamiltonian_direct, product_formula, shift_minus,
    shift_minus_ladder, shift_plus, trotter_error, Hamiltonian,
};
pub use linalg::{
    commutator, distance_up_to_phase, expm_hermitian, identity, is_unitary, kron, phase_between,
    spectral_norm, Mat,
};
pub use sim::{
    apply, basis_state, target_operator, unitary_of, unitary_of_gate, unitary_of_kind, Statevector,
    MAX_STATEVECTOR_QUBITS, MAX_UNITARY_QUBITS,
};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("{what} on {qubits} qubits exceeds the {limit}-qubit capacity")]
    Capacity {
        what: &'static str,
        qubits: usize,
        limit: usize,
    },
    #[error("barrier has no unitary")]
    NoUnitary,
    #[error("{0}")]
    Gate(#[from] crate::ir::IrError),
    #[error("matrix is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),
    #[error("incompatible widths: {a:?} vs {b:?} (qubits, ancillas)")]
    IncompatibleWidths {
        a: (usize, usize),
        b: (usize, usize),
    },
    #[error("statevector has {got} amplitudes, circuit needs {expected}")]
    StateSize { got: usize, expected: usize },
}
