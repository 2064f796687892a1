use num_complex::Complex64;

use super::{
    expm_hermitian, identity, kron, phase_between, spectral_norm, unitary_of, Mat, OracleError,
};
use crate::ir::Circuit;
use crate::pde::PdeParams;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// |0><1|
fn sigma01() -> Mat {
    Mat::from_row_slice(2, 2, &[c(0.), c(1.), c(0.), c(0.)])
}

/// |1><0|
fn sigma10() -> Mat {
    Mat::from_row_slice(2, 2, &[c(0.), c(0.), c(1.), c(0.)])
}

fn kron_all(factors: &[Mat]) -> Mat {
    factors.iter().fold(identity(1), |acc, f| kron(&acc, f))
}

fn tensor_power(m: &Mat, k: usize) -> Mat {
    kron_all(&vec![m.clone(); k])
}

/// Σ_{j=1}^{2^m−1} |j−1><j| built from the defining sum.
pub fn shift_minus(m: usize) -> Mat {
    let dim = 1usize << m;
    let mut s = Mat::zeros(dim, dim);
    for j in 1..dim {
        s[(j - 1, j)] = c(1.0);
    }
    s
}

pub fn shift_plus(m: usize) -> Mat {
    shift_minus(m).transpose()
}

/// Same operator from the ladder expansion Σ_j I^{m−j} ⊗ σ01 ⊗ σ10^{j−1}.
pub fn shift_minus_ladder(m: usize) -> Mat {
    let dim = 1usize << m;
    let mut s = Mat::zeros(dim, dim);
    for j in 1..=m {
        s += kron_all(&[
            identity(1 << (m - j)),
            sigma01(),
            tensor_power(&sigma10(), j - 1),
        ]);
    }
    s
}

/// Wave-equation Hamiltonian on `n` qubits: the top qubit is the most
/// significant Kronecker factor (index n−1), the n−1 discretization qubits
/// follow.
#[derive(Debug, Clone)]
pub struct Hamiltonian {
    pub h: Mat,
    pub h1: Mat,
    pub h2: Mat,
    /// Unscaled terms h_0, h_1, …, h_{n−1}.
    pub terms: Vec<Mat>,
}

pub fn hamiltonian(params: &PdeParams) -> Hamiltonian {
    let n = params.n;
    let m = n - 1;
    let scale = c(params.c / params.l);
    let x = sigma01() + sigma10();
    let mut terms = vec![-kron(&x, &identity(1 << m))];
    for j in 1..=m {
        let half = kron_all(&[
            sigma01(),
            identity(1 << (m - j)),
            sigma01(),
            tensor_power(&sigma10(), j - 1),
        ]);
        terms.push(&half + half.adjoint());
    }
    let h1 = &terms[0] * scale;
    let h2 = terms[1..]
        .iter()
        .fold(Mat::zeros(1 << n, 1 << n), |acc, t| acc + t)
        * scale;
    Hamiltonian {
        h: &h1 + &h2,
        h1,
        h2,
        terms,
    }
}

/// c(σ01 ⊗ D⁺ − σ10 ⊗ D⁻) with D⁺ = (S⁻ − I)/l and D⁻ = (I − S⁺)/l.
pub fn hamiltonian_direct(params: &PdeParams) -> Mat {
    let m = params.n - 1;
    let id = identity(1 << m);
    let inv_l = c(1.0 / params.l);
    let d_plus = (shift_minus(m) - &id) * inv_l;
    let d_minus = (&id - shift_plus(m)) * inv_l;
    (kron(&sigma01(), &d_plus) - kron(&sigma10(), &d_minus)) * c(params.c)
}

/// Spectral-norm distance between the step circuit and exp(−iHτ), after
/// global-phase alignment.
pub fn trotter_error(params: &PdeParams, step: &Circuit) -> Result<f64, OracleError> {
    if step.num_qubits() != params.n || step.num_ancillas() != 0 {
        return Err(OracleError::IncompatibleWidths {
            a: step.width(),
            b: (params.n, 0),
        });
    }
    let u = unitary_of(step)?;
    let exact = expm_hermitian(&hamiltonian(params).h, params.tau)?;
    let p = phase_between(&exact, &u);
    Ok(spectral_norm(&(u * p - exact)))
}

/// (exp(−iH₂τ)·exp(−iH₁τ))^steps.
pub fn product_formula(params: &PdeParams, steps: usize) -> Result<Mat, OracleError> {
    let h = hamiltonian(params);
    let step = expm_hermitian(&h.h2, params.tau)? * expm_hermitian(&h.h1, params.tau)?;
    Ok((0..steps).fold(identity(1 << params.n), |acc, _| &step * acc))
}

/// exp(−iH·steps·τ).
pub fn exact_evolution(params: &PdeParams, steps: usize) -> Result<Mat, OracleError> {
    expm_hermitian(&hamiltonian(params).h, params.tau * steps as f64)
}
