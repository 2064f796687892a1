use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};

use num_complex::Complex64;
use rayon::prelude::*;

use super::{Mat, OracleError};
use crate::ir::{Circuit, Gate, GateKind};

/// Largest register for dense unitary construction.
pub const MAX_UNITARY_QUBITS: usize = 12;
/// Largest register for statevector simulation.
pub const MAX_STATEVECTOR_QUBITS: usize = 24;

/// Amplitudes indexed little-endian: qubit q is bit q of the index.
pub type Statevector = Vec<Complex64>;

type Op2 = [[Complex64; 2]; 2];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

fn diag(a: Complex64, b: Complex64) -> Op2 {
    [[a, ZERO], [ZERO, b]]
}

const PAULI_X: Op2 = [[ZERO, ONE], [ONE, ZERO]];
const PAULI_Y: Op2 = [[ZERO, Complex64::new(0.0, -1.0)], [I, ZERO]];
const PAULI_Z: Op2 = [[ONE, ZERO], [ZERO, Complex64::new(-1.0, 0.0)]];

fn rz(theta: f64) -> Op2 {
    diag(
        Complex64::from_polar(1.0, -theta / 2.0),
        Complex64::from_polar(1.0, theta / 2.0),
    )
}

fn rx(theta: f64) -> Op2 {
    let c = Complex64::new((theta / 2.0).cos(), 0.0);
    let s = Complex64::new(0.0, -(theta / 2.0).sin());
    [[c, s], [s, c]]
}

/// Operator applied to the target when every control is |1>.
fn active_op(kind: GateKind, angle: f64) -> Op2 {
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    match kind {
        GateKind::X | GateKind::Cx | GateKind::Ccx | GateKind::Mcx => PAULI_X,
        GateKind::Cy => PAULI_Y,
        GateKind::Z | GateKind::Cz => PAULI_Z,
        GateKind::H => [[h, h], [h, -h]],
        GateKind::S | GateKind::Cs => diag(ONE, I),
        GateKind::Sdg | GateKind::Csdg => diag(ONE, -I),
        GateKind::T => diag(ONE, Complex64::from_polar(1.0, FRAC_PI_4)),
        GateKind::Tdg => diag(ONE, Complex64::from_polar(1.0, -FRAC_PI_4)),
        GateKind::Rz | GateKind::Crz | GateKind::Ccrz | GateKind::Mcrz => rz(angle),
        GateKind::Rx => rx(angle),
        GateKind::Rccx | GateKind::Barrier => unreachable!("handled by caller"),
    }
}

/// 2×2 operator the gate applies to its target for the given control
/// values (in `g.controls()` order).
pub fn target_operator(g: &Gate, control_bits: &[bool]) -> Result<Op2, OracleError> {
    match g.kind() {
        GateKind::Barrier => Err(OracleError::NoUnitary),
        GateKind::Rccx => Ok(match (control_bits[0], control_bits[1]) {
            (false, _) => diag(ONE, ONE),
            (true, false) => PAULI_Z,
            (true, true) => PAULI_Y,
        }),
        kind => {
            if control_bits.iter().all(|&b| b) {
                Ok(active_op(kind, g.angle().unwrap_or(0.0)))
            } else {
                Ok(diag(ONE, ONE))
            }
        }
    }
}

fn apply_op(state: &mut [Complex64], i: usize, j: usize, op: &Op2) {
    let (a, b) = (state[i], state[j]);
    state[i] = op[0][0] * a + op[0][1] * b;
    state[j] = op[1][0] * a + op[1][1] * b;
}

fn apply_gate(state: &mut [Complex64], g: &Gate) {
    let tbit = 1usize << g.target();
    match g.kind() {
        GateKind::Barrier => {}
        GateKind::Rccx => {
            let abit = 1usize << g.controls()[0];
            let bbit = 1usize << g.controls()[1];
            for i in 0..state.len() {
                if i & tbit == 0 && i & abit != 0 {
                    let op = if i & bbit != 0 { &PAULI_Y } else { &PAULI_Z };
                    apply_op(state, i, i | tbit, op);
                }
            }
        }
        kind => {
            let cmask = g.controls().iter().fold(0usize, |m, &q| m | (1 << q));
            let op = active_op(kind, g.angle().unwrap_or(0.0));
            let diagonal = op[0][1] == ZERO && op[1][0] == ZERO;
            for i in 0..state.len() {
                if i & tbit != 0 || i & cmask != cmask {
                    continue;
                }
                if diagonal {
                    state[i] *= op[0][0];
                    state[i | tbit] *= op[1][1];
                } else {
                    apply_op(state, i, i | tbit, &op);
                }
            }
        }
    }
}

fn check_capacity(what: &'static str, qubits: usize, limit: usize) -> Result<(), OracleError> {
    if qubits > limit {
        Err(OracleError::Capacity {
            what,
            qubits,
            limit,
        })
    } else {
        Ok(())
    }
}

pub fn basis_state(num_qubits: usize, index: usize) -> Statevector {
    let mut s = vec![ZERO; 1 << num_qubits];
    s[index] = ONE;
    s
}

/// Runs the circuit on `state` (little-endian amplitudes).
pub fn apply(c: &Circuit, state: &[Complex64]) -> Result<Statevector, OracleError> {
    check_capacity(
        "statevector simulation",
        c.num_qubits(),
        MAX_STATEVECTOR_QUBITS,
    )?;
    let expected = 1usize << c.num_qubits();
    if state.len() != expected {
        return Err(OracleError::StateSize {
            got: state.len(),
            expected,
        });
    }
    let mut out = state.to_vec();
    for g in c.gates() {
        apply_gate(&mut out, g);
    }
    Ok(out)
}

/// Dense unitary of the whole circuit in the little-endian basis.
pub fn unitary_of(c: &Circuit) -> Result<Mat, OracleError> {
    check_capacity("unitary construction", c.num_qubits(), MAX_UNITARY_QUBITS)?;
    let dim = 1usize << c.num_qubits();
    let mut u = Mat::identity(dim, dim);
    u.as_mut_slice().par_chunks_mut(dim).for_each(|col| {
        for g in c.gates() {
            apply_gate(col, g);
        }
    });
    Ok(u)
}

/// Unitary of a single gate on its support, ordered (controls…, target)
/// with the first control as the most significant bit.
pub fn unitary_of_gate(g: &Gate) -> Result<Mat, OracleError> {
    if g.kind() == GateKind::Barrier {
        return Err(OracleError::NoUnitary);
    }
    let k = g.num_controls();
    let local = Gate::new(g.kind(), (0..k).map(|i| k - i).collect(), 0, g.angle())?;
    let mut c = Circuit::new(k + 1);
    c.push(local);
    unitary_of(&c)
}

/// Unitary of a gate kind with `num_controls` controls; see
/// [`unitary_of_gate`] for the basis order.
pub fn unitary_of_kind(
    kind: GateKind,
    num_controls: usize,
    angle: Option<f64>,
) -> Result<Mat, OracleError> {
    if kind == GateKind::Barrier {
        return Err(OracleError::NoUnitary);
    }
    let g = Gate::new(kind, (1..=num_controls).collect(), 0, angle)?;
    unitary_of_gate(&g)
}
