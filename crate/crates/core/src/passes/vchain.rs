use crate::ir::{Circuit, Gate, GateKind, GateSetLevel, Qubit};

use super::{require_level, PassError};

/// Toffoli ladder computing AND(controls) into the last ancilla, and the
/// gate that consumes it. Controls are used in the given order.
fn vchain_gates(
    controls: &[Qubit],
    target: Qubit,
    ancillas: &[Qubit],
    last: impl Fn(Qubit, Qubit, Qubit) -> Gate,
) -> Vec<Gate> {
    let k = controls.len();
    debug_assert!(k >= 3 && ancillas.len() >= k - 2);
    let mut compute = vec![Gate::ccx(controls[0], controls[1], ancillas[0])];
    for i in 2..k - 1 {
        compute.push(Gate::ccx(controls[i], ancillas[i - 2], ancillas[i - 1]));
    }
    let mut out = compute.clone();
    out.push(last(controls[k - 1], ancillas[k - 3], target));
    out.extend(compute.into_iter().rev());
    out
}

/// vchain for a single multi-controlled gate: 2(k−2) CCX around one CCRZ
/// (or CCX for multi-controlled X), using `ancillas[..k−2]` clean.
pub fn vchain_decomposition(g: &Gate, ancillas: &[Qubit]) -> Vec<Gate> {
    match g.kind() {
        GateKind::Mcrz => {
            let theta = g.angle().expect("rotation angle");
            vchain_gates(g.controls(), g.target(), ancillas, |c, a, t| {
                Gate::ccrz(c, a, t, theta)
            })
        }
        GateKind::Mcx => vchain_gates(g.controls(), g.target(), ancillas, Gate::ccx),
        _ => vec![g.clone()],
    }
}

/// Lowers every gate with three or more controls via vchain, sharing one
/// pool of clean ancillas appended above the register.
pub fn lower_vchain(c: &Circuit) -> Result<Circuit, PassError> {
    require_level(c, &GateSetLevel::higs())?;
    let pool = c
        .gates()
        .iter()
        .filter(|g| matches!(g.kind(), GateKind::Mcrz | GateKind::Mcx))
        .map(|g| g.num_controls() - 2)
        .max()
        .unwrap_or(0);
    let base = c.num_qubits();
    let ancillas: Vec<Qubit> = (base..base + pool).collect();
    let mut out = c.widened(pool).empty_like();
    for g in c.gates() {
        out.extend(vchain_decomposition(g, &ancillas));
    }
    Ok(out)
}
