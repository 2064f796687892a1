use super::{Gate, GateKind, Qubit};

/// How a gate acts on one of its qubits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Role {
    /// Diagonal on this wire (controls, every wire of a diagonal gate).
    Z,
    /// Acts in span{I, X} on this wire.
    X,
    Other,
}

fn role(g: &Gate, q: Qubit) -> Role {
    let kind = g.kind();
    if kind.is_diagonal() || g.controls().contains(&q) {
        Role::Z
    } else if kind.is_x_type() {
        Role::X
    } else {
        Role::Other
    }
}

/// Conservative commutation test: `true` only if the unitaries commute.
///
/// Barriers never commute with anything.
pub fn commutes(a: &Gate, b: &Gate) -> bool {
    if a.kind() == GateKind::Barrier || b.kind() == GateKind::Barrier {
        return false;
    }
    if a == b {
        return true;
    }
    a.qubits().filter(|&q| b.acts_on(q)).all(|q| {
        let (ra, rb) = (role(a, q), role(b, q));
        ra == rb && ra != Role::Other
    })
}
