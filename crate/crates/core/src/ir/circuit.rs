use super::{Gate, GateCensus, GateKind, GateSetLevel, IrError};

/// Ordered gate sequence on a fixed register.
///
/// `gates[0]` acts first. Ancillas occupy the top `num_ancillas` indices and
/// must be returned to `|0>` by the circuit.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    num_qubits: usize,
    num_ancillas: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Circuit {
        Circuit {
            num_qubits,
            num_ancillas: 0,
            gates: Vec::new(),
        }
    }

    pub fn with_ancillas(num_qubits: usize, num_ancillas: usize) -> Result<Circuit, IrError> {
        if num_ancillas > num_qubits {
            return Err(IrError::TooManyAncillas {
                num_qubits,
                num_ancillas,
            });
        }
        Ok(Circuit {
            num_qubits,
            num_ancillas,
            gates: Vec::new(),
        })
    }

    pub fn from_gates(
        num_qubits: usize,
        num_ancillas: usize,
        gates: Vec<Gate>,
    ) -> Result<Circuit, IrError> {
        let mut c = Circuit::with_ancillas(num_qubits, num_ancillas)?;
        for g in gates {
            c.try_push(g)?;
        }
        Ok(c)
    }

    /// Empty circuit on the same register.
    pub fn empty_like(&self) -> Circuit {
        Circuit {
            num_qubits: self.num_qubits,
            num_ancillas: self.num_ancillas,
            gates: Vec::new(),
        }
    }

    /// Same register, new gate list. Panics if a gate is out of range.
    pub fn with_gates(&self, gates: Vec<Gate>) -> Circuit {
        let mut c = self.empty_like();
        c.extend(gates);
        c
    }

    pub fn try_push(&mut self, g: Gate) -> Result<(), IrError> {
        if let Some(q) = g.qubits().find(|&q| q >= self.num_qubits) {
            return Err(IrError::QubitOutOfRange {
                gate: g.to_string(),
                qubit: q,
                num_qubits: self.num_qubits,
            });
        }
        self.gates.push(g);
        Ok(())
    }

    /// Panics if the gate is out of range.
    pub fn push(&mut self, g: Gate) {
        if let Err(e) = self.try_push(g) {
            panic!("{e}");
        }
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = Gate>) {
        for g in gates {
            self.push(g);
        }
    }

    /// Appends `other` (which acts after `self`).
    pub fn append(&mut self, other: &Circuit) -> Result<(), IrError> {
        if self.width() != other.width() {
            return Err(IrError::WidthMismatch {
                left: self.width(),
                right: other.width(),
            });
        }
        self.gates.extend(other.gates.iter().cloned());
        Ok(())
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn num_ancillas(&self) -> usize {
        self.num_ancillas
    }

    pub fn num_data_qubits(&self) -> usize {
        self.num_qubits - self.num_ancillas
    }

    /// (qubits, ancillas)
    pub fn width(&self) -> (usize, usize) {
        (self.num_qubits, self.num_ancillas)
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn into_gates(self) -> Vec<Gate> {
        self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Adds `extra` ancilla qubits above the current register.
    pub fn widened(&self, extra: usize) -> Circuit {
        Circuit {
            num_qubits: self.num_qubits + extra,
            num_ancillas: self.num_ancillas + extra,
            gates: self.gates.clone(),
        }
    }

    pub fn inverse(&self) -> Circuit {
        Circuit {
            num_qubits: self.num_qubits,
            num_ancillas: self.num_ancillas,
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
        }
    }

    pub fn without_barriers(&self) -> Circuit {
        self.with_gates(
            self.gates
                .iter()
                .filter(|g| g.kind() != GateKind::Barrier)
                .cloned()
                .collect(),
        )
    }

    pub fn census(&self) -> GateCensus {
        GateCensus::of(self)
    }

    pub fn conforms(&self, level: &GateSetLevel) -> bool {
        level.first_violation(self).is_none()
    }

    pub fn count_kind(&self, kind: GateKind) -> usize {
        self.gates.iter().filter(|g| g.kind() == kind).count()
    }

    pub fn cx_count(&self) -> usize {
        self.count_kind(GateKind::Cx)
    }

    pub fn entangling_count(&self) -> usize {
        self.gates.iter().filter(|g| g.is_entangling()).count()
    }
}

/// Concatenates circuits in time order.
pub fn concat(parts: &[Circuit]) -> Result<Circuit, IrError> {
    let mut iter = parts.iter();
    let Some(first) = iter.next() else {
        return Ok(Circuit::new(0));
    };
    let mut out = first.clone();
    for c in iter {
        out.append(c)?;
    }
    Ok(out)
}
