use std::fmt;

use serde::{Deserialize, Serialize};

use super::IrError;

/// Qubit index within a circuit.
pub type Qubit = usize;

/// Gate vocabulary shared by all three gate-set levels.
///
/// Every kind except [`GateKind::Barrier`] acts on a list of control qubits
/// and exactly one target. Controlled kinds use positive controls only:
/// the target action happens iff every control is `|1>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GateKind {
    X,
    H,
    S,
    Sdg,
    T,
    Tdg,
    Z,
    Rz,
    Rx,
    Cx,
    Cz,
    Cy,
    Cs,
    Csdg,
    Crz,
    Ccx,
    /// Relative-phase Toffoli. Its unitary is fixed by the 3-CX decomposition
    /// used when lowering to the low-level gate set; its two controls are
    /// ordered.
    Rccx,
    Ccrz,
    /// Z rotation with three or more controls.
    Mcrz,
    /// X with three or more controls.
    Mcx,
    Barrier,
}

/// Number of control qubits a kind accepts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Arity {
    Exactly(usize),
    AtLeast(usize),
}

impl Arity {
    pub fn accepts(self, n: usize) -> bool {
        match self {
            Arity::Exactly(k) => n == k,
            Arity::AtLeast(k) => n >= k,
        }
    }
}

pub const ALL_KINDS: [GateKind; 21] = [
    GateKind::X,
    GateKind::H,
    GateKind::S,
    GateKind::Sdg,
    GateKind::T,
    GateKind::Tdg,
    GateKind::Z,
    GateKind::Rz,
    GateKind::Rx,
    GateKind::Cx,
    GateKind::Cz,
    GateKind::Cy,
    GateKind::Cs,
    GateKind::Csdg,
    GateKind::Crz,
    GateKind::Ccx,
    GateKind::Rccx,
    GateKind::Ccrz,
    GateKind::Mcrz,
    GateKind::Mcx,
    GateKind::Barrier,
];

impl GateKind {
    pub fn name(self) -> &'static str {
        match self {
            GateKind::X => "x",
            GateKind::H => "h",
            GateKind::S => "s",
            GateKind::Sdg => "sdg",
            GateKind::T => "t",
            GateKind::Tdg => "tdg",
            GateKind::Z => "z",
            GateKind::Rz => "rz",
            GateKind::Rx => "rx",
            GateKind::Cx => "cx",
            GateKind::Cz => "cz",
            GateKind::Cy => "cy",
            GateKind::Cs => "cs",
            GateKind::Csdg => "csdg",
            GateKind::Crz => "crz",
            GateKind::Ccx => "ccx",
            GateKind::Rccx => "rccx",
            GateKind::Ccrz => "ccrz",
            GateKind::Mcrz => "mcrz",
            GateKind::Mcx => "mcx",
            GateKind::Barrier => "barrier",
        }
    }

    pub fn from_name(name: &str) -> Option<GateKind> {
        ALL_KINDS.iter().copied().find(|k| k.name() == name)
    }

    pub fn control_arity(self) -> Arity {
        match self {
            GateKind::X
            | GateKind::H
            | GateKind::S
            | GateKind::Sdg
            | GateKind::T
            | GateKind::Tdg
            | GateKind::Z
            | GateKind::Rz
            | GateKind::Rx => Arity::Exactly(0),
            GateKind::Cx
            | GateKind::Cz
            | GateKind::Cy
            | GateKind::Cs
            | GateKind::Csdg
            | GateKind::Crz => Arity::Exactly(1),
            GateKind::Ccx | GateKind::Rccx | GateKind::Ccrz => Arity::Exactly(2),
            GateKind::Mcrz | GateKind::Mcx => Arity::AtLeast(3),
            GateKind::Barrier => Arity::AtLeast(0),
        }
    }

    pub fn is_rotation(self) -> bool {
        matches!(
            self,
            GateKind::Rz | GateKind::Rx | GateKind::Crz | GateKind::Ccrz | GateKind::Mcrz
        )
    }

    /// Diagonal in the computational basis.
    pub fn is_diagonal(self) -> bool {
        matches!(
            self,
            GateKind::Z
                | GateKind::S
                | GateKind::Sdg
                | GateKind::T
                | GateKind::Tdg
                | GateKind::Rz
                | GateKind::Cz
                | GateKind::Cs
                | GateKind::Csdg
                | GateKind::Crz
                | GateKind::Ccrz
                | GateKind::Mcrz
        )
    }

    /// The target action lies in span{I, X}, so two such actions commute.
    pub fn is_x_type(self) -> bool {
        matches!(
            self,
            GateKind::X | GateKind::Rx | GateKind::Cx | GateKind::Ccx | GateKind::Mcx
        )
    }

    /// All qubits are interchangeable (control/target distinction is cosmetic).
    pub fn is_symmetric(self) -> bool {
        matches!(self, GateKind::Cz | GateKind::Cs | GateKind::Csdg)
    }

    /// Self-inverse kinds.
    pub fn is_involution(self) -> bool {
        matches!(
            self,
            GateKind::X
                | GateKind::H
                | GateKind::Z
                | GateKind::Cx
                | GateKind::Cz
                | GateKind::Cy
                | GateKind::Ccx
                | GateKind::Rccx
                | GateKind::Mcx
        )
    }

    /// Kind of the inverse gate. Rotations keep their kind (the angle flips).
    pub fn inverse(self) -> GateKind {
        match self {
            GateKind::S => GateKind::Sdg,
            GateKind::Sdg => GateKind::S,
            GateKind::T => GateKind::Tdg,
            GateKind::Tdg => GateKind::T,
            GateKind::Cs => GateKind::Csdg,
            GateKind::Csdg => GateKind::Cs,
            k => k,
        }
    }

    pub fn is_entangling(self) -> bool {
        self != GateKind::Barrier && self.control_arity() != Arity::Exactly(0)
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One instruction.
///
/// Controls are stored sorted for every kind except RCCX, whose control order
/// matters. For the symmetric kinds (CZ, CS, CS†) the lower qubit is stored
/// as the control. Equality is therefore structural: kind, control set,
/// target, and exact angle.
#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    kind: GateKind,
    controls: Vec<Qubit>,
    target: Qubit,
    angle: Option<f64>,
}

impl Gate {
    pub fn new(
        kind: GateKind,
        controls: Vec<Qubit>,
        target: Qubit,
        angle: Option<f64>,
    ) -> Result<Gate, IrError> {
        if !kind.control_arity().accepts(controls.len()) {
            return Err(IrError::ControlArity {
                kind,
                got: controls.len(),
            });
        }
        match (kind.is_rotation(), angle) {
            (true, None) => return Err(IrError::MissingAngle(kind)),
            (false, Some(_)) => return Err(IrError::UnexpectedAngle(kind)),
            (true, Some(a)) if !a.is_finite() => return Err(IrError::MissingAngle(kind)),
            _ => {}
        }
        let mut controls = controls;
        let mut target = target;
        if kind != GateKind::Rccx {
            controls.sort_unstable();
        }
        if kind.is_symmetric() && controls[0] > target {
            std::mem::swap(&mut controls[0], &mut target);
        }
        let mut seen = controls.clone();
        seen.push(target);
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(IrError::DuplicateQubit(kind));
        }
        Ok(Gate {
            kind,
            controls,
            target,
            angle,
        })
    }

    fn build(kind: GateKind, controls: Vec<Qubit>, target: Qubit, angle: Option<f64>) -> Gate {
        match Gate::new(kind, controls, target, angle) {
            Ok(g) => g,
            Err(e) => panic!("invalid {kind} gate: {e}"),
        }
    }

    pub fn x(q: Qubit) -> Gate {
        Gate::build(GateKind::X, vec![], q, None)
    }
    pub fn h(q: Qubit) -> Gate {
        Gate::build(GateKind::H, vec![], q, None)
    }
    pub fn s(q: Qubit) -> Gate {
        Gate::build(GateKind::S, vec![], q, None)
    }
    pub fn sdg(q: Qubit) -> Gate {
        Gate::build(GateKind::Sdg, vec![], q, None)
    }
    pub fn t(q: Qubit) -> Gate {
        Gate::build(GateKind::T, vec![], q, None)
    }
    pub fn tdg(q: Qubit) -> Gate {
        Gate::build(GateKind::Tdg, vec![], q, None)
    }
    pub fn z(q: Qubit) -> Gate {
        Gate::build(GateKind::Z, vec![], q, None)
    }
    pub fn rz(q: Qubit, theta: f64) -> Gate {
        Gate::build(GateKind::Rz, vec![], q, Some(theta))
    }
    pub fn rx(q: Qubit, theta: f64) -> Gate {
        Gate::build(GateKind::Rx, vec![], q, Some(theta))
    }
    pub fn cx(c: Qubit, t: Qubit) -> Gate {
        Gate::build(GateKind::Cx, vec![c], t, None)
    }
    pub fn cz(a: Qubit, b: Qubit) -> Gate {
        Gate::build(GateKind::Cz, vec![a], b, None)
    }
    pub fn cy(c: Qubit, t: Qubit) -> Gate {
        Gate::build(GateKind::Cy, vec![c], t, None)
    }
    pub fn cs(a: Qubit, b: Qubit) -> Gate {
        Gate::build(GateKind::Cs, vec![a], b, None)
    }
    pub fn csdg(a: Qubit, b: Qubit) -> Gate {
        Gate::build(GateKind::Csdg, vec![a], b, None)
    }
    pub fn crz(c: Qubit, t: Qubit, theta: f64) -> Gate {
        Gate::build(GateKind::Crz, vec![c], t, Some(theta))
    }
    pub fn ccx(c1: Qubit, c2: Qubit, t: Qubit) -> Gate {
        Gate::build(GateKind::Ccx, vec![c1, c2], t, None)
    }
    pub fn rccx(c1: Qubit, c2: Qubit, t: Qubit) -> Gate {
        Gate::build(GateKind::Rccx, vec![c1, c2], t, None)
    }
    pub fn ccrz(c1: Qubit, c2: Qubit, t: Qubit, theta: f64) -> Gate {
        Gate::build(GateKind::Ccrz, vec![c1, c2], t, Some(theta))
    }

    /// Z rotation controlled by every qubit in `controls`: RZ, CRZ, CCRZ or
    /// MCRZ depending on the control count.
    pub fn controlled_rz(controls: &[Qubit], t: Qubit, theta: f64) -> Gate {
        let kind = match controls.len() {
            0 => GateKind::Rz,
            1 => GateKind::Crz,
            2 => GateKind::Ccrz,
            _ => GateKind::Mcrz,
        };
        Gate::build(kind, controls.to_vec(), t, Some(theta))
    }

    /// X controlled by every qubit in `controls`: X, CX, CCX or MCX.
    pub fn controlled_x(controls: &[Qubit], t: Qubit) -> Gate {
        let kind = match controls.len() {
            0 => GateKind::X,
            1 => GateKind::Cx,
            2 => GateKind::Ccx,
            _ => GateKind::Mcx,
        };
        Gate::build(kind, controls.to_vec(), t, None)
    }

    pub fn barrier(qubits: &[Qubit]) -> Gate {
        assert!(!qubits.is_empty(), "barrier needs at least one qubit");
        let mut qs = qubits.to_vec();
        qs.sort_unstable();
        let target = qs.remove(0);
        Gate::build(GateKind::Barrier, qs, target, None)
    }

    pub fn kind(&self) -> GateKind {
        self.kind
    }

    pub fn controls(&self) -> &[Qubit] {
        &self.controls
    }

    pub fn target(&self) -> Qubit {
        self.target
    }

    pub fn angle(&self) -> Option<f64> {
        self.angle
    }

    pub fn num_controls(&self) -> usize {
        self.controls.len()
    }

    /// Controls followed by the target.
    pub fn qubits(&self) -> impl Iterator<Item = Qubit> + '_ {
        self.controls
            .iter()
            .copied()
            .chain(std::iter::once(self.target))
    }

    pub fn acts_on(&self, q: Qubit) -> bool {
        self.target == q || self.controls.contains(&q)
    }

    pub fn max_qubit(&self) -> Qubit {
        self.qubits().max().unwrap_or(self.target)
    }

    pub fn is_single_qubit(&self) -> bool {
        self.kind != GateKind::Barrier && self.controls.is_empty()
    }

    pub fn is_entangling(&self) -> bool {
        self.kind.is_entangling()
    }

    pub fn inverse(&self) -> Gate {
        Gate {
            kind: self.kind.inverse(),
            controls: self.controls.clone(),
            target: self.target,
            angle: self.angle.map(|a| -a),
        }
    }

    /// Same kind, support and roles; angles may differ.
    pub fn same_shape(&self, other: &Gate) -> bool {
        self.kind == other.kind && self.target == other.target && self.controls == other.controls
    }

    /// Copy with a different angle. Only meaningful for rotations.
    pub fn with_angle(&self, theta: f64) -> Gate {
        debug_assert!(self.kind.is_rotation());
        Gate {
            angle: Some(theta),
            ..self.clone()
        }
    }

    /// Copy with every qubit passed through `map`.
    pub fn remapped(&self, map: impl Fn(Qubit) -> Qubit) -> Gate {
        Gate::build(
            self.kind,
            self.controls.iter().map(|&q| map(q)).collect(),
            map(self.target),
            self.angle,
        )
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        if let Some(a) = self.angle {
            write!(f, "({a})")?;
        }
        if self.kind == GateKind::Barrier {
            let qs: Vec<String> = self.qubits().map(|q| q.to_string()).collect();
            return write!(f, " {}", qs.join(","));
        }
        if self.controls.is_empty() {
            write!(f, " q{}", self.target)
        } else {
            let cs: Vec<String> = self.controls.iter().map(|q| format!("q{q}")).collect();
            write!(f, " {} -> q{}", cs.join(","), self.target)
        }
    }
}
