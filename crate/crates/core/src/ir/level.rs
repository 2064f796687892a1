use std::collections::BTreeSet;
use std::fmt;

use super::{Circuit, GateKind, ALL_KINDS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LevelName {
    HiGS,
    MiGS,
    LoGS,
}

impl fmt::Display for LevelName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            LevelName::HiGS => "HiGS",
            LevelName::MiGS => "MiGS",
            LevelName::LoGS => "LoGS",
        };
        f.write_str(s)
    }
}

/// Membership predicate for one gate-set level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GateSetLevel {
    pub name: LevelName,
    /// `None` means unbounded.
    pub max_controls: Option<usize>,
    pub allowed_kinds: BTreeSet<GateKind>,
}

const SINGLE_QUBIT: [GateKind; 9] = [
    GateKind::X,
    GateKind::H,
    GateKind::S,
    GateKind::Sdg,
    GateKind::T,
    GateKind::Tdg,
    GateKind::Z,
    GateKind::Rz,
    GateKind::Rx,
];

impl GateSetLevel {
    pub fn higs() -> Self {
        GateSetLevel {
            name: LevelName::HiGS,
            max_controls: None,
            allowed_kinds: ALL_KINDS.iter().copied().collect(),
        }
    }

    pub fn migs() -> Self {
        let mut allowed: BTreeSet<GateKind> = SINGLE_QUBIT.iter().copied().collect();
        allowed.extend([
            GateKind::Cx,
            GateKind::Cz,
            GateKind::Cy,
            GateKind::Cs,
            GateKind::Csdg,
            GateKind::Crz,
            GateKind::Ccx,
            GateKind::Rccx,
            GateKind::Ccrz,
            GateKind::Barrier,
        ]);
        GateSetLevel {
            name: LevelName::MiGS,
            max_controls: Some(2),
            allowed_kinds: allowed,
        }
    }

    pub fn logs() -> Self {
        GateSetLevel {
            name: LevelName::LoGS,
            max_controls: Some(1),
            allowed_kinds: [
                GateKind::Rz,
                GateKind::X,
                GateKind::H,
                GateKind::Cx,
                GateKind::Barrier,
            ]
            .into_iter()
            .collect(),
        }
    }

    pub fn by_name(name: LevelName) -> Self {
        match name {
            LevelName::HiGS => Self::higs(),
            LevelName::MiGS => Self::migs(),
            LevelName::LoGS => Self::logs(),
        }
    }

    pub fn admits(&self, kind: GateKind, num_controls: usize) -> bool {
        if !self.allowed_kinds.contains(&kind) {
            return false;
        }
        // Barrier qubits are not controls.
        kind == GateKind::Barrier || self.max_controls.is_none_or(|m| num_controls <= m)
    }

    /// Index of the first gate outside this level.
    pub fn first_violation(&self, c: &Circuit) -> Option<usize> {
        c.gates()
            .iter()
            .position(|g| !self.admits(g.kind(), g.num_controls()))
    }
}
