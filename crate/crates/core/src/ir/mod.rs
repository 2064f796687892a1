//! Gate-level circuit representation.

mod census;
mod circuit;
mod commute;
mod gate;
pub mod io;
mod level;

pub use census::{CensusKey, GateCensus};
pub use circuit::{concat, Circuit};
pub use commute::commutes;
pub use gate::{Arity, Gate, GateKind, Qubit, ALL_KINDS};
pub use level::{GateSetLevel, LevelName};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum IrError {
    #[error("{kind} does not accept {got} control qubit(s)")]
    ControlArity { kind: GateKind, got: usize },
    #[error("{0} requires a finite angle")]
    MissingAngle(GateKind),
    #[error("{0} does not take an angle")]
    UnexpectedAngle(GateKind),
    #[error("{0} acts on the same qubit twice")]
    DuplicateQubit(GateKind),
    #[error("gate {gate} uses qubit {qubit} but the circuit has {num_qubits} qubits")]
    QubitOutOfRange {
        gate: String,
        qubit: Qubit,
        num_qubits: usize,
    },
    #[error("{num_ancillas} ancillas do not fit in {num_qubits} qubits")]
    TooManyAncillas {
        num_qubits: usize,
        num_ancillas: usize,
    },
    #[error("width mismatch: {left:?} vs {right:?} (qubits, ancillas)")]
    WidthMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("gate record {index}: unsupported gate kind `{kind}`")]
    UnsupportedGate { index: usize, kind: String },
    #[error("gate record {index}: {source}")]
    InvalidRecord {
        index: usize,
        #[source]
        source: Box<IrError>,
    },
    #[error("gate {index} ({gate}) cannot be exported")]
    NotExportable { index: usize, gate: String },
    #[error("unknown census key `{0}`")]
    UnknownCensusKey(String),
}
