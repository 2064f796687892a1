//! Circuit file format (JSON) and OpenQASM 3 export.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{Circuit, Gate, GateKind, IrError};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GateRecord {
    kind: String,
    #[serde(default)]
    controls: Vec<usize>,
    target: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    angle: Option<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CircuitDoc {
    num_qubits: usize,
    #[serde(default)]
    num_ancillas: usize,
    gates: Vec<GateRecord>,
}

pub fn read_circuit(bytes: &[u8]) -> Result<Circuit, IrError> {
    let doc: CircuitDoc = serde_json::from_slice(bytes).map_err(|e| IrError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let mut c = Circuit::with_ancillas(doc.num_qubits, doc.num_ancillas)?;
    for (index, rec) in doc.gates.into_iter().enumerate() {
        let kind = GateKind::from_name(&rec.kind).ok_or_else(|| IrError::UnsupportedGate {
            index,
            kind: rec.kind.clone(),
        })?;
        let wrap = |e: IrError| IrError::InvalidRecord {
            index,
            source: Box::new(e),
        };
        let gate = Gate::new(kind, rec.controls, rec.target, rec.angle).map_err(wrap)?;
        c.try_push(gate).map_err(wrap)?;
    }
    Ok(c)
}

pub fn write_circuit(c: &Circuit) -> Vec<u8> {
    let doc = CircuitDoc {
        num_qubits: c.num_qubits(),
        num_ancillas: c.num_ancillas(),
        gates: c
            .gates()
            .iter()
            .map(|g| GateRecord {
                kind: g.kind().name().to_string(),
                controls: g.controls().to_vec(),
                target: g.target(),
                angle: g.angle(),
            })
            .collect(),
    };
    let mut out = serde_json::to_vec_pretty(&doc).expect("circuit serializes");
    out.push(b'\n');
    out
}

fn qasm_name(kind: GateKind) -> Option<&'static str> {
    match kind {
        GateKind::X
        | GateKind::H
        | GateKind::S
        | GateKind::Sdg
        | GateKind::T
        | GateKind::Tdg
        | GateKind::Z
        | GateKind::Rz
        | GateKind::Rx
        | GateKind::Cx
        | GateKind::Cz
        | GateKind::Cy
        | GateKind::Crz
        | GateKind::Ccx
        | GateKind::Barrier => Some(kind.name()),
        _ => None,
    }
}

/// OpenQASM 3 text. Gates without a standard-library name (CCRZ, RCCX,
/// CS, multi-controlled kinds) are rejected.
pub fn to_qasm(c: &Circuit) -> Result<String, IrError> {
    let mut out = String::new();
    out.push_str("OPENQASM 3;\ninclude \"stdgates.inc\";\n");
    let _ = writeln!(out, "qubit[{}] q;", c.num_qubits());
    for (index, g) in c.gates().iter().enumerate() {
        let name = qasm_name(g.kind()).ok_or_else(|| IrError::NotExportable {
            index,
            gate: g.to_string(),
        })?;
        out.push_str(name);
        if let Some(a) = g.angle() {
            let _ = write!(out, "({a:?})");
        }
        let operands: Vec<String> = g.qubits().map(|q| format!("q[{q}]")).collect();
        let _ = writeln!(out, " {};", operands.join(", "));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Circuit {
        let mut c = Circuit::with_ancillas(4, 1).unwrap();
        c.push(Gate::h(0));
        c.push(Gate::rz(1, 0.1 + 0.2));
        c.push(Gate::ccrz(0, 1, 2, -1.0 / 3.0));
        c.push(Gate::rccx(1, 0, 3));
        c.push(Gate::barrier(&[0, 2]));
        c
    }

    #[test]
    fn round_trip() {
        let c = sample();
        assert_eq!(read_circuit(&write_circuit(&c)).unwrap(), c);
    }

    #[test]
    fn out_of_range_is_error() {
        let doc = br#"{"num_qubits": 2, "num_ancillas": 0,
            "gates": [{"kind": "cx", "controls": [0], "target": 2}]}"#;
        assert!(matches!(
            read_circuit(doc),
            Err(IrError::InvalidRecord { index: 0, .. })
        ));
    }

    #[test]
    fn missing_angle_is_error() {
        let doc = br#"{"num_qubits": 1, "gates": [{"kind": "rz", "target": 0}]}"#;
        let err = read_circuit(doc).unwrap_err();
        assert!(matches!(
            err,
            IrError::InvalidRecord { ref source, .. } if matches!(**source, IrError::MissingAngle(_))
        ));
    }

    #[test]
    fn unknown_kind_and_syntax() {
        let doc = br#"{"num_qubits": 1, "gates": [{"kind": "sx", "target": 0}]}"#;
        assert!(matches!(
            read_circuit(doc),
            Err(IrError::UnsupportedGate { .. })
        ));
        let bad = b"{\n  \"num_qubits\": 1,\n  \"gates\": [\n";
        match read_circuit(bad) {
            Err(IrError::Parse { line, .. }) => assert!(line >= 3),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn qasm_export() {
        let mut c = Circuit::new(2);
        c.push(Gate::h(0));
        c.push(Gate::cx(0, 1));
        c.push(Gate::rz(1, 0.5));
        let text = to_qasm(&c).unwrap();
        assert_eq!(
            text,
            "OPENQASM 3;\ninclude \"stdgates.inc\";\nqubit[2] q;\nh q[0];\ncx q[0], q[1];\nrz(0.5) q[1];\n"
        );
        let err = to_qasm(&sample()).unwrap_err();
        assert!(matches!(err, IrError::NotExportable { index: 2, .. }));
    }
}
