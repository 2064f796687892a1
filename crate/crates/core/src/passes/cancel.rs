use crate::ir::{commutes, Circuit, Gate};

use super::PassConfig;

/// Working copy of a gate list with tombstones and per-wire indices.
pub(crate) struct Workspace {
    pub gates: Vec<Option<Gate>>,
    wires: Vec<Vec<usize>>,
}

impl Workspace {
    pub fn new(c: &Circuit) -> Workspace {
        let mut wires = vec![Vec::new(); c.num_qubits()];
        for (i, g) in c.gates().iter().enumerate() {
            for q in g.qubits() {
                wires[q].push(i);
            }
        }
        Workspace {
            gates: c.gates().iter().cloned().map(Some).collect(),
            wires,
        }
    }

    /// Next live gate after `after` touching any qubit of `qubits`.
    pub fn next_touching(&self, after: usize, qubits: &[usize]) -> Option<usize> {
        qubits
            .iter()
            .filter_map(|&q| {
                let w = &self.wires[q];
                let start = w.partition_point(|&i| i <= after);
                w[start..]
                    .iter()
                    .copied()
                    .find(|&i| self.gates[i].is_some())
            })
            .min()
    }

    pub fn finish(self, template: &Circuit) -> Circuit {
        template.with_gates(self.gates.into_iter().flatten().collect())
    }
}

fn is_negligible(g: &Gate, tol: f64) -> bool {
    g.kind().is_rotation() && g.angle().is_some_and(|a| a.abs() < tol)
}

/// One right-to-left sweep. Returns true if anything changed.
fn sweep(ws: &mut Workspace, tol: f64) -> bool {
    let mut changed = false;
    for i in (0..ws.gates.len()).rev() {
        let Some(gi) = ws.gates[i].clone() else {
            continue;
        };
        if is_negligible(&gi, tol) {
            ws.gates[i] = None;
            changed = true;
            continue;
        }
        let support: Vec<usize> = gi.qubits().collect();
        let inverse = gi.inverse();
        let mut cursor = i;
        while let Some(j) = ws.next_touching(cursor, &support) {
            let gj = ws.gates[j].as_ref().expect("live gate");
            if gi.kind().is_rotation() && gi.same_shape(gj) {
                let merged = gi.angle().unwrap_or(0.0) + gj.angle().unwrap_or(0.0);
                ws.gates[j] = if merged.abs() < tol {
                    None
                } else {
                    Some(gj.with_angle(merged))
                };
                ws.gates[i] = None;
                changed = true;
                break;
            }
            if *gj == inverse {
                ws.gates[i] = None;
                ws.gates[j] = None;
                changed = true;
                break;
            }
            if !commutes(&gi, gj) {
                break;
            }
            cursor = j;
        }
    }
    changed
}

/// Cancels inverse pairs and merges rotations that can be brought together
/// through commuting gates, to a fixpoint.
pub fn cancel_adjacent(c: &Circuit, config: &PassConfig) -> Circuit {
    let mut current = c.clone();
    for _ in 0..config.max_fixpoint_iterations {
        let mut ws = Workspace::new(&current);
        if !sweep(&mut ws, config.angle_merge_tolerance) {
            break;
        }
        current = ws.finish(&current);
    }
    current
}
