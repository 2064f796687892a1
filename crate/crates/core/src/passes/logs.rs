use std::collections::HashMap;
use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4, PI};

use num_complex::Complex64;

use crate::ir::{Circuit, Gate, GateKind, GateSetLevel, Qubit};
use crate::oracle::target_operator;

use super::rules::cx_rules;
use super::{apply_rules, require_level, PassConfig, PassError};

/// Textbook 6-CX Toffoli.
pub fn ccx_decomposition(a: Qubit, b: Qubit, t: Qubit) -> Vec<Gate> {
    vec![
        Gate::h(t),
        Gate::cx(b, t),
        Gate::tdg(t),
        Gate::cx(a, t),
        Gate::t(t),
        Gate::cx(b, t),
        Gate::tdg(t),
        Gate::cx(a, t),
        Gate::t(b),
        Gate::t(t),
        Gate::h(t),
        Gate::cx(a, b),
        Gate::t(a),
        Gate::tdg(b),
        Gate::cx(a, b),
    ]
}

/// 3-CX relative-phase Toffoli; this sequence defines the RCCX unitary.
pub fn rccx_decomposition(a: Qubit, b: Qubit, t: Qubit) -> Vec<Gate> {
    vec![
        Gate::h(t),
        Gate::t(t),
        Gate::cx(b, t),
        Gate::tdg(t),
        Gate::cx(a, t),
        Gate::t(t),
        Gate::cx(b, t),
        Gate::tdg(t),
        Gate::h(t),
    ]
}

/// Gray-code multiplexed rotation: a Z rotation with k controls from 2^k CX
/// and 2^k RZ, no ancillas.
pub fn gray_code_mcrz(controls: &[Qubit], t: Qubit, theta: f64) -> Vec<Gate> {
    let k = controls.len();
    let steps = 1usize << k;
    let step_angle = theta / steps as f64;
    let mut out = Vec::with_capacity(2 * steps);
    let mut parity = 0usize;
    for i in 0..steps {
        let sign = if parity.count_ones() % 2 == 0 {
            1.0
        } else {
            -1.0
        };
        out.push(Gate::rz(t, sign * step_angle));
        let flip = if i + 1 < steps {
            (i + 1).trailing_zeros() as usize
        } else {
            k - 1
        };
        parity ^= 1 << flip;
        out.push(Gate::cx(controls[flip], t));
    }
    out
}

/// Decomposition of one gate into the low-level set {RZ, X, H, CX}.
pub fn lower_gate(g: &Gate) -> Result<Vec<Gate>, PassError> {
    let q = g.target();
    let one = |gs: Vec<Gate>| -> Result<Vec<Gate>, PassError> {
        let mut out = Vec::new();
        for x in &gs {
            out.extend(lower_gate(x)?);
        }
        Ok(out)
    };
    Ok(match g.kind() {
        GateKind::X | GateKind::H | GateKind::Rz | GateKind::Cx | GateKind::Barrier => {
            vec![g.clone()]
        }
        GateKind::Z => vec![Gate::rz(q, PI)],
        GateKind::S => vec![Gate::rz(q, FRAC_PI_2)],
        GateKind::Sdg => vec![Gate::rz(q, -FRAC_PI_2)],
        GateKind::T => vec![Gate::rz(q, FRAC_PI_4)],
        GateKind::Tdg => vec![Gate::rz(q, -FRAC_PI_4)],
        GateKind::Rx => vec![
            Gate::h(q),
            Gate::rz(q, g.angle().unwrap_or(0.0)),
            Gate::h(q),
        ],
        GateKind::Cz => vec![Gate::h(q), Gate::cx(g.controls()[0], q), Gate::h(q)],
        GateKind::Cy => one(vec![Gate::sdg(q), Gate::cx(g.controls()[0], q), Gate::s(q)])?,
        GateKind::Cs | GateKind::Csdg => {
            let c = g.controls()[0];
            let sign = if g.kind() == GateKind::Cs { 1.0 } else { -1.0 };
            let mut out = vec![Gate::rz(c, sign * FRAC_PI_4)];
            out.extend(gray_code_mcrz(&[c], q, sign * FRAC_PI_2));
            out
        }
        GateKind::Crz | GateKind::Ccrz => gray_code_mcrz(g.controls(), q, g.angle().unwrap_or(0.0)),
        GateKind::Ccx => one(ccx_decomposition(g.controls()[0], g.controls()[1], q))?,
        GateKind::Rccx => one(rccx_decomposition(g.controls()[0], g.controls()[1], q))?,
        GateKind::Mcrz | GateKind::Mcx => {
            return Err(PassError::NotConformant {
                level: GateSetLevel::migs().name,
                index: 0,
                gate: g.to_string(),
            })
        }
    })
}

/// Fixed decompositions of every mid-level gate, no optimization.
pub fn lower_to_logs(c: &Circuit) -> Result<Circuit, PassError> {
    require_level(c, &GateSetLevel::migs())?;
    let mut out = c.empty_like();
    for g in c.gates() {
        out.extend(lower_gate(g)?);
    }
    Ok(out)
}

type M2 = [[Complex64; 2]; 2];

fn mul(a: &M2, b: &M2) -> M2 {
    let mut r = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    r
}

fn gate_matrix(g: &Gate) -> M2 {
    target_operator(g, &[]).expect("single-qubit gate has a unitary")
}

fn product(gates: &[Gate]) -> M2 {
    let id = [
        [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
    ];
    gates.iter().fold(id, |acc, g| mul(&gate_matrix(g), &acc))
}

fn equal_up_to_phase(a: &M2, b: &M2, tol: f64) -> bool {
    let overlap: Complex64 = (0..2)
        .flat_map(|i| (0..2).map(move |j| (i, j)))
        .map(|(i, j)| b[i][j].conj() * a[i][j])
        .sum();
    if overlap.norm() < 1e-12 {
        return false;
    }
    let p = overlap / overlap.norm();
    (0..2).all(|i| (0..2).all(|j| (a[i][j] - b[i][j] * p).norm() <= tol))
}

const CLASSIFY_TOL: f64 = 1e-11;

fn push_rz(out: &mut Vec<Gate>, q: Qubit, angle: f64) {
    if angle.abs() > CLASSIFY_TOL {
        out.push(Gate::rz(q, angle));
    }
}

/// Shortest {RZ, X, H} word for a 2×2 unitary, up to global phase.
fn synthesize(u: &M2, q: Qubit) -> Vec<Gate> {
    let arg = |z: Complex64| z.arg();
    let mut out = Vec::new();
    let (a00, a01, a10) = (u[0][0].norm(), u[0][1].norm(), u[1][0].norm());
    if a01 < CLASSIFY_TOL && a10 < CLASSIFY_TOL {
        push_rz(&mut out, q, arg(u[1][1] / u[0][0]));
    } else if a00 < CLASSIFY_TOL {
        out.push(Gate::x(q));
        push_rz(&mut out, q, arg(u[1][0] / u[0][1]));
    } else if (a00 - FRAC_1_SQRT_2).abs() < CLASSIFY_TOL {
        push_rz(&mut out, q, arg(u[0][1] / u[0][0]));
        out.push(Gate::h(q));
        push_rz(&mut out, q, arg(u[1][0] / u[0][0]));
    } else {
        let beta = 2.0 * a10.atan2(a00);
        let alpha = arg(Complex64::new(0.0, 1.0) * u[1][0] / u[0][0]);
        let gamma = arg(u[1][1] / u[0][0]) - alpha;
        push_rz(&mut out, q, gamma);
        out.push(Gate::h(q));
        push_rz(&mut out, q, beta);
        out.push(Gate::h(q));
        push_rz(&mut out, q, alpha);
    }
    out
}

/// Collapses each maximal run of single-qubit gates on a wire into its
/// shortest {RZ, X, H} word, when that is shorter.
pub fn fuse_single_qubit_runs(c: &Circuit) -> Circuit {
    let n = c.len();
    let mut keep = vec![true; n];
    let mut insert: HashMap<usize, Vec<Gate>> = HashMap::new();
    let mut runs: Vec<Vec<usize>> = vec![Vec::new(); c.num_qubits()];

    let flush =
        |run: &mut Vec<usize>, keep: &mut Vec<bool>, insert: &mut HashMap<usize, Vec<Gate>>| {
            if run.len() >= 2
                || run.len() == 1 && !matches!(c.gates()[run[0]].kind(), GateKind::X | GateKind::H)
            {
                let gates: Vec<Gate> = run.iter().map(|&i| c.gates()[i].clone()).collect();
                let u = product(&gates);
                let word = synthesize(&u, gates[0].target());
                if word.len() < gates.len() && equal_up_to_phase(&product(&word), &u, 1e-9) {
                    for &i in run.iter() {
                        keep[i] = false;
                    }
                    insert.insert(run[0], word);
                }
            }
            run.clear();
        };

    for (i, g) in c.gates().iter().enumerate() {
        if g.is_single_qubit() {
            runs[g.target()].push(i);
        } else {
            for q in g.qubits() {
                flush(&mut runs[q], &mut keep, &mut insert);
            }
        }
    }
    for run in runs.iter_mut() {
        flush(run, &mut keep, &mut insert);
    }

    let mut gates = Vec::with_capacity(n);
    for (i, g) in c.gates().iter().enumerate() {
        if let Some(word) = insert.remove(&i) {
            gates.extend(word);
        } else if keep[i] {
            gates.push(g.clone());
        }
    }
    c.with_gates(gates)
}

/// Low-level cleanup: cancellation, CX merges and single-qubit fusion to a
/// fixpoint. Never increases the CX count.
pub fn optimize_logs(c: &Circuit, config: &PassConfig) -> Result<Circuit, PassError> {
    require_level(c, &GateSetLevel::logs())?;
    let rules = cx_rules()?;
    let mut current = c.without_barriers();
    for _ in 0..config.max_fixpoint_iterations {
        let next = fuse_single_qubit_runs(&apply_rules(&current, &rules, config));
        if next == current {
            break;
        }
        current = next;
    }
    Ok(current)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{distance_up_to_phase, unitary_of};

    fn circ(n: usize, gates: Vec<Gate>) -> Circuit {
        let mut c = Circuit::new(n);
        c.extend(gates);
        c
    }

    #[test]
    fn hh_vanishes() {
        let c = circ(1, vec![Gate::h(0), Gate::h(0)]);
        assert!(optimize_logs(&c, &PassConfig::default())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn lone_ccx_is_six_cx() {
        let c = circ(3, vec![Gate::ccx(0, 1, 2)]);
        let low = lower_to_logs(&c).unwrap();
        assert_eq!(low.cx_count(), 6);
        assert!(low.conforms(&GateSetLevel::logs()));
        let d = distance_up_to_phase(&unitary_of(&c).unwrap(), &unitary_of(&low).unwrap());
        assert!(d < 1e-12);
    }

    #[test]
    fn zero_ccrz_vanishes_after_cleanup() {
        let c = circ(3, vec![Gate::ccrz(0, 1, 2, 0.0)]);
        let low = lower_to_logs(&c).unwrap();
        assert!(optimize_logs(&low, &PassConfig::default())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn synthesis_cases() {
        let words = [
            vec![Gate::rz(0, 0.3), Gate::rz(0, 0.4), Gate::h(0), Gate::h(0)],
            vec![Gate::x(0), Gate::rz(0, 0.2), Gate::x(0), Gate::rz(0, 1.0)],
            vec![
                Gate::h(0),
                Gate::rz(0, 0.7),
                Gate::x(0),
                Gate::h(0),
                Gate::rz(0, -0.2),
                Gate::h(0),
            ],
            vec![
                Gate::rz(0, 0.5),
                Gate::h(0),
                Gate::rz(0, 0.9),
                Gate::h(0),
                Gate::rz(0, 0.1),
                Gate::x(0),
            ],
            vec![Gate::x(0), Gate::rz(0, 0.5), Gate::rz(0, 0.25)],
        ];
        for w in words {
            let c = circ(1, w);
            let f = fuse_single_qubit_runs(&c);
            assert!(f.len() <= c.len());
            let d = distance_up_to_phase(&unitary_of(&c).unwrap(), &unitary_of(&f).unwrap());
            assert!(d < 1e-10, "{c:?} -> {f:?}");
        }
    }

    #[test]
    fn gray_code_counts() {
        for k in 1..=5 {
            let controls: Vec<usize> = (0..k).collect();
            let g = gray_code_mcrz(&controls, k, 0.3);
            assert_eq!(
                g.iter().filter(|g| g.kind() == GateKind::Cx).count(),
                1 << k
            );
        }
    }

    #[test]
    fn rejects_high_level_input() {
        let c = circ(4, vec![Gate::controlled_rz(&[0, 1, 2], 3, 0.1)]);
        assert!(matches!(
            lower_to_logs(&c),
            Err(PassError::NotConformant { .. })
        ));
    }
}
