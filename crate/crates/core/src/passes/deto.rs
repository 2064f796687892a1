use crate::cost::CostModel;
use crate::ir::{Circuit, Gate, GateKind, GateSetLevel, Qubit};
use crate::pde::{build_source, PdeParams, StepOrder, WingStyle};

use super::logs::{gray_code_mcrz, lower_gate};
use super::{optimize_logs, PassConfig, PassError};

/// Largest control count for which the 2^k gray-code rotation is built.
const GRAY_CODE_MAX_CONTROLS: usize = 16;

/// Cost-model CX count for `steps` Trotter steps decomposed up front.
pub fn deto_cost_model(n: usize, steps: usize) -> usize {
    steps * CostModel.deto_step(n)
}

/// X with p ≥ 3 controls from 4(p−2) Toffolis using p−2 dirty qubits,
/// which are returned to their initial state. Only the two Toffolis on the
/// target must be exact; the others may carry relative phases.
fn dirty_ladder(xs: &[Qubit], t: Qubit, anc: &[Qubit]) -> Vec<Gate> {
    let p = xs.len();
    debug_assert!(p >= 3 && anc.len() >= p - 2);
    let mut down = vec![Gate::ccx(xs[p - 1], anc[p - 3], t)];
    for i in (2..=p - 2).rev() {
        down.push(Gate::rccx(xs[i], anc[i - 2], anc[i - 1]));
    }
    let base = Gate::rccx(xs[0], xs[1], anc[0]);
    let up: Vec<Gate> = down.iter().rev().cloned().collect();
    let mut out = down.clone();
    out.push(base.clone());
    out.extend(up.iter().cloned());
    out.extend(down[1..].iter().cloned());
    out.push(base);
    out.extend(up[..up.len() - 1].iter().cloned());
    out
}

/// Multi-controlled X using borrowed (dirty) qubits only.
///
/// With fewer than m−2 dirty qubits, the controls are split in two halves
/// that borrow each other, so a single dirty qubit suffices for m ≥ 3.
pub fn mcx_dirty(controls: &[Qubit], t: Qubit, dirty: &[Qubit]) -> Result<Vec<Gate>, PassError> {
    let m = controls.len();
    if m <= 2 {
        return Ok(vec![Gate::controlled_x(controls, t)]);
    }
    if dirty.len() >= m - 2 {
        return Ok(dirty_ladder(controls, t, dirty));
    }
    let Some((&b, rest)) = dirty.split_first() else {
        return Err(PassError::NoSpareQubit(format!("mcx on {m} controls")));
    };
    let m1 = m.div_ceil(2);
    let (g1, g2) = controls.split_at(m1);
    let mut dirty1: Vec<Qubit> = g2.to_vec();
    dirty1.push(t);
    dirty1.extend_from_slice(rest);
    let first = mcx_dirty(g1, b, &dirty1)?;
    let mut g2b = g2.to_vec();
    g2b.push(b);
    let mut dirty2 = g1.to_vec();
    dirty2.extend_from_slice(rest);
    let second = mcx_dirty(&g2b, t, &dirty2)?;
    let mut out = second.clone();
    out.extend(first.iter().cloned());
    out.extend(second);
    out.extend(first);
    Ok(out)
}

/// C^kRZ(θ) = CRZ(c_k; θ/2) · C^{k−1}X · CRZ(c_k; −θ/2) · C^{k−1}X, with
/// c_k (and any idle qubits) borrowed by the multi-controlled X.
pub fn linear_mcrz(
    controls: &[Qubit],
    t: Qubit,
    theta: f64,
    idle: &[Qubit],
) -> Result<Vec<Gate>, PassError> {
    let (&ck, g) = controls.split_last().expect("at least one control");
    let mut dirty = vec![ck];
    dirty.extend_from_slice(idle);
    let mcx = mcx_dirty(g, t, &dirty)?;
    let mut out = vec![Gate::crz(ck, t, theta / 2.0)];
    out.extend(mcx.iter().cloned());
    out.push(Gate::crz(ck, t, -theta / 2.0));
    out.extend(mcx);
    Ok(out)
}

fn lowered_cx(gates: &[Gate]) -> usize {
    gates
        .iter()
        .map(|g| CostModel.gate(g.kind(), g.num_controls()))
        .sum()
}

fn idle_qubits(g: &Gate, num_qubits: usize) -> Vec<Qubit> {
    (0..num_qubits).filter(|&q| !g.acts_on(q)).collect()
}

/// Ancilla-free decomposition of one multi-controlled rotation, choosing
/// the gray-code or the linear construction by CX count.
pub fn deto_mcrz(g: &Gate, num_qubits: usize) -> Result<Vec<Gate>, PassError> {
    let k = g.num_controls();
    let theta = g.angle().unwrap_or(0.0);
    let gray =
        (k <= GRAY_CODE_MAX_CONTROLS).then(|| gray_code_mcrz(g.controls(), g.target(), theta));
    if k < 3 {
        return Ok(gray.expect("small k"));
    }
    let linear = linear_mcrz(g.controls(), g.target(), theta, &idle_qubits(g, num_qubits))?;
    Ok(match gray {
        Some(gc) if gc.len() / 2 <= lowered_cx(&linear) => gc,
        _ => linear,
    })
}

/// Decomposes every gate straight to {RZ, X, H, CX} without ancillas.
pub fn decompose_deto(c: &Circuit) -> Result<Circuit, PassError> {
    let mut out = c.empty_like();
    for g in c.without_barriers().gates() {
        let mid = match g.kind() {
            GateKind::Mcrz | GateKind::Crz | GateKind::Ccrz => deto_mcrz(g, c.num_qubits())?,
            GateKind::Mcx => mcx_dirty(g.controls(), g.target(), &idle_qubits(g, c.num_qubits()))?,
            _ => vec![g.clone()],
        };
        for x in &mid {
            out.extend(lower_gate(x)?);
        }
    }
    debug_assert!(out.conforms(&GateSetLevel::logs()));
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct DetoRun {
    pub source: Circuit,
    pub just_decomposed: Circuit,
    pub optimized: Circuit,
    pub cost_model_cx: usize,
}

/// Decompose-then-optimize baseline on the built source circuit.
pub fn pipeline_deto(
    params: &PdeParams,
    steps: usize,
    style: WingStyle,
    config: &PassConfig,
) -> Result<DetoRun, PassError> {
    let source = build_source(params, steps, style, StepOrder::Alternate)?;
    let just_decomposed = decompose_deto(&source)?;
    let optimized = optimize_logs(&just_decomposed, config)?;
    Ok(DetoRun {
        source,
        just_decomposed,
        optimized,
        cost_model_cx: deto_cost_model(params.n, steps),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{distance_up_to_phase, unitary_of};

    fn check(original: &Gate, gates: Vec<Gate>, n: usize) {
        let mut a = Circuit::new(n);
        a.push(original.clone());
        let mut b = Circuit::new(n);
        b.extend(gates);
        let d = distance_up_to_phase(&unitary_of(&a).unwrap(), &unitary_of(&b).unwrap());
        assert!(d < 1e-12, "{original}: {d}");
    }

    #[test]
    fn dirty_ladder_is_mcx() {
        for p in 3..=5 {
            let xs: Vec<usize> = (0..p).collect();
            let anc: Vec<usize> = (p + 1..2 * p - 1).collect();
            check(
                &Gate::controlled_x(&xs, p),
                dirty_ladder(&xs, p, &anc),
                2 * p - 1,
            );
        }
    }

    #[test]
    fn one_dirty_qubit_suffices() {
        for m in 3..=7 {
            let xs: Vec<usize> = (0..m).collect();
            let gates = mcx_dirty(&xs, m, &[m + 1]).unwrap();
            check(&Gate::controlled_x(&xs, m), gates, m + 2);
        }
    }

    #[test]
    fn linear_rotation() {
        for k in 3..=6 {
            let cs: Vec<usize> = (0..k).collect();
            let g = Gate::controlled_rz(&cs, k, 0.37);
            check(&g, linear_mcrz(&cs, k, 0.37, &[]).unwrap(), k + 1);
        }
    }

    #[test]
    fn gray_code_rotation() {
        for k in 1..=5 {
            let cs: Vec<usize> = (0..k).collect();
            let g = Gate::controlled_rz(&cs, k, -0.8);
            check(&g, gray_code_mcrz(&cs, k, -0.8), k + 1);
        }
    }

    #[test]
    fn cost_model_totals() {
        assert_eq!(deto_cost_model(6, 1), 114);
        assert_eq!(deto_cost_model(6, 2), 228);
        assert_eq!(deto_cost_model(8, 1), 276);
    }
}
