use crate::ir::{Circuit, Gate, GateKind, GateSetLevel};

use super::rules::fusion_rules;
use super::{apply_rules, require_level, PassConfig, PassError, RewriteRule};

/// Indices of CCX pairs: each CCX with the next identical CCX.
fn ccx_pairs(c: &Circuit) -> Vec<(usize, usize)> {
    let gates = c.gates();
    let mut paired = vec![false; gates.len()];
    let mut pairs = Vec::new();
    for i in 0..gates.len() {
        if gates[i].kind() != GateKind::Ccx || paired[i] {
            continue;
        }
        if let Some(j) = (i + 1..gates.len()).find(|&j| !paired[j] && gates[j] == gates[i]) {
            paired[i] = true;
            paired[j] = true;
            pairs.push((i, j));
        }
    }
    pairs
}

fn cost(c: &Circuit) -> usize {
    c.census().total_cx_after_naive_lowering()
}

/// Replaces the pair with its relative-phase expansions using `a` as the
/// first control, then cleans up.
fn expand_pair(
    c: &Circuit,
    (i, j): (usize, usize),
    swap: bool,
    rules: &[RewriteRule],
    config: &PassConfig,
) -> Circuit {
    let g = &c.gates()[i];
    let (mut a, mut b) = (g.controls()[0], g.controls()[1]);
    if swap {
        std::mem::swap(&mut a, &mut b);
    }
    let t = g.target();
    let mut gates = Vec::with_capacity(c.len() + 4);
    for (k, x) in c.gates().iter().enumerate() {
        if k == i {
            gates.extend([Gate::rccx(a, b, t), Gate::cz(a, t), Gate::cs(a, b)]);
        } else if k == j {
            gates.extend([Gate::csdg(a, b), Gate::cz(a, t), Gate::rccx(a, b, t)]);
        } else {
            gates.push(x.clone());
        }
    }
    apply_rules(&c.with_gates(gates), rules, config)
}

/// Swaps conjugate CCX pairs for relative-phase Toffolis where the phase
/// corrections cancel or fuse away.
///
/// Each pair is tried with both control orientations; the cheaper result
/// (by naive low-level CX count) is kept if it is cheaper than leaving the
/// pair alone.
pub fn replace_ccx_with_rccx(c: &Circuit, config: &PassConfig) -> Result<Circuit, PassError> {
    require_level(c, &GateSetLevel::migs())?;
    let rules = fusion_rules()?;
    let mut current = c.clone();
    let mut skipped = 0;
    loop {
        let pairs = ccx_pairs(&current);
        let Some(&pair) = pairs.get(skipped) else {
            break;
        };
        let base = cost(&current);
        let best = [false, true]
            .into_iter()
            .map(|swap| expand_pair(&current, pair, swap, &rules, config))
            .min_by_key(cost)
            .expect("two candidates");
        if cost(&best) < base {
            current = best;
        } else {
            skipped += 1;
        }
    }
    Ok(current)
}
