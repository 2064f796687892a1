use crate::ir::{commutes, Circuit, Gate, GateKind, Qubit};

use super::cancel::{cancel_adjacent, Workspace};
use super::{PassConfig, RewriteRule};

/// Abstract wire → circuit qubit.
type Binding = Vec<Option<Qubit>>;

fn try_bind(binding: &Binding, pairs: &[(usize, Qubit)]) -> Option<Binding> {
    let mut b = binding.clone();
    for &(wire, q) in pairs {
        match b[wire] {
            Some(bound) if bound != q => return None,
            Some(_) => {}
            None => {
                if b.contains(&Some(q)) {
                    return None;
                }
                b[wire] = Some(q);
            }
        }
    }
    Some(b)
}

fn permutations(items: &[Qubit]) -> Vec<Vec<Qubit>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// Every way pattern gate `p` can be bound to circuit gate `g`.
fn bind_options(p: &Gate, g: &Gate, binding: &Binding) -> Vec<Binding> {
    if p.kind() != g.kind() || p.num_controls() != g.num_controls() {
        return Vec::new();
    }
    if p.angle().is_some() && p.angle() != g.angle() {
        return Vec::new();
    }
    let pq: Vec<usize> = p.qubits().collect();
    let candidates: Vec<Vec<Qubit>> = if p.kind().is_symmetric() {
        permutations(&g.qubits().collect::<Vec<_>>())
    } else if p.kind() == GateKind::Rccx {
        vec![g.qubits().collect()]
    } else {
        permutations(g.controls())
            .into_iter()
            .map(|mut cs| {
                cs.push(g.target());
                cs
            })
            .collect()
    };
    candidates
        .into_iter()
        .filter_map(|gq| {
            let pairs: Vec<(usize, Qubit)> = pq.iter().copied().zip(gq).collect();
            try_bind(binding, &pairs)
        })
        .collect()
}

/// Gates between matched ones either slide left of the match (they commute
/// with everything matched so far) or are deferred to after it.
fn extend(
    ws: &Workspace,
    pattern: &[Gate],
    matched: &mut Vec<usize>,
    deferred: &mut Vec<usize>,
    binding: Binding,
) -> Option<Binding> {
    let k = matched.len();
    if k == pattern.len() {
        return deferral_ok(ws, matched, deferred).then_some(binding);
    }
    let mut support: Vec<Qubit> = matched
        .iter()
        .flat_map(|&m| ws.gates[m].as_ref().expect("live").qubits())
        .collect();
    support.sort_unstable();
    support.dedup();
    let depth = deferred.len();
    let mut cursor = *matched.last().expect("nonempty");
    while let Some(j) = ws.next_touching(cursor, &support) {
        let g = ws.gates[j].as_ref().expect("live");
        for opt in bind_options(&pattern[k], g, &binding) {
            matched.push(j);
            if let Some(done) = extend(ws, pattern, matched, deferred, opt) {
                return Some(done);
            }
            matched.pop();
        }
        let passes = matched
            .iter()
            .all(|&m| commutes(ws.gates[m].as_ref().expect("live"), g));
        if !passes {
            if deferred.len() - depth >= MAX_DEFERRED {
                break;
            }
            deferred.push(j);
        }
        cursor = j;
    }
    deferred.truncate(depth);
    None
}

const MAX_DEFERRED: usize = 4;

/// Each deferred gate must commute with every kept gate it jumps over.
fn deferral_ok(ws: &Workspace, matched: &[usize], deferred: &[usize]) -> bool {
    let last = *matched.last().expect("nonempty");
    deferred.iter().all(|&d| {
        let dg = ws.gates[d].as_ref().expect("live");
        (d + 1..=last).all(|j| match &ws.gates[j] {
            Some(g) if !deferred.contains(&j) => commutes(dg, g),
            _ => true,
        })
    })
}

/// Leftmost occurrence of `rule` starting exactly at gate `start`.
fn match_at(
    ws: &Workspace,
    rule: &RewriteRule,
    start: usize,
) -> Option<(Vec<usize>, Vec<usize>, Binding)> {
    let g = ws.gates[start].as_ref()?;
    let pattern = rule.pattern().gates();
    let empty: Binding = vec![None; rule.num_wires()];
    for opt in bind_options(&pattern[0], g, &empty) {
        let mut matched = vec![start];
        let mut deferred = Vec::new();
        if let Some(b) = extend(ws, pattern, &mut matched, &mut deferred, opt) {
            return Some((matched, deferred, b));
        }
    }
    None
}

/// Applies the first match of any rule, scanning starts left to right.
/// Returns `None` if nothing matched.
fn rewrite_once(c: &Circuit, rules: &[&RewriteRule], from: usize) -> Option<(Circuit, usize)> {
    let ws = Workspace::new(c);
    for start in from..c.len() {
        for rule in rules {
            if let Some((matched, deferred, binding)) = match_at(&ws, rule, start) {
                let last = *matched.last().expect("nonempty");
                let map = |w: usize| binding[w].expect("all wires bound");
                let mut gates = Vec::with_capacity(c.len());
                for (i, g) in c.gates().iter().enumerate() {
                    if i == last {
                        gates.extend(rule.replacement().gates().iter().map(|r| r.remapped(map)));
                        gates.extend(deferred.iter().map(|&d| c.gates()[d].clone()));
                    } else if !matched.contains(&i) && !deferred.contains(&i) {
                        gates.push(g.clone());
                    }
                }
                return Some((c.with_gates(gates), start));
            }
        }
    }
    None
}

/// Applies every match of the rules once, leftmost first. Returns the new
/// circuit and whether anything changed.
pub fn rewrite_pass(c: &Circuit, rules: &[&RewriteRule]) -> (Circuit, bool) {
    let mut current = c.clone();
    let mut from = 0;
    let mut changed = false;
    while let Some((next, start)) = rewrite_once(&current, rules, from) {
        current = next;
        from = start;
        changed = true;
    }
    (current, changed)
}

/// Rewrites with the enabled rules interleaved with [`cancel_adjacent`]
/// until nothing changes or the iteration cap is reached.
pub fn apply_rules(c: &Circuit, rules: &[RewriteRule], config: &PassConfig) -> Circuit {
    let enabled: Vec<&RewriteRule> = rules
        .iter()
        .filter(|r| config.rule_enabled(r.name()))
        .collect();
    let mut current = cancel_adjacent(c, config);
    for _ in 0..config.max_fixpoint_iterations {
        let (next, changed) = rewrite_pass(&current, &enabled);
        if !changed {
            break;
        }
        current = cancel_adjacent(&next, config);
    }
    current
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::passes::rules::{cx_fanout_merge, cz_cx_fuse, toffoli_pair_x_control};

    fn circ(n: usize, gates: Vec<Gate>) -> Circuit {
        let mut c = Circuit::new(n);
        c.extend(gates);
        c
    }

    #[test]
    fn matches_under_renaming() {
        let rule = cx_fanout_merge().unwrap();
        let c = circ(5, vec![Gate::cx(4, 1), Gate::cx(3, 1), Gate::cx(4, 3)]);
        let out = apply_rules(&c, &[rule], &PassConfig::default());
        assert_eq!(out.gates(), &[Gate::cx(4, 3), Gate::cx(3, 1)]);
    }

    #[test]
    fn commuting_gates_may_intervene() {
        let rule = toffoli_pair_x_control().unwrap();
        let c = circ(
            5,
            vec![
                Gate::ccx(0, 1, 2),
                Gate::h(4),
                Gate::rz(0, 0.3),
                Gate::x(1),
                Gate::cx(3, 2),
                Gate::ccx(0, 1, 2),
            ],
        );
        let out = apply_rules(&c, &[rule], &PassConfig::default());
        assert_eq!(out.count_kind(GateKind::Ccx), 0);
        assert_eq!(out.cx_count(), 2);
    }

    #[test]
    fn blocked_by_noncommuting() {
        let rule = toffoli_pair_x_control().unwrap();
        let c = circ(
            3,
            vec![
                Gate::ccx(0, 1, 2),
                Gate::x(1),
                Gate::h(0),
                Gate::ccx(0, 1, 2),
            ],
        );
        let out = apply_rules(&c, &[rule], &PassConfig::default());
        assert_eq!(out, c);
    }

    #[test]
    fn no_occurrence_is_identity() {
        let c = circ(3, vec![Gate::cx(0, 1), Gate::h(2)]);
        let out = apply_rules(&c, &[cx_fanout_merge().unwrap()], &PassConfig::default());
        assert_eq!(out, c);
    }

    #[test]
    fn symmetric_kind_matches_either_way() {
        let rule = cz_cx_fuse().unwrap();
        let c = circ(2, vec![Gate::cz(0, 1), Gate::cx(1, 0)]);
        let out = apply_rules(&c, &[rule], &PassConfig::default());
        assert_eq!(out.entangling_count(), 1);
    }

    #[test]
    fn disabled_rule_does_not_fire() {
        let cfg = PassConfig {
            enabled_rules: Some(Default::default()),
            ..PassConfig::default()
        };
        let c = circ(3, vec![Gate::cx(0, 1), Gate::cx(2, 1), Gate::cx(0, 2)]);
        assert_eq!(apply_rules(&c, &[cx_fanout_merge().unwrap()], &cfg), c);
    }
}
