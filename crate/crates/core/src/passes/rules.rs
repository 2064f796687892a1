use crate::ir::{Circuit, Gate, Qubit};
use crate::oracle::{distance_up_to_phase, unitary_of};

use super::PassError;

/// Tolerance for exact certification of rules and fixed decompositions.
pub const CERTIFY_TOL: f64 = 1e-12;

pub const CX_FANOUT_MERGE: &str = "cx-fanout-merge";
pub const CX_FANOUT_MERGE_MIRROR: &str = "cx-fanout-merge-mirror";
pub const CX_CHAIN_MERGE: &str = "cx-chain-merge";
pub const TOFFOLI_PAIR_X: &str = "toffoli-pair-x-control";
pub const CZ_CX_FUSE: &str = "cz-cx-fuse";
pub const CX_CZ_FUSE: &str = "cx-cz-fuse";

/// Pattern and replacement on the same abstract wires, certified equal up to
/// global phase when constructed.
#[derive(Debug, Clone)]
pub struct RewriteRule {
    name: String,
    pattern: Circuit,
    replacement: Circuit,
    deviation: f64,
}

/// Checks `a` and `b` have the same unitary up to global phase.
pub fn certify_equal(name: &str, a: &Circuit, b: &Circuit) -> Result<f64, PassError> {
    let deviation = distance_up_to_phase(&unitary_of(a)?, &unitary_of(b)?);
    if deviation > CERTIFY_TOL {
        return Err(PassError::CertificationFailed {
            name: name.to_string(),
            deviation,
        });
    }
    Ok(deviation)
}

impl RewriteRule {
    pub fn new(
        name: &str,
        num_wires: usize,
        pattern: Vec<Gate>,
        replacement: Vec<Gate>,
    ) -> Result<RewriteRule, PassError> {
        let bad = |reason: &str| PassError::InvalidRule {
            name: name.to_string(),
            reason: reason.to_string(),
        };
        if pattern.is_empty() {
            return Err(bad("empty pattern"));
        }
        let pattern = Circuit::from_gates(num_wires, 0, pattern)?;
        let replacement = Circuit::from_gates(num_wires, 0, replacement)?;
        let mut seen: Vec<Qubit> = pattern.gates()[0].qubits().collect();
        for g in &pattern.gates()[1..] {
            if !g.qubits().any(|q| seen.contains(&q)) {
                return Err(bad("pattern gates must form a connected chain"));
            }
            seen.extend(g.qubits());
        }
        if (0..num_wires).any(|w| !seen.contains(&w)) {
            return Err(bad("pattern must touch every wire"));
        }
        if replacement.entangling_count() > pattern.entangling_count() {
            return Err(bad(
                "replacement has more entangling gates than the pattern",
            ));
        }
        let deviation = certify_equal(name, &pattern, &replacement)?;
        Ok(RewriteRule {
            name: name.to_string(),
            pattern,
            replacement,
            deviation,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn pattern(&self) -> &Circuit {
        &self.pattern
    }

    pub fn replacement(&self) -> &Circuit {
        &self.replacement
    }

    pub fn num_wires(&self) -> usize {
        self.pattern.num_qubits()
    }

    /// Certification residual.
    pub fn deviation(&self) -> f64 {
        self.deviation
    }
}

/// CX(a→b) CX(c→b) CX(a→c) ⇒ CX(a→c) CX(c→b)
pub fn cx_fanout_merge() -> Result<RewriteRule, PassError> {
    let (a, b, c) = (0, 1, 2);
    RewriteRule::new(
        CX_FANOUT_MERGE,
        3,
        vec![Gate::cx(a, b), Gate::cx(c, b), Gate::cx(a, c)],
        vec![Gate::cx(a, c), Gate::cx(c, b)],
    )
}

/// Time mirror of [`cx_fanout_merge`]:
/// CX(a→c) CX(c→b) CX(a→b) ⇒ CX(c→b) CX(a→c)
pub fn cx_fanout_merge_mirror() -> Result<RewriteRule, PassError> {
    let (a, b, c) = (0, 1, 2);
    RewriteRule::new(
        CX_FANOUT_MERGE_MIRROR,
        3,
        vec![Gate::cx(a, c), Gate::cx(c, b), Gate::cx(a, b)],
        vec![Gate::cx(c, b), Gate::cx(a, c)],
    )
}

/// CX(a→b) CX(b→c) CX(a→b) ⇒ CX(b→c) CX(a→c)
pub fn cx_chain_merge() -> Result<RewriteRule, PassError> {
    let (a, b, c) = (0, 1, 2);
    RewriteRule::new(
        CX_CHAIN_MERGE,
        3,
        vec![Gate::cx(a, b), Gate::cx(b, c), Gate::cx(a, b)],
        vec![Gate::cx(b, c), Gate::cx(a, c)],
    )
}

/// CCX(a,b→c) X(b) CCX(a,b→c) ⇒ X(b) CX(a→c)
pub fn toffoli_pair_x_control() -> Result<RewriteRule, PassError> {
    let (a, b, c) = (0, 1, 2);
    RewriteRule::new(
        TOFFOLI_PAIR_X,
        3,
        vec![Gate::ccx(a, b, c), Gate::x(b), Gate::ccx(a, b, c)],
        vec![Gate::x(b), Gate::cx(a, c)],
    )
}

/// CZ(a,b) CX(a→b) ⇒ S†(b) CX(a→b) S(b) S†(a)
pub fn cz_cx_fuse() -> Result<RewriteRule, PassError> {
    let (a, b) = (0, 1);
    RewriteRule::new(
        CZ_CX_FUSE,
        2,
        vec![Gate::cz(a, b), Gate::cx(a, b)],
        vec![Gate::sdg(b), Gate::cx(a, b), Gate::s(b), Gate::sdg(a)],
    )
}

/// CX(a→b) CZ(a,b) ⇒ S†(b) CX(a→b) S(b) S(a)
pub fn cx_cz_fuse() -> Result<RewriteRule, PassError> {
    let (a, b) = (0, 1);
    RewriteRule::new(
        CX_CZ_FUSE,
        2,
        vec![Gate::cx(a, b), Gate::cz(a, b)],
        vec![Gate::sdg(b), Gate::cx(a, b), Gate::s(b), Gate::s(a)],
    )
}

/// CX-only merges used at the high and low levels.
pub fn cx_rules() -> Result<Vec<RewriteRule>, PassError> {
    Ok(vec![
        cx_fanout_merge()?,
        cx_fanout_merge_mirror()?,
        cx_chain_merge()?,
    ])
}

pub fn toffoli_rules() -> Result<Vec<RewriteRule>, PassError> {
    Ok(vec![toffoli_pair_x_control()?])
}

pub fn fusion_rules() -> Result<Vec<RewriteRule>, PassError> {
    Ok(vec![cz_cx_fuse()?, cx_cz_fuse()?])
}

/// Every registered rule.
pub fn all_rules() -> Result<Vec<RewriteRule>, PassError> {
    let mut rules = cx_rules()?;
    rules.extend(toffoli_rules()?);
    rules.extend(fusion_rules()?);
    Ok(rules)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_certifies() {
        let rules = all_rules().unwrap();
        assert_eq!(rules.len(), 6);
        for r in &rules {
            assert!(r.deviation() <= CERTIFY_TOL, "{}", r.name());
            assert!(r.replacement().entangling_count() < r.pattern().entangling_count());
        }
    }

    #[test]
    fn wrong_rule_rejected() {
        let err = RewriteRule::new(
            "bogus",
            3,
            vec![Gate::cx(0, 1), Gate::cx(1, 2), Gate::cx(0, 1)],
            vec![Gate::cx(0, 2), Gate::cx(1, 2)],
        );
        assert!(err.is_ok(), "commuting order is also valid");
        let err = RewriteRule::new(
            "bogus",
            3,
            vec![Gate::cx(0, 1), Gate::cx(2, 1), Gate::cx(0, 2)],
            vec![Gate::cx(2, 1), Gate::cx(0, 2)],
        );
        assert!(matches!(err, Err(PassError::CertificationFailed { .. })));
    }

    #[test]
    fn disconnected_pattern_rejected() {
        let err = RewriteRule::new("split", 4, vec![Gate::cx(0, 1), Gate::cx(2, 3)], vec![]);
        assert!(matches!(err, Err(PassError::InvalidRule { .. })));
    }
}
