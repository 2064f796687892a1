//! CX cost model for naive lowering to the low-level gate set.

use crate::ir::GateKind;

/// CX cost of one gate when lowered with fixed decompositions.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CostModel;

const MCRZ_TABLE: [usize; 7] = [2, 4, 14, 24, 40, 56, 80];

impl CostModel {
    /// CX cost of a Z rotation with `k` controls (k ≥ 1).
    pub fn mcrz(&self, k: usize) -> usize {
        assert!(k >= 1, "mcrz cost needs at least one control");
        if k <= MCRZ_TABLE.len() {
            MCRZ_TABLE[k - 1]
        } else {
            16 * k - 24
        }
    }

    /// CX cost of a gate of `kind` with `num_controls` controls.
    /// Multi-controlled X is priced like the Z rotation with the same
    /// number of controls.
    pub fn gate(&self, kind: GateKind, num_controls: usize) -> usize {
        match kind {
            GateKind::Cx | GateKind::Cz | GateKind::Cy => 1,
            GateKind::Crz | GateKind::Cs | GateKind::Csdg => 2,
            GateKind::Rccx => 3,
            GateKind::Ccrz => 4,
            GateKind::Ccx => 6,
            GateKind::Mcrz | GateKind::Mcx => self.mcrz(num_controls),
            _ => 0,
        }
    }

    /// Decompose-then-optimize estimate for one Trotter step on `n` qubits:
    /// every backbone priced by the table plus the n(n−1) wing CX.
    pub fn deto_step(&self, n: usize) -> usize {
        (1..n).map(|k| self.mcrz(k)).sum::<usize>() + n * (n - 1)
    }
}

/// Closed form 9n²−33n−36, valid for n ≥ 8.
pub fn deto_closed_form(n: usize) -> i64 {
    let n = n as i64;
    9 * n * n - 33 * n - 36
}

/// Just-decomposed two-step MLCO count 2(10n−21).
pub fn mlco_two_step_closed_form(n: usize) -> i64 {
    2 * (10 * n as i64 - 21)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_values() {
        let m = CostModel;
        let got: Vec<usize> = (1..=9).map(|k| m.mcrz(k)).collect();
        assert_eq!(got, vec![2, 4, 14, 24, 40, 56, 80, 104, 120]);
    }

    #[test]
    fn deto_step_n6() {
        assert_eq!(CostModel.deto_step(6), 114);
        assert_eq!(CostModel.deto_step(8), 276);
    }

    #[test]
    fn closed_form_matches_summation() {
        for n in 8..=64 {
            assert_eq!(CostModel.deto_step(n) as i64, deto_closed_form(n), "n={n}");
        }
    }
}
