//! Wave-equation Hamiltonian-simulation circuits.
//!
//! Discretization qubit j (1-based) lives at index j−1; the top qubit at
//! index n−1.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::ir::{concat, Circuit, Gate, IrError, Qubit};

#[derive(Debug, Error)]
pub enum PdeError {
    #[error("need at least 3 qubits, got {0}")]
    TooFewQubits(usize),
    #[error("{name} must be positive and finite, got {value}")]
    InvalidParam { name: &'static str, value: f64 },
    #[error("block index {j} outside 1..={max}")]
    BlockOutOfRange { j: usize, max: usize },
    #[error("at least one step is required")]
    NoSteps,
    #[error(transparent)]
    Ir(#[from] IrError),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PdeParams {
    /// Total qubit count: n−1 discretization qubits plus the top qubit.
    pub n: usize,
    pub tau: f64,
    pub c: f64,
    pub l: f64,
}

impl PdeParams {
    pub fn new(n: usize, tau: f64, c: f64, l: f64) -> Result<PdeParams, PdeError> {
        if n < 3 {
            return Err(PdeError::TooFewQubits(n));
        }
        for (name, value) in [("tau", tau), ("c", c), ("l", l)] {
            if !(value.is_finite() && value > 0.0) {
                return Err(PdeError::InvalidParam { name, value });
            }
        }
        Ok(PdeParams { n, tau, c, l })
    }

    /// Case-study values τ = 0.2, c = 1, l = 1.
    pub fn case_study(n: usize) -> Result<PdeParams, PdeError> {
        PdeParams::new(n, 0.2, 1.0, 1.0)
    }

    /// Backbone rotation angle 2cτ/l.
    pub fn theta_bb(&self) -> f64 {
        2.0 * self.c * self.tau / self.l
    }

    pub fn top(&self) -> Qubit {
        self.n - 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WingStyle {
    Spray,
    Stair,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum H2Order {
    Increasing,
    Decreasing,
}

/// Block ordering across several steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StepOrder {
    Fixed(H2Order),
    /// Increasing, Decreasing, Increasing, …
    Alternate,
}

macro_rules! name_parse {
    ($ty:ty, $( $text:literal => $val:expr ),+ ) => {
        impl FromStr for $ty {
            type Err = String;
            fn from_str(s: &str) -> Result<Self, String> {
                match s {
                    $( $text => Ok($val), )+
                    other => Err(format!("unknown value `{other}`")),
                }
            }
        }
    };
}

name_parse!(WingStyle, "spray" => WingStyle::Spray, "stair" => WingStyle::Stair);
name_parse!(StepOrder,
    "inc" => StepOrder::Fixed(H2Order::Increasing),
    "dec" => StepOrder::Fixed(H2Order::Decreasing),
    "alt" => StepOrder::Alternate);

impl fmt::Display for WingStyle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WingStyle::Spray => "spray",
            WingStyle::Stair => "stair",
        })
    }
}

impl StepOrder {
    pub fn orders(self, steps: usize) -> Vec<H2Order> {
        (0..steps)
            .map(|i| match self {
                StepOrder::Fixed(o) => o,
                StepOrder::Alternate if i % 2 == 0 => H2Order::Increasing,
                StepOrder::Alternate => H2Order::Decreasing,
            })
            .collect()
    }
}

fn check_block(j: usize, n: usize) -> Result<(), PdeError> {
    if n < 3 {
        return Err(PdeError::TooFewQubits(n));
    }
    if j == 0 || j >= n {
        return Err(PdeError::BlockOutOfRange { j, max: n - 1 });
    }
    Ok(())
}

/// U_j: maps |0>_top|1…1> to (|0>|0>_j|1…1> + |1>|1>_j|0…0>)/√2 and
/// |1>_top|1…1> to the same with a minus sign.
pub fn build_wing(j: usize, style: WingStyle, n: usize) -> Result<Circuit, PdeError> {
    check_block(j, n)?;
    let top = n - 1;
    let q = |i: usize| i - 1;
    let mut c = Circuit::new(n);
    c.push(Gate::h(top));
    c.push(Gate::x(q(j)));
    match style {
        WingStyle::Spray => {
            for i in 1..=j {
                c.push(Gate::cx(top, q(i)));
            }
        }
        WingStyle::Stair => {
            for i in 1..j.saturating_sub(1) {
                c.push(Gate::x(q(i)));
            }
            c.push(Gate::cx(top, q(j)));
            for i in (2..=j).rev() {
                c.push(Gate::cx(q(i), q(i - 1)));
            }
        }
    }
    Ok(c)
}

/// exp(−i(c/l)τ h_j) as U_j · C^jRZ(θ_bb) · U_j†.
pub fn build_block(j: usize, style: WingStyle, params: &PdeParams) -> Result<Circuit, PdeError> {
    let wing = build_wing(j, style, params.n)?;
    let controls: Vec<Qubit> = (0..j).collect();
    let mut c = wing.inverse();
    c.push(Gate::controlled_rz(
        &controls,
        params.top(),
        params.theta_bb(),
    ));
    c.append(&wing)?;
    Ok(c)
}

/// RX(−2cτ/l) on the top qubit, then the h_j blocks in `order`.
pub fn build_one_step(
    params: &PdeParams,
    style: WingStyle,
    order: H2Order,
) -> Result<Circuit, PdeError> {
    let mut c = Circuit::new(params.n);
    c.push(Gate::rx(params.top(), -params.theta_bb()));
    let blocks: Vec<usize> = match order {
        H2Order::Increasing => (1..params.n).collect(),
        H2Order::Decreasing => (1..params.n).rev().collect(),
    };
    for j in blocks {
        c.append(&build_block(j, style, params)?)?;
    }
    Ok(c)
}

/// One circuit per step, ordered as `order` dictates.
pub fn build_step_circuits(
    params: &PdeParams,
    steps: usize,
    style: WingStyle,
    order: StepOrder,
) -> Result<Vec<Circuit>, PdeError> {
    if steps == 0 {
        return Err(PdeError::NoSteps);
    }
    order
        .orders(steps)
        .into_iter()
        .map(|o| build_one_step(params, style, o))
        .collect()
}

/// Concatenation in time order.
pub fn compose_steps(step_circuits: &[Circuit]) -> Result<Circuit, PdeError> {
    if step_circuits.is_empty() {
        return Err(PdeError::NoSteps);
    }
    Ok(concat(step_circuits)?)
}

pub fn build_source(
    params: &PdeParams,
    steps: usize,
    style: WingStyle,
    order: StepOrder,
) -> Result<Circuit, PdeError> {
    compose_steps(&build_step_circuits(params, steps, style, order)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ir::{CensusKey, GateCensus};

    #[test]
    fn params_validated() {
        assert!(matches!(
            PdeParams::new(2, 0.2, 1.0, 1.0),
            Err(PdeError::TooFewQubits(2))
        ));
        assert!(matches!(
            PdeParams::new(4, -0.2, 1.0, 1.0),
            Err(PdeError::InvalidParam { name: "tau", .. })
        ));
        assert!((PdeParams::case_study(6).unwrap().theta_bb() - 0.4).abs() < 1e-15);
    }

    #[test]
    fn wing_cx_counts() {
        for style in [WingStyle::Spray, WingStyle::Stair] {
            for j in 1..6 {
                assert_eq!(build_wing(j, style, 6).unwrap().cx_count(), j);
            }
        }
        assert!(build_wing(6, WingStyle::Stair, 6).is_err());
        assert!(build_wing(0, WingStyle::Stair, 6).is_err());
    }

    #[test]
    fn source_census_n6() {
        let p = PdeParams::case_study(6).unwrap();
        let c = build_one_step(&p, WingStyle::Stair, H2Order::Increasing).unwrap();
        let expected = GateCensus::from_counts([
            (CensusKey::Mcrz(5), 1),
            (CensusKey::Mcrz(4), 1),
            (CensusKey::Mcrz(3), 1),
            (CensusKey::Ccrz, 1),
            (CensusKey::Crz, 1),
            (CensusKey::Cx, 30),
        ]);
        assert_eq!(c.census(), expected);
    }

    #[test]
    fn alternate_orders() {
        assert_eq!(
            StepOrder::Alternate.orders(3),
            vec![
                H2Order::Increasing,
                H2Order::Decreasing,
                H2Order::Increasing
            ]
        );
        assert_eq!("alt".parse::<StepOrder>().unwrap(), StepOrder::Alternate);
        assert!("up".parse::<StepOrder>().is_err());
    }

    #[test]
    fn compose_rejects_empty_and_mismatch() {
        assert!(matches!(compose_steps(&[]), Err(PdeError::NoSteps)));
        assert!(compose_steps(&[Circuit::new(3), Circuit::new(4)]).is_err());
    }
}
