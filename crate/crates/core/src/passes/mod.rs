//! Circuit transformations and the two optimization pipelines.

mod cancel;
mod config;
mod deto;
mod logs;
mod matching;
mod pipeline;
mod rccx;
pub mod rules;
mod vchain;

pub use cancel::cancel_adjacent;
pub use config::PassConfig;
pub use deto::{
    decompose_deto, deto_cost_model, deto_mcrz, linear_mcrz, mcx_dirty, pipeline_deto, DetoRun,
};
pub use logs::{
    ccx_decomposition, fuse_single_qubit_runs, gray_code_mcrz, lower_gate, lower_to_logs,
    optimize_logs, rccx_decomposition,
};
pub use matching::{apply_rules, rewrite_pass};
pub use pipeline::{
    optimize_circuit, pipeline_mlco, simplify_higs, simplify_migs, step_stage_name, MlcoRun,
    StageResult, StageScope, Strategy, COMPOSED, COMPOSED_SIMPLIFIED, JUST_DECOMPOSED, OPTIMIZED,
    REPLACED,
};
pub use rccx::replace_ccx_with_rccx;
pub use rules::RewriteRule;
pub use vchain::{lower_vchain, vchain_decomposition};

use thiserror::Error;

use crate::ir::{Circuit, GateSetLevel, IrError, LevelName};
use crate::oracle::OracleError;
use crate::pde::PdeError;

#[derive(Debug, Error)]
pub enum PassError {
    #[error("gate {index} ({gate}) is outside {level}")]
    NotConformant {
        level: LevelName,
        index: usize,
        gate: String,
    },
    #[error("rule {name} failed certification (deviation {deviation:e})")]
    CertificationFailed { name: String, deviation: f64 },
    #[error("rule {name} is invalid: {reason}")]
    InvalidRule { name: String, reason: String },
    #[error("configuration error: {0}")]
    Config(String),
    #[error("no spare qubit to borrow for {0}")]
    NoSpareQubit(String),
    #[error(transparent)]
    Ir(#[from] IrError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Pde(#[from] PdeError),
}

pub(crate) fn require_level(c: &Circuit, level: &GateSetLevel) -> Result<(), PassError> {
    match level.first_violation(c) {
        None => Ok(()),
        Some(index) => Err(PassError::NotConformant {
            level: level.name,
            index,
            gate: c.gates()[index].to_string(),
        }),
    }
}
