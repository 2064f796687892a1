use std::time::{Duration, Instant};

use crate::ir::{Circuit, GateSetLevel, LevelName};
use crate::pde::{build_step_circuits, compose_steps, PdeParams, StepOrder, WingStyle};

use super::rules::{cx_rules, toffoli_rules};
use super::{
    apply_rules, lower_to_logs, lower_vchain, optimize_logs, replace_ccx_with_rccx, PassConfig,
    PassError,
};

/// What a stage's output should be equivalent to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StageScope {
    /// The source circuit of one step (0-based index).
    Step(usize),
    /// The whole multi-step source.
    Full,
}

#[derive(Debug, Clone)]
pub struct StageResult {
    pub name: String,
    pub level: LevelName,
    pub scope: StageScope,
    pub circuit: Circuit,
    pub elapsed: Duration,
}

#[derive(Debug, Clone)]
pub struct MlcoRun {
    pub step_sources: Vec<Circuit>,
    pub source: Circuit,
    pub stages: Vec<StageResult>,
}

pub const COMPOSED: &str = "composed MiGS";
pub const COMPOSED_SIMPLIFIED: &str = "composed MiGS simplified";
pub const REPLACED: &str = "MiGS replaced";
pub const JUST_DECOMPOSED: &str = "LoGS just-decomposed";
pub const OPTIMIZED: &str = "LoGS optimized";

pub fn step_stage_name(step: usize, what: &str) -> String {
    format!("step {} {what}", step + 1)
}

impl MlcoRun {
    pub fn stage(&self, name: &str) -> Option<&StageResult> {
        self.stages.iter().find(|s| s.name == name)
    }

    pub fn final_circuit(&self) -> &Circuit {
        &self.stages.last().expect("pipeline has stages").circuit
    }

    pub fn scope_source(&self, scope: StageScope) -> &Circuit {
        match scope {
            StageScope::Step(i) => &self.step_sources[i],
            StageScope::Full => &self.source,
        }
    }
}

/// Cancellation plus CX merges at the high level.
pub fn simplify_higs(c: &Circuit, config: &PassConfig) -> Result<Circuit, PassError> {
    Ok(apply_rules(&c.without_barriers(), &cx_rules()?, config))
}

/// Cancellation plus the Toffoli-pair rule at the mid level.
pub fn simplify_migs(c: &Circuit, config: &PassConfig) -> Result<Circuit, PassError> {
    Ok(apply_rules(
        &c.without_barriers(),
        &toffoli_rules()?,
        config,
    ))
}

struct Recorder {
    stages: Vec<StageResult>,
    clock: Instant,
}

impl Recorder {
    fn record(&mut self, name: String, level: LevelName, scope: StageScope, circuit: &Circuit) {
        let now = Instant::now();
        self.stages.push(StageResult {
            name,
            level,
            scope,
            circuit: circuit.clone(),
            elapsed: now - self.clock,
        });
        self.clock = now;
    }
}

/// Builds `steps` alternating Trotter steps and lowers them level by level,
/// recording every intermediate circuit.
pub fn pipeline_mlco(
    params: &PdeParams,
    steps: usize,
    style: WingStyle,
    config: &PassConfig,
) -> Result<MlcoRun, PassError> {
    let mut rec = Recorder {
        stages: Vec::new(),
        clock: Instant::now(),
    };
    let step_sources = build_step_circuits(params, steps, style, StepOrder::Alternate)?;
    let source = compose_steps(&step_sources)?;
    let mut lowered = Vec::with_capacity(steps);
    for (i, step) in step_sources.iter().enumerate() {
        let scope = StageScope::Step(i);
        rec.record(
            step_stage_name(i, "HiGS source"),
            LevelName::HiGS,
            scope,
            step,
        );
        let hi = simplify_higs(step, config)?;
        rec.record(
            step_stage_name(i, "HiGS simplified"),
            LevelName::HiGS,
            scope,
            &hi,
        );
        let mid = lower_vchain(&hi)?;
        rec.record(
            step_stage_name(i, "MiGS input"),
            LevelName::MiGS,
            scope,
            &mid,
        );
        let mid = simplify_migs(&mid, config)?;
        rec.record(
            step_stage_name(i, "MiGS simplified"),
            LevelName::MiGS,
            scope,
            &mid,
        );
        lowered.push(mid);
    }
    let full = StageScope::Full;
    let composed = compose_steps(&lowered)?;
    rec.record(COMPOSED.into(), LevelName::MiGS, full, &composed);
    let simplified = simplify_migs(&composed, config)?;
    rec.record(
        COMPOSED_SIMPLIFIED.into(),
        LevelName::MiGS,
        full,
        &simplified,
    );
    let replaced = replace_ccx_with_rccx(&simplified, config)?;
    rec.record(REPLACED.into(), LevelName::MiGS, full, &replaced);
    let low = lower_to_logs(&replaced)?;
    rec.record(JUST_DECOMPOSED.into(), LevelName::LoGS, full, &low);
    let opt = optimize_logs(&low, config)?;
    rec.record(OPTIMIZED.into(), LevelName::LoGS, full, &opt);
    debug_assert!(opt.conforms(&GateSetLevel::logs()));
    Ok(MlcoRun {
        step_sources,
        source,
        stages: rec.stages,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Mlco,
    Deto,
}

/// Optimizes an arbitrary circuit down to `to`. Returns the result and the
/// intermediate stages.
pub fn optimize_circuit(
    c: &Circuit,
    strategy: Strategy,
    to: LevelName,
    config: &PassConfig,
) -> Result<(Circuit, Vec<StageResult>), PassError> {
    let mut rec = Recorder {
        stages: Vec::new(),
        clock: Instant::now(),
    };
    let full = StageScope::Full;
    let input = c.without_barriers();
    rec.record("input".into(), LevelName::HiGS, full, &input);
    let out = match strategy {
        Strategy::Deto => {
            if to != LevelName::LoGS {
                return Err(PassError::Config(
                    "decompose-then-optimize always targets LoGS".into(),
                ));
            }
            let low = super::decompose_deto(&input)?;
            rec.record(JUST_DECOMPOSED.into(), LevelName::LoGS, full, &low);
            let opt = optimize_logs(&low, config)?;
            rec.record(OPTIMIZED.into(), LevelName::LoGS, full, &opt);
            opt
        }
        Strategy::Mlco => {
            let hi = simplify_higs(&input, config)?;
            rec.record("HiGS simplified".into(), LevelName::HiGS, full, &hi);
            if to == LevelName::HiGS {
                hi
            } else {
                let mid = lower_vchain(&hi)?;
                rec.record("MiGS input".into(), LevelName::MiGS, full, &mid);
                let mid = simplify_migs(&mid, config)?;
                rec.record("MiGS simplified".into(), LevelName::MiGS, full, &mid);
                let mid = replace_ccx_with_rccx(&mid, config)?;
                rec.record(REPLACED.into(), LevelName::MiGS, full, &mid);
                if to == LevelName::MiGS {
                    mid
                } else {
                    let low = lower_to_logs(&mid)?;
                    rec.record(JUST_DECOMPOSED.into(), LevelName::LoGS, full, &low);
                    let opt = optimize_logs(&low, config)?;
                    rec.record(OPTIMIZED.into(), LevelName::LoGS, full, &opt);
                    opt
                }
            }
        }
    };
    Ok((out, rec.stages))
}
