use std::fs;
use std::path::Path;

use mlco::ir::io::{read_circuit, to_qasm, write_circuit};
use mlco::ir::{Circuit, GateSetLevel, IrError, LevelName};
use mlco::oracle::{
    data_unitary, distance_up_to_phase, equivalent_up_to_phase, exact_evolution, phase_between,
    product_formula, spectral_norm, EquivOptions, OracleError, MAX_STATEVECTOR_QUBITS,
};
use mlco::passes::{optimize_circuit, rules::all_rules, PassConfig, PassError, Strategy};
use mlco::pde::{build_source, PdeError, PdeParams, StepOrder};
use mlco::report::{
    read_sweep_csv, render_sweep, reproduce_table1, scaling_sweep, write_sweep_csv, ReportError,
    StageReport,
};
use thiserror::Error;

use crate::{
    Against, BuildArgs, Cli, Command, CountArgs, ExportArgs, OptimizeArgs, PhysicsArgs, SweepArgs,
    TableArgs, VerifyArgs,
};

/// Largest data width verified when neither --verify nor --no-verify is given.
const DEFAULT_VERIFY_MAX_QUBITS: usize = 8;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Circuit { path: String, source: IrError },
    #[error(transparent)]
    Pass(#[from] PassError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Report(#[from] ReportError),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 1,
            _ => 2,
        }
    }
}

impl From<PdeError> for CliError {
    fn from(e: PdeError) -> CliError {
        CliError::Usage(e.to_string())
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.display().to_string(),
        source,
    }
}

fn load(path: &Path) -> Result<Circuit, CliError> {
    let bytes = fs::read(path).map_err(io_err(path))?;
    read_circuit(&bytes).map_err(|source| CliError::Circuit {
        path: path.display().to_string(),
        source,
    })
}

fn save(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(io_err(path))
}

fn params(n: usize, p: &PhysicsArgs) -> Result<PdeParams, CliError> {
    Ok(PdeParams::new(n, p.tau, p.c, p.l)?)
}

fn highest_level(c: &Circuit) -> LevelName {
    [LevelName::LoGS, LevelName::MiGS]
        .into_iter()
        .find(|&l| c.conforms(&GateSetLevel::by_name(l)))
        .unwrap_or(LevelName::HiGS)
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    let config = match &cli.config {
        Some(p) => PassConfig::load(p).map_err(|e| CliError::Usage(e.to_string()))?,
        None => PassConfig::default(),
    };
    match cli.command {
        Command::Build(a) => build(a),
        Command::Optimize(a) => optimize(a, &config),
        Command::Verify(a) => verify(a),
        Command::Count(a) => count(a),
        Command::Export(a) => export(a),
        Command::Sweep(a) => sweep(a, &config),
        Command::Table(a) => table(a, &config),
        Command::Rules => rules(),
    }
}

fn build(a: BuildArgs) -> Result<(), CliError> {
    if a.steps == 0 {
        return Err(CliError::Usage("--steps must be at least 1".into()));
    }
    let p = params(a.qubits, &a.physics)?;
    let order = a.order.unwrap_or(if a.steps >= 2 {
        StepOrder::Alternate
    } else {
        StepOrder::Fixed(mlco::pde::H2Order::Increasing)
    });
    let c = build_source(&p, a.steps, a.wing, order)?;
    save(&a.out, &write_circuit(&c))?;
    println!("{}", c.census());
    Ok(())
}

fn optimize(a: OptimizeArgs, config: &PassConfig) -> Result<(), CliError> {
    let input = load(&a.input)?;
    let strategy = Strategy::from(a.strategy);
    let to = LevelName::from(a.to);
    if strategy == Strategy::Deto && to != LevelName::LoGS {
        return Err(CliError::Usage("--strategy deto requires --to logs".into()));
    }
    let (out, stages) = optimize_circuit(&input, strategy, to, config)?;
    save(&a.out, &write_circuit(&out))?;

    let reports: Vec<StageReport> = stages.iter().map(StageReport::from_stage).collect();
    for r in &reports {
        println!("{:<24} {:>6}  {}", r.name, r.naive_cx, r.census);
        eprintln!("  {} took {:.3} ms", r.name, r.elapsed.as_secs_f64() * 1e3);
    }
    if strategy == Strategy::Deto {
        println!(
            "cost model (table-priced input census): {}",
            input.census().naive_cx(&mlco::cost::CostModel)
        );
    }
    if let Some(path) = &a.report {
        let mut text = serde_json::to_vec_pretty(&reports)
            .map_err(|e| CliError::Usage(format!("report serialization: {e}")))?;
        text.push(b'\n');
        save(path, &text)?;
    }

    let want = if a.verify {
        true
    } else if a.no_verify {
        false
    } else {
        input.num_data_qubits() <= DEFAULT_VERIFY_MAX_QUBITS
    };
    if !want {
        return Ok(());
    }
    let width = input.num_qubits().max(out.num_qubits());
    if width > MAX_STATEVECTOR_QUBITS {
        eprintln!(
            "warning: {width} qubits exceed the {MAX_STATEVECTOR_QUBITS}-qubit simulator; reporting census only"
        );
        return Ok(());
    }
    let opts = EquivOptions {
        trials: a.trials.trials,
        seed: a.trials.seed,
        ..EquivOptions::default()
    };
    let r = equivalent_up_to_phase(&input, &out, &opts)?;
    println!("verify: max deviation {:.3e}", r.max_deviation);
    if r.equivalent {
        println!("verify: pass");
        Ok(())
    } else {
        Err(CliError::Verification(format!(
            "output differs from input (deviation {:.3e}, leakage {:.3e})",
            r.max_deviation, r.max_leakage
        )))
    }
}

fn verify(a: VerifyArgs) -> Result<(), CliError> {
    let ca = load(&a.a)?;
    if let Some(b) = &a.b {
        let cb = load(b)?;
        let opts = EquivOptions {
            trials: a.trials.trials,
            seed: a.trials.seed,
            fidelity_tol: a.tol,
            unitary_tol: a.tol,
            ..EquivOptions::default()
        };
        let r = equivalent_up_to_phase(&ca, &cb, &opts)?;
        println!("max deviation {:.3e}", r.max_deviation);
        println!("min fidelity {:.15}", r.min_fidelity);
        println!("max leakage {:.3e}", r.max_leakage);
        if let Some(d) = r.unitary_deviation {
            println!("unitary deviation {d:.3e}");
        }
        return if r.equivalent {
            println!("pass");
            Ok(())
        } else {
            println!("FAIL");
            Err(CliError::Verification(format!(
                "circuits differ (deviation {:.3e})",
                r.max_deviation
            )))
        };
    }
    let against = a.against.expect("clap requires --b or --against");
    if a.steps == 0 {
        return Err(CliError::Usage("--steps must be at least 1".into()));
    }
    let p = params(ca.num_data_qubits(), &a.physics)?;
    let (u, leakage) = data_unitary(&ca)?;
    match against {
        Against::ProductFormula => {
            let target = product_formula(&p, a.steps)?;
            let d = distance_up_to_phase(&u, &target).max(leakage);
            println!("max deviation {d:.3e}");
            if d <= a.tol {
                println!("pass");
                Ok(())
            } else {
                println!("FAIL");
                Err(CliError::Verification(format!(
                    "circuit differs from the product formula by {d:.3e}"
                )))
            }
        }
        Against::ExactEvolution => {
            let exact = exact_evolution(&p, a.steps)?;
            let phase = phase_between(&exact, &u);
            let err = spectral_norm(&(u * phase - exact));
            println!("trotter error (spectral norm) {err:.6e}");
            Ok(())
        }
    }
}

fn count(a: CountArgs) -> Result<(), CliError> {
    let c = load(&a.input)?;
    let census = c.census();
    if a.json {
        let text = serde_json::to_string(&census)
            .map_err(|e| CliError::Usage(format!("census serialization: {e}")))?;
        println!("{text}");
        return Ok(());
    }
    println!("census {census}");
    println!("naive cx {}", census.naive_cx(&mlco::cost::CostModel));
    println!("gates {}", c.len());
    println!("qubits {} (ancillas {})", c.num_qubits(), c.num_ancillas());
    println!("level {}", highest_level(&c));
    Ok(())
}

fn export(a: ExportArgs) -> Result<(), CliError> {
    let c = load(&a.input)?;
    let text = to_qasm(&c).map_err(|source| CliError::Circuit {
        path: a.input.display().to_string(),
        source,
    })?;
    save(&a.out, text.as_bytes())
}

fn sweep(a: SweepArgs, config: &PassConfig) -> Result<(), CliError> {
    if a.sizes.is_empty() || a.steps == 0 {
        return Err(CliError::Usage(
            "need at least one size and one step".into(),
        ));
    }
    if let Some(&bad) = a.sizes.iter().find(|&&n| n < 3) {
        return Err(CliError::Usage(format!("size {bad} is below 3")));
    }
    let rows = scaling_sweep(&a.sizes, a.steps, a.wing, config)?;
    print!("{}", render_sweep(&rows));
    if let Some(path) = &a.emit {
        let mut buf = Vec::new();
        write_sweep_csv(&rows, &mut buf)?;
        debug_assert_eq!(read_sweep_csv(&buf[..]).ok().as_ref(), Some(&rows));
        save(path, &buf)?;
    }
    match rows.iter().find(|r| !r.matches) {
        Some(r) => Err(CliError::Verification(format!(
            "n={} {} does not match its prediction",
            r.n,
            r.strategy.name()
        ))),
        None => Ok(()),
    }
}

fn table(a: TableArgs, config: &PassConfig) -> Result<(), CliError> {
    let t = reproduce_table1(a.wing, config)?;
    print!("{}", t.render());
    if t.all_pass() {
        Ok(())
    } else {
        let failed: Vec<&str> = t
            .rows
            .iter()
            .filter(|r| !r.pass)
            .map(|r| r.label.as_str())
            .collect();
        Err(CliError::Verification(format!(
            "rows differ: {}",
            failed.join(", ")
        )))
    }
}

fn rules() -> Result<(), CliError> {
    for r in all_rules()? {
        println!(
            "{:<26} wires {}  {} -> {} gates  deviation {:.1e}",
            r.name(),
            r.num_wires(),
            r.pattern().len(),
            r.replacement().len(),
            r.deviation()
        );
    }
    Ok(())
}
