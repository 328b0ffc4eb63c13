//! `unambig`: reproduce the headline results of the identification game,
//! simulate strategies with a seeded Monte Carlo referee, and run the grid
//! optimizers, emitting text, CSV, or JSON.
//!
//! Exit codes: 0 success, 1 computational failure (a check out of tolerance
//! or an error-free strategy producing wrong identifications), 2 usage error.

mod output;
mod reproduce;
mod strategy;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use unambig_core::families::{
    large_d_encoding, mub_states_d4, pauli_y_extension, qutrit_d4_encoding, solution_eq14,
    solution_eq8, trine_family, trine_states,
};
use unambig_core::game::{wins_classical, wins_quantum, GameSpec, QuantumStrategy};
use unambig_core::optimize::{
    maximize_avg_given_epsilon, maximize_epsilon_d3, maximize_epsilon_d4, verify_prop3_sup,
    OptimizationResult,
};
use unambig_core::sim::{run_classical, run_rounds};
use unambig_core::states::PureState;
use unambig_core::usd::elimination_povm;

use output::Format;
use strategy::{LoadedStrategy, StrategyFile};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Csv,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "unambig", version, about = "Unambiguous-identification game toolkit")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Args)]
struct CommonIo {
    /// Output format.
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    /// Write to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Worker count; accepted for forward compatibility, execution is
    /// currently single-threaded.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Recompute a named result and compare against its expected value.
    Reproduce {
        example: reproduce::Example,
        #[command(flatten)]
        io: CommonIo,
    },
    /// Play seeded game rounds with a built-in family or a strategy file.
    Simulate {
        /// Number of values of the random variable (families that need it).
        #[arg(long)]
        d: Option<usize>,
        /// Candidate-set / message size; inferred from the family if omitted.
        #[arg(long)]
        n: Option<usize>,
        /// Built-in encoding family: trine, trine-fixed, trine-family, eq8,
        /// eq14, mub4, large-d, qutrit-d4, pauli-y, prop2.
        #[arg(long)]
        family: Option<String>,
        /// Family parameter for eq8 / eq14.
        #[arg(long)]
        eps: Option<f64>,
        /// Family parameter for trine-family.
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long, default_value_t = 100_000)]
        rounds: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// JSON strategy file; overrides --family.
        #[arg(long)]
        strategy: Option<PathBuf>,
        #[command(flatten)]
        io: CommonIo,
    },
    /// Run a grid optimizer and emit its result as JSON.
    Optimize {
        #[arg(value_enum)]
        objective: Objective,
        /// Coarse grid step; defaults to 0.005 (0.02 for eps-d4).
        #[arg(long)]
        resolution: Option<f64>,
        /// Constraint level for avg-given-eps.
        #[arg(long)]
        eps: Option<f64>,
        #[command(flatten)]
        io: CommonIo,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Objective {
    EpsD3,
    EpsD4,
    AvgGivenEps,
    Prop3Sup,
}

/// Usage-level failure distinct from computational failure.
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(UsageError(msg.into()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.is::<UsageError>() {
                ExitCode::from(2)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.cmd {
        Cmd::Reproduce { example, io } => {
            check_jobs(io.jobs)?;
            let rows = reproduce::rows_for(example)?;
            let ok = output::write_rows(&rows, io.format.into(), io.output.as_deref())?;
            Ok(ok)
        }
        Cmd::Simulate {
            d,
            n,
            family,
            eps,
            delta,
            rounds,
            seed,
            strategy,
            io,
        } => {
            check_jobs(io.jobs)?;
            let format = match io.format {
                // Stats have no text renderer; default to CSV rows.
                FormatArg::Text => Format::Csv,
                other => other.into(),
            };
            let (spec, loaded, name) = match (strategy, family) {
                (Some(path), _) => {
                    let file = StrategyFile::load(&path)?;
                    let spec = GameSpec::new(file.d, file.n)?;
                    let loaded = file.into_strategy(&spec)?;
                    (spec, loaded, "file".to_string())
                }
                (None, Some(family)) => built_in(&family, d, n, eps, delta)?,
                (None, None) => {
                    return Err(usage("either --family or --strategy is required"));
                }
            };
            let (stats, claims_win) = match &loaded {
                LoadedStrategy::Quantum(q) => (
                    run_rounds(&spec, q, rounds, seed)?,
                    wins_quantum(&spec, q)?,
                ),
                LoadedStrategy::Classical(c) => (
                    run_classical(&spec, c, rounds, seed)?,
                    wins_classical(&spec, c)?,
                ),
            };
            output::write_stats(&stats, &name, format, io.output.as_deref())?;
            let wrong = stats.total_wrong();
            eprintln!(
                "{name}: {} rounds, {} correct, {wrong} wrong, {} inconclusive (seed {seed})",
                stats.rounds,
                stats.total_correct(),
                stats.total_inconclusive(),
            );
            if claims_win && wrong > 0 {
                eprintln!("strategy claims an error-free win but misidentified {wrong} rounds");
                return Ok(false);
            }
            Ok(true)
        }
        Cmd::Optimize {
            objective,
            resolution,
            eps,
            io,
        } => {
            check_jobs(io.jobs)?;
            let res = resolution.unwrap_or(match objective {
                Objective::EpsD4 => 0.02,
                _ => 0.005,
            });
            let result = match objective {
                Objective::EpsD3 => maximize_epsilon_d3(res)?,
                Objective::EpsD4 => maximize_epsilon_d4(res)?,
                Objective::Prop3Sup => verify_prop3_sup(res)?,
                Objective::AvgGivenEps => {
                    let eps =
                        eps.ok_or_else(|| usage("avg-given-eps requires --eps"))?;
                    maximize_avg_given_epsilon(eps, res)?
                }
            };
            write_optimization(&result, io.output.as_deref())?;
            Ok(true)
        }
    }
}

fn check_jobs(jobs: usize) -> Result<()> {
    if jobs == 0 {
        return Err(usage("--jobs must be at least 1"));
    }
    Ok(())
}

/// Resolves a built-in family name plus its parameters into a playable game.
fn built_in(
    family: &str,
    d: Option<usize>,
    n: Option<usize>,
    eps: Option<f64>,
    delta: Option<f64>,
) -> Result<(GameSpec, LoadedStrategy, String)> {
    let need_eps = || eps.ok_or_else(|| usage(format!("family {family} requires --eps")));
    let need_d = || d.ok_or_else(|| usage(format!("family {family} requires --d")));
    let (fam_d, fam_n, encoding, fixed_povm): (usize, usize, Vec<PureState>, bool) = match family
    {
        "trine" => (3, 2, trine_states().states().to_vec(), false),
        "trine-fixed" => (3, 2, trine_states().states().to_vec(), true),
        "trine-family" => {
            let delta =
                delta.ok_or_else(|| usage("family trine-family requires --delta"))?;
            (3, 2, trine_family(delta)?.states().to_vec(), false)
        }
        "eq8" => (3, 2, solution_eq8(need_eps()?)?.states().to_vec(), false),
        "eq14" => (4, 2, solution_eq14(need_eps()?)?.states().to_vec(), false),
        "mub4" => (4, 2, mub_states_d4().states().to_vec(), false),
        "large-d" => {
            let d = need_d()?;
            (d, 2, large_d_encoding(d).states().to_vec(), false)
        }
        "qutrit-d4" => (4, 3, qutrit_d4_encoding().states().to_vec(), false),
        "pauli-y" => {
            let d = need_d()?;
            (d, 2, pauli_y_extension(d)?.states().to_vec(), false)
        }
        "prop2" => (
            3,
            2,
            vec![
                PureState::basis_state(2, 0),
                PureState::basis_state(2, 1),
                PureState::qubit(
                    std::f64::consts::FRAC_1_SQRT_2,
                    std::f64::consts::FRAC_1_SQRT_2,
                )?,
            ],
            false,
        ),
        other => return Err(usage(format!("unknown family: {other}"))),
    };
    if n.is_some_and(|req| req != fam_n) {
        return Err(usage(format!("family {family} plays with n = {fam_n}")));
    }
    if d.is_some_and(|req| req != fam_d) {
        return Err(usage(format!("family {family} plays with d = {fam_d}")));
    }
    let spec = GameSpec::new(fam_d, fam_n)?;
    let strat = if fixed_povm {
        let povm = elimination_povm(&encoding)?.povm;
        QuantumStrategy::fixed(encoding, povm)
    } else {
        QuantumStrategy::per_event(encoding)
    };
    Ok((spec, LoadedStrategy::Quantum(strat), family.to_string()))
}

#[derive(Debug, Serialize)]
struct OptimizationRecord<'a> {
    objective: &'a str,
    best_value: f64,
    best_parameters: Vec<(&'a str, f64)>,
    grid_resolution: f64,
    refinement_rounds: usize,
}

fn write_optimization(r: &OptimizationResult, output: Option<&std::path::Path>) -> Result<()> {
    let record = OptimizationRecord {
        objective: r.objective_name,
        best_value: r.best_value,
        best_parameters: r.best_parameters.clone(),
        grid_resolution: r.grid_resolution,
        refinement_rounds: r.refinement_rounds,
    };
    let text = serde_json::to_string_pretty(&record)?;
    match output {
        Some(path) => std::fs::write(path, text.as_bytes() as &[u8])
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => println!("{text}"),
    }
    Ok(())
}
