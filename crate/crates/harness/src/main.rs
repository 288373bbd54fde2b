use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use agemoa::config::{ExperimentConfig, Overrides};
use agemoa::records::read_records;
use agemoa::stats::{format_table, summarize};
use agemoa::{
    aging_hypothesis_holds, presets, run_experiment, run_experiment_to, verify, Algorithm,
};
use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

/// Runtime experiments for the SMS-EMOA population-update rules on
/// OneJumpZeroJump benchmarks.
#[derive(Parser)]
#[command(name = "agemoa", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiment described by a config file.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Run a built-in sweep (fig2 or fig3).
    Sweep {
        preset: String,
        #[command(flatten)]
        common: Common,
    },
    /// Print per-cell statistics of a results CSV.
    Summarize { csv: PathBuf },
    /// Run the verification suite; exits nonzero if any check fails.
    Verify {
        /// Also run the runtime comparisons (slow).
        #[arg(long)]
        full: bool,
        #[arg(long, default_value_t = default_threads())]
        threads: usize,
        #[arg(long, default_value_t = presets::DEFAULT_MASTER_SEED)]
        seed: u64,
        /// Directory for the determinism check's CSV files.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Common {
    /// CSV destination; existing rows are kept and their runs skipped.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = default_threads())]
    threads: usize,
    /// Master seed.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    max_iterations: Option<u64>,
    /// Runs per cell.
    #[arg(long)]
    runs: Option<usize>,
}

fn default_threads() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn execute(mut config: ExperimentConfig, common: &Common) -> Result<()> {
    config.apply(&Overrides {
        output: common.out.clone(),
        master_seed: common.seed,
        max_iterations: common.max_iterations,
        runs: common.runs,
    });
    let cells = config.cells()?;
    for cell in cells.iter().filter(|c| c.algorithm == Algorithm::Aging) {
        let tau = cell.tau.unwrap_or(0);
        if !aging_hypothesis_holds(&cell.spec, cell.mu, tau) {
            eprintln!(
                "warning: {}: mu = {} is below the bound + 1 + tau (tau = {tau}); aging may lose front points",
                cell.spec, cell.mu
            );
        }
    }
    let total = cells.len() * config.runs;
    let records = match &config.output {
        Some(path) => {
            let mut done = 0;
            let records = run_experiment_to(&config, path, common.threads, |r| {
                done += 1;
                eprintln!(
                    "[{done}] {} n={} run {}: {} evaluations{}",
                    r.algorithm,
                    r.n,
                    r.run,
                    r.evaluations,
                    if r.covered_all { "" } else { " (cap reached)" }
                );
            })?;
            eprintln!("{} of {total} runs in {}", records.len(), path.display());
            records
        }
        None => {
            let records = run_experiment(&config, common.threads)?;
            agemoa::records::write_records(io::stdout().lock(), &records)?;
            records
        }
    };
    eprint!("{}", format_table(&summarize(&records)));
    Ok(())
}

fn summarize_file(path: &Path) -> Result<()> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let records = read_records(file).map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))?;
    if records.is_empty() {
        bail!("{}: no records", path.display());
    }
    let summaries = summarize(&records);
    let mut out = io::stdout().lock();
    out.write_all(format_table(&summaries).as_bytes())?;
    if summaries.iter().any(|s| s.flagged()) {
        eprintln!("warning: some cells have no successful run");
    }
    Ok(())
}

fn run_verify(full: bool, threads: usize, seed: u64, out: Option<PathBuf>) -> Result<bool> {
    let tmp;
    let dir = match out {
        Some(dir) => {
            std::fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
            dir
        }
        None => {
            tmp = std::env::temp_dir().join(format!("agemoa-verify-{}", std::process::id()));
            std::fs::create_dir_all(&tmp)?;
            tmp
        }
    };
    let outcomes = if full {
        verify::full_suite(&dir, seed, threads)
    } else {
        verify::quick_suite(&dir, seed)
    };
    for o in &outcomes {
        println!("{}", o.line());
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    println!("{} checks, {failed} failed", outcomes.len());
    Ok(failed == 0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run { config, common } => ExperimentConfig::from_file(&config)
            .map_err(Into::into)
            .and_then(|c| execute(c, &common)),
        Command::Sweep { preset, common } => match presets::by_name(&preset) {
            Some(config) => execute(config, &common),
            None => Err(anyhow::anyhow!(
                "unknown preset {preset:?} (expected fig2 or fig3)"
            )),
        },
        Command::Summarize { csv } => summarize_file(&csv),
        Command::Verify {
            full,
            threads,
            seed,
            out,
        } => match run_verify(full, threads, seed, out) {
            Ok(true) => Ok(()),
            Ok(false) => return ExitCode::FAILURE,
            Err(e) => Err(e),
        },
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
