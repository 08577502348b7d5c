use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use symtensor::{SectorKind, TensorMap};
use symtensor_bench::{heisenberg_fixture, run, run_consistency, BenchConfig, BenchError, Workload};

#[derive(Parser)]
#[command(name = "symtensor", version, about = "Benchmarks and checks for symmetric tensor maps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Time a DMRG kernel and record its FLOP ledger.
    Bench {
        #[arg(long, default_value = "two_site")]
        workload: Workload,
        #[arg(long)]
        sector: String,
        #[arg(long)]
        physical: String,
        /// Space string or `@fixture.json`.
        #[arg(long = "virtual")]
        virtual_space: String,
        #[arg(long)]
        mpo: String,
        #[arg(long, default_value_t = 5)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Dispatch blocks to worker threads.
        #[arg(long)]
        parallel: bool,
        #[arg(long, default_value_t = 1.0)]
        max_label: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Per-repetition times as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Coherence and dense-oracle checks for one sector.
    Check {
        #[arg(long)]
        sector: String,
        #[arg(long, default_value_t = 1.0)]
        max_label: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Convert a tensor between the JSON and binary formats; the direction
    /// follows the input's leading bytes.
    Convert { input: PathBuf, output: PathBuf },
    /// Print the Heisenberg fixture for one total dimension.
    Fixture {
        #[arg(long)]
        dim: usize,
    },
}

fn config_err(e: impl ToString) -> BenchError {
    BenchError::Config(e.to_string())
}

fn write(path: &PathBuf, data: &[u8]) -> Result<(), BenchError> {
    std::fs::write(path, data).map_err(|e| config_err(format!("cannot write {}: {e}", path.display())))
}

fn main_inner(cli: Cli) -> Result<(), BenchError> {
    match cli.command {
        Command::Bench { workload, sector, physical, virtual_space, mpo, reps, seed, parallel, max_label, out, csv } => {
            let cfg = BenchConfig { sector, physical, virtual_space, mpo, repetitions: reps, seed, workload, parallel, max_label };
            let result = run(&cfg)?;
            let json = serde_json::to_string_pretty(&result).expect("result serializes");
            match out {
                Some(p) => write(&p, json.as_bytes())?,
                None => println!("{json}"),
            }
            if let Some(p) = csv {
                write(&p, result.to_csv().as_bytes())?;
            }
            if !result.passed() {
                return Err(BenchError::Correctness("consistency checks failed".into()));
            }
        }
        Command::Check { sector, max_label, seed } => {
            let kind: SectorKind = sector.parse().map_err(config_err)?;
            let lines = run_consistency(&kind, max_label, seed).map_err(config_err)?;
            for l in &lines {
                println!(
                    "{:<20} {} residual {:.3e} (tol {:.0e}, {} cases)",
                    l.check,
                    if l.passed { "ok  " } else { "FAIL" },
                    l.max_residual,
                    l.tolerance,
                    l.cases
                );
            }
            if lines.iter().any(|l| !l.passed) {
                return Err(BenchError::Correctness(format!("{kind} failed consistency checks")));
            }
        }
        Command::Convert { input, output } => {
            let bytes = std::fs::read(&input).map_err(|e| config_err(format!("cannot read {}: {e}", input.display())))?;
            if bytes.starts_with(b"STNS") {
                let t = TensorMap::from_binary(&bytes).map_err(config_err)?;
                write(&output, t.to_json().as_bytes())?;
            } else {
                let text = String::from_utf8(bytes).map_err(|_| config_err("input is neither binary nor UTF-8 JSON"))?;
                let t = TensorMap::from_json(&text).map_err(config_err)?;
                write(&output, &t.to_binary())?;
            }
        }
        Command::Fixture { dim } => {
            let f = heisenberg_fixture(dim).map_err(config_err)?;
            println!("{}", serde_json::to_string_pretty(&f).expect("fixture serializes"));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match main_inner(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
