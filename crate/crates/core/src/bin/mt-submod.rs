use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mt_submod::graph::{parse_graph, GraphFormat};
use mt_submod::harness::{self, ExperimentConfig, VerifyOptions};
use mt_submod::{Error, Result};

#[derive(Parser)]
#[command(name = "mt-submod", version, about = "Classical vs multitasking GSEMO on coverage problems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment and write raw_runs.csv, results.csv and meta.txt.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Worker threads (overrides the config).
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Check that coverage on a graph behaves as expected.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        /// edge-list or matrix-market; guessed from the extension otherwise.
        #[arg(long)]
        format: Option<GraphFormat>,
        #[arg(long, default_value_t = 500)]
        sample: usize,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Recompute the aggregated table from a raw_runs.csv.
    Stats {
        #[arg(long)]
        raw: PathBuf,
        /// Write results.csv here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match dispatch(Cli::parse().command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn dispatch(cmd: Command) -> Result<ExitCode> {
    match cmd {
        Command::Run { config, workers, out } => {
            let mut cfg = ExperimentConfig::from_file(&config)?;
            if workers.is_some() {
                cfg.workers = workers;
            }
            let output = harness::run_experiment(&cfg)?;
            harness::write_outputs(&out, &cfg, &output.records, &output.rows)?;
            eprintln!(
                "{} raw records, {} result rows written to {}",
                output.records.len(),
                output.rows.len(),
                out.display()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { graph, format, sample, trials, seed } => {
            let format = format.unwrap_or_else(|| GraphFormat::from_path(&graph));
            let g = parse_graph(&graph, format)?;
            let opts = VerifyOptions {
                sample_size: sample,
                trials,
                seed,
                ..Default::default()
            };
            let report = harness::verify_graph(&g, &opts)?;
            println!("{report}");
            Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Stats { raw, out } => {
            let file = std::fs::File::open(&raw).map_err(|e| Error::Io { path: raw.clone(), source: e })?;
            let rows = harness::aggregate(&harness::read_raw_records(file)?);
            match out {
                Some(path) => {
                    let file = std::fs::File::create(&path).map_err(|e| Error::Io { path: path.clone(), source: e })?;
                    harness::write_results(std::io::BufWriter::new(file), &rows)?;
                }
                None => {
                    let stdout = std::io::stdout();
                    let mut lock = stdout.lock();
                    harness::write_results(&mut lock, &rows)?;
                    lock.flush().ok();
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
