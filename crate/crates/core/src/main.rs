use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use smallcuts::construction::build_instance;
use smallcuts::cuts::BRUTE_FORCE_MAX_NODES;
use smallcuts::io::pipeline::{reduce_report, run_verify, PipelineError};
use smallcuts::io::{dot, lp, InstanceDoc, Strategy, VerifyOptions};

const EXIT_CERT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "smallcuts",
    version,
    about = "Build and certify Cover-Small-Cuts instances with an all-1/k basic solution"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenFormat {
    Json,
    DotCapgraph,
    DotLinks,
}

#[derive(Subcommand)]
enum Command {
    /// Write the instance as JSON or as a Graphviz drawing.
    Gen {
        #[arg(short = 'k')]
        k: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: GenFormat,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate small cuts, certify x*, and emit the certificate.
    Verify {
        #[arg(short = 'k')]
        k: usize,
        #[arg(long, value_enum, default_value = "flow")]
        strategy: Strategy,
        /// Also run this many random contraction trials.
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Node limit for exhaustive enumeration.
        #[arg(long, default_value_t = BRUTE_FORCE_MAX_NODES)]
        max_brute_nodes: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replay the row operations on the Q-rows of A.
    Reduce {
        #[arg(short = 'k')]
        k: usize,
        /// Emit the traces as JSON instead of text.
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the LP relaxation in CPLEX LP format.
    ExportLp {
        #[arg(short = 'k')]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<(), String> {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn run(cli: Cli) -> ExitCode {
    match cli.command {
        Command::Gen { k, format, out } => {
            let inst = match build_instance(k) {
                Ok(i) => i,
                Err(e) => return usage(e),
            };
            let text = match format {
                GenFormat::Json => InstanceDoc::from(&inst).to_json() + "\n",
                GenFormat::DotCapgraph => dot::capgraph_dot(&inst),
                GenFormat::DotLinks => dot::links_dot(&inst),
            };
            match emit(out.as_ref(), &text) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => usage(e),
            }
        }
        Command::ExportLp { k, out } => {
            let inst = match build_instance(k) {
                Ok(i) => i,
                Err(e) => return usage(e),
            };
            match emit(out.as_ref(), &lp::write_lp(&inst)) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => usage(e),
            }
        }
        Command::Verify {
            k,
            strategy,
            trials,
            seed,
            max_brute_nodes,
            out,
        } => {
            let opts = VerifyOptions {
                strategy,
                trials,
                seed,
                brute_guard: max_brute_nodes,
            };
            let start = Instant::now();
            let mut doc = match run_verify(k, &opts) {
                Ok(d) => d,
                Err(e @ (PipelineError::Build(_) | PipelineError::Cut(_))) => return usage(e),
                Err(e) => {
                    eprintln!("certification failed: {e}");
                    return ExitCode::from(EXIT_CERT_FAILURE);
                }
            };
            doc.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
            if let Err(e) = emit(out.as_ref(), &(doc.to_json() + "\n")) {
                return usage(e);
            }
            if doc.ok {
                eprintln!(
                    "k = {k}: x* is a basic solution; max coordinate {} < 1/2",
                    doc.certificate.max_coordinate
                );
                ExitCode::SUCCESS
            } else {
                let first = doc.certificate.first_failure().unwrap_or("unknown verdict");
                eprintln!("k = {k}: certification failed: {first}");
                ExitCode::from(EXIT_CERT_FAILURE)
            }
        }
        Command::Reduce { k, trace, out } => {
            let (text, traces) = match reduce_report(k) {
                Ok(r) => r,
                Err(e @ PipelineError::Build(_)) => return usage(e),
                Err(e) => {
                    eprintln!("reduction failed: {e}");
                    return ExitCode::from(EXIT_CERT_FAILURE);
                }
            };
            let body = if trace {
                serde_json::to_string_pretty(&traces).expect("traces serialize") + "\n"
            } else {
                text
            };
            match emit(out.as_ref(), &body) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => usage(e),
            }
        }
    }
}

fn main() -> ExitCode {
    run(Cli::parse())
}
