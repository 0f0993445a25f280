mod commands;
mod datum_file;
mod diagram;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use crate::commands::CliError;
use crate::report::{render, ReportBuilder};

#[derive(Parser, Debug)]
#[command(name = "bralg", version, about = "Exact computations with Bell-Rogalski algebras")]
struct Cli {
    /// Also write the report to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Add wall-clock time to the report (makes it nondeterministic).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the axioms of a datum.
    Validate { file: PathBuf },
    /// Multiply two graded elements, written `[deg]: coeff; ...`.
    Mul {
        file: PathBuf,
        left: String,
        right: String,
        /// Skip re-checking the product's coefficients.
        #[arg(long)]
        no_verify: bool,
    },
    /// Canonical ideal of a degree.
    Ideal {
        file: PathBuf,
        /// Degree vector, e.g. `1,-2`.
        #[arg(long, allow_hyphen_values = true)]
        degree: String,
    },
    /// Simple weight modules supported on the orbit of a point.
    Classify {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, default_value_t = bralg::weight::DEFAULT_WINDOW)]
        window: i64,
    },
    /// Break classes and the box `G_m` of a point.
    Breaks {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, default_value_t = bralg::weight::DEFAULT_WINDOW)]
        window: i64,
    },
    /// Action tables of the simple weight modules through a point.
    ModuleTable {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, default_value_t = bralg::weight::DEFAULT_WINDOW)]
        window: i64,
        #[arg(long, default_value_t = bralg::weight::DEFAULT_DEGREE_BOUND)]
        degree_bound: i64,
        /// Only the descriptor with this 1-based index.
        #[arg(long)]
        index: Option<usize>,
        /// Skip verify_module.
        #[arg(long)]
        no_verify: bool,
    },
    /// Convert to or from a twisted generalized Weyl algebra.
    Tgwa {
        #[command(subcommand)]
        direction: TgwaDirection,
    },
    /// Twisted tensor product of two data.
    Tensor {
        left: PathBuf,
        right: PathBuf,
        /// Twist matrix `[d11, d12; ...]`; all ones when omitted.
        #[arg(long, allow_hyphen_values = true)]
        twist: Option<String>,
        /// Write the product datum to this file.
        #[arg(long)]
        datum_out: Option<PathBuf>,
    },
    /// Fixed ring under `Φ_γ(r t^α) = γ^α φ(r) t^α`.
    FixedRing {
        file: PathBuf,
        /// `{x: image, ...}`
        #[arg(long, allow_hyphen_values = true)]
        phi: String,
        /// One scalar per axis, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        gamma: String,
        #[arg(long)]
        datum_out: Option<PathBuf>,
    },
    /// GK dimension with its hypothesis checklist.
    Gkdim { file: PathBuf },
    /// Simplicity verdict, or the hyperplane condition of one axis.
    Simplicity {
        file: PathBuf,
        #[arg(long, default_value_t = bralg::simplicity::DEFAULT_KMAX)]
        kmax: i64,
        /// Only the hyperplane condition of this 1-based axis.
        #[arg(long)]
        axis: Option<usize>,
        /// Take R to be Γ-simple when no certifier applies.
        #[arg(long)]
        assume_gamma_simple: bool,
    },
    /// Lattice diagram of an orbit window.
    Diagram {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, default_value_t = bralg::weight::DEFAULT_WINDOW)]
        window: i64,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        tikz: Option<PathBuf>,
    },
    /// Check a report file against the report schema.
    CheckReport { file: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum TgwaDirection {
    /// Datum file to TGWA.
    To {
        file: PathBuf,
        #[arg(long)]
        datum_out: Option<PathBuf>,
    },
    /// TGWA file to datum.
    From {
        file: PathBuf,
        #[arg(long)]
        datum_out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let echo: Vec<String> = std::env::args().skip(1).collect();
    let start = Instant::now();
    let mut builder = ReportBuilder::new(&echo);
    let outcome = commands::run(&cli.command, &mut builder);
    let timing = cli.timing.then(|| start.elapsed().as_millis());
    let code = match outcome {
        Ok(()) => match builder.current_status() {
            "fail" => 1,
            _ => 0,
        },
        Err(CliError::Parse { file, error }) => {
            eprintln!("{}: {error}", file.display());
            return ExitCode::from(2);
        }
        Err(CliError::Io(msg)) => {
            eprintln!("{msg}");
            return ExitCode::from(2);
        }
        Err(CliError::Semantic(msg)) => {
            eprintln!("error: {msg}");
            builder.status("error");
            let mut v = builder.finish(timing);
            v["error"] = serde_json::Value::String(msg);
            return emit(&v, cli.out.as_ref()).map_or(ExitCode::from(2), |_| ExitCode::from(1));
        }
    };
    let v = builder.finish(timing);
    match emit(&v, cli.out.as_ref()) {
        Ok(()) => ExitCode::from(code),
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
    }
}

fn emit(v: &serde_json::Value, out: Option<&PathBuf>) -> Result<(), String> {
    let text = render(v);
    print!("{text}");
    if let Some(path) = out {
        std::fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    Ok(())
}
