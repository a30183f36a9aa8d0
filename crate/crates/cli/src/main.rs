//! `calibra` — batch driver for comass reports, calibrated-example
//! verification, mass-minimizing chain solves, density estimates, and cycle
//! filling. One command per process; every command prints a single JSON
//! document on stdout (or CSV with `--csv`, or to a file with `--output`).
//!
//! Exit codes: 0 success · 1 malformed input or failed verification ·
//! 2 infeasible cycle · 3 uniqueness probe ended without a verdict.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use calibra_cli::{
    cmd_comass, cmd_density, cmd_fill, cmd_plateau, cmd_verify, exit_code_for, ComassArgs,
    DensityArgs, FillArgs, PlateauArgs, VerifyArgs,
};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "calibra",
    version,
    about = "Comass, calibration checks, and mass-minimizing chains on simplicial complexes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write the report to this file instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,

    /// Emit the report as JSON (the default; kept for explicit scripting)
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,

    /// Emit the command's main table as CSV instead of the JSON report
    #[arg(long, global = true)]
    csv: bool,

    /// Suppress progress notes on stderr
    #[arg(long, global = true)]
    quiet: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Comass of a catalog form over sampled points of its region
    Comass {
        /// Form id: volume | kahler | kahler-power:<p> | slag-re |
        /// coassociative | graph:affine:<a1,a2,..> | graph:scherk |
        /// scale:<c>:<id>
        form_id: String,
        /// Seed for the sample draw and the Grassmannian optimizer restarts
        #[arg(long)]
        seed: u64,
        /// Degree for the dimension-parametric families
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Ambient dimension for the dimension-parametric families
        #[arg(long, default_value_t = 4)]
        dim: usize,
        /// Phase for the special Lagrangian family
        #[arg(long, default_value_t = 0.0)]
        theta: f64,
        /// Sample points (a constant field is evaluated once)
        #[arg(long, default_value_t = 12)]
        samples: usize,
        /// Optimizer restarts per point
        #[arg(long, default_value_t = 64)]
        restarts: usize,
        /// Optimizer iterations per restart
        #[arg(long, default_value_t = 200)]
        iters: usize,
    },
    /// Verify a named calibrated example (residual, defect, cousin pairings)
    Verify {
        /// Example id: loc | scherk | affine-tilted | affine:<list> |
        /// slag-quadratic:<list> | holomorphic:<poly in z> | simons
        example_id: String,
        /// Sample points per check
        #[arg(long, default_value_t = 40)]
        samples: usize,
        /// Seed for the sample draw
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        /// Pass/fail threshold for the residual and defect checks
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Solve a mass-minimization instance from a file
    Plateau {
        /// Instance file: complex schema plus k and a boundary chain
        instance: PathBuf,
        /// Probe minimizer uniqueness with this many perturbed re-solves
        #[arg(long, value_name = "N")]
        probe: Option<usize>,
        /// Compare against exhaustive enumeration (small instances only)
        #[arg(long)]
        oracle: bool,
        /// Verify this cochain certificate against the minimizers found
        #[arg(long, value_name = "PATH")]
        certificate: Option<PathBuf>,
        /// Seed for the probe perturbations
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
    /// Mass ratio of a chain in shrinking balls around a point
    Density {
        /// Chain file: complex schema plus a chain member
        chain: PathBuf,
        /// Center point, comma-separated coordinates
        #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
        point: Vec<f64>,
        /// Ball radii, comma-separated
        #[arg(long, value_delimiter = ',', required = true)]
        radii: Vec<f64>,
    },
    /// Fill a cycle with a chain one degree up (feasibility, not minimality)
    Fill {
        /// Chain file: complex schema plus a chain member
        chain: PathBuf,
    },
}

fn now_unix() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

fn emit(cli: &Cli, mut json: serde_json::Value, csv: &[String]) {
    let body = if cli.csv {
        let mut text = csv.join("\n");
        text.push('\n');
        text
    } else {
        json["timestamp_unix"] = serde_json::json!(now_unix());
        let mut text = serde_json::to_string_pretty(&json).expect("report serialization");
        text.push('\n');
        text
    };
    match &cli.output {
        None => {
            print!("{body}");
            std::io::stdout().flush().ok();
        }
        Some(path) => {
            if let Err(e) = std::fs::write(path, body) {
                eprintln!("calibra: cannot write {}: {e}", path.display());
                std::process::exit(calibra_cli::EXIT_BAD_INPUT);
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let note = |msg: &str| {
        if !cli.quiet {
            eprintln!("calibra: {msg}");
        }
    };

    let result = match &cli.command {
        Command::Comass { form_id, seed, k, dim, theta, samples, restarts, iters } => {
            note(&format!("comass of {form_id} over {samples} sample points"));
            cmd_comass(&ComassArgs {
                form_id: form_id.clone(),
                k: *k,
                dim: *dim,
                theta: *theta,
                samples: *samples,
                restarts: *restarts,
                iters: *iters,
                seed: *seed,
            })
        }
        Command::Verify { example_id, samples, seed, tol } => {
            note(&format!("verifying {example_id}"));
            cmd_verify(&VerifyArgs {
                example_id: example_id.clone(),
                samples: *samples,
                seed: *seed,
                tol: *tol,
            })
        }
        Command::Plateau { instance, probe, oracle, certificate, seed } => {
            note(&format!("solving {}", instance.display()));
            cmd_plateau(&PlateauArgs {
                instance_path: instance.display().to_string(),
                probe: *probe,
                oracle: *oracle,
                certificate_path: certificate.as_ref().map(|p| p.display().to_string()),
                seed: *seed,
            })
        }
        Command::Density { chain, point, radii } => {
            note(&format!("density of {}", chain.display()));
            cmd_density(&DensityArgs {
                chain_path: chain.display().to_string(),
                point: point.clone(),
                radii: radii.clone(),
            })
        }
        Command::Fill { chain } => {
            note(&format!("filling {}", chain.display()));
            cmd_fill(&FillArgs { chain_path: chain.display().to_string() })
        }
    };

    match result {
        Ok(report) => {
            emit(&cli, report.json, &report.csv);
            ExitCode::from(report.exit as u8)
        }
        Err(err) => {
            let exit = exit_code_for(&err);
            let doc = serde_json::json!({ "error": err.to_string(), "exit": exit });
            emit(&cli, doc, &["error".to_string(), err.to_string()]);
            ExitCode::from(exit as u8)
        }
    }
}
