use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use brauer_core::certify::{audit, run, Pipeline, RunOptions, DEFAULT_BUDGET};
use clap::{Args, Parser, Subcommand};

/// Emit JSON certificates for Brauer-class computations.
#[derive(Parser)]
#[command(name = "brauer-certify", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Period-index certificate for a tame symbol class on a plane curve.
    Noncyclic(RunArgs),
    /// Br(X)[n] for a curve with smooth special fiber, computed two ways.
    Goodred(RunArgs),
    /// Index bounds and indecomposability for a period p^2 class.
    Indec(RunArgs),
    /// Br(E_q)[m] for a Tate curve with cyclicity certificates.
    Tate(RunArgs),
    /// Exact checks of the truncated-exponential lifting identities.
    #[command(name = "ss-verify")]
    SsVerify(RunArgs),
    /// Re-derive the conclusion of a certificate and compare it with the stated one.
    Audit {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Args)]
struct RunArgs {
    /// TOML input file.
    #[arg(long)]
    input: PathBuf,
    /// Where to write the JSON certificate.
    #[arg(long)]
    out: PathBuf,
    /// Work budget for enumerations.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
    /// Seed for pseudorandom choices.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn certify(pipeline: Pipeline, args: &RunArgs) -> Result<u8, String> {
    let text = fs::read_to_string(&args.input).map_err(|e| format!("reading {}: {e}", args.input.display()))?;
    let opts = RunOptions { budget: args.budget, seed: args.seed };
    log::info!("{pipeline}: input {}", args.input.display());
    let cert = run(pipeline, &text, &opts).map_err(|e| format!("parsing {}: {e}", args.input.display()))?;
    fs::write(&args.out, cert.canonical()).map_err(|e| format!("writing {}: {e}", args.out.display()))?;
    match (&cert.conclusion, &cert.failure) {
        (Some(c), _) => log::info!("{c}"),
        (None, Some(f)) => log::warn!("{} at {}: {}", f.code, f.check, f.detail),
        (None, None) => {}
    }
    log::info!("wrote {}", args.out.display());
    Ok(cert.exit_code() as u8)
}

fn audit_file(path: &PathBuf) -> Result<u8, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("reading {}: {e}", path.display()))?;
    let v: serde_json::Value = serde_json::from_str(&text).map_err(|e| format!("parsing {}: {e}", path.display()))?;
    match audit(&v) {
        Ok(()) => {
            log::info!("conclusion re-derived: {}", v["conclusion"]);
            Ok(0)
        }
        Err(e) => {
            log::error!("{e}");
            Ok(1)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).target(env_logger::Target::Stderr).init();
    let cli = Cli::parse();
    let result = match &cli.cmd {
        Cmd::Noncyclic(a) => certify(Pipeline::Noncyclic, a),
        Cmd::Goodred(a) => certify(Pipeline::Goodred, a),
        Cmd::Indec(a) => certify(Pipeline::Indec, a),
        Cmd::Tate(a) => certify(Pipeline::Tate, a),
        Cmd::SsVerify(a) => certify(Pipeline::SsVerify, a),
        Cmd::Audit { input } => audit_file(input),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            log::error!("{e}");
            ExitCode::from(2)
        }
    }
}
