use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use hord_core::runner::{run_scene, RunOptions};
use hord_core::scene::{parse_scene, Command};
use hord_core::trace::{canonical_text, verify_trace};

/// Run scene scripts: orders, slopes, H-function values, blowup towers and
/// the monomial case, as canonical JSON traces.
#[derive(Parser)]
#[command(name = "hord", version)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Execute the scene's script.
    Run(Opts),
    /// Run the script, then attach the monomial algebra of the tower.
    MonomialTrack(Opts),
    /// Run the script, then test the strong monomial case.
    StrongCheck(Opts),
    /// Run the script, then resolve combinatorially and lift.
    Resolve(Opts),
}

#[derive(Args)]
struct Opts {
    #[arg(long)]
    scene: PathBuf,
    /// Write the trace here instead of stdout.
    #[arg(long)]
    trace_out: Option<PathBuf>,
    /// Compare the trace against a golden trace.
    #[arg(long)]
    verify: Option<PathBuf>,
    #[arg(long)]
    max_normalize_iters: Option<usize>,
    /// Degree m of F_{p^m} for the brute-force τ check.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=3))]
    tau_oracle_field_extension: Option<u32>,
}

const EXIT_COMMAND: u8 = 1;
const EXIT_PARSE: u8 = 2;

fn execute(opts: &Opts, extra: Option<Command>) -> Result<u8> {
    let text = match fs::read_to_string(&opts.scene) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", opts.scene.display());
            return Ok(EXIT_PARSE);
        }
    };
    let scene = match parse_scene(&text) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {}: {e}", opts.scene.display());
            return Ok(EXIT_PARSE);
        }
    };
    let run_opts = RunOptions {
        max_normalize_iters: opts.max_normalize_iters,
        tau_oracle_extension: opts.tau_oracle_field_extension,
    };
    let out = run_scene(&scene, &run_opts, extra.as_ref());
    let trace = canonical_text(&out.trace);
    match &opts.trace_out {
        Some(path) => fs::write(path, &trace).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{trace}"),
    }
    let mut code = 0;
    if out.errors > 0 {
        eprintln!("error: {} command(s) failed", out.errors);
        code = EXIT_COMMAND;
    }
    if let Some(golden) = &opts.verify {
        let g = fs::read_to_string(golden).with_context(|| format!("reading {}", golden.display()))?;
        match verify_trace(&trace, &g) {
            Ok(()) => eprintln!("trace matches {}", golden.display()),
            Err(e) => {
                eprintln!("error: {e}");
                code = EXIT_COMMAND;
            }
        }
    }
    Ok(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (opts, extra) = match &cli.command {
        Sub::Run(o) => (o, None),
        Sub::MonomialTrack(o) => (o, Some(Command::MonomialTrack)),
        Sub::StrongCheck(o) => (o, Some(Command::StrongCheck(Vec::new()))),
        Sub::Resolve(o) => (o, Some(Command::Resolve)),
    };
    match execute(opts, extra) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_COMMAND)
        }
    }
}
