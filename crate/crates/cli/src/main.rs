//! `omk` — exact orbifold/McKay invariants of finite linear group quotients
//! and stringy invariants of normal-crossing pairs.

use clap::{Args, Parser, Subcommand};
use omk_cli::{run_job, CliError, Job};
use omk_core::matgroup::DEFAULT_CLOSURE_CAP;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "omk",
    version,
    about = "Exact twisted-sector, McKay and stringy invariant computations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Twisted-sector table of [C^d/G]: ages, shifts, fixed dimensions
    Sectors(JobArgs),
    /// Betti-table counts of conjugacy classes by age
    Mckay(JobArgs),
    /// Discrepancy of C^d/G for reflection-free nontrivial G
    Discrepancy(JobArgs),
    /// Orbifold motivic weight: sum over sectors of L^(d - age)
    OrbifoldWeight(JobArgs),
    /// Stringy invariant and KLT verdict of a normal-crossing pair file
    Stringy(JobArgs),
}

#[derive(Args)]
struct JobArgs {
    /// Input document (JSON)
    file: PathBuf,
    /// Emit the machine-readable JSON document instead of the plain table
    #[arg(long)]
    json: bool,
    /// Cap on the number of group elements a closure may reach
    /// (overrides the OMK_CAP environment variable; default 100000)
    #[arg(long)]
    cap: Option<usize>,
}

fn effective_cap(args: &JobArgs) -> Result<usize, CliError> {
    if let Some(cap) = args.cap {
        return Ok(cap);
    }
    match std::env::var("OMK_CAP") {
        Ok(text) => text
            .parse()
            .map_err(|_| CliError::invalid_spec(format!("OMK_CAP is not a number: {text:?}"))),
        Err(_) => Ok(DEFAULT_CLOSURE_CAP),
    }
}

fn run(job: Job, args: &JobArgs) -> Result<(), CliError> {
    let cap = effective_cap(args)?;
    let result = run_job(job, &args.file, cap)?;
    if args.json {
        print!("{}", result.to_json());
    } else {
        print!("{}", result.render_human());
    }
    Ok(())
}

fn main() {
    let cli = Cli::parse();
    let (job, args) = match &cli.command {
        Command::Sectors(a) => (Job::Sectors, a),
        Command::Mckay(a) => (Job::McKay, a),
        Command::Discrepancy(a) => (Job::Discrepancy, a),
        Command::OrbifoldWeight(a) => (Job::OrbifoldWeight, a),
        Command::Stringy(a) => (Job::Stringy, a),
    };
    if let Err(err) = run(job, args) {
        if args.json {
            println!("{}", error_document(&err));
        }
        eprintln!("error: {err}");
        std::process::exit(err.exit_code);
    }
}

fn error_document(err: &CliError) -> String {
    #[derive(serde::Serialize)]
    struct ErrorBody<'a> {
        code: &'a str,
        message: &'a str,
    }
    #[derive(serde::Serialize)]
    struct ErrorDoc<'a> {
        schema: &'a str,
        error: ErrorBody<'a>,
    }
    serde_json::to_string_pretty(&ErrorDoc {
        schema: omk_cli::loader::SCHEMA,
        error: ErrorBody {
            code: err.code,
            message: &err.message,
        },
    })
    .unwrap()
}
