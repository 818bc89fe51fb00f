use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};

use pshi_cli::{
    load_inputs, run_compute, run_report, run_verify, threads_from_env, to_json, CliError, CliResult, IdealDocument,
    Query, Suite, VerifyOptions,
};
use pshi_core::rational::parse_rational;

#[derive(Parser)]
#[command(name = "pshi", version, about = "Singularity invariants of monomial ideals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Invariant report for an ideal file or a directory of them.
    Report {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        pretty: bool,
    },
    /// Run a verification suite over a seeded corpus.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 8)]
        max_gens: u32,
        #[arg(long, default_value_t = 6)]
        max_exp: u32,
        /// Degree bound for the monomial germs of the theorem2 suite.
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Print a single invariant.
    #[command(group(ArgGroup::new("query").required(true).args(["lct", "ck", "ek", "mixed"])))]
    Compute {
        #[arg(long, allow_hyphen_values = true)]
        lct: Option<String>,
        #[arg(long)]
        ck: Option<usize>,
        #[arg(long)]
        ek: Option<usize>,
        #[arg(long)]
        mixed: bool,
        #[arg(long, num_args = 1.., required = true)]
        input: Vec<PathBuf>,
    },
}

fn emit(text: &str) -> CliResult<()> {
    std::io::stdout().lock().write_all(text.as_bytes()).map_err(|e| CliError::Check(format!("stdout: {e}")))
}

fn run(cli: Cli) -> CliResult<()> {
    let threads = threads_from_env()?;
    match cli.command {
        Command::Report { input, pretty } => emit(&run_report(&input, pretty, threads)?),
        Command::Verify { suite, seed, count, n, max_gens, max_exp, degree } => {
            let opts = VerifyOptions {
                suite: suite.parse::<Suite>()?,
                seed,
                count,
                n,
                max_generators: max_gens,
                max_exponent: max_exp,
                degree,
            };
            let outcome = run_verify(&opts, threads)?;
            emit(&outcome.jsonl())?;
            eprintln!("{suite}: {}", outcome.summary());
            match outcome.first_failure() {
                None => Ok(()),
                Some(f) => Err(CliError::Check(format!("first failure: {}", to_json(&f, false)))),
            }
        }
        Command::Compute { lct, ck, ek, mixed, input } => {
            let query = match (lct, ck, ek) {
                (Some(t), _, _) => Query::Lct(parse_rational(&t)?),
                (_, Some(k), _) => Query::Ck(k),
                (_, _, Some(k)) => Query::Ek(k),
                _ => {
                    debug_assert!(mixed);
                    Query::Mixed
                }
            };
            let mut docs: Vec<IdealDocument> = Vec::new();
            for path in &input {
                docs.extend(load_inputs(path)?.into_iter().map(|(_, d)| d));
            }
            emit(&(run_compute(&query, &docs)? + "\n"))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
