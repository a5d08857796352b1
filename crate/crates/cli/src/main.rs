//! menonkit: evaluate arithmetic functions, verify gcd/lcm identities
//! over parameter ranges, and emit machine-readable sweep tables.
//!
//! Exit codes: 0 = success / all reports equal, 1 = at least one identity
//! mismatch, 2 = usage or I/O error.

mod eval;
mod jobs;
mod ranges;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num::bigint::BigInt;
use rayon::prelude::*;

use menonkit_core::arith::factorize;
use menonkit_core::identities::Guard;
use menonkit_core::report::IdentityReport;

use jobs::{build_job, Job, ParamFlags};

#[derive(Parser)]
#[command(
    name = "menonkit",
    version,
    about = "Exact verification of Menon-type gcd/lcm identities"
)]
struct Cli {
    /// Refuse brute-force evaluations above this many loop iterations.
    #[arg(long, global = true, default_value_t = 100_000_000)]
    guard_limit: u64,

    /// Worker threads for point evaluation (report order is unchanged).
    #[arg(long, global = true, default_value_t = 1)]
    parallel: usize,

    /// Seed for sampled parameter generation.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Stop after the first mismatching report.
    #[arg(long, global = true)]
    fail_fast: bool,

    /// Include wall-clock timings in JSONL reports. Off by default so
    /// repeated runs are byte-identical.
    #[arg(long, global = true)]
    timings: bool,

    /// Test hook: corrupt every closed-form value by +1.
    #[arg(long, global = true, hide = true)]
    corrupt_rhs: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one function and print its exact decimal value.
    #[command(after_help = eval::EVAL_USAGE)]
    Eval {
        function: String,
        /// Function arguments; polynomial coefficients may start with '-'.
        #[arg(allow_hyphen_values = true)]
        args: Vec<String>,
    },

    /// Check one identity over a parameter set; JSONL reports on stdout.
    Verify {
        /// One of: menon, sivaramakrishnan, pillai, lkq, theorem_main,
        /// theorem_g, gk_hk, menon_f, lcm_w, lcm_equal, lemma,
        /// s_multiplicativity.
        identity: String,
        #[command(flatten)]
        params: ParamFlags,
    },

    /// Write one row per parameter point (params, lhs, rhs, equal).
    Sweep {
        identity: String,
        #[command(flatten)]
        params: ParamFlags,
        #[arg(long, value_enum, default_value_t = OutputFormat::Jsonl)]
        format: OutputFormat,
        /// Output file; stdout when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
    },

    /// Print the prime-power factorization of n.
    Factor { n: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Csv,
    Jsonl,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let guard = Guard::new(cli.guard_limit);
    match &cli.command {
        Command::Eval { function, args } => {
            let line = eval::run_eval(function, args).map_err(|e| e.to_string())?;
            println!("{line}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Factor { n } => {
            let f = factorize(*n).map_err(|e| e.to_string())?;
            println!("{n} = {f}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { identity, params } => {
            let job = build_job(identity, params, cli.seed).map_err(|e| e.to_string())?;
            let stdout = io::stdout();
            let mut out = BufWriter::new(stdout.lock());
            let all_equal = run_job(&cli, &job, &guard, |report| {
                writeln!(out, "{}", report.to_json(cli.timings))
            })?;
            out.flush().map_err(|e| e.to_string())?;
            Ok(if all_equal {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Sweep {
            identity,
            params,
            format,
            output,
        } => {
            let job = build_job(identity, params, cli.seed).map_err(|e| e.to_string())?;
            let sink: Box<dyn Write> = match output {
                Some(path) => Box::new(BufWriter::new(
                    File::create(path)
                        .map_err(|e| format!("cannot write {}: {e}", path.display()))?,
                )),
                None => Box::new(BufWriter::new(io::stdout())),
            };
            let all_equal = match format {
                OutputFormat::Jsonl => {
                    let mut out = sink;
                    let ok = run_job(&cli, &job, &guard, |report| {
                        writeln!(out, "{}", report.to_json(cli.timings))
                    })?;
                    out.flush().map_err(|e| e.to_string())?;
                    ok
                }
                OutputFormat::Csv => {
                    let mut writer = csv::Writer::from_writer(sink);
                    writer
                        .write_record(["identity", "params", "lhs", "rhs", "equal"])
                        .map_err(|e| e.to_string())?;
                    let ok = run_job(&cli, &job, &guard, |report| {
                        writer
                            .write_record([
                                report.identity_id.as_str(),
                                &report.params_string(),
                                &report.lhs.to_string(),
                                &report.rhs.to_string(),
                                if report.equal { "true" } else { "false" },
                            ])
                            .map_err(io::Error::other)
                    })?;
                    writer.flush().map_err(|e| e.to_string())?;
                    ok
                }
            };
            Ok(if all_equal {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

/// Evaluates every point of the job, emitting reports in generation order
/// regardless of worker count. Returns whether all reports were equal.
fn run_job(
    cli: &Cli,
    job: &Job,
    guard: &Guard,
    mut emit: impl FnMut(&IdentityReport) -> io::Result<()>,
) -> Result<bool, String> {
    let total = job.len();
    let chunk_size = 64.max(cli.parallel * 8);
    let pool = (cli.parallel > 1)
        .then(|| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(cli.parallel)
                .build()
        })
        .transpose()
        .map_err(|e| e.to_string())?;

    let mut all_equal = true;
    let mut start = 0;
    while start < total {
        let end = (start + chunk_size).min(total);
        let results: Vec<menonkit_core::Result<IdentityReport>> = match &pool {
            Some(pool) => pool.install(|| {
                (start..end)
                    .into_par_iter()
                    .map(|i| job.eval(i, guard))
                    .collect()
            }),
            None => (start..end).map(|i| job.eval(i, guard)).collect(),
        };
        for result in results {
            let mut report = result.map_err(|e| e.to_string())?;
            if cli.corrupt_rhs {
                let corrupted = &report.rhs + BigInt::from(1);
                report = report.with_rhs(corrupted);
            }
            emit(&report).map_err(|e| e.to_string())?;
            if !report.equal {
                all_equal = false;
                if cli.fail_fast {
                    return Ok(false);
                }
            }
        }
        start = end;
    }
    Ok(all_equal)
}
