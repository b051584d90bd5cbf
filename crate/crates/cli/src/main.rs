//! `finsigma`: run identity scripts, mine counterexamples, list atoms and run
//! the built-in verification suite.
//!
//! Exit codes: 0 when everything holds, 1 on a counterexample or failed
//! check, 2 on usage, file, parse or type errors.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use finsigma::dsl::{self, default_max_size, mine, run_checks, MineOptions, SearchMode};
use finsigma::report::{mine_json, render_atoms_text, render_check_text, render_mine_text};
use finsigma::verify::run_suite;

#[derive(Parser)]
#[command(name = "finsigma", version, about = "Finite σ-algebra calculus")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate every check under the script's `let` assignments.
    Check { file: PathBuf },
    /// Search for counterexamples to every check.
    Mine {
        file: PathBuf,
        /// Largest size tried for spaces holding free variables
        /// [default: largest such declared size].
        #[arg(long = "max-ground", value_name = "N")]
        max_ground: Option<usize>,
        #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
        mode: Mode,
        /// Seed for random mode (required there).
        #[arg(long)]
        seed: Option<u64>,
        /// Assignment cap (exhaustive) or trial count (random, default 1000).
        #[arg(long, value_name = "K")]
        limit: Option<u64>,
        /// One JSON object per check, one per line.
        #[arg(long)]
        json: bool,
        /// Search threads; output does not depend on this.
        #[arg(long, value_name = "W", default_value_t = 1)]
        workers: usize,
    },
    /// List the atoms of both sides of every check.
    Atoms { file: PathBuf },
    /// Run the built-in verification suite.
    VerifyPaper,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Random,
}

/// A failure that maps to exit code 2.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

fn load(path: &Path) -> Result<dsl::TypedScript, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    dsl::load(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn code(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: Cli, out: &mut impl Write) -> Result<ExitCode, Failure> {
    match cli.command {
        Command::Check { file } => {
            let script = load(&file)?;
            let outcomes = run_checks(&script)?;
            out.write_all(render_check_text(&script, &outcomes).as_bytes())?;
            Ok(code(outcomes.iter().all(|o| o.holds)))
        }
        Command::Mine {
            file,
            max_ground,
            mode,
            seed,
            limit,
            json,
            workers,
        } => {
            let mode = match (mode, seed) {
                (Mode::Exhaustive, _) => SearchMode::Exhaustive,
                (Mode::Random, Some(seed)) => SearchMode::Random { seed },
                (Mode::Random, None) => return Err(Failure("random mode requires --seed".into())),
            };
            let script = load(&file)?;
            let opts = MineOptions {
                max_size: max_ground.unwrap_or_else(|| default_max_size(&script)),
                mode,
                limit,
                workers,
            };
            let results = mine(&script, &opts)?;
            if json {
                for r in &results {
                    writeln!(out, "{}", mine_json(r))?;
                }
            } else {
                out.write_all(render_mine_text(&results).as_bytes())?;
            }
            Ok(code(results.iter().all(|r| r.witness.is_none())))
        }
        Command::Atoms { file } => {
            let script = load(&file)?;
            out.write_all(render_atoms_text(&script)?.as_bytes())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyPaper => {
            let items = run_suite();
            for item in &items {
                writeln!(out, "{}", item.line())?;
            }
            Ok(code(items.iter().all(|i| i.passed)))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(code) => code,
        Err(Failure(message)) => {
            let _ = out.flush();
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
