//! The `snm` command line.
//!
//! Exit codes: 0 success or affirmative check, 1 negative check, 2 bad input
//! or usage, 3 solver invariant violation.

pub mod bench;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

use stable_noncrossing::oracle::{self, Limits};
use stable_noncrossing::stability::{find_noncrossing_blocking_pairs, is_noncrossing, is_ssnm, is_wsnm};
use stable_noncrossing::{solve, Instance, Matching, SolverError};

use crate::bench::{BenchConfig, BenchError, BenchRecord};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "snm", version, about = "Weakly stable noncrossing matchings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve an instance and print the matching as `i j` lines.
    Solve {
        instance: PathBuf,
        /// Write the step-by-step trace as TSV.
        #[arg(long, value_name = "FILE")]
        trace: Option<PathBuf>,
        /// Print run counters to stderr.
        #[arg(long)]
        stats: bool,
    },
    /// Check a matching against an instance.
    Check {
        instance: PathBuf,
        matching: PathBuf,
        #[arg(long, value_enum)]
        mode: CheckMode,
    },
    /// Enumerate matchings by brute force (small instances only).
    #[command(group(ArgGroup::new("kind").args(["wsnm", "ssnm", "max_size"])))]
    Enumerate {
        instance: PathBuf,
        /// Only weakly stable noncrossing matchings.
        #[arg(long)]
        wsnm: bool,
        /// One strongly stable noncrossing matching, if any.
        #[arg(long)]
        ssnm: bool,
        /// A largest weakly stable noncrossing matching.
        #[arg(long)]
        max_size: bool,
        /// Lift the per-side size guard.
        #[arg(long)]
        no_limit: bool,
    },
    /// Generate a random instance.
    Gen {
        #[arg(long)]
        men: usize,
        #[arg(long)]
        women: usize,
        #[arg(long, value_parser = parse_density)]
        density: f64,
        #[arg(long)]
        seed: u64,
    },
    /// Time the solver on random square instances; emits TSV.
    Bench {
        #[arg(long)]
        min: usize,
        #[arg(long)]
        max: usize,
        #[arg(long, default_value_t = 2)]
        factor: usize,
        #[arg(long, default_value_t = 5)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1.0, value_parser = parse_density)]
        density: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckMode {
    Noncrossing,
    Wsnm,
    Ssnm,
    Blockingpairs,
}

fn parse_density(s: &str) -> Result<f64, String> {
    let d: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if (0.0..=1.0).contains(&d) {
        Ok(d)
    } else {
        Err(format!("density {d} is outside [0, 1]"))
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<BenchError> for CliError {
    fn from(e: BenchError) -> Self {
        match e {
            BenchError::Solver(e) => CliError::Solver(e),
            BenchError::Io(e) => CliError::Io(e),
        }
    }
}

/// Runs the CLI with `args` (program name first), writing to `out` and `err`.
/// Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(CliError::Solver(e)) => {
            let _ = writeln!(err, "error: {e}");
            let _ = err.write_all(e.trace.to_tsv().as_bytes());
            EXIT_INVARIANT
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    match cmd {
        Command::Solve { instance, trace, stats } => {
            let inst = load_instance(&instance)?;
            let sol = solve(&inst)?;
            out.write_all(sol.matching.to_text().as_bytes())?;
            if let Some(path) = trace {
                std::fs::write(&path, sol.trace.to_tsv())
                    .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            }
            if stats {
                let s = &sol.stats;
                writeln!(err, "scan_count\t{}", s.scan_count)?;
                writeln!(err, "proposal_count\t{}", s.proposal_count)?;
                writeln!(err, "upward_jump_count\t{}", s.upward_jump_count)?;
                writeln!(err, "upward_jump_size_sum\t{}", s.upward_jump_size_sum)?;
                let max_u = s.upward_by_woman.iter().max().copied().unwrap_or(0);
                writeln!(err, "max_upward_per_woman\t{max_u}")?;
            }
            Ok(EXIT_OK)
        }
        Command::Check { instance, matching, mode } => {
            let inst = load_instance(&instance)?.normalize_mutual();
            let m = load_matching(&matching, &inst)?;
            let ranks = inst.rank_tables();
            let verdict = match mode {
                CheckMode::Noncrossing => is_noncrossing(&m),
                CheckMode::Wsnm => is_wsnm(&ranks, &m),
                CheckMode::Ssnm => is_ssnm(&ranks, &m),
                CheckMode::Blockingpairs => {
                    let pairs = find_noncrossing_blocking_pairs(&ranks, &m);
                    for (i, j) in &pairs {
                        writeln!(out, "{i} {j}")?;
                    }
                    return Ok(if pairs.is_empty() { EXIT_OK } else { EXIT_NEGATIVE });
                }
            };
            writeln!(out, "{}", if verdict { "yes" } else { "no" })?;
            Ok(if verdict { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::Enumerate { instance, wsnm, ssnm, max_size, no_limit } => {
            let inst = load_instance(&instance)?;
            let limits = if no_limit { Limits::unlimited() } else { Limits::default() };
            let oracle_err = |e: stable_noncrossing::OracleError| CliError::Input(e.to_string());
            if ssnm {
                return match oracle::exists_ssnm_with(&inst, limits).map_err(oracle_err)? {
                    Some(m) => {
                        out.write_all(m.to_text().as_bytes())?;
                        Ok(EXIT_OK)
                    }
                    None => {
                        writeln!(out, "none")?;
                        Ok(EXIT_NEGATIVE)
                    }
                };
            }
            if max_size {
                let m = oracle::max_size_wsnm_with(&inst, limits).map_err(oracle_err)?;
                out.write_all(m.to_text().as_bytes())?;
                return Ok(EXIT_OK);
            }
            let all = if wsnm {
                oracle::enumerate_wsnm_with(&inst, limits)
            } else {
                oracle::enumerate_noncrossing_matchings_with(&inst, limits)
            }
            .map_err(oracle_err)?;
            for m in &all {
                writeln!(out, "{m}")?;
            }
            Ok(EXIT_OK)
        }
        Command::Gen { men, women, density, seed } => {
            out.write_all(Instance::random(men, women, density, seed).to_text().as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Bench { min, max, factor, reps, seed, density } => {
            if min == 0 || min > max || factor < 2 || reps == 0 {
                return Err(CliError::Input(
                    "bench needs 1 <= min <= max, factor >= 2 and reps >= 1".into(),
                ));
            }
            let cfg = BenchConfig { min, max, factor, reps, seed, density };
            writeln!(out, "{}", bench::TSV_HEADER)?;
            let records = bench::run_bench(&cfg, |r: &BenchRecord| writeln!(out, "{}", r.to_tsv()))?;
            if let Some(r) = records.iter().find(|r| !r.within_scan_bound()) {
                writeln!(err, "error: scan bound exceeded: {}", r.to_tsv())?;
                return Ok(EXIT_INVARIANT);
            }
            Ok(EXIT_OK)
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Parses and validates an instance file.
fn load_instance(path: &Path) -> Result<Instance, CliError> {
    let inst = Instance::parse(&read(path)?)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    if let Err(violations) = inst.validate() {
        let msgs: Vec<String> = violations.iter().map(ToString::to_string).collect();
        return Err(CliError::Input(format!("{}: {}", path.display(), msgs.join("; "))));
    }
    Ok(inst)
}

/// Parses a matching and rejects pairs that are not mutually acceptable.
fn load_matching(path: &Path, inst: &Instance) -> Result<Matching, CliError> {
    let m = Matching::parse(&read(path)?, inst.n_men(), inst.n_women())
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let ranks = inst.rank_tables();
    if let Some((i, j)) = m.pairs().find(|&(i, j)| !ranks.is_mutually_acceptable(i, j)) {
        return Err(CliError::Input(format!(
            "{}: pair ({i},{j}) is not mutually acceptable",
            path.display()
        )));
    }
    Ok(m)
}
