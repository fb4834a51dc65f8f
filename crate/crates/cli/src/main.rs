//! Command-line front end: rigidity tables, cohomology with the Kostant
//! cross-check, prolongations, decompositions and operator systems.
//!
//! Exit codes: 0 success, 1 usage, 2 computation error, 3 oracle mismatch.

mod commands;
mod config;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{parse_list, parse_param, parse_rank_range, Command, ConfigError, RunConfig, DEFAULT_CAP};

#[derive(Parser, Debug)]
#[command(name = "extrinsic", version, about = "Exact invariants of extrinsic geometries in flag varieties")]
struct Cli {
    /// Tab-separated output.
    #[arg(long, global = true)]
    tsv: bool,
    /// Write output to PATH instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug)]
struct AlgebraArgs {
    /// Root system family: A, B, C, D or G2.
    #[arg(long)]
    family: String,
    #[arg(long)]
    rank: String,
    /// Comma list of 1-based simple root indices defining the grading.
    #[arg(long)]
    sigma: String,
    /// Highest weight as a comma list in fundamental weights; adjoint if omitted.
    #[arg(long)]
    weight: Option<String>,
    /// Ambient algebra: gl or o.
    #[arg(long, default_value = "gl")]
    ambient: String,
    /// Largest ambient dimension computed directly.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Rigidity verdict for every grading in a range.
    Rigidity {
        /// Comma list of families; all if omitted.
        #[arg(long)]
        family: Option<String>,
        /// Rank or range M..N (at most 8).
        #[arg(long, default_value = "1..6")]
        rank: String,
        /// Largest size of Σ.
        #[arg(long, default_value_t = 2)]
        max_sigma: usize,
    },
    /// First cohomology of g₋ with values in the complement of the prolongation.
    Cohomology {
        #[command(flatten)]
        alg: AlgebraArgs,
        /// Skip the direct computation and report the prediction only.
        #[arg(long)]
        kostant_only: bool,
    },
    /// Graded dimensions of the relative prolongation.
    Prolong {
        #[command(flatten)]
        alg: AlgebraArgs,
    },
    /// Irreducible components of the ambient, the prolongation and its complement.
    Decompose {
        #[command(flatten)]
        alg: AlgebraArgs,
    },
    /// Polynomial solutions of an operator system.
    Pde {
        /// Fixture name (see `pde --list`) or path of a system file.
        fixture: Option<String>,
        /// Parameter value NAME=RATIONAL; repeatable.
        #[arg(long = "param", value_name = "NAME=RAT")]
        params: Vec<String>,
        /// Truncation degree.
        #[arg(short = 'N')]
        n: Option<i64>,
        /// File with one expected basis element per line.
        #[arg(long, value_name = "PATH")]
        expect: Option<PathBuf>,
        /// List shipped fixtures.
        #[arg(long)]
        list: bool,
    },
}

pub enum Failure {
    Usage(String),
    Compute(String),
    Oracle(String),
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Failure {
        Failure::Usage(e.to_string())
    }
}

impl From<extrinsic::Error> for Failure {
    fn from(e: extrinsic::Error) -> Failure {
        Failure::Compute(e.to_string())
    }
}

fn algebra_config(command: Command, a: AlgebraArgs) -> Result<RunConfig, ConfigError> {
    let mut c = RunConfig::new(command);
    c.families = parse_list("family", &a.family)?;
    c.ranks = parse_rank_range(&a.rank)?;
    c.sigma = parse_list("sigma", &a.sigma)?;
    c.weight = a.weight.as_deref().map(|w| parse_list("weight", w)).transpose()?;
    c.ambient = a.ambient.parse().map_err(|e: extrinsic::Error| ConfigError::Value {
        key: "ambient".into(),
        msg: e.to_string(),
    })?;
    c.cap = a.cap;
    Ok(c)
}

fn to_config(cli: Cli) -> Result<Option<RunConfig>, ConfigError> {
    let mut c = match cli.cmd {
        Cmd::Rigidity { family, rank, max_sigma } => {
            let mut c = RunConfig::new(Command::Rigidity);
            c.families = match family {
                Some(f) => parse_list("family", &f)?,
                None => extrinsic::rootsys::Family::ALL.to_vec(),
            };
            c.ranks = parse_rank_range(&rank)?;
            c.max_sigma = max_sigma;
            c
        }
        Cmd::Cohomology { alg, kostant_only } => {
            let mut c = algebra_config(Command::Cohomology, alg)?;
            c.kostant_only = kostant_only;
            c
        }
        Cmd::Prolong { alg } => algebra_config(Command::Prolong, alg)?,
        Cmd::Decompose { alg } => algebra_config(Command::Decompose, alg)?,
        Cmd::Pde {
            fixture,
            params,
            n,
            expect,
            list,
        } => {
            if list {
                return Ok(None);
            }
            let mut c = RunConfig::new(Command::Pde);
            c.fixture = fixture;
            c.params = params.iter().map(|p| parse_param(p)).collect::<Result<_, _>>()?;
            c.n = n;
            c.expect = expect;
            c
        }
    };
    c.tsv = cli.tsv;
    c.out = cli.out;
    c.validate()?;
    Ok(Some(c))
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Compute(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let out = cli.out.clone();
    let tsv = cli.tsv;
    let Some(cfg) = to_config(cli)? else {
        let names = extrinsic::wpde::fixture_names().join("\n");
        return emit(&format!("{names}\node_K (K >= 1)\n"), out.as_ref());
    };
    let (report, verdict) = commands::run(&cfg)?;
    emit(&report.render(tsv), cfg.out.as_ref())?;
    verdict
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Compute(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Oracle(m)) => {
            eprintln!("oracle mismatch: {m}");
            ExitCode::from(3)
        }
    }
}
