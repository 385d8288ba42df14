use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use branchrate::asymptotics::DEFAULT_TOL;
use branchrate::vc::DEFAULT_DELTA_CAP;
use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod grid;
mod suite;

use commands::Target;

#[derive(Parser)]
#[command(name = "branchrate", version, about = "Branching-rate analysis and randomized solvers for vertex cover and 3-hitting set")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Tier {
    Quick,
    Full,
}

#[derive(Args)]
struct Common {
    /// Certification tolerance for branching numbers.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Write the main output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Tier::Quick)]
    tier: Tier,
}

impl Common {
    fn full(&self) -> bool {
        self.tier == Tier::Full
    }
}

#[derive(Args)]
struct AlphaArgs {
    #[arg(long, conflicts_with = "alpha_grid")]
    alpha: Option<f64>,
    /// `start:stop:step` or a comma-separated list.
    #[arg(long)]
    alpha_grid: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Optimized branching distributions and rates as CSV.
    Rate {
        /// vc3, vc3star, enhanced_vc3star, better_vc or hs.
        #[arg(long)]
        algo: Target,
        #[command(flatten)]
        alphas: AlphaArgs,
        /// Degree cap for vertex cover, catalog size for hitting set.
        #[arg(long)]
        delta: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Run the repeated randomized solver on a DIMACS graph or `p hs` hypergraph.
    Solve {
        input: PathBuf,
        #[arg(long)]
        algo: Target,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        delta: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Generate the neighbourhood catalog as JSON.
    Catalog {
        #[arg(long, default_value_t = 3)]
        delta: usize,
        /// Also optimize the branching distributions at this alpha.
        #[arg(long)]
        alpha: Option<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// Rate curves over an alpha grid.
    Figure {
        /// Any vertex-cover algorithm name gives all VC curves; hs the hitting-set curve.
        #[arg(long, default_value = "vc3")]
        algo: Target,
        #[command(flatten)]
        alphas: AlphaArgs,
        #[arg(long)]
        delta: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Reference checks, one `CHECK` line each.
    Verify {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
}

fn defaults(target: Target) -> (f64, usize, f64) {
    match target {
        Target::Vc(_) => (1.5, DEFAULT_DELTA_CAP, 2.0),
        Target::Hs => (2.0, 3, 3.0),
    }
}

fn alpha_list(a: &AlphaArgs, target: Target) -> Result<Vec<f64>> {
    let (default, _, upper) = defaults(target);
    let list = match (&a.alpha_grid, a.alpha) {
        (Some(g), _) => grid::parse_grid(g)?,
        (None, Some(x)) => vec![x],
        (None, None) => vec![default],
    };
    grid::check_range(&list, upper)?;
    Ok(list)
}

fn emit(common: &Common, text: &str) -> Result<()> {
    match &common.out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.cmd {
        Cmd::Rate { algo, alphas, delta, common } => {
            let list = alpha_list(&alphas, algo)?;
            let delta = delta.unwrap_or(defaults(algo).1);
            let (csv, ok) = commands::rate_csv(algo, &list, delta, common.tol, common.full())?;
            emit(&common, &csv)?;
            Ok(ok)
        }
        Cmd::Solve { input, algo, k, alpha, seed, delta, common } => {
            let (default, delta_default, upper) = defaults(algo);
            let alpha = alpha.unwrap_or(default);
            grid::check_range(&[alpha], upper)?;
            let args = commands::SolveArgs {
                input: &input,
                target: algo,
                k,
                alpha,
                seed,
                delta: delta.unwrap_or(delta_default),
                tol: common.tol,
                full: common.full(),
            };
            let (report, ok) = commands::solve(&args)?;
            emit(&common, &report)?;
            Ok(ok)
        }
        Cmd::Catalog { delta, alpha, common } => {
            if let Some(a) = alpha {
                grid::check_range(&[a], 3.0)?;
            }
            let (json, stats) = commands::catalog(delta, alpha, common.tol, common.full())?;
            match &common.out {
                Some(_) => {
                    emit(&common, &json)?;
                    println!("{stats}");
                }
                None => {
                    println!("{json}");
                    eprintln!("{stats}");
                }
            }
            Ok(true)
        }
        Cmd::Figure { algo, alphas, delta, common } => {
            let list = alpha_list(&alphas, algo)?;
            let delta = delta.unwrap_or(defaults(algo).1);
            let (csv, ok) = commands::figure_csv(algo, &list, delta, common.tol, common.full())?;
            emit(&common, &csv)?;
            Ok(ok)
        }
        Cmd::Verify { seed, common } => {
            let report = suite::run(common.tol, seed, common.full())?;
            emit(&common, &report.to_string())?;
            Ok(report.all_pass())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
