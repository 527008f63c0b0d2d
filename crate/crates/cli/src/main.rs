//! `dioph`: lowering, bounds, searches and decision procedures from the
//! command line. Exit codes: 0 success, 1 domain error, 2 usage error.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "dioph", version, about = "Exact-arithmetic toolkit for Diophantine equations over the rationals")]
struct Cli {
    /// Print canonical JSON instead of a table.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lower an equation to a system of atoms with a witness map.
    Reduce {
        /// Polynomial, inline or `@file`.
        equation: String,
        #[arg(long, value_enum)]
        target: Target,
    },
    /// Conjectural height bound for the solutions of an equation.
    Bound {
        equation: String,
        #[arg(long, value_parser = ["1", "2"], default_value = "1")]
        conjecture: String,
        /// Lowering route; defaults to the rational gadget for 1 and the
        /// non-negative lowering for 2.
        #[arg(long, value_enum)]
        route: Option<RouteArg>,
        /// Use this system (JSON) instead of lowering; its first variables
        /// are the equation's.
        #[arg(long)]
        system: Option<PathBuf>,
        /// Per-variable refinement `var:deg`, e.g. `x1:4`.
        #[arg(long)]
        refine: Vec<String>,
    },
    /// Every solution up to a height.
    Search(SearchArgs),
    /// Worked examples.
    CaseStudy {
        #[command(subcommand)]
        which: CaseStudy,
    },
    /// Write `z` or `2z` as a sum of three rational squares.
    ThreeSquares {
        /// Positive rational, e.g. `7` or `1/2`.
        z: String,
    },
    /// The systems built on `x^3 + y^3 = 4981`.
    Bremner {
        #[arg(long = "case", value_name = "1|2", value_parser = clap::value_parser!(u8).range(1..=2))]
        case_id: u8,
        /// Check the chain at this many sampled curve points.
        #[arg(long)]
        verify: Option<usize>,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Lower bound for μ(n) from all subsystems of G_n.
    MuEstimate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        height: u64,
    },
    /// Budgeted search for tuples above the bound without a taller witness.
    Falsify {
        #[arg(long, value_parser = ["1", "2"])]
        conjecture: String,
        #[arg(long)]
        tuples: usize,
        #[arg(long)]
        witness_height: u64,
    },
    /// Oracle-relative decision procedures.
    Decide {
        #[command(subcommand)]
        question: Decide,
    },
}

#[derive(Args)]
struct SearchArgs {
    /// System file (JSON).
    #[arg(long, conflicts_with = "equation", required_unless_present = "equation")]
    system: Option<PathBuf>,
    /// Polynomial, inline or `@file`.
    #[arg(long)]
    equation: Option<String>,
    #[arg(long)]
    max_height: u64,
    /// Search non-negative rationals only.
    #[arg(long)]
    nonneg: bool,
    /// Worker threads for system searches.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Node budget; the height then doubles from 1 until it runs out.
    #[arg(long)]
    budget: Option<u64>,
    /// Emit progress records as JSON lines on stderr.
    #[arg(long)]
    progress: bool,
}

#[derive(Subcommand)]
enum CaseStudy {
    /// Rational solutions of x1^5 - x1 = x2^2 - x2.
    Quintic {
        #[arg(long, default_value_t = 256)]
        bound: u64,
    },
}

#[derive(Args)]
struct OracleArgs {
    equation: String,
    /// Mock oracle configuration (JSON).
    #[arg(long)]
    oracle: PathBuf,
}

#[derive(Subcommand)]
enum Decide {
    /// Finitely many rational solutions? One query by default; `--semi` runs
    /// the semi-decision over growing heights instead.
    Finiteness {
        #[command(flatten)]
        o: OracleArgs,
        /// Lower bound on the solution count to test; computed from the
        /// conjectural bound when absent.
        #[arg(long)]
        b: Option<usize>,
        #[arg(long)]
        semi: bool,
        #[arg(long, default_value_t = 8)]
        m_budget: u64,
    },
    /// Rational solvability, dovetailing tuples with the enumerator.
    Solvability {
        #[command(flatten)]
        o: OracleArgs,
        #[arg(long, default_value_t = 1000)]
        steps: u64,
    },
    /// Solvability in non-negative integers.
    NonnegSolvability {
        #[command(flatten)]
        o: OracleArgs,
        #[arg(long, default_value_t = 1000)]
        steps: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    En,
    GnRing,
    GnQ,
    GnNonneg,
    GnFieldDisj,
}

#[derive(Clone, Copy, ValueEnum)]
enum RouteArg {
    RingGadget,
    RationalGadget,
    Nonneg,
    SignProductNonneg,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command, cli.json) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error[{}]: {}", e.kind(), e);
            ExitCode::from(1)
        }
    }
}
