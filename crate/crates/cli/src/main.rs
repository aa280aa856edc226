//! `bimop`: bivariate multiple orthogonal polynomials from the command line.
//!
//! Every command prints one JSON document on stdout. Exit codes: 0 success,
//! 2 non-normal index, 3 invalid input, 4 a verification whose `holds` is false.

mod check;
mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use bimop_core::relations::Axis;
use bimop_core::Error;
use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(
    name = "bimop",
    version,
    about = "Bivariate multiple orthogonal polynomials"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub global: Global,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Measure-system config (JSON).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Use binary64 arithmetic instead of exact rationals.
    #[arg(long, global = true)]
    pub float: bool,

    /// Singular-pivot threshold in float mode.
    #[arg(long, global = true)]
    pub tol: Option<f64>,

    /// Indented JSON with polynomials written as strings.
    #[arg(long, global = true)]
    pub pretty: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Cantor position of x^t y^s.
    Pair { t: u64, s: u64 },
    /// Exponents of the monomial at position z.
    Unpair { z: u64 },
    /// Multidegree, degree and remainder of a modulus or a multi-index.
    Params {
        modulus: Option<u64>,
        #[arg(long)]
        index: Option<String>,
    },
    /// Normality of a multi-index.
    Normal {
        #[arg(long)]
        index: String,
    },
    /// Type II polynomial.
    Type2 {
        #[arg(long)]
        index: String,
    },
    /// Type I polynomials.
    Type1 {
        #[arg(long)]
        index: String,
    },
    /// Pairing <P_n, Q_m>, or the pairing matrix of two chains.
    Biorth {
        #[arg(long, required_unless_present = "chain")]
        index: Option<String>,
        #[arg(long, required_unless_present = "chain")]
        with: Option<String>,
        /// Semicolon-separated multi-indices, e.g. "1,2;1,3;2,3".
        #[arg(long, requires = "with_chain")]
        chain: Option<String>,
        #[arg(long)]
        with_chain: Option<String>,
    },
    /// Recurrence for x P_n or y P_n.
    Nnr {
        #[arg(long)]
        index: String,
        #[arg(long, value_parser = parse_axis)]
        axis: Axis,
        /// Semicolon-separated path; it must visit n - (d+1) and n.
        #[arg(long)]
        path: Option<String>,
        /// Upper neighbour; defaults to the path entry at the target modulus.
        #[arg(long)]
        w: Option<String>,
    },
    /// Recurrence for x Q_n or y Q_n.
    NnrQ {
        #[arg(long)]
        index: String,
        #[arg(long, value_parser = parse_axis)]
        axis: Axis,
        #[arg(long)]
        path: Option<String>,
    },
    /// Recurrence for a vector of Type II polynomials.
    Vector {
        #[arg(long)]
        chain: String,
        #[arg(long, value_parser = parse_axis)]
        axis: Axis,
        #[arg(long)]
        lower: Option<String>,
        #[arg(long)]
        upper: Option<String>,
    },
    /// Product of univariate Type II polynomials (product config).
    Product {
        #[arg(long)]
        n: String,
        #[arg(long)]
        m: String,
        /// Bivariate index to compare against; defaults to the first normal candidate.
        #[arg(long)]
        v: Option<String>,
    },
    /// Ratio of det M_v to a product of univariate determinants (product config).
    Factor {
        #[arg(long)]
        v: String,
        #[arg(long, default_value = "")]
        x_factors: String,
        #[arg(long, default_value = "")]
        y_factors: String,
        /// Comma-separated scalar moments such as "x2:0,y1:0".
        #[arg(long, default_value = "")]
        scalars: String,
    },
    /// Orthogonality, biorthogonality and recurrence battery.
    Check {
        /// Largest modulus for the orthogonality and biorthogonality sweeps.
        #[arg(long, default_value_t = 6)]
        max: u64,
        /// Largest modulus for the Type II recurrence samples.
        #[arg(long, default_value_t = 9)]
        max_nnr: u64,
        /// Largest modulus for the Type I recurrence samples.
        #[arg(long, default_value_t = 3)]
        max_q: u64,
    },
}

fn parse_axis(s: &str) -> Result<Axis, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Result of a command before it is printed.
pub enum Outcome {
    Ok(serde_json::Value),
    /// Printed, then exit 4.
    Failed(serde_json::Value),
    /// Printed, then exit 2.
    NotNormal(serde_json::Value),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(outcome) => {
            let (value, code) = match outcome {
                Outcome::Ok(v) => (v, 0),
                Outcome::NotNormal(v) => (v, 2),
                Outcome::Failed(v) => (v, 4),
            };
            println!("{}", output::render(&value, cli.global.pretty));
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("{}", serde_json::json!({ "error": e.to_string() }));
            ExitCode::from(match e {
                Error::NotNormal { .. } => 2,
                _ => 3,
            })
        }
    }
}
