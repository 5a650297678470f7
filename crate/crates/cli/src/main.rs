//! Command-line front end: contribution calculator, classification table
//! emitter, basket verifier, and the index bound lookup by minimal
//! discrepancy.
//!
//! Exit codes are a stable contract: 0 on success or a consistent verdict,
//! 1 when a verification or oracle comparison fails, 2 on usage, parse or
//! validation errors.

mod render;

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};

use crepant_core::{
    a_value, b_value, c_contribution, classify_stage_j, classify_stage_j_tilde, lcm_index,
    oracle_enumerate, solve_gamma, verify_delta, Basket, BasketDocument, CyclicQuotient,
    GammaOutcome, Rational, Verdict,
};
use render::{render, Format};

#[derive(Parser)]
#[command(
    name = "crepant",
    version,
    about = "Exact Riemann-Roch contributions and basket classification for terminal quotient singularities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Stage {
    #[value(name = "J")]
    J,
    #[value(name = "Jtilde")]
    Jtilde,
}

#[derive(Subcommand)]
enum Command {
    /// Print the contributions A, B and c of a quotient singularity of
    /// type 1/r(1,-1,b) at a divisor class i
    Contrib {
        r: i64,
        b: i64,
        #[arg(allow_negative_numbers = true)]
        i: i64,
    },
    /// Emit the classification table of consistent baskets
    Classify {
        /// J classifies (r,v) pairs; Jtilde refines over the weights b
        #[arg(long, value_enum, default_value_t = Stage::J)]
        stage: Stage,
        #[arg(long, value_enum, default_value_t = Format::Markdown)]
        format: Format,
        /// Cross-check stage Jtilde against the brute-force oracle
        #[arg(long)]
        oracle: bool,
        /// Local index ceiling for the oracle search
        #[arg(long = "r-max", default_value_t = 16)]
        r_max: i64,
        /// Write the table to a file instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check a basket file against the periodic consistency equation
    Verify { path: PathBuf },
    /// Print the index of a basket file (lcm of the local indices)
    Index { path: PathBuf },
    /// Print the constant term of the summed equation for a basket file
    Gamma { path: PathBuf },
    /// Print the index bound for a 3-fold canonical singularity with the
    /// given minimal discrepancy (0, 1/r, or 2)
    MdBound { value: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> anyhow::Result<ExitCode> {
    match command {
        Command::Contrib { r, b, i } => cmd_contrib(r, b, i),
        Command::Classify {
            stage,
            format,
            oracle,
            r_max,
            output,
        } => cmd_classify(stage, format, oracle, r_max, output.as_deref()),
        Command::Verify { path } => cmd_verify(&path),
        Command::Index { path } => cmd_index(&path),
        Command::Gamma { path } => cmd_gamma(&path),
        Command::MdBound { value } => cmd_md_bound(&value),
    }
}

fn cmd_contrib(r: i64, b: i64, i: i64) -> anyhow::Result<ExitCode> {
    let q = CyclicQuotient::new(r, b)?;
    let a = a_value(&q, i);
    let bv = b_value(r, i)?;
    let c = c_contribution(&q, i);
    println!("A = {a}, B = {bv}, c = {c}");
    Ok(ExitCode::SUCCESS)
}

fn cmd_classify(
    stage: Stage,
    format: Format,
    oracle: bool,
    r_max: i64,
    output: Option<&Path>,
) -> anyhow::Result<ExitCode> {
    if oracle && stage != Stage::Jtilde {
        bail!("--oracle applies to --stage Jtilde only");
    }

    let rows = match stage {
        Stage::J => classify_stage_j(),
        Stage::Jtilde => classify_stage_j_tilde(),
    };
    let table = render(&rows, format);
    match output {
        Some(path) => fs::write(path, &table)
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => print!("{table}"),
    }

    if oracle {
        let expected: BTreeSet<Basket> = oracle_enumerate(r_max)?
            .into_iter()
            .map(|j| j.basket().clone())
            .collect();
        let emitted: BTreeSet<Basket> = rows
            .iter()
            .filter_map(|row| row.data.basket().cloned())
            .collect();
        if expected != emitted {
            for missing in expected.difference(&emitted) {
                eprintln!("oracle found a basket the table lacks: {missing}");
            }
            for extra in emitted.difference(&expected) {
                eprintln!("table has a basket the oracle rejects: {extra}");
            }
            return Ok(ExitCode::from(1));
        }
        eprintln!(
            "oracle check passed: {} baskets agree (r_max = {r_max})",
            expected.len()
        );
    }
    Ok(ExitCode::SUCCESS)
}

/// Reads and validates a basket file, printing normalization notices to
/// stderr.
fn read_basket(path: &Path) -> anyhow::Result<Basket> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let doc: BasketDocument = serde_json::from_str(&text)
        .with_context(|| format!("{} is not a valid basket document", path.display()))?;
    let (basket, notices) = Basket::from_document(&doc)?;
    for notice in &notices {
        eprintln!("notice: {notice}");
    }
    Ok(basket)
}

fn cmd_verify(path: &Path) -> anyhow::Result<ExitCode> {
    let basket = read_basket(path)?;
    match verify_delta(&basket)? {
        Verdict::Consistent => {
            println!("consistent");
            Ok(ExitCode::SUCCESS)
        }
        verdict @ Verdict::Inconsistent { .. } => {
            println!("{verdict}");
            Ok(ExitCode::from(1))
        }
    }
}

fn cmd_index(path: &Path) -> anyhow::Result<ExitCode> {
    let basket = read_basket(path)?;
    println!("{}", lcm_index(&basket)?);
    Ok(ExitCode::SUCCESS)
}

fn cmd_gamma(path: &Path) -> anyhow::Result<ExitCode> {
    let basket = read_basket(path)?;
    match solve_gamma(&basket)? {
        GammaOutcome::Consistent(gamma) => {
            println!("{gamma}");
            Ok(ExitCode::SUCCESS)
        }
        GammaOutcome::Inconsistent { witness, lhs, rhs } => {
            println!("inconsistent at i = {witness}: delta side {lhs}, contribution side {rhs}");
            Ok(ExitCode::from(1))
        }
    }
}

/// Index bounds by minimal discrepancy: 6 for 0, r! for 1/r, 1 for 2.
fn cmd_md_bound(value: &str) -> anyhow::Result<ExitCode> {
    let parsed = Rational::from_str(value.trim())
        .with_context(|| format!("cannot parse {value:?} as an exact rational"))?;
    if parsed.is_zero() {
        println!("6");
        return Ok(ExitCode::SUCCESS);
    }
    if parsed == Rational::from_integer(2.into()) {
        println!("1");
        return Ok(ExitCode::SUCCESS);
    }
    if parsed.numer().is_one() && parsed.denom().is_positive() {
        let r: u64 = parsed
            .denom()
            .try_into()
            .map_err(|_| anyhow::anyhow!("unit fraction denominator too large for a factorial"))?;
        println!("{}", factorial(r));
        return Ok(ExitCode::SUCCESS);
    }
    bail!(
        "{value:?} is not a minimal discrepancy of a 3-fold canonical singularity: \
         admissible values are 0, 1/r, or 2"
    );
}

fn factorial(n: u64) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, k| acc * k)
}
