//! `quasitri` command-line driver.
//!
//! ```text
//! quasitri check <SUBCOMMAND> [--input FILE | --catalog NAME] [--q REAL]
//!          [--tolerance REAL] [--samples INT] [--seed INT]
//!          [--report text|json] [--output FILE] [--certificate FILE]
//! quasitri --emit NAME [--q REAL] [--output FILE]
//! ```
//!
//! Exit codes: 0 pass, 1 fail, 2 input or usage error.

mod checks;
mod inputs;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "quasitri", version, about = "Numerical checks for classical and quantum r-matrix structures")]
struct Cli {
    /// Export a catalog entry in the JSON interchange formats and exit.
    #[arg(long, value_name = "NAME")]
    emit: Option<String>,
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run one named check suite.
    Check {
        #[command(subcommand)]
        check: CheckKind,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum CheckKind {
    /// Classical Yang–Baxter residual of a tensor.
    Cybe,
    /// Ad-invariance residual of a tensor.
    Invariance,
    /// Jacobiator of the two-link bivector at random points.
    Jacobi,
    /// Poisson-map residual of a lattice gauge map at random points.
    PoissonMap {
        #[arg(value_enum)]
        map: MapKind,
    },
    /// Analytic versus Jacobian push-forward of `rg` under the two-link map.
    Pushforward,
    /// Quantum Yang–Baxter residual of the plain form.
    Ybe,
    /// Self-adjointness, unitarity and involutivity of the hat form.
    Star,
    /// First-order expansion of an R-matrix family about q = 1.
    Semiclassical,
    /// Braid relation of the hat form and convention round trip.
    Braiding,
    /// Composition `(vw)` as a homomorphism modulo the plus relations.
    Homomorphism,
    /// Compatibility of the exchange rules with the plus relations.
    Consistency,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MapKind {
    OneLink,
    TwoLink,
    Compose,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Input file in the format of the chosen check.
    #[arg(long, global = true, value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Built-in catalog entry (su2, sl2-real, su2-standard).
    #[arg(long, global = true, value_name = "NAME")]
    pub catalog: Option<String>,
    /// Tensor name within the catalog entry.
    #[arg(long, global = true, value_name = "NAME")]
    pub tensor: Option<String>,
    /// Deformation parameter for parameterised catalog families.
    #[arg(long, global = true, value_name = "REAL", default_value_t = 2.0)]
    pub q: f64,
    /// A check passes when every residual is at most this.
    #[arg(long, global = true, value_name = "REAL", default_value_t = 1e-9)]
    pub tolerance: f64,
    /// Number of random points for the sampled checks.
    #[arg(long, global = true, value_name = "INT", default_value_t = 20)]
    pub samples: usize,
    /// Seed of the random point streams.
    #[arg(long, global = true, value_name = "INT", default_value_t = 0)]
    pub seed: u64,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = ReportFormat::Text)]
    pub report: ReportFormat,
    /// Write the report (or the emitted catalog entry) here instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub output: Option<PathBuf>,
    /// Write ideal-membership certificates as JSON (homomorphism check).
    #[arg(long, global = true, value_name = "FILE")]
    pub certificate: Option<PathBuf>,
}

fn write_out(path: Option<&PathBuf>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| anyhow::anyhow!("{}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    if let Some(name) = &cli.emit {
        if cli.command.is_some() {
            anyhow::bail!("--emit cannot be combined with a check");
        }
        let export = quasitri::formats::export_catalog(name, cli.common.q)?;
        let mut text = serde_json::to_string_pretty(&export)?;
        text.push('\n');
        write_out(cli.common.output.as_ref(), &text)?;
        return Ok(true);
    }
    let Some(Command::Check { check }) = cli.command else {
        anyhow::bail!("nothing to do: give a `check` subcommand or --emit NAME");
    };
    let common = &cli.common;
    if !(common.tolerance >= 0.0) {
        anyhow::bail!("--tolerance must be a nonnegative number");
    }
    let report = checks::run_check(check, common)?;
    let text = match common.report {
        ReportFormat::Text => report.to_text(),
        ReportFormat::Json => report.to_json(),
    };
    write_out(common.output.as_ref(), &text)?;
    Ok(report.passed())
}

fn main() -> ExitCode {
    // clap reports usage errors itself with exit status 2
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn grammar_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn nested_poisson_map() {
        let cli = Cli::try_parse_from(["quasitri", "check", "poisson-map", "two-link", "--seed", "3"]).unwrap();
        assert!(matches!(
            cli.command,
            Some(Command::Check { check: CheckKind::PoissonMap { map: MapKind::TwoLink } })
        ));
        assert_eq!(cli.common.seed, 3);
        assert_eq!(cli.common.samples, 20);
        assert_eq!(cli.common.tolerance, 1e-9);
    }

    #[test]
    fn unknown_subcommand_is_usage_error() {
        let err = Cli::try_parse_from(["quasitri", "check", "nope"]).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }
}
