//! Front end for `artinperv`: workspace documents in, JSON reports out.

pub mod commands;
pub mod render;
pub mod schema;
pub mod workspace;

use std::path::PathBuf;

use artinperv_core::Coefficients;
use clap::{Parser, Subcommand};

use commands::{Failure, HeartArgs, HeartOp, Report};

#[derive(Debug, Parser)]
#[command(name = "artinperv", version, about = "Perverse Artin motive computations on workspace documents")]
pub struct Cli {
    /// Coefficient ring: Q, Z, Zp:<p> or Zmod:<n>.
    #[arg(long, global = true, default_value = "Z", value_parser = parse_coefficients)]
    pub coeff: Coefficients,
    /// Write the JSON report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Print a plain-text table on standard output.
    #[arg(long, global = true)]
    pub pretty: bool,
    #[command(subcommand)]
    pub command: Command,
}

fn parse_coefficients(s: &str) -> Result<Coefficients, String> {
    let c: Coefficients = s.parse().map_err(|e: artinperv_core::Error| e.to_string())?;
    if matches!(c, Coefficients::IntegersInverting(_)) {
        return Err("expected Q, Z, Zp:<p> or Zmod:<n>".into());
    }
    Ok(c)
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Load documents and report every problem found.
    Validate { paths: Vec<PathBuf> },
    /// Cohomology of the Artin truncation of a pushforward to the base field.
    Omega0 {
        #[arg(long)]
        geometry: String,
        #[arg(long, allow_hyphen_values = true)]
        twist: Option<i64>,
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
    /// Descent spectral sequence of a normal crossing configuration.
    Snc {
        #[arg(long = "snc")]
        id: String,
        /// Compactly supported variant with this twist.
        #[arg(long)]
        shriek: Option<i64>,
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
    /// Third cohomology at the vertex of the cone over an abelian variety.
    Cone {
        #[arg(long)]
        geometry: String,
        #[arg(long)]
        ell: u64,
        /// Hyperplane class in mu^2, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        hyperplane: Option<Vec<i64>>,
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
    /// Operations in the heart of the perverse t-structure on a curve.
    Heart {
        #[arg(value_enum)]
        op: HeartOp,
        #[arg(long)]
        object: Option<String>,
        #[arg(long)]
        morphism: Option<String>,
        #[arg(long)]
        complex: Option<String>,
        #[arg(long)]
        ell: Option<u64>,
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
}

impl Command {
    fn paths(&self) -> &[PathBuf] {
        match self {
            Command::Validate { paths }
            | Command::Omega0 { paths, .. }
            | Command::Snc { paths, .. }
            | Command::Cone { paths, .. }
            | Command::Heart { paths, .. } => paths,
        }
    }
}

/// Loads the workspace and runs the command; never prints.
pub fn run(cli: &Cli) -> Result<Report, Failure> {
    let ws = workspace::load(cli.command.paths()).map_err(|e| Failure::Input(e.0))?;
    if let Command::Validate { .. } = cli.command {
        return Ok(commands::validate(&ws));
    }
    if !ws.diagnostics.is_empty() {
        return Err(Failure::Invalid(ws.diagnostics));
    }
    match &cli.command {
        Command::Validate { .. } => unreachable!("handled above"),
        Command::Omega0 { geometry, twist, .. } => commands::omega0(&ws, geometry, &cli.coeff, *twist),
        Command::Snc { id, shriek, .. } => commands::snc(&ws, id, &cli.coeff, *shriek),
        Command::Cone { geometry, ell, hyperplane, .. } => commands::cone(&ws, geometry, *ell, hyperplane.as_deref()),
        Command::Heart { op, object, morphism, complex, ell, .. } => {
            let args = HeartArgs { object: object.clone(), morphism: morphism.clone(), complex: complex.clone(), ell: *ell };
            commands::heart(&ws, *op, &args)
        }
    }
}
