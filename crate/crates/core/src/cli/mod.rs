//! Command-line front end. The binary is a thin wrapper around [`run`].
//!
//! Every command takes its parameters from flags, from a JSON `--config`
//! file, or both (flags win). Reports go to standard output as JSON lines;
//! data files go to `--out`.

mod commands;
mod config;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};

pub use commands::{EvolveArgs, MakeStateArgs, NormsArgs, SagnacArgs, TwoPhotonArgs, WignerArgs};

use crate::error::{Error, Result};

/// Exit status for a finished command.
pub fn exit_code(result: &Result<()>) -> i32 {
    match result {
        Ok(()) => 0,
        Err(Error::InvariantBreach(_)) => 3,
        Err(Error::Io(_)) | Err(Error::Format(_)) | Err(Error::Json(_)) => 4,
        Err(_) => 2,
    }
}

#[derive(Debug, Parser)]
#[command(name = "maxwell-photon", version, about = "Photon wave function simulator")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

/// Flags shared by every command.
#[derive(Debug, Clone, Default, clap::Args, Serialize, Deserialize)]
pub struct Common {
    /// Input file.
    #[arg(long = "in", global = true)]
    #[serde(rename = "in")]
    pub input: Option<PathBuf>,
    /// Output file or prefix.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// JSON file with default parameters; flags override it.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
    /// Seed for randomized builders; recorded in output metadata.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true)]
    pub hbar: Option<f64>,
    #[arg(long = "c", global = true)]
    pub c: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a normalized transverse state and write it as `.pwf`.
    MakeState(MakeStateArgs),
    /// Evolve a coordinate-space field; optionally cross-check with RK4.
    Evolve(EvolveArgs),
    /// Report momentum norm, coordinate energy and mean energy.
    Norms(NormsArgs),
    /// Wigner function of a transverse state (CSV and `.pwf`).
    Wigner(WignerArgs),
    /// Displaced-parity count rates over a phase-space grid.
    SagnacScan(SagnacArgs),
    /// Joint Wigner function and parity checks of a photon pair.
    TwoPhoton(TwoPhotonArgs),
}

/// Run a parsed command line, writing human-readable output to `stdout`.
pub fn run(cli: Cli, stdout: &mut impl Write) -> Result<()> {
    let file = match &cli.common.config {
        Some(path) => config::load(path)?,
        None => Default::default(),
    };
    let common: Common = config::merge(&file, &cli.common)?;
    match cli.command {
        Command::MakeState(a) => commands::make_state(&common, &config::merge(&file, &a)?, stdout),
        Command::Evolve(a) => commands::evolve(&common, &config::merge(&file, &a)?, stdout),
        Command::Norms(a) => commands::norms(&common, &config::merge(&file, &a)?, stdout),
        Command::Wigner(a) => commands::wigner(&common, &config::merge(&file, &a)?, stdout),
        Command::SagnacScan(a) => commands::sagnac_scan(&common, &config::merge(&file, &a)?, stdout),
        Command::TwoPhoton(a) => commands::two_photon(&common, &config::merge(&file, &a)?, stdout),
    }
}
