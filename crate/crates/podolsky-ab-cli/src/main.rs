//! Command-line front end for the Bopp-Podolsky solenoid/charged-tube
//! fields and Aharonov-Bohm phase shifts.
//!
//! Subcommands: `profile` (radial tables), `phase` (single phase-shift
//! records), `sweep` (coupling sweeps), `verify` (self-check suite).
//! All numerical work happens in normalized units (S = r/R, A = a/R);
//! SI conversion is applied only when SI inputs are supplied.

mod commands;
mod config;
mod output;

use clap::{Parser, Subcommand, ValueEnum};
use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug)]
pub enum CliError {
    /// Bad invocation or config: exit code 2.
    Usage(String),
    /// Failure while computing or writing: exit code 1.
    Runtime(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Runtime(m) => write!(f, "error: {m}"),
        }
    }
}

impl From<podolsky_ab::Error> for CliError {
    fn from(e: podolsky_ab::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scenario {
    /// Long solenoid: magnetic field, vector potential, magnetic AB shift.
    Solenoid,
    /// Long charged tube: electric field, potential, electric AB shift.
    Tube,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Exact closed forms where representable, asymptotic beyond.
    Auto,
    Exact,
    /// Boundary factors replaced by their large-R/a forms.
    #[value(alias = "large_ratio")]
    LargeRatio,
    /// Elementary-function limits.
    Asymptotic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Quantity {
    /// b_z (solenoid) or e_r (tube).
    Field,
    /// a_phi (solenoid) or phi (tube).
    Potential,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Level {
    Fast,
    Full,
}

#[derive(Parser, Debug)]
#[command(
    name = "podolsky-ab",
    version,
    about = "Generalized-electrodynamics fields and Aharonov-Bohm phase shifts \
             for a long solenoid and a long charged tube"
)]
pub struct Cli {
    /// Config file of key=value defaults (flags win); default
    /// podolsky-ab.conf, overridable via PODOLSKY_AB_CONFIG.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sample a radial profile and emit a figure-ready table.
    Profile(ProfileArgs),
    /// Compute one phase-shift record (magnetic: circling beam;
    /// electric: two beam branches inside identical tubes).
    Phase(PhaseArgs),
    /// Sweep the coupling A = a/R logarithmically at fixed geometry.
    Sweep(SweepArgs),
    /// Run the self-check suite and emit a machine-readable report.
    Verify(VerifyArgs),
}

#[derive(clap::Args, Debug)]
pub struct ProfileArgs {
    #[arg(long)]
    pub scenario: Option<Scenario>,
    /// Podolsky coupling A = a/R (exclusive with --a-metres/--R-metres).
    #[arg(long = "A")]
    pub a_over_r: Option<f64>,
    /// Podolsky length a in metres (with --R-metres).
    #[arg(long)]
    pub a_metres: Option<f64>,
    /// Device radius R in metres (with --a-metres).
    #[arg(long = "R-metres")]
    pub r_metres: Option<f64>,
    #[arg(long)]
    pub s_min: Option<f64>,
    #[arg(long)]
    pub s_max: Option<f64>,
    #[arg(long)]
    pub s_count: Option<usize>,
    #[arg(long)]
    pub quantity: Option<Quantity>,
    #[arg(long)]
    pub method: Option<Method>,
    #[arg(long)]
    pub format: Option<output::OutputFormat>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads (default: available parallelism).
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(clap::Args, Debug)]
pub struct PhaseArgs {
    #[arg(long)]
    pub scenario: Option<Scenario>,
    #[arg(long = "A")]
    pub a_over_r: Option<f64>,
    #[arg(long)]
    pub a_metres: Option<f64>,
    #[arg(long = "R-metres")]
    pub r_metres: Option<f64>,
    /// Magnetic: beam loop radius S = r/R >= 1.
    #[arg(long)]
    pub s: Option<f64>,
    /// Electric: branch offsets S1, S2 in [0, 1).
    #[arg(long)]
    pub s1: Option<f64>,
    #[arg(long)]
    pub s2: Option<f64>,
    #[arg(long)]
    pub method: Option<Method>,
    /// Turn density n (1/m), for SI magnetic output.
    #[arg(long)]
    pub n_per_metre: Option<f64>,
    /// Drive current I (A), for SI magnetic output.
    #[arg(long, allow_hyphen_values = true)]
    pub current_amperes: Option<f64>,
    /// Beam charge q (C), for SI output.
    #[arg(long, allow_hyphen_values = true)]
    pub charge_coulombs: Option<f64>,
    /// Tube surface charge density sigma (C/m^2), for SI electric output.
    #[arg(long, allow_hyphen_values = true)]
    pub sigma_c_m2: Option<f64>,
    /// Transit time t (s), electric scenario.
    #[arg(long)]
    pub transit_time_s: Option<f64>,
    /// Maxwell potential offset between the tubes (V), electric scenario.
    #[arg(long, allow_hyphen_values = true)]
    pub delta_phi_maxwell_volts: Option<f64>,
    #[arg(long)]
    pub format: Option<output::OutputFormat>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(clap::Args, Debug)]
pub struct SweepArgs {
    #[arg(long)]
    pub scenario: Option<Scenario>,
    /// Smallest coupling A in the logarithmic sweep.
    #[arg(long)]
    pub a_min: Option<f64>,
    /// Largest coupling A.
    #[arg(long)]
    pub a_max: Option<f64>,
    /// Number of sweep points.
    #[arg(long)]
    pub a_count: Option<usize>,
    /// Magnetic: loop radius S >= 1.
    #[arg(long)]
    pub s: Option<f64>,
    /// Electric: branch offsets.
    #[arg(long)]
    pub s1: Option<f64>,
    #[arg(long)]
    pub s2: Option<f64>,
    #[arg(long)]
    pub method: Option<Method>,
    #[arg(long)]
    pub format: Option<output::OutputFormat>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(clap::Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    pub level: Option<Level>,
    #[arg(long)]
    pub format: Option<output::OutputFormat>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let file = match config::FileConfig::load(cli.config.as_deref()) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(2);
        }
    };
    let result = match cli.command {
        Command::Profile(args) => commands::profile(args, &file),
        Command::Phase(args) => commands::phase(args, &file),
        Command::Sweep(args) => commands::sweep(args, &file),
        Command::Verify(args) => commands::verify(args, &file),
    };
    match result {
        Ok(code) => code,
        Err(CliError::Usage(m)) => {
            eprintln!("usage error: {m}");
            ExitCode::from(2)
        }
        Err(CliError::Runtime(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
