//! Command-line front end for the turning-frame simulator.
//!
//! `turning-frame <command> [--config run.json] [overrides]` runs one
//! pipeline and writes CSV/JSON artifacts to the output directory. Flags
//! override the corresponding config fields. The process exit code is
//! 0 on success, 2 for configuration or validation errors, 3 when the
//! momentum grid cannot resolve the state, 4 when the series never becomes
//! asymptotic, and 1 for i/o or other runtime failures.

pub mod commands;
pub mod config;
pub mod error;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use turning_frame::lab::{PhysicalScenario, AMU, STANDARD_GRAVITY};
use turning_frame::ShiftConvention;

pub use commands::Outcome;
pub use config::{Config, ModeName, OUTPUT_DIR_ENV};
pub use error::CliError;

#[derive(Debug, Parser)]
#[command(name = "turning-frame", version, about = "Relational dynamics through a quantum frame's turning point")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classical trajectory: classical.csv with tau,phi,q_classical.
    Classical(RunArgs),
    /// Momentum (and optionally position) snapshots of the evolved Gaussian.
    Evolve(RunArgs),
    /// Expectation series and displacement-shift report.
    Shift(RunArgs),
    /// Order-of-magnitude laboratory estimates, printed as JSON.
    Estimate(EstimateArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ConventionArg {
    MeanMomentum,
    MeanSquareMomentum,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    TruncatePositive,
    Raw,
}

#[derive(Debug, Clone, Default, Args)]
#[command(allow_negative_numbers = true)]
pub struct RunArgs {
    /// JSON config with sections model, state, grid, tau, output.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output directory (default: config output.dir, then $TURNING_FRAME_OUTPUT_DIR, then .).
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long)]
    pub hbar: Option<f64>,
    #[arg(long, value_enum)]
    pub convention: Option<ConventionArg>,
    #[arg(long)]
    pub q0: Option<f64>,
    #[arg(long)]
    pub p0: Option<f64>,
    #[arg(long)]
    pub sigma: Option<f64>,
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    #[arg(long)]
    pub p_min: Option<f64>,
    #[arg(long)]
    pub p_max: Option<f64>,
    /// Number of momentum grid points.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub q_min: Option<f64>,
    #[arg(long)]
    pub q_max: Option<f64>,
    #[arg(long)]
    pub q_n: Option<usize>,
    #[arg(long)]
    pub tau_start: Option<f64>,
    #[arg(long)]
    pub tau_end: Option<f64>,
    #[arg(long)]
    pub tau_samples: Option<usize>,
    /// Comma-separated snapshot values for `evolve`.
    #[arg(long, value_delimiter = ',')]
    pub snapshots: Option<Vec<f64>>,
}

impl RunArgs {
    /// Loads the config file (or defaults) and applies the flag overrides.
    pub fn resolve(&self) -> Result<Config, CliError> {
        let mut c = match &self.config {
            Some(path) => Config::load(path)?,
            None => Config::default(),
        };
        macro_rules! set {
            ($($flag:ident => $($field:ident).+),* $(,)?) => {
                $(if let Some(v) = self.$flag.clone() { c.$($field).+ = v.into(); })*
            };
        }
        set! {
            lambda => model.lambda,
            hbar => model.hbar,
            q0 => state.q0,
            p0 => state.p0,
            sigma => state.sigma,
            p_min => grid.p_min,
            p_max => grid.p_max,
            n => grid.n,
            tau_start => tau.start,
            tau_end => tau.end,
            tau_samples => tau.samples,
            snapshots => tau.snapshots,
            out_dir => output.dir,
        }
        if let Some(v) = self.q_min {
            c.grid.q_min = Some(v);
        }
        if let Some(v) = self.q_max {
            c.grid.q_max = Some(v);
        }
        if let Some(v) = self.q_n {
            c.grid.q_n = Some(v);
        }
        if let Some(v) = self.convention {
            c.model.convention = match v {
                ConventionArg::MeanMomentum => ShiftConvention::MeanMomentum,
                ConventionArg::MeanSquareMomentum => ShiftConvention::MeanSquareMomentum,
            };
        }
        if let Some(v) = self.mode {
            c.state.mode = match v {
                ModeArg::TruncatePositive => ModeName::TruncatePositive,
                ModeArg::Raw => ModeName::Raw,
            };
        }
        Ok(c)
    }
}

#[derive(Debug, Clone, Args)]
#[command(group = clap::ArgGroup::new("mass").required(true).args(["mass_amu", "mass_kg"]))]
pub struct EstimateArgs {
    /// Particle mass in atomic mass units.
    #[arg(long)]
    pub mass_amu: Option<f64>,
    /// Particle mass in kilograms.
    #[arg(long)]
    pub mass_kg: Option<f64>,
    /// Temperature in kelvin.
    #[arg(long)]
    pub temp_k: f64,
    /// Acceleration of the frame particle in m/s^2.
    #[arg(long, default_value_t = STANDARD_GRAVITY)]
    pub gravity: f64,
}

impl EstimateArgs {
    pub fn scenario(&self) -> Result<PhysicalScenario, CliError> {
        let mass = match (self.mass_amu, self.mass_kg) {
            (Some(amu), None) => amu * AMU,
            (None, Some(kg)) => kg,
            _ => return Err(CliError::Config("give exactly one of --mass-amu, --mass-kg".into())),
        };
        Ok(PhysicalScenario::new(mass, self.temp_k, self.gravity)?)
    }
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Classical(a) => {
            let c = a.resolve()?;
            commands::classical(&c, &c.output_dir())
        }
        Command::Evolve(a) => {
            let c = a.resolve()?;
            commands::evolve_snapshots(&c, &c.output_dir())
        }
        Command::Shift(a) => {
            let c = a.resolve()?;
            commands::shift(&c, &c.output_dir())
        }
        Command::Estimate(a) => commands::estimate(&a.scenario()?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("turning-frame").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn overrides_replace_config_values() {
        let cli = parse(&["shift", "--lambda", "2", "--tau-start", "-2", "--snapshots", "0.5,-1", "--convention", "mean-square-momentum"]);
        let Command::Shift(a) = &cli.command else { panic!() };
        let c = a.resolve().unwrap();
        assert_eq!(c.model.lambda, 2.0);
        assert_eq!(c.tau.start, -2.0);
        assert_eq!(c.tau.snapshots, vec![0.5, -1.0]);
        assert_eq!(c.model.convention, ShiftConvention::MeanSquareMomentum);
        assert_eq!(c.grid.n, 4096);
    }

    #[test]
    fn estimate_needs_a_mass() {
        let r = Cli::try_parse_from(["turning-frame", "estimate", "--temp-k", "1"]);
        assert!(r.is_err());
        let r = Cli::try_parse_from(["turning-frame", "estimate", "--mass-amu", "1", "--mass-kg", "1", "--temp-k", "1"]);
        assert!(r.is_err());
    }

    #[test]
    fn zero_gravity_is_a_validation_error() {
        let cli = parse(&["estimate", "--mass-amu", "100", "--temp-k", "1e-6", "--gravity", "0"]);
        assert_eq!(run(&cli).unwrap_err().exit_code(), 2);
    }
}
