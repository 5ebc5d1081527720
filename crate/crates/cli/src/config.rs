//! JSON run configuration. Every field has a default, so an empty document
//! (or no file at all) reproduces the reference Gaussian run.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use turning_frame::{FrameModel, GaussianMode, GaussianSpec, MomentumGrid, ShiftConvention};

use crate::error::CliError;

/// Environment variable naming the default output directory.
pub const OUTPUT_DIR_ENV: &str = "TURNING_FRAME_OUTPUT_DIR";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ModelSection {
    pub lambda: f64,
    pub hbar: f64,
    pub convention: ShiftConvention,
}

impl Default for ModelSection {
    fn default() -> Self {
        Self {
            lambda: 4.0,
            hbar: 1.0,
            convention: ShiftConvention::MeanMomentum,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeName {
    #[default]
    TruncatePositive,
    Raw,
}

impl From<ModeName> for GaussianMode {
    fn from(m: ModeName) -> Self {
        match m {
            ModeName::TruncatePositive => GaussianMode::TruncatePositive,
            ModeName::Raw => GaussianMode::Raw,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct StateSection {
    pub q0: f64,
    pub p0: f64,
    pub sigma: f64,
    pub mode: ModeName,
}

impl Default for StateSection {
    fn default() -> Self {
        Self {
            q0: 4.0,
            p0: 1.25,
            sigma: 1.0,
            mode: ModeName::TruncatePositive,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridSection {
    pub p_min: f64,
    pub p_max: f64,
    pub n: usize,
    /// Optional position grid for `evolve`; all three must be given.
    pub q_min: Option<f64>,
    pub q_max: Option<f64>,
    pub q_n: Option<usize>,
}

impl Default for GridSection {
    fn default() -> Self {
        Self {
            p_min: 0.01,
            p_max: 5.0,
            n: 4096,
            q_min: None,
            q_max: None,
            q_n: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TauSection {
    pub start: f64,
    pub end: f64,
    pub samples: usize,
    /// Snapshot values for `evolve`.
    pub snapshots: Vec<f64>,
}

impl Default for TauSection {
    fn default() -> Self {
        Self {
            start: -1.0,
            end: 16.0,
            samples: 341,
            snapshots: vec![0.5, 0.75, 1.0],
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputSection {
    pub dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub model: ModelSection,
    pub state: StateSection,
    pub grid: GridSection,
    pub tau: TauSection,
    pub output: OutputSection,
}

impl Config {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(format!("config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn frame_model(&self) -> Result<FrameModel, CliError> {
        Ok(FrameModel::with_convention(
            self.model.lambda,
            self.model.hbar,
            self.model.convention,
        )?)
    }

    pub fn gaussian(&self) -> Result<GaussianSpec, CliError> {
        Ok(GaussianSpec::new(self.state.q0, self.state.p0, self.state.sigma)?)
    }

    pub fn momentum_grid(&self) -> Result<MomentumGrid, CliError> {
        Ok(MomentumGrid::new(self.grid.p_min, self.grid.p_max, self.grid.n)?)
    }

    /// Evenly spaced `tau` samples from `tau.start` to `tau.end` inclusive.
    pub fn tau_samples(&self) -> Result<Vec<f64>, CliError> {
        let TauSection {
            start, end, samples, ..
        } = self.tau;
        if !(start.is_finite() && end.is_finite()) || end <= start {
            return Err(CliError::Config(format!(
                "tau.end must exceed tau.start, got [{start}, {end}]"
            )));
        }
        if samples < 2 {
            return Err(CliError::Config(format!("tau.samples must be >= 2, got {samples}")));
        }
        let step = (end - start) / (samples - 1) as f64;
        Ok((0..samples)
            .map(|i| if i + 1 == samples { end } else { start + step * i as f64 })
            .collect())
    }

    /// Resolves the output directory: the config value, then the environment
    /// variable, then the working directory.
    pub fn output_dir(&self) -> PathBuf {
        self.output
            .dir
            .clone()
            .or_else(|| std::env::var_os(OUTPUT_DIR_ENV).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("."))
    }
}
