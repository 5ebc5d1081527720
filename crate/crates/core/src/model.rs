//! Parameters shared by every formula in the crate.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How the classical momentum `p` is identified with quantum moments when
/// classical and quantum shifts are compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShiftConvention {
    /// Classical `p^2` is read as `<p>^2`.
    #[default]
    MeanMomentum,
    /// Classical `p^2` is read as `<p^2>`.
    MeanSquareMomentum,
}

/// Frame potential slope, Planck constant and comparison convention.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameModel {
    lambda: f64,
    hbar: f64,
    convention: ShiftConvention,
}

impl FrameModel {
    pub fn new(lambda: f64, hbar: f64) -> Result<Self> {
        Self::with_convention(lambda, hbar, ShiftConvention::default())
    }

    pub fn with_convention(lambda: f64, hbar: f64, convention: ShiftConvention) -> Result<Self> {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::param("lambda", format!("must be > 0, got {lambda}")));
        }
        if !(hbar.is_finite() && hbar > 0.0) {
            return Err(Error::param("hbar", format!("must be > 0, got {hbar}")));
        }
        Ok(Self {
            lambda,
            hbar,
            convention,
        })
    }

    /// Model units with `hbar = 1`.
    pub fn unit_hbar(lambda: f64) -> Result<Self> {
        Self::new(lambda, 1.0)
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn convention(&self) -> ShiftConvention {
        self.convention
    }
}

/// Initial position and conserved momentum of the classical system `H = p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalState {
    q0: f64,
    p: f64,
}

impl ClassicalState {
    pub fn new(q0: f64, p: f64) -> Result<Self> {
        if !q0.is_finite() {
            return Err(Error::param("q0", "must be finite"));
        }
        if !(p.is_finite() && p > 0.0) {
            return Err(Error::param("p", format!("must be > 0, got {p}")));
        }
        Ok(Self { q0, p })
    }

    pub fn q0(&self) -> f64 {
        self.q0
    }

    pub fn p(&self) -> f64 {
        self.p
    }
}

/// Minimum-uncertainty Gaussian: position centre, momentum centre and
/// position-space standard deviation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianSpec {
    pub q0: f64,
    pub p0: f64,
    pub sigma: f64,
}

impl GaussianSpec {
    pub fn new(q0: f64, p0: f64, sigma: f64) -> Result<Self> {
        let spec = Self { q0, p0, sigma };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.sigma.is_finite() && self.sigma > 0.0) {
            return Err(Error::param("sigma", format!("must be > 0, got {}", self.sigma)));
        }
        if !self.q0.is_finite() || !self.p0.is_finite() {
            return Err(Error::param("q0/p0", "must be finite"));
        }
        Ok(())
    }

    /// Momentum standard deviation `hbar / (2 sigma)`.
    pub fn momentum_spread(&self, hbar: f64) -> f64 {
        hbar / (2.0 * self.sigma)
    }
}

/// Treatment of non-positive momenta when a Gaussian is put on a grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GaussianMode {
    /// Support restricted to `p > 0`, then renormalized.
    #[default]
    TruncatePositive,
    /// Formulas applied verbatim on whatever grid is supplied.
    Raw,
}
