//! Momentum grid and the momentum-space state container.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{FrameModel, GaussianMode, GaussianSpec};
use crate::quadrature;

/// Tolerance on the squared norm of a stored state.
pub const NORM_TOLERANCE: f64 = 1e-9;

/// Squared-norm deviation above which [`moments`] rejects a state.
pub const MOMENTS_NORM_TOLERANCE: f64 = 1e-6;

/// Minimum number of grid points across six momentum standard deviations.
pub const MIN_POINTS_PER_SIX_SIGMA: f64 = 16.0;

/// Uniform momentum grid `p_min ..= p_max` with `n` nodes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentumGrid {
    p_min: f64,
    p_max: f64,
    n: usize,
}

impl MomentumGrid {
    pub fn new(p_min: f64, p_max: f64, n: usize) -> Result<Self> {
        if !(p_min.is_finite() && p_max.is_finite()) {
            return Err(Error::param("grid", "bounds must be finite"));
        }
        if p_min >= p_max {
            return Err(Error::param(
                "grid",
                format!("p_min ({p_min}) must be below p_max ({p_max})"),
            ));
        }
        if n < 2 {
            return Err(Error::param("grid", format!("need n >= 2, got {n}")));
        }
        Ok(Self { p_min, p_max, n })
    }

    pub fn p_min(&self) -> f64 {
        self.p_min
    }

    pub fn p_max(&self) -> f64 {
        self.p_max
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        (self.p_max - self.p_min) / (self.n - 1) as f64
    }

    pub fn nodes(&self) -> Vec<f64> {
        quadrature::linspace(self.p_min, self.p_max, self.n)
    }

    pub fn weights(&self) -> Vec<f64> {
        quadrature::trapezoid_weights(self.n, self.spacing())
    }

    /// Largest `|p|` on the grid.
    pub fn max_abs_momentum(&self) -> f64 {
        self.p_min.abs().max(self.p_max.abs())
    }
}

/// Complex amplitudes `psi(tau, p_i)` on a [`MomentumGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct MomentumState {
    grid: MomentumGrid,
    amps: Vec<Complex64>,
    tau: f64,
}

impl MomentumState {
    /// Wraps amplitudes that are already normalized (trapezoid rule, within
    /// [`NORM_TOLERANCE`]).
    pub fn new(grid: MomentumGrid, amps: Vec<Complex64>, tau: f64) -> Result<Self> {
        let state = Self::unchecked(grid, amps, tau)?;
        let n2 = state.norm_squared();
        if (n2 - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::InvalidState(format!("squared norm {n2} differs from 1")));
        }
        Ok(state)
    }

    /// Rescales the amplitudes to unit norm.
    pub fn normalized(grid: MomentumGrid, amps: Vec<Complex64>, tau: f64) -> Result<Self> {
        let mut state = Self::unchecked(grid, amps, tau)?;
        let n2 = state.norm_squared();
        if !(n2.is_finite() && n2 > 0.0) {
            return Err(Error::InvalidState(format!("cannot normalize, squared norm {n2}")));
        }
        let s = 1.0 / n2.sqrt();
        state.amps.iter_mut().for_each(|a| *a *= s);
        Ok(state)
    }

    fn unchecked(grid: MomentumGrid, amps: Vec<Complex64>, tau: f64) -> Result<Self> {
        if amps.len() != grid.len() {
            return Err(Error::DimensionMismatch {
                expected: grid.len(),
                found: amps.len(),
            });
        }
        if !tau.is_finite() {
            return Err(Error::param("tau", "must be finite"));
        }
        Ok(Self { grid, amps, tau })
    }

    /// Same grid, new amplitudes and scale value. Used by pure-phase evolution.
    pub(crate) fn with_amps(&self, amps: Vec<Complex64>, tau: f64) -> Self {
        debug_assert_eq!(amps.len(), self.grid.len());
        Self {
            grid: self.grid,
            amps,
            tau,
        }
    }

    pub fn grid(&self) -> &MomentumGrid {
        &self.grid
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// `sum |psi_i|^2 w_i` with trapezoid weights.
    pub fn norm_squared(&self) -> f64 {
        self.probabilities().iter().sum()
    }

    /// Quadrature-weighted probabilities `|psi_i|^2 w_i`.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amps
            .iter()
            .zip(self.grid.weights())
            .map(|(a, w)| a.norm_sqr() * w)
            .collect()
    }

    pub(crate) fn ensure_normalized(&self, tol: f64) -> Result<()> {
        let n2 = self.norm_squared();
        if (n2 - 1.0).abs() > tol {
            return Err(Error::InvalidState(format!(
                "squared norm {n2} deviates from 1 by more than {tol:e}"
            )));
        }
        Ok(())
    }
}

/// Builds the minimum-uncertainty packet
/// `exp(-sigma^2 (p - p0)^2 / hbar^2) exp(-i p q0 / hbar)` on `grid`,
/// normalized, referenced to `tau = 0`.
pub fn make_gaussian(
    spec: GaussianSpec,
    grid: MomentumGrid,
    model: &FrameModel,
    mode: GaussianMode,
) -> Result<MomentumState> {
    spec.validate()?;
    if mode == GaussianMode::TruncatePositive && grid.p_min() <= 0.0 {
        return Err(Error::param(
            "grid",
            format!("positive-support mode needs p_min > 0, got {}", grid.p_min()),
        ));
    }
    let hbar = model.hbar();
    let sigma_p = spec.momentum_spread(hbar);
    let points = 6.0 * sigma_p / grid.spacing();
    if points < MIN_POINTS_PER_SIX_SIGMA {
        return Err(Error::Resolution(format!(
            "{points:.1} grid points across 6 sigma_p = {:.4}, need at least {MIN_POINTS_PER_SIX_SIGMA}",
            6.0 * sigma_p
        )));
    }
    let a = spec.sigma * spec.sigma / (hbar * hbar);
    let amps = grid
        .nodes()
        .into_iter()
        .map(|p| {
            let d = p - spec.p0;
            Complex64::from_polar((-a * d * d).exp(), -p * spec.q0 / hbar)
        })
        .collect();
    MomentumState::normalized(grid, amps, 0.0)
}

/// First two momentum moments and the variance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments {
    pub mean_p: f64,
    pub mean_p2: f64,
    pub var_p: f64,
}

/// Momentum moments of a normalized state.
pub fn moments(state: &MomentumState) -> Result<Moments> {
    state.ensure_normalized(MOMENTS_NORM_TOLERANCE)?;
    let nodes = state.grid().nodes();
    let prob = state.probabilities();
    let mut mean_p = 0.0;
    let mut mean_p2 = 0.0;
    for (p, w) in nodes.iter().zip(&prob) {
        mean_p += w * p;
        mean_p2 += w * p * p;
    }
    let var_p = nodes
        .iter()
        .zip(&prob)
        .map(|(p, w)| w * (p - mean_p) * (p - mean_p))
        .sum();
    Ok(Moments {
        mean_p,
        mean_p2,
        var_p,
    })
}
