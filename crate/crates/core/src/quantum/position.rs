use num_complex::Complex64;
use rayon::prelude::*;

use super::expectation::{position_expectation_numeric, position_variance};
use crate::error::{Error, Result};
use crate::grid::MomentumState;
use crate::model::FrameModel;
use crate::quadrature;

/// Uniform grid of positions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PositionGrid {
    q_min: f64,
    q_max: f64,
    n: usize,
}

impl PositionGrid {
    pub fn new(q_min: f64, q_max: f64, n: usize) -> Result<Self> {
        if !(q_min.is_finite() && q_max.is_finite()) || q_min >= q_max {
            return Err(Error::param("q_grid", format!("need q_min < q_max, got [{q_min}, {q_max}]")));
        }
        if n < 2 {
            return Err(Error::param("q_grid", format!("need n >= 2, got {n}")));
        }
        Ok(Self { q_min, q_max, n })
    }

    pub fn q_min(&self) -> f64 {
        self.q_min
    }

    pub fn q_max(&self) -> f64 {
        self.q_max
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        (self.q_max - self.q_min) / (self.n - 1) as f64
    }

    pub fn nodes(&self) -> Vec<f64> {
        quadrature::linspace(self.q_min, self.q_max, self.n)
    }
}

/// Position-space wave function sampled on a [`PositionGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct PositionProfile {
    pub q: Vec<f64>,
    pub amps: Vec<Complex64>,
    /// `sum |psi(q)|^2 dq` (trapezoid).
    pub norm: f64,
    /// False when the grid misses part of `<q> +- 6 dq`.
    pub coverage_ok: bool,
}

impl PositionProfile {
    pub fn density(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Mean, variance and skewness of `|psi(q)|^2`, normalized by [`Self::norm`].
    pub fn shape(&self) -> (f64, f64, f64) {
        let h = self.q[1] - self.q[0];
        let rho = self.density();
        let moment = |f: &dyn Fn(f64) -> f64| {
            let vals: Vec<f64> = self.q.iter().zip(&rho).map(|(&q, r)| r * f(q)).collect();
            quadrature::trapezoid(&vals, h) / self.norm
        };
        let mean = moment(&|q| q);
        let var = moment(&|q| (q - mean).powi(2));
        let third = moment(&|q| (q - mean).powi(3));
        (mean, var, third / var.powf(1.5))
    }
}

/// `psi(q) = (2 pi hbar)^(-1/2) integral psi(p) exp(i p q / hbar) dp` by
/// trapezoid quadrature over the momentum grid.
pub fn to_position_representation(
    state: &MomentumState,
    q_grid: &PositionGrid,
    model: &FrameModel,
) -> Result<PositionProfile> {
    let hbar = model.hbar();
    let mean = position_expectation_numeric(state, model)?;
    let spread = position_variance(state, model)?.sqrt();
    let coverage_ok = q_grid.q_min() <= mean - 6.0 * spread && q_grid.q_max() >= mean + 6.0 * spread;

    let nodes = state.grid().nodes();
    let weighted: Vec<Complex64> = state
        .amps()
        .iter()
        .zip(state.grid().weights())
        .map(|(a, w)| a * w)
        .collect();
    let prefactor = 1.0 / (2.0 * std::f64::consts::PI * hbar).sqrt();
    let q = q_grid.nodes();
    let amps: Vec<Complex64> = q
        .par_iter()
        .map(|&x| {
            let s: Complex64 = nodes
                .iter()
                .zip(&weighted)
                .map(|(&p, a)| a * Complex64::from_polar(1.0, p * x / hbar))
                .sum();
            s * prefactor
        })
        .collect();
    let rho: Vec<f64> = amps.iter().map(|a| a.norm_sqr()).collect();
    let norm = quadrature::trapezoid(&rho, q_grid.spacing());
    Ok(PositionProfile {
        q,
        amps,
        norm,
        coverage_ok,
    })
}
