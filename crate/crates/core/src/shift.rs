//! Displacement shifts left behind by the turning point.
//!
//! After every momentum component has passed back through the frame origin
//! the expectation value moves freely again, `<q>(tau) = a + tau`. The shift
//! is the intercept `a` relative to the initial position.

use serde::Serialize;

use crate::classical::classical_shift;
use crate::error::{Error, Result};
use crate::grid::{moments, MomentumState};
use crate::model::{FrameModel, ShiftConvention};
use crate::quantum::{AnalyticRoute, ExpectationSeries};

/// Minimum number of asymptotic samples for a fit.
pub const MIN_ASYMPTOTIC_SAMPLES: usize = 3;
/// Fitted slopes further than this from one are rejected.
pub const SLOPE_REJECT: f64 = 1e-2;
/// Fitted slopes within this distance from one are flagged as asymptotic.
pub const SLOPE_ACCEPT: f64 = 1e-3;

/// `-2 <p^2> / lambda`.
pub fn quantum_shift_analytic(mean_p2: f64, model: &FrameModel) -> Result<f64> {
    if !(mean_p2.is_finite() && mean_p2 > 0.0) {
        return Err(Error::Domain(format!("<p^2> must be > 0, got {mean_p2}")));
    }
    Ok(-2.0 * mean_p2 / model.lambda())
}

/// Difference between quantum and classical shifts, using the model's
/// convention for the classical momentum.
pub fn total_shift(mean_p: f64, var_p: f64, model: &FrameModel) -> Result<f64> {
    total_shift_with(mean_p, var_p, model, model.convention())
}

pub fn total_shift_with(
    mean_p: f64,
    var_p: f64,
    model: &FrameModel,
    convention: ShiftConvention,
) -> Result<f64> {
    if !(var_p.is_finite() && var_p >= 0.0) {
        return Err(Error::Domain(format!("momentum variance must be >= 0, got {var_p}")));
    }
    let lambda = model.lambda();
    let p2 = mean_p * mean_p;
    Ok(match convention {
        ShiftConvention::MeanMomentum => -4.0 * p2 / lambda - 2.0 * var_p / lambda,
        ShiftConvention::MeanSquareMomentum => -4.0 * (p2 + var_p) / lambda,
    })
}

/// Least-squares line `intercept + slope * x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineFit {
    pub intercept: f64,
    pub slope: f64,
}

pub fn fit_line(xs: &[f64], ys: &[f64]) -> Option<LineFit> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return None;
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    Some(LineFit {
        intercept: my - slope * mx,
        slope,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShiftReport {
    pub convention: ShiftConvention,
    /// `i hbar <f, df/dp>` of the initial data.
    pub q0: f64,
    pub delta_q_classical: f64,
    pub delta_q_quantum_analytic: f64,
    pub delta_q_quantum_numeric: f64,
    /// `delta_q_quantum_numeric - delta_q_classical`.
    pub delta_q_total: f64,
    /// Start of the fit window, `2 max|p|^2 / lambda`.
    pub extrapolation_tau: f64,
    pub fit_samples: usize,
    pub slope: f64,
    /// `|slope - 1| <= 1e-3`.
    pub slope_within_tolerance: bool,
    /// `|delta_q_quantum_analytic - delta_q_quantum_numeric|`.
    pub residual: f64,
}

/// Extrapolates the asymptotic part of `series` back to `tau = 0`.
///
/// The window holds every sample with `tau >= 2 max|p|^2 / lambda`, where
/// every grid component follows `q0 + tau - 2 p^2 / lambda` exactly.
pub fn extract_shift_numeric(
    series: &ExpectationSeries,
    initial: &MomentumState,
    model: &FrameModel,
) -> Result<ShiftReport> {
    let p_max = initial.grid().max_abs_momentum();
    let required_tau = 2.0 * p_max * p_max / model.lambda();
    let (xs, ys): (Vec<f64>, Vec<f64>) = series
        .taus()
        .iter()
        .zip(series.q_mean())
        .filter(|(t, _)| **t >= required_tau)
        .map(|(t, q)| (*t, *q))
        .unzip();
    if xs.len() < MIN_ASYMPTOTIC_SAMPLES {
        return Err(Error::InsufficientAsymptoticSamples {
            required_tau,
            needed: MIN_ASYMPTOTIC_SAMPLES,
            found: xs.len(),
        });
    }
    let fit = fit_line(&xs, &ys).ok_or_else(|| Error::Numerical("degenerate line fit".into()))?;
    if (fit.slope - 1.0).abs() > SLOPE_REJECT {
        return Err(Error::NotAsymptotic {
            slope: fit.slope,
            required_tau,
        });
    }

    let q0 = AnalyticRoute::new(initial, model)?.q0();
    let m = moments(initial)?;
    let analytic = quantum_shift_analytic(m.mean_p2, model)?;
    let numeric = fit.intercept - q0;
    let classical_p = match model.convention() {
        ShiftConvention::MeanMomentum => m.mean_p,
        ShiftConvention::MeanSquareMomentum => m.mean_p2.sqrt(),
    };
    let delta_q_classical = classical_shift(classical_p, model)?;
    Ok(ShiftReport {
        convention: model.convention(),
        q0,
        delta_q_classical,
        delta_q_quantum_analytic: analytic,
        delta_q_quantum_numeric: numeric,
        delta_q_total: numeric - delta_q_classical,
        extrapolation_tau: required_tau,
        fit_samples: xs.len(),
        slope: fit.slope,
        slope_within_tolerance: (fit.slope - 1.0).abs() <= SLOPE_ACCEPT,
        residual: (analytic - numeric).abs(),
    })
}
