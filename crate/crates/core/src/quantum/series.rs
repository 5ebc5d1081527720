use rayon::prelude::*;

use super::evolve;
use super::expectation::{
    position_expectation_numeric, position_variance, AnalyticRoute, CROSS_CHECK_TOLERANCE,
};
use crate::classical::q_of_tau;
use crate::error::{Error, Result};
use crate::grid::MomentumState;
use crate::model::{ClassicalState, FrameModel};

/// Samples of `<q>(tau)` and companions, ordered by `tau`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpectationSeries {
    taus: Vec<f64>,
    q_mean: Vec<f64>,
    q_var: Option<Vec<f64>>,
    norm: Vec<f64>,
    q_classical: Option<Vec<f64>>,
}

fn strictly_increasing(taus: &[f64]) -> bool {
    taus.iter().all(|t| t.is_finite()) && taus.windows(2).all(|w| w[0] < w[1])
}

impl ExpectationSeries {
    pub fn new(
        taus: Vec<f64>,
        q_mean: Vec<f64>,
        q_var: Option<Vec<f64>>,
        norm: Vec<f64>,
        q_classical: Option<Vec<f64>>,
    ) -> Result<Self> {
        if !strictly_increasing(&taus) {
            return Err(Error::param("taus", "must be finite and strictly increasing"));
        }
        let n = taus.len();
        let lens = [
            Some(q_mean.len()),
            Some(norm.len()),
            q_var.as_ref().map(Vec::len),
            q_classical.as_ref().map(Vec::len),
        ];
        if let Some(found) = lens.into_iter().flatten().find(|&l| l != n) {
            return Err(Error::DimensionMismatch { expected: n, found });
        }
        Ok(Self {
            taus,
            q_mean,
            q_var,
            norm,
            q_classical,
        })
    }

    pub fn taus(&self) -> &[f64] {
        &self.taus
    }

    pub fn q_mean(&self) -> &[f64] {
        &self.q_mean
    }

    pub fn q_var(&self) -> Option<&[f64]> {
        self.q_var.as_deref()
    }

    pub fn norm(&self) -> &[f64] {
        &self.norm
    }

    pub fn q_classical(&self) -> Option<&[f64]> {
        self.q_classical.as_deref()
    }

    pub fn len(&self) -> usize {
        self.taus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.taus.is_empty()
    }
}

/// What [`expectation_series`] records besides `<q>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesOptions {
    pub with_variance: bool,
    /// Classical trajectory to overlay.
    pub classical: Option<ClassicalState>,
    /// Check the numeric route against the analytic one at every
    /// `cross_check_stride`-th sample; 0 disables the check.
    pub cross_check_stride: usize,
    pub cross_check_tolerance: f64,
}

impl Default for SeriesOptions {
    fn default() -> Self {
        Self {
            with_variance: false,
            classical: None,
            cross_check_stride: 1,
            cross_check_tolerance: CROSS_CHECK_TOLERANCE,
        }
    }
}

struct Sample {
    q_mean: f64,
    q_var: Option<f64>,
    norm: f64,
    q_classical: Option<f64>,
}

/// Evaluates `<q>(tau)` by the kernel route at every `tau`, cross-checked
/// against the numeric route.
///
/// Samples are evaluated in parallel; each uses a fixed summation order, so
/// the result is identical to a sequential run.
pub fn expectation_series(
    initial: &MomentumState,
    taus: &[f64],
    model: &FrameModel,
    options: &SeriesOptions,
) -> Result<ExpectationSeries> {
    if !strictly_increasing(taus) {
        return Err(Error::param("taus", "must be finite and strictly increasing"));
    }
    let route = AnalyticRoute::new(initial, model)?;
    let samples: Vec<Result<Sample>> = taus
        .par_iter()
        .enumerate()
        .map(|(i, &tau)| {
            let state = evolve(initial, tau, model);
            let q_mean = route.at(tau);
            let checked = options.cross_check_stride > 0 && i % options.cross_check_stride == 0;
            if checked {
                let numeric = position_expectation_numeric(&state, model)?;
                if (numeric - q_mean).abs() > options.cross_check_tolerance {
                    return Err(Error::Inconsistent {
                        tau,
                        analytic: q_mean,
                        numeric,
                    });
                }
            }
            let q_var = if options.with_variance {
                Some(position_variance(&state, model)?)
            } else {
                None
            };
            Ok(Sample {
                q_mean,
                q_var,
                norm: state.norm_squared().sqrt(),
                q_classical: options.classical.map(|c| q_of_tau(tau, &c, model)),
            })
        })
        .collect();

    let mut q_mean = Vec::with_capacity(taus.len());
    let mut q_var = Vec::with_capacity(taus.len());
    let mut norm = Vec::with_capacity(taus.len());
    let mut q_classical = Vec::with_capacity(taus.len());
    for s in samples {
        let s = s?;
        q_mean.push(s.q_mean);
        norm.push(s.norm);
        q_var.extend(s.q_var);
        q_classical.extend(s.q_classical);
    }
    ExpectationSeries::new(
        taus.to_vec(),
        q_mean,
        options.with_variance.then_some(q_var),
        norm,
        options.classical.is_some().then_some(q_classical),
    )
}
