use num_complex::Complex64;

use super::phase::total_phase_raw;
use crate::error::{Error, Result};
use crate::grid::{MomentumState, MOMENTS_NORM_TOLERANCE};
use crate::model::FrameModel;
use crate::quadrature;

/// Imaginary residual of the numeric route above which the grid is rejected.
pub const IMAGINARY_RESIDUAL_LIMIT: f64 = 1e-4;

/// Default agreement required between the two expectation routes.
pub const CROSS_CHECK_TOLERANCE: f64 = 1e-4;

/// Below this fraction of the peak cell weight a cell's phase step is not
/// checked for resolution.
const NEGLIGIBLE_WEIGHT: f64 = 1e-12;

/// Result of `i hbar <psi, d psi / dp>` on the grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericExpectation {
    /// Real part: the position expectation value.
    pub value: f64,
    /// `|Im - hbar/2 (|psi(p_max)|^2 - |psi(p_min)|^2)|`. The subtracted
    /// boundary flux is the exact imaginary part for a state that does not
    /// vanish at the grid ends, so the remainder is discretization error.
    pub imaginary_residual: f64,
}

fn derivative_of(state: &MomentumState) -> Result<Vec<Complex64>> {
    quadrature::derivative(state.amps(), state.grid().spacing()).ok_or_else(|| {
        Error::Resolution(format!(
            "need at least {} grid nodes for differentiation, got {}",
            quadrature::DERIVATIVE_MIN_NODES,
            state.grid().len()
        ))
    })
}

/// `i hbar <psi, d psi/dp>` with fourth-order finite differences and
/// trapezoid weights, plus its imaginary residual.
pub fn numeric_expectation_detailed(
    state: &MomentumState,
    model: &FrameModel,
) -> Result<NumericExpectation> {
    state.ensure_normalized(MOMENTS_NORM_TOLERANCE)?;
    let hbar = model.hbar();
    let d = derivative_of(state)?;
    let amps = state.amps();
    let overlap: Complex64 = amps
        .iter()
        .zip(&d)
        .zip(state.grid().weights())
        .map(|((a, da), w)| a.conj() * da * w)
        .sum();
    let value = Complex64::new(0.0, hbar) * overlap;
    let flux = 0.5 * hbar * (amps[amps.len() - 1].norm_sqr() - amps[0].norm_sqr());
    Ok(NumericExpectation {
        value: value.re,
        imaginary_residual: (value.im - flux).abs(),
    })
}

/// Position expectation value from the state alone.
pub fn position_expectation_numeric(state: &MomentumState, model: &FrameModel) -> Result<f64> {
    let r = numeric_expectation_detailed(state, model)?;
    if r.imaginary_residual > IMAGINARY_RESIDUAL_LIMIT {
        return Err(Error::Resolution(format!(
            "imaginary residual {:e} of <q> exceeds {IMAGINARY_RESIDUAL_LIMIT:e}",
            r.imaginary_residual
        )));
    }
    Ok(r.value)
}

/// `<q^2> - <q>^2` with `<q^2> = hbar^2 sum |d psi/dp|^2 w`.
pub fn position_variance(state: &MomentumState, model: &FrameModel) -> Result<f64> {
    let mean = position_expectation_numeric(state, model)?;
    let hbar = model.hbar();
    let d = derivative_of(state)?;
    let q2: f64 = d
        .iter()
        .zip(state.grid().weights())
        .map(|(da, w)| da.norm_sqr() * w)
        .sum::<f64>()
        * hbar
        * hbar;
    let var = q2 - mean * mean;
    if var < -1e-9 {
        return Err(Error::Numerical(format!("negative position variance {var:e}")));
    }
    Ok(var.max(0.0))
}

/// Kernel route prepared once for a given initial state.
///
/// The initial amplitudes are rephased to `f(p) = psi(tau_0, p) exp(i p tau_0 / hbar)`.
/// `q0 = i hbar <f, df/dp>` is taken from the phase gradient of `f` cell by cell,
/// and the kernel is integrated exactly across each cell,
/// `integral_cell D dp = Phi(tau, p_{i+1}) - Phi(tau, p_i)`, weighted by the
/// cell average of `|f|^2`. The exact cell integral keeps the square-root cusp
/// of `D` at `p^2 = lambda tau` from degrading the convergence order.
#[derive(Debug, Clone)]
pub struct AnalyticRoute {
    nodes: Vec<f64>,
    cell_weights: Vec<f64>,
    q0: f64,
    lambda: f64,
}

impl AnalyticRoute {
    pub fn new(initial: &MomentumState, model: &FrameModel) -> Result<Self> {
        initial.ensure_normalized(MOMENTS_NORM_TOLERANCE)?;
        let tau0 = initial.tau();
        if tau0 > 0.0 {
            return Err(Error::InvalidState(format!(
                "initial data must be referenced to tau_0 <= 0, got {tau0}"
            )));
        }
        let hbar = model.hbar();
        let nodes = initial.grid().nodes();
        let f: Vec<Complex64> = nodes
            .iter()
            .zip(initial.amps())
            .map(|(&p, &a)| a * Complex64::from_polar(1.0, p * tau0 / hbar))
            .collect();
        let cell_weights: Vec<f64> = f
            .windows(2)
            .map(|c| 0.5 * (c[0].norm_sqr() + c[1].norm_sqr()))
            .collect();
        let peak = cell_weights.iter().cloned().fold(0.0, f64::max);
        let mut q0 = 0.0;
        for (c, &g) in f.windows(2).zip(&cell_weights) {
            let step = (c[1] * c[0].conj()).arg();
            if g > NEGLIGIBLE_WEIGHT * peak && step.abs() > std::f64::consts::FRAC_PI_2 {
                return Err(Error::Resolution(format!(
                    "phase step {step:.3} rad per cell; refine the momentum grid"
                )));
            }
            q0 -= hbar * g * step;
        }
        Ok(Self {
            nodes,
            cell_weights,
            q0,
            lambda: model.lambda(),
        })
    }

    /// `i hbar <f, df/dp>`.
    pub fn q0(&self) -> f64 {
        self.q0
    }

    /// `<q>(tau)`.
    pub fn at(&self, tau: f64) -> f64 {
        let mut prev = total_phase_raw(tau, self.nodes[0], self.lambda);
        let mut shift = 0.0;
        for (p, g) in self.nodes[1..].iter().zip(&self.cell_weights) {
            let next = total_phase_raw(tau, *p, self.lambda);
            shift += g * (next - prev);
            prev = next;
        }
        self.q0 + shift
    }
}

/// Position expectation value at `tau` from the initial data and the
/// displacement kernel.
pub fn position_expectation_analytic(
    initial: &MomentumState,
    tau: f64,
    model: &FrameModel,
) -> Result<f64> {
    Ok(AnalyticRoute::new(initial, model)?.at(tau))
}
