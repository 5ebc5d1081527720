//! Exact momentum-space evolution through the turning point.
//!
//! A state `f(p)` referenced to `tau_0 <= 0` evolves by the pointwise phase
//! `exp(-i [Phi(tau, p) - Phi(tau_0, p)] / hbar)`. The position expectation
//! value is available by two independent routes:
//!
//! * [`position_expectation_numeric`] differentiates the evolved state,
//! * [`position_expectation_analytic`] integrates the displacement kernel
//!   against `|f(p)|^2`.

mod expectation;
mod phase;
mod position;
mod series;

pub use expectation::{
    numeric_expectation_detailed, position_expectation_analytic, position_expectation_numeric,
    position_variance, AnalyticRoute, NumericExpectation, CROSS_CHECK_TOLERANCE,
    IMAGINARY_RESIDUAL_LIMIT,
};
pub use phase::{
    displacement_kernel, displacement_kernel_raw, phase_theta, total_phase, total_phase_raw,
    PhaseBranch,
};
pub use position::{to_position_representation, PositionGrid, PositionProfile};
pub use series::{expectation_series, ExpectationSeries, SeriesOptions};

use num_complex::Complex64;

use crate::grid::MomentumState;
use crate::model::FrameModel;

/// Evolves `initial` from its own scale value to `tau`.
///
/// The update is a pointwise phase, so `|psi(p)|` is unchanged node by node.
/// Nodes with `p <= 0` (raw grids) use the same formulas verbatim.
pub fn evolve(initial: &MomentumState, tau: f64, model: &FrameModel) -> MomentumState {
    let lambda = model.lambda();
    let hbar = model.hbar();
    let tau_in = initial.tau();
    if tau == tau_in {
        return initial.clone();
    }
    let amps = initial
        .grid()
        .nodes()
        .into_iter()
        .zip(initial.amps())
        .map(|(p, &a)| {
            let dphi = total_phase_raw(tau, p, lambda) - total_phase_raw(tau_in, p, lambda);
            a * Complex64::from_polar(1.0, -dphi / hbar)
        })
        .collect();
    initial.with_amps(amps, tau)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{make_gaussian, MomentumGrid};
    use crate::model::{GaussianMode, GaussianSpec};

    fn reference_state(model: &FrameModel) -> MomentumState {
        let grid = MomentumGrid::new(0.01, 5.0, 1024).unwrap();
        make_gaussian(
            GaussianSpec::new(4.0, 1.25, 1.0).unwrap(),
            grid,
            model,
            GaussianMode::TruncatePositive,
        )
        .unwrap()
    }

    #[test]
    fn zero_step_is_identity() {
        let model = FrameModel::new(4.0, 1.0).unwrap();
        let s = reference_state(&model);
        assert_eq!(evolve(&s, 0.0, &model), s);
    }

    #[test]
    fn evolution_is_pointwise_unitary() {
        let model = FrameModel::new(4.0, 1.0).unwrap();
        let s = reference_state(&model);
        for tau in [-2.0, 0.3, 0.7, 1.5, 20.0] {
            let e = evolve(&s, tau, &model);
            assert_eq!(e.tau(), tau);
            for (a, b) in s.amps().iter().zip(e.amps()) {
                assert!((a.norm() - b.norm()).abs() <= 1e-15 * a.norm().max(1.0));
            }
            assert!((e.norm_squared() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn evolution_composes() {
        let model = FrameModel::new(4.0, 1.0).unwrap();
        let s = reference_state(&model);
        let direct = evolve(&s, 1.3, &model);
        let stepped = evolve(&evolve(&s, 0.4, &model), 1.3, &model);
        for (a, b) in direct.amps().iter().zip(stepped.amps()) {
            assert!((a - b).norm() < 1e-12);
        }
    }
}
