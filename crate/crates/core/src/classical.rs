//! Closed-form classical solutions of the constraint
//! `-p_phi^2 - lambda phi theta(phi) + H^2 = 0` for the system `H = p`.
//!
//! Piecewise formulas dispatch on half-open intervals; a boundary value
//! belongs to the earlier branch. All joins are continuous.

use crate::error::{Error, Result};
use crate::model::{ClassicalState, FrameModel};
use crate::quantum::PhaseBranch;

/// Point on a constraint orbit at gauge parameter `epsilon`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaugeSample {
    pub epsilon: f64,
    pub phi: f64,
    pub p_phi: f64,
}

impl GaugeSample {
    /// `-p_phi^2 - lambda phi theta(phi) + h^2`.
    pub fn constraint_residual(&self, h: f64, model: &FrameModel) -> f64 {
        let potential = if self.phi > 0.0 {
            model.lambda() * self.phi
        } else {
            0.0
        };
        -self.p_phi * self.p_phi - potential + h * h
    }
}

fn require_positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be > 0, got {v}")))
    }
}

/// Frame value and momentum along the orbit with `phi(0) = 0`.
pub fn gauge_solution(h: f64, model: &FrameModel, epsilon: f64) -> Result<GaugeSample> {
    require_positive("H", h)?;
    let lambda = model.lambda();
    let exit = 2.0 * h / lambda;
    let (phi, p_phi) = if epsilon <= 0.0 {
        (2.0 * h * epsilon, -h)
    } else if epsilon <= exit {
        (-lambda * epsilon * epsilon + 2.0 * h * epsilon, lambda * epsilon - h)
    } else {
        (-2.0 * h * epsilon + 4.0 * h * h / lambda, h)
    };
    Ok(GaugeSample {
        epsilon,
        phi,
        p_phi,
    })
}

/// `H^2 / lambda`.
pub fn turning_point(h: f64, model: &FrameModel) -> Result<f64> {
    require_positive("H", h)?;
    Ok(h * h / model.lambda())
}

/// The gauge-independent relation `phi(q)`.
pub fn phi_of_q(q: f64, state: &ClassicalState, model: &FrameModel) -> f64 {
    let (q0, p) = (state.q0(), state.p());
    let lambda = model.lambda();
    let dq = q - q0;
    let exit = 4.0 * p * p / lambda;
    if dq <= 0.0 {
        dq
    } else if dq <= exit {
        -0.25 * lambda * dq * dq / (p * p) + dq
    } else {
        exit - dq
    }
}

/// Which sheet of the double-valued `q(phi)` to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sheet {
    /// Before the frame reaches its turning point.
    Before,
    /// After the turning point.
    After,
}

/// Position as a function of the frame value on the chosen sheet.
pub fn q_of_phi(phi: f64, sheet: Sheet, state: &ClassicalState, model: &FrameModel) -> Result<f64> {
    let (q0, p) = (state.q0(), state.p());
    let lambda = model.lambda();
    let t = p * p / lambda;
    if phi > t {
        return Err(Error::BeyondTurningPoint {
            phi,
            turning_point: t,
        });
    }
    let root = || (1.0 - phi / t).max(0.0).sqrt();
    let scale = 2.0 * p * p / lambda;
    Ok(match sheet {
        Sheet::Before if phi <= 0.0 => q0 + phi,
        Sheet::Before => q0 + scale * (1.0 - root()),
        Sheet::After if phi <= 0.0 => q0 - phi + 4.0 * p * p / lambda,
        Sheet::After => q0 + scale * (1.0 + root()),
    })
}

/// Frame value as a function of the monotonic scale `tau`.
pub fn unwind_phi(tau: f64, h: f64, model: &FrameModel) -> Result<f64> {
    let t = turning_point(h, model)?;
    Ok(if tau <= t { tau } else { -tau + 2.0 * t })
}

/// Relational position `q(tau)`.
pub fn q_of_tau(tau: f64, state: &ClassicalState, model: &FrameModel) -> f64 {
    let branch = PhaseBranch::locate(tau, state.p(), model.lambda());
    q_of_tau_on(branch, tau, state, model)
}

/// The formula of one branch of `q(tau)`, evaluated at any `tau`. The
/// branches are the same as those of the quantum phase for momentum `p`.
pub fn q_of_tau_on(branch: PhaseBranch, tau: f64, state: &ClassicalState, model: &FrameModel) -> f64 {
    let (q0, p) = (state.q0(), state.p());
    let t = p * p / model.lambda();
    let scale = 2.0 * t;
    match branch {
        PhaseBranch::Free => q0 + tau,
        PhaseBranch::Approach => q0 + scale * (1.0 - (1.0 - tau / t).max(0.0).sqrt()),
        PhaseBranch::Return => q0 + scale * (1.0 + (tau / t - 1.0).max(0.0).sqrt()),
        PhaseBranch::Departed => q0 + tau + scale,
    }
}

/// Rate `dq/dtau`, which has no finite value at the turning point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Rate {
    Finite(f64),
    /// `tau = p^2 / lambda`, where the rate diverges.
    Divergent,
}

pub fn q_of_tau_rate(tau: f64, state: &ClassicalState, model: &FrameModel) -> Rate {
    let t = state.p() * state.p() / model.lambda();
    if tau == t {
        return Rate::Divergent;
    }
    if tau <= 0.0 || tau > 2.0 * t {
        Rate::Finite(1.0)
    } else if tau < t {
        Rate::Finite(1.0 / (1.0 - tau / t).sqrt())
    } else {
        Rate::Finite(1.0 / (tau / t - 1.0).sqrt())
    }
}

/// Late-time offset `2 p^2 / lambda` of `q(tau)` relative to free motion.
pub fn classical_shift(p: f64, model: &FrameModel) -> Result<f64> {
    require_positive("p", p)?;
    Ok(2.0 * p * p / model.lambda())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(lambda: f64) -> FrameModel {
        FrameModel::new(lambda, 1.0).unwrap()
    }

    fn close(a: f64, b: f64) {
        assert!((a - b).abs() < 1e-12, "{a} vs {b}");
    }

    #[test]
    fn gauge_solution_examples() {
        let m = model(4.0);
        let s = gauge_solution(1.25, &m, 0.0).unwrap();
        assert_eq!((s.phi, s.p_phi), (0.0, -1.25));
        let s = gauge_solution(1.25, &m, 0.3125).unwrap();
        close(s.phi, 0.390625);
        close(s.p_phi, 0.0);
        let s = gauge_solution(1.25, &m, 0.625).unwrap();
        close(s.phi, 0.0);
        close(s.p_phi, 1.25);
        close(s.constraint_residual(1.25, &m), 0.0);
        assert!(gauge_solution(0.0, &m, 1.0).is_err());
        assert!(gauge_solution(-1.0, &m, 1.0).is_err());
    }

    #[test]
    fn turning_point_examples() {
        close(turning_point(1.25, &model(4.0)).unwrap(), 0.390625);
        close(turning_point(1.0, &model(1.0)).unwrap(), 1.0);
        close(turning_point(2.0, &model(4.0)).unwrap(), 1.0);
        // The maximum of phi(epsilon) sits at epsilon = H / lambda.
        let peak = gauge_solution(2.0, &model(4.0), 0.5).unwrap().phi;
        close(peak, 1.0);
        assert!(turning_point(0.0, &model(4.0)).is_err());
    }

    #[test]
    fn phi_of_q_examples() {
        let m = model(4.0);
        let s = ClassicalState::new(0.0, 1.0).unwrap();
        close(phi_of_q(0.0, &s, &m), 0.0);
        close(phi_of_q(0.5, &s, &m), 0.25);
        close(phi_of_q(1.0, &s, &m), 0.0);
        close(phi_of_q(1.0 + 1e-13, &s, &m), 0.0);
        close(phi_of_q(-2.0, &s, &m), -2.0);
    }

    #[test]
    fn q_of_phi_examples() {
        let m = model(4.0);
        let s = ClassicalState::new(0.0, 1.0).unwrap();
        close(q_of_phi(0.0, Sheet::Before, &s, &m).unwrap(), 0.0);
        let t = 0.25;
        close(q_of_phi(t, Sheet::After, &s, &m).unwrap(), 0.5);
        close(q_of_phi(t, Sheet::Before, &s, &m).unwrap(), 0.5);
        close(q_of_phi(0.0, Sheet::After, &s, &m).unwrap(), 1.0);
        assert!(matches!(
            q_of_phi(0.3, Sheet::Before, &s, &m),
            Err(Error::BeyondTurningPoint { .. })
        ));
    }

    #[test]
    fn unwind_phi_examples() {
        let m = model(4.0);
        close(unwind_phi(0.0, 1.25, &m).unwrap(), 0.0);
        close(unwind_phi(0.390625, 1.25, &m).unwrap(), 0.390625);
        close(unwind_phi(0.78125, 1.25, &m).unwrap(), 0.0);
    }

    #[test]
    fn q_of_tau_examples() {
        let m = model(4.0);
        let s = ClassicalState::new(0.0, 1.0).unwrap();
        close(q_of_tau(-1.0, &s, &m), -1.0);
        close(q_of_tau(0.25, &s, &m), 0.5);
        close(q_of_tau(0.5, &s, &m), 1.0);
        close(q_of_tau(2.0, &s, &m), 2.5);
        let orbit = ClassicalState::new(4.0, 1.25).unwrap();
        close(q_of_tau(-1.0, &orbit, &m), 3.0);
        close(q_of_tau(3.0, &orbit, &m), 7.78125);
    }

    #[test]
    fn rate_diverges_only_at_turning_point() {
        let m = model(4.0);
        let s = ClassicalState::new(0.0, 1.0).unwrap();
        assert_eq!(q_of_tau_rate(0.25, &s, &m), Rate::Divergent);
        assert_eq!(q_of_tau_rate(-1.0, &s, &m), Rate::Finite(1.0));
        assert_eq!(q_of_tau_rate(3.0, &s, &m), Rate::Finite(1.0));
        match q_of_tau_rate(0.1875, &s, &m) {
            Rate::Finite(r) => close(r, 2.0),
            Rate::Divergent => panic!(),
        }
        match q_of_tau_rate(0.3125, &s, &m) {
            Rate::Finite(r) => close(r, 2.0),
            Rate::Divergent => panic!(),
        }
    }

    #[test]
    fn classical_shift_examples() {
        close(classical_shift(1.25, &model(4.0)).unwrap(), 0.78125);
        close(classical_shift(1.0, &model(2.0)).unwrap(), 1.0);
        let m = model(4.0);
        let s = ClassicalState::new(0.0, 1.0).unwrap();
        close(classical_shift(1.0, &m).unwrap(), q_of_tau(2.0, &s, &m) - 2.0);
        assert!(classical_shift(0.0, &m).is_err());
    }
}
