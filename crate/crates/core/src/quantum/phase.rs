//! Phase law of momentum components passing through the frame's turning point.

use crate::error::{Error, Result};
use crate::model::FrameModel;

/// Branch of the piecewise evolution for a given momentum.
///
/// Boundaries are `0`, `p^2/lambda` and `2 p^2/lambda`; a boundary value
/// belongs to the earlier branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum PhaseBranch {
    /// `tau <= 0`: free motion before the potential region.
    Free,
    /// Frame rising towards its turning point.
    Approach,
    /// Frame falling back after the turning point.
    Return,
    /// Frame has left the potential region again.
    Departed,
}

impl PhaseBranch {
    pub fn locate(tau: f64, p: f64, lambda: f64) -> Self {
        let t = p * p / lambda;
        if tau <= 0.0 {
            PhaseBranch::Free
        } else if tau <= t {
            PhaseBranch::Approach
        } else if tau <= 2.0 * t {
            PhaseBranch::Return
        } else {
            PhaseBranch::Departed
        }
    }

    pub fn index(self) -> u8 {
        self as u8 + 1
    }

    /// This branch's formula for `Phi(tau, p)`, evaluated at any `tau`.
    /// Square roots of negative arguments are clamped to zero, which lets
    /// callers take one-sided limits at the branch boundaries.
    pub fn phase(self, tau: f64, p: f64, lambda: f64) -> f64 {
        let c = (2.0 / 3.0) / lambda;
        let p3 = p * p * p;
        match self {
            PhaseBranch::Free => p * tau,
            PhaseBranch::Approach => {
                let r = approach_radicand(tau, p, lambda);
                c * p3 * (1.0 - r * r.sqrt())
            }
            PhaseBranch::Return => {
                let r = return_radicand(tau, p, lambda);
                c * p3 * (1.0 + r * r.sqrt())
            }
            PhaseBranch::Departed => p * tau - c * p3,
        }
    }

    /// This branch's formula for `D(tau, p)`; see [`PhaseBranch::phase`].
    pub fn kernel(self, tau: f64, p: f64, lambda: f64) -> f64 {
        match self {
            PhaseBranch::Free => tau,
            PhaseBranch::Approach => {
                2.0 / lambda * p * p * (1.0 - approach_radicand(tau, p, lambda).sqrt())
            }
            PhaseBranch::Return => {
                2.0 / lambda * p * p * (1.0 - return_radicand(tau, p, lambda).sqrt())
            }
            PhaseBranch::Departed => tau - 2.0 * p * p / lambda,
        }
    }
}

/// `1 - tau/t` with `t = p^2/lambda`, clamped at zero. Writing the radicand
/// relative to the same `t` that [`PhaseBranch::locate`] uses makes it vanish
/// exactly at the turning point.
fn approach_radicand(tau: f64, p: f64, lambda: f64) -> f64 {
    (1.0 - tau / (p * p / lambda)).max(0.0)
}

fn return_radicand(tau: f64, p: f64, lambda: f64) -> f64 {
    (tau / (p * p / lambda) - 1.0).max(0.0)
}

fn require_positive_momentum(p: f64) -> Result<()> {
    if p.is_finite() && p > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("momentum must be > 0, got {p}")))
    }
}

/// Phase `Theta(phi, p)` of the frame-representation solution, valid up to
/// the turning point.
pub fn phase_theta(phi: f64, p: f64, model: &FrameModel) -> Result<f64> {
    require_positive_momentum(p)?;
    let lambda = model.lambda();
    let t = p * p / lambda;
    if phi > t {
        return Err(Error::BeyondTurningPoint {
            phi,
            turning_point: t,
        });
    }
    Ok(if phi <= 0.0 {
        p * phi
    } else {
        let r = approach_radicand(phi, p, lambda);
        (2.0 / 3.0) / lambda * p * p * p * (1.0 - r * r.sqrt())
    })
}

/// Accumulated phase `Phi(tau, p)` with `psi(tau, p) = f(p) exp(-i Phi / hbar)`.
pub fn total_phase(tau: f64, p: f64, model: &FrameModel) -> Result<f64> {
    require_positive_momentum(p)?;
    Ok(total_phase_raw(tau, p, model.lambda()))
}

/// [`total_phase`] without the momentum check. For `p < 0` this is the odd
/// extension `-Phi(tau, -p)`, the only reading of the formulas that keeps
/// `Phi` continuous in both `tau` and `p`.
pub fn total_phase_raw(tau: f64, p: f64, lambda: f64) -> f64 {
    PhaseBranch::locate(tau, p, lambda).phase(tau, p, lambda)
}

/// Per-component displacement `D(tau, p) = dPhi/dp`, so that
/// `<q>(tau) = q0 + integral |f(p)|^2 D(tau, p) dp`.
pub fn displacement_kernel(tau: f64, p: f64, model: &FrameModel) -> Result<f64> {
    require_positive_momentum(p)?;
    Ok(displacement_kernel_raw(tau, p, model.lambda()))
}

pub fn displacement_kernel_raw(tau: f64, p: f64, lambda: f64) -> f64 {
    PhaseBranch::locate(tau, p, lambda).kernel(tau, p, lambda)
}
