//! Order-of-magnitude estimates for a gravitational realization, in SI units.
//!
//! The frame is the vertical position of a particle of mass `m`, so the
//! potential slope is `lambda = m^2 g`. The mean momentum is tied to the
//! temperature through `<p>^2 / m ~ k_B T`. The estimates use unit
//! coefficients; exact coefficients in model units come from [`crate::shift`].

use serde::Serialize;

use crate::error::{Error, Result};

/// Boltzmann constant, J/K (exact).
pub const BOLTZMANN: f64 = 1.380649e-23;
/// Atomic mass unit, kg.
pub const AMU: f64 = 1.66053906660e-27;
/// Standard gravitational acceleration used as default, m/s^2.
pub const STANDARD_GRAVITY: f64 = 9.81;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhysicalScenario {
    /// kg
    pub mass: f64,
    /// K
    pub temperature: f64,
    /// m/s^2; may stand for any effective acceleration of the frame particle.
    pub gravity: f64,
}

impl PhysicalScenario {
    pub fn new(mass: f64, temperature: f64, gravity: f64) -> Result<Self> {
        for (name, v) in [("mass", mass), ("temperature", temperature), ("gravity", gravity)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidParameter {
                    name,
                    reason: format!("must be > 0, got {v}"),
                });
            }
        }
        Ok(Self {
            mass,
            temperature,
            gravity,
        })
    }

    pub fn from_amu(mass_amu: f64, temperature: f64, gravity: f64) -> Result<Self> {
        Self::new(mass_amu * AMU, temperature, gravity)
    }
}

/// `lambda = m^2 g`, in kg^2 m / s^2.
pub fn lambda_gravitational(s: &PhysicalScenario) -> f64 {
    s.mass * s.mass * s.gravity
}

/// `delta_q ~ k_B T / (m g)`, in metres.
pub fn displacement_estimate(s: &PhysicalScenario) -> f64 {
    BOLTZMANN * s.temperature / (s.mass * s.gravity)
}

/// `delta_tau ~ sqrt(k_B T / m) / g`, in seconds.
pub fn coherence_time_estimate(s: &PhysicalScenario) -> f64 {
    (BOLTZMANN * s.temperature / s.mass).sqrt() / s.gravity
}

/// Exponents of (kg, m, s, K).
#[cfg(test)]
#[derive(Debug, Clone, Copy, PartialEq)]
struct Dim([f64; 4]);

#[cfg(test)]
impl Dim {
    const KG: Dim = Dim([1.0, 0.0, 0.0, 0.0]);
    const M: Dim = Dim([0.0, 1.0, 0.0, 0.0]);
    const S: Dim = Dim([0.0, 0.0, 1.0, 0.0]);
    const K: Dim = Dim([0.0, 0.0, 0.0, 1.0]);

    fn mul(self, o: Dim) -> Dim {
        Dim(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }

    fn div(self, o: Dim) -> Dim {
        Dim(std::array::from_fn(|i| self.0[i] - o.0[i]))
    }

    fn pow(self, e: f64) -> Dim {
        Dim(self.0.map(|x| x * e))
    }
}
