//! Relational dynamics of a system measured against a quantum reference frame
//! that experiences a single energy-dependent turning point.
//!
//! The frame variable `phi` moves in the potential `lambda * phi * theta(phi)`
//! and the system has Hamiltonian `H = p`. The crate provides
//!
//! * closed-form classical solutions ([`classical`]),
//! * exact momentum-space phase evolution with two independent routes to the
//!   position expectation value ([`quantum`]),
//! * the same phase law on discrete energy spectra ([`spectral`]),
//! * the displacement shifts left by the turning point ([`shift`]),
//! * order-of-magnitude laboratory estimates in SI units ([`lab`]).

pub mod classical;
pub mod error;
pub mod grid;
pub mod io;
pub mod lab;
pub mod model;
pub mod quadrature;
pub mod quantum;
pub mod shift;
pub mod spectral;

pub use error::{Error, Result};
pub use grid::{make_gaussian, moments, MomentumGrid, MomentumState, Moments};
pub use model::{ClassicalState, FrameModel, GaussianMode, GaussianSpec, ShiftConvention};
pub use num_complex::Complex64;
