//! The same phase law applied to a discrete energy spectrum, with `E` in
//! place of `p`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{MomentumState, NORM_TOLERANCE};
use crate::model::FrameModel;
use crate::quadrature;
use crate::quantum::total_phase_raw;

/// Maximum entry-wise deviation from Hermiticity accepted for observables.
pub const HERMITIAN_TOLERANCE: f64 = 1e-12;

/// Amplitudes `c_n` on energy eigenstates `E_n`, at scale value `tau`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralState {
    energies: Vec<f64>,
    coeffs: Vec<Complex64>,
    tau: f64,
}

impl SpectralState {
    pub fn new(energies: Vec<f64>, coeffs: Vec<Complex64>, tau: f64) -> Result<Self> {
        if energies.is_empty() {
            return Err(Error::param("energies", "spectrum is empty"));
        }
        if coeffs.len() != energies.len() {
            return Err(Error::DimensionMismatch {
                expected: energies.len(),
                found: coeffs.len(),
            });
        }
        if let Some(e) = energies.iter().find(|e| !(e.is_finite() && **e > 0.0)) {
            return Err(Error::Domain(format!("energies must be > 0, got {e}")));
        }
        if energies.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::param("energies", "must be strictly increasing"));
        }
        if !tau.is_finite() {
            return Err(Error::param("tau", "must be finite"));
        }
        let n2: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
        if (n2 - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::InvalidState(format!("sum |c_n|^2 = {n2}, expected 1")));
        }
        Ok(Self {
            energies,
            coeffs,
            tau,
        })
    }

    /// Treats the grid nodes as levels and folds the quadrature weights into
    /// the coefficients, `c_i = psi_i sqrt(w_i)`.
    pub fn from_momentum_state(state: &MomentumState) -> Result<Self> {
        let coeffs = state
            .amps()
            .iter()
            .zip(state.grid().weights())
            .map(|(a, w)| a * w.sqrt())
            .collect();
        Self::new(state.grid().nodes(), coeffs, state.tau())
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn len(&self) -> usize {
        self.energies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.energies.is_empty()
    }
}

/// Hermitian matrix in the energy eigenbasis, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservableMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl ObservableMatrix {
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        let mut worst: f64 = 0.0;
        for i in 0..dim {
            for j in i..dim {
                worst = worst.max((entries[i * dim + j] - entries[j * dim + i].conj()).norm());
            }
        }
        if worst > HERMITIAN_TOLERANCE {
            return Err(Error::NotHermitian(worst));
        }
        Ok(Self { dim, entries })
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let dim = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.len(),
            });
        }
        Self::new(dim, rows.into_iter().flatten().collect())
    }

    pub fn identity(dim: usize) -> Self {
        Self::diagonal(&vec![1.0; dim])
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let dim = values.len();
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for (i, v) in values.iter().enumerate() {
            entries[i * dim + i] = Complex64::new(*v, 0.0);
        }
        Self { dim, entries }
    }

    /// Hermitian part of `i hbar d/dp` on a momentum grid, in the basis
    /// `c_i = psi_i sqrt(w_i)` used by [`SpectralState::from_momentum_state`].
    ///
    /// Its expectation value equals the real part of
    /// [`crate::quantum::position_expectation_numeric`] on the same grid.
    pub fn position_operator(state_grid: &crate::grid::MomentumGrid, model: &FrameModel) -> Result<Self> {
        let n = state_grid.len();
        let d = quadrature::derivative_matrix(n, state_grid.spacing()).ok_or_else(|| {
            Error::Resolution(format!("need at least {} nodes", quadrature::DERIVATIVE_MIN_NODES))
        })?;
        let sw: Vec<f64> = state_grid.weights().iter().map(|w| w.sqrt()).collect();
        let ih = Complex64::new(0.0, model.hbar());
        let raw = |i: usize, j: usize| ih * (sw[i] * d[i][j] / sw[j]);
        let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for j in 0..n {
                entries[i * n + j] = 0.5 * (raw(i, j) + raw(j, i).conj());
            }
        }
        Ok(Self { dim: n, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Complex64]> {
        self.entries.chunks(self.dim)
    }
}

/// Applies `exp(-i [Phi(tau, E_n) - Phi(tau_in, E_n)] / hbar)` to each level.
pub fn propagate(state: &SpectralState, tau: f64, model: &FrameModel) -> SpectralState {
    let lambda = model.lambda();
    let hbar = model.hbar();
    let coeffs = state
        .energies
        .iter()
        .zip(&state.coeffs)
        .map(|(&e, &c)| {
            let dphi = total_phase_raw(tau, e, lambda) - total_phase_raw(state.tau, e, lambda);
            c * Complex64::from_polar(1.0, -dphi / hbar)
        })
        .collect();
    SpectralState {
        energies: state.energies.clone(),
        coeffs,
        tau,
    }
}

/// `sum_mn conj(c_m) A_mn c_n`; the imaginary rounding residue is dropped.
pub fn expectation(state: &SpectralState, obs: &ObservableMatrix) -> Result<f64> {
    if obs.dim != state.len() {
        return Err(Error::DimensionMismatch {
            expected: state.len(),
            found: obs.dim,
        });
    }
    let c = &state.coeffs;
    let total: Complex64 = obs
        .rows()
        .zip(c)
        .map(|(row, cm)| {
            let ac: Complex64 = row.iter().zip(c).map(|(a, cn)| a * cn).sum();
            cm.conj() * ac
        })
        .sum();
    Ok(total.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{make_gaussian, MomentumGrid};
    use crate::model::{GaussianMode, GaussianSpec};
    use crate::quantum::{evolve, position_expectation_numeric};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn model() -> FrameModel {
        FrameModel::new(4.0, 1.0).unwrap()
    }

    #[test]
    fn validation() {
        assert!(SpectralState::new(vec![1.0, 2.0], vec![c(1.0, 0.0)], 0.0).is_err());
        assert!(SpectralState::new(vec![0.0], vec![c(1.0, 0.0)], 0.0).is_err());
        assert!(SpectralState::new(vec![2.0, 1.0], vec![c(0.6, 0.0), c(0.8, 0.0)], 0.0).is_err());
        assert!(SpectralState::new(vec![1.0, 2.0], vec![c(0.6, 0.0), c(0.8, 0.0)], 0.0).is_ok());
        assert!(ObservableMatrix::new(2, vec![c(1.0, 0.0), c(0.0, 1.0), c(0.0, 1.0), c(1.0, 0.0)]).is_err());
        assert!(ObservableMatrix::new(2, vec![c(1.0, 0.0); 3]).is_err());
    }

    #[test]
    fn identity_gives_norm() {
        let s = SpectralState::new(vec![1.0, 2.0, 3.0], vec![c(0.6, 0.0), c(0.0, 0.8), c(0.0, 0.0)], 0.0).unwrap();
        let s = propagate(&s, 0.7, &model());
        assert!((expectation(&s, &ObservableMatrix::identity(3)).unwrap() - 1.0).abs() < 1e-15);
        assert!(expectation(&s, &ObservableMatrix::identity(2)).is_err());
    }

    #[test]
    fn single_level_keeps_modulus() {
        let s = SpectralState::new(vec![1.5], vec![c(1.0, 0.0)], 0.0).unwrap();
        for tau in [-1.0, 0.3, 2.0, 50.0] {
            let e = propagate(&s, tau, &model());
            assert!((e.coeffs()[0].norm() - 1.0).abs() < 1e-15);
        }
        assert_eq!(propagate(&s, 0.0, &model()), s);
    }

    #[test]
    fn energy_is_conserved() {
        let e = vec![0.5, 1.0, 2.0, 3.5];
        let a = 0.5;
        let s = SpectralState::new(e.clone(), vec![c(a, 0.0), c(0.0, a), c(-a, 0.0), c(a, 0.0)], 0.0).unwrap();
        let h = ObservableMatrix::diagonal(&e);
        let mean = 0.25 * e.iter().sum::<f64>();
        for tau in [0.0, 0.1, 0.4, 1.0, 3.0, 10.0] {
            let v = expectation(&propagate(&s, tau, &model()), &h).unwrap();
            assert!((v - mean).abs() < 1e-14);
        }
    }

    #[test]
    fn two_level_exchange_oscillates_with_phase_difference() {
        let m = model();
        let a = 0.5f64.sqrt();
        let s = SpectralState::new(vec![1.0, 2.0], vec![c(a, 0.0), c(a, 0.0)], 0.0).unwrap();
        let x = ObservableMatrix::from_rows(vec![vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 0.0)]]).unwrap();
        assert!((expectation(&s, &x).unwrap() - 1.0).abs() < 1e-15);
        for tau in [-0.5, 0.2, 0.3, 0.9, 2.5] {
            let v = expectation(&propagate(&s, tau, &m), &x).unwrap();
            // Brute force: <X> = 2 Re(conj(c1) c2) with c_k = a exp(-i Phi(tau, E_k)).
            let d = total_phase_raw(tau, 2.0, 4.0) - total_phase_raw(tau, 1.0, 4.0);
            assert!((v - d.cos()).abs() < 1e-14, "tau {tau}");
        }
    }

    #[test]
    fn matches_momentum_evolution_on_grid() {
        let m = model();
        let grid = MomentumGrid::new(0.01, 5.0, 512).unwrap();
        let st = make_gaussian(GaussianSpec::new(4.0, 1.25, 1.0).unwrap(), grid, &m, GaussianMode::TruncatePositive).unwrap();
        let spec = SpectralState::from_momentum_state(&st).unwrap();
        let w = grid.weights();
        for tau in [0.2, 0.8, 3.0] {
            let a = evolve(&st, tau, &m);
            let b = propagate(&spec, tau, &m);
            for ((x, y), wi) in a.amps().iter().zip(b.coeffs()).zip(&w) {
                assert!((x - y / wi.sqrt()).norm() <= 1e-12);
            }
        }
    }

    #[test]
    fn position_operator_reproduces_numeric_route() {
        let m = model();
        let grid = MomentumGrid::new(0.01, 5.0, 300).unwrap();
        let st = make_gaussian(GaussianSpec::new(4.0, 1.25, 1.0).unwrap(), grid, &m, GaussianMode::TruncatePositive).unwrap();
        let q = ObservableMatrix::position_operator(&grid, &m).unwrap();
        let spec = SpectralState::from_momentum_state(&st).unwrap();
        for tau in [-1.0, 0.0, 0.4, 1.1, 2.7] {
            let via_spectrum = expectation(&propagate(&spec, tau, &m), &q).unwrap();
            let direct = position_expectation_numeric(&evolve(&st, tau, &m), &m).unwrap();
            assert!((via_spectrum - direct).abs() < 1e-6, "tau {tau}: {via_spectrum} vs {direct}");
        }
    }
}
