//! Python bindings: `import turning_frame`.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use turning_frame::classical;
use turning_frame::lab;
use turning_frame::quantum;
use turning_frame::shift;
use turning_frame::{Complex64, Error, GaussianMode, ShiftConvention};

create_exception!(turning_frame, ResolutionError, PyException, "The momentum grid cannot resolve the state.");
create_exception!(turning_frame, AsymptoticsError, PyException, "The series never reaches its asymptotic regime.");

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Resolution(_) => ResolutionError::new_err(e.to_string()),
        Error::InsufficientAsymptoticSamples { .. } | Error::NotAsymptotic { .. } => {
            AsymptoticsError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn convention_from(name: &str) -> PyResult<ShiftConvention> {
    match name {
        "mean_momentum" => Ok(ShiftConvention::MeanMomentum),
        "mean_square_momentum" => Ok(ShiftConvention::MeanSquareMomentum),
        _ => Err(PyValueError::new_err(format!("unknown convention `{name}`"))),
    }
}

fn convention_name(c: ShiftConvention) -> &'static str {
    match c {
        ShiftConvention::MeanMomentum => "mean_momentum",
        ShiftConvention::MeanSquareMomentum => "mean_square_momentum",
    }
}

#[pyclass(name = "FrameModel", frozen, from_py_object)]
#[derive(Clone, Copy)]
struct PyFrameModel(turning_frame::FrameModel);

#[pymethods]
impl PyFrameModel {
    #[new]
    #[pyo3(signature = (lambda_, hbar = 1.0, convention = "mean_momentum"))]
    fn new(lambda_: f64, hbar: f64, convention: &str) -> PyResult<Self> {
        let c = convention_from(convention)?;
        turning_frame::FrameModel::with_convention(lambda_, hbar, c)
            .map(Self)
            .map_err(to_py)
    }

    #[getter]
    fn lambda_(&self) -> f64 {
        self.0.lambda()
    }

    #[getter]
    fn hbar(&self) -> f64 {
        self.0.hbar()
    }

    #[getter]
    fn convention(&self) -> &'static str {
        convention_name(self.0.convention())
    }

    fn __repr__(&self) -> String {
        format!(
            "FrameModel(lambda_={}, hbar={}, convention='{}')",
            self.0.lambda(),
            self.0.hbar(),
            self.convention()
        )
    }
}

#[pyclass(name = "GaussianSpec", frozen, from_py_object)]
#[derive(Clone, Copy)]
struct PyGaussianSpec(turning_frame::GaussianSpec);

#[pymethods]
impl PyGaussianSpec {
    #[new]
    fn new(q0: f64, p0: f64, sigma: f64) -> PyResult<Self> {
        turning_frame::GaussianSpec::new(q0, p0, sigma)
            .map(Self)
            .map_err(to_py)
    }

    #[getter]
    fn q0(&self) -> f64 {
        self.0.q0
    }

    #[getter]
    fn p0(&self) -> f64 {
        self.0.p0
    }

    #[getter]
    fn sigma(&self) -> f64 {
        self.0.sigma
    }

    /// Momentum standard deviation `hbar / (2 sigma)`.
    fn momentum_spread(&self, hbar: f64) -> f64 {
        self.0.momentum_spread(hbar)
    }
}

#[pyclass(name = "MomentumGrid", frozen, from_py_object)]
#[derive(Clone, Copy)]
struct PyMomentumGrid(turning_frame::MomentumGrid);

#[pymethods]
impl PyMomentumGrid {
    #[new]
    fn new(p_min: f64, p_max: f64, n: usize) -> PyResult<Self> {
        turning_frame::MomentumGrid::new(p_min, p_max, n)
            .map(Self)
            .map_err(to_py)
    }

    #[getter]
    fn p_min(&self) -> f64 {
        self.0.p_min()
    }

    #[getter]
    fn p_max(&self) -> f64 {
        self.0.p_max()
    }

    #[getter]
    fn spacing(&self) -> f64 {
        self.0.spacing()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn nodes(&self) -> Vec<f64> {
        self.0.nodes()
    }

    fn weights(&self) -> Vec<f64> {
        self.0.weights()
    }
}

#[pyclass(name = "MomentumState", frozen, from_py_object)]
#[derive(Clone)]
struct PyMomentumState(turning_frame::MomentumState);

#[pymethods]
impl PyMomentumState {
    /// Wraps amplitudes on `grid`; with `normalize=True` they are rescaled
    /// to unit norm first.
    #[new]
    #[pyo3(signature = (grid, amps, tau = 0.0, normalize = false))]
    fn new(grid: PyMomentumGrid, amps: Vec<Complex64>, tau: f64, normalize: bool) -> PyResult<Self> {
        let s = if normalize {
            turning_frame::MomentumState::normalized(grid.0, amps, tau)
        } else {
            turning_frame::MomentumState::new(grid.0, amps, tau)
        };
        s.map(Self).map_err(to_py)
    }

    #[getter]
    fn grid(&self) -> PyMomentumGrid {
        PyMomentumGrid(*self.0.grid())
    }

    #[getter]
    fn amps(&self) -> Vec<Complex64> {
        self.0.amps().to_vec()
    }

    #[getter]
    fn tau(&self) -> f64 {
        self.0.tau()
    }

    fn norm_squared(&self) -> f64 {
        self.0.norm_squared()
    }

    fn probabilities(&self) -> Vec<f64> {
        self.0.probabilities()
    }
}

#[pyfunction]
#[pyo3(signature = (spec, grid, model, mode = "truncate_positive"))]
fn make_gaussian(
    spec: PyGaussianSpec,
    grid: PyMomentumGrid,
    model: PyFrameModel,
    mode: &str,
) -> PyResult<PyMomentumState> {
    let mode = match mode {
        "truncate_positive" => GaussianMode::TruncatePositive,
        "raw" => GaussianMode::Raw,
        _ => return Err(PyValueError::new_err(format!("unknown mode `{mode}`"))),
    };
    turning_frame::make_gaussian(spec.0, grid.0, &model.0, mode)
        .map(PyMomentumState)
        .map_err(to_py)
}

/// `{"mean_p", "mean_p2", "var_p"}`.
#[pyfunction]
fn moments<'py>(py: Python<'py>, state: &PyMomentumState) -> PyResult<Bound<'py, PyDict>> {
    let m = turning_frame::moments(&state.0).map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("mean_p", m.mean_p)?;
    d.set_item("mean_p2", m.mean_p2)?;
    d.set_item("var_p", m.var_p)?;
    Ok(d)
}

#[pyfunction]
fn evolve(state: &PyMomentumState, tau: f64, model: PyFrameModel) -> PyMomentumState {
    PyMomentumState(quantum::evolve(&state.0, tau, &model.0))
}

#[pyfunction]
fn position_expectation_numeric(state: &PyMomentumState, model: PyFrameModel) -> PyResult<f64> {
    quantum::position_expectation_numeric(&state.0, &model.0).map_err(to_py)
}

#[pyfunction]
fn position_expectation_analytic(initial: &PyMomentumState, tau: f64, model: PyFrameModel) -> PyResult<f64> {
    quantum::position_expectation_analytic(&initial.0, tau, &model.0).map_err(to_py)
}

#[pyfunction]
fn position_variance(state: &PyMomentumState, model: PyFrameModel) -> PyResult<f64> {
    quantum::position_variance(&state.0, &model.0).map_err(to_py)
}

/// Position-space profile on `linspace(q_min, q_max, n)`.
#[pyfunction]
fn to_position_representation<'py>(
    py: Python<'py>,
    state: &PyMomentumState,
    q_min: f64,
    q_max: f64,
    n: usize,
    model: PyFrameModel,
) -> PyResult<Bound<'py, PyDict>> {
    let grid = quantum::PositionGrid::new(q_min, q_max, n).map_err(to_py)?;
    let p = quantum::to_position_representation(&state.0, &grid, &model.0).map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("q", p.q)?;
    d.set_item("amps", p.amps)?;
    d.set_item("norm", p.norm)?;
    d.set_item("coverage_ok", p.coverage_ok)?;
    Ok(d)
}

fn series(
    initial: &PyMomentumState,
    taus: &[f64],
    model: PyFrameModel,
    with_variance: bool,
    classical_p: Option<f64>,
) -> PyResult<quantum::ExpectationSeries> {
    let classical = classical_p
        .map(|p| turning_frame::ClassicalState::new(initial_q0(initial, model)?, p))
        .transpose()
        .map_err(to_py)?;
    let options = quantum::SeriesOptions {
        with_variance,
        classical,
        ..quantum::SeriesOptions::default()
    };
    quantum::expectation_series(&initial.0, taus, &model.0, &options).map_err(to_py)
}

fn initial_q0(initial: &PyMomentumState, model: PyFrameModel) -> turning_frame::Result<f64> {
    Ok(quantum::AnalyticRoute::new(&initial.0, &model.0)?.q0())
}

/// `{"tau", "q_mean", "q_var", "norm", "q_classical"}`; absent columns are
/// `None`. `classical_p` overlays the classical orbit with that momentum.
#[pyfunction]
#[pyo3(signature = (initial, taus, model, with_variance = false, classical_p = None))]
fn expectation_series<'py>(
    py: Python<'py>,
    initial: &PyMomentumState,
    taus: Vec<f64>,
    model: PyFrameModel,
    with_variance: bool,
    classical_p: Option<f64>,
) -> PyResult<Bound<'py, PyDict>> {
    let s = series(initial, &taus, model, with_variance, classical_p)?;
    let d = PyDict::new(py);
    d.set_item("tau", s.taus())?;
    d.set_item("q_mean", s.q_mean())?;
    d.set_item("q_var", s.q_var())?;
    d.set_item("norm", s.norm())?;
    d.set_item("q_classical", s.q_classical())?;
    Ok(d)
}

/// Runs the series over `taus` and extracts the displacement shifts.
#[pyfunction]
fn shift_report<'py>(
    py: Python<'py>,
    initial: &PyMomentumState,
    taus: Vec<f64>,
    model: PyFrameModel,
) -> PyResult<Bound<'py, PyDict>> {
    let s = series(initial, &taus, model, false, None)?;
    let r = shift::extract_shift_numeric(&s, &initial.0, &model.0).map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("convention", convention_name(r.convention))?;
    d.set_item("q0", r.q0)?;
    d.set_item("delta_q_classical", r.delta_q_classical)?;
    d.set_item("delta_q_quantum_analytic", r.delta_q_quantum_analytic)?;
    d.set_item("delta_q_quantum_numeric", r.delta_q_quantum_numeric)?;
    d.set_item("delta_q_total", r.delta_q_total)?;
    d.set_item("extrapolation_tau", r.extrapolation_tau)?;
    d.set_item("fit_samples", r.fit_samples)?;
    d.set_item("slope", r.slope)?;
    d.set_item("slope_within_tolerance", r.slope_within_tolerance)?;
    d.set_item("residual", r.residual)?;
    Ok(d)
}

#[pyfunction]
fn total_shift(mean_p: f64, var_p: f64, model: PyFrameModel) -> PyResult<f64> {
    shift::total_shift(mean_p, var_p, &model.0).map_err(to_py)
}

#[pyfunction]
fn quantum_shift(mean_p2: f64, model: PyFrameModel) -> PyResult<f64> {
    shift::quantum_shift_analytic(mean_p2, &model.0).map_err(to_py)
}

#[pyfunction]
fn classical_shift(p: f64, model: PyFrameModel) -> PyResult<f64> {
    classical::classical_shift(p, &model.0).map_err(to_py)
}

#[pyfunction]
fn q_of_tau(tau: f64, q0: f64, p: f64, model: PyFrameModel) -> PyResult<f64> {
    let state = turning_frame::ClassicalState::new(q0, p).map_err(to_py)?;
    Ok(classical::q_of_tau(tau, &state, &model.0))
}

#[pyfunction]
fn unwind_phi(tau: f64, h: f64, model: PyFrameModel) -> PyResult<f64> {
    classical::unwind_phi(tau, h, &model.0).map_err(to_py)
}

#[pyfunction]
fn total_phase(tau: f64, p: f64, model: PyFrameModel) -> PyResult<f64> {
    quantum::total_phase(tau, p, &model.0).map_err(to_py)
}

#[pyfunction]
fn displacement_kernel(tau: f64, p: f64, model: PyFrameModel) -> PyResult<f64> {
    quantum::displacement_kernel(tau, p, &model.0).map_err(to_py)
}

/// SI estimates `{"lambda_SI", "delta_q_m", "delta_tau_s"}`.
#[pyfunction]
#[pyo3(signature = (mass_kg, temperature, gravity = lab::STANDARD_GRAVITY))]
fn lab_estimates<'py>(py: Python<'py>, mass_kg: f64, temperature: f64, gravity: f64) -> PyResult<Bound<'py, PyDict>> {
    let s = lab::PhysicalScenario::new(mass_kg, temperature, gravity).map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("lambda_SI", lab::lambda_gravitational(&s))?;
    d.set_item("delta_q_m", lab::displacement_estimate(&s))?;
    d.set_item("delta_tau_s", lab::coherence_time_estimate(&s))?;
    Ok(d)
}

#[pymodule]
#[pyo3(name = "turning_frame")]
fn python_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("ResolutionError", m.py().get_type::<ResolutionError>())?;
    m.add("AsymptoticsError", m.py().get_type::<AsymptoticsError>())?;
    m.add("AMU", lab::AMU)?;
    m.add_class::<PyFrameModel>()?;
    m.add_class::<PyGaussianSpec>()?;
    m.add_class::<PyMomentumGrid>()?;
    m.add_class::<PyMomentumState>()?;
    m.add_function(wrap_pyfunction!(make_gaussian, m)?)?;
    m.add_function(wrap_pyfunction!(moments, m)?)?;
    m.add_function(wrap_pyfunction!(evolve, m)?)?;
    m.add_function(wrap_pyfunction!(position_expectation_numeric, m)?)?;
    m.add_function(wrap_pyfunction!(position_expectation_analytic, m)?)?;
    m.add_function(wrap_pyfunction!(position_variance, m)?)?;
    m.add_function(wrap_pyfunction!(to_position_representation, m)?)?;
    m.add_function(wrap_pyfunction!(expectation_series, m)?)?;
    m.add_function(wrap_pyfunction!(shift_report, m)?)?;
    m.add_function(wrap_pyfunction!(total_shift, m)?)?;
    m.add_function(wrap_pyfunction!(quantum_shift, m)?)?;
    m.add_function(wrap_pyfunction!(classical_shift, m)?)?;
    m.add_function(wrap_pyfunction!(q_of_tau, m)?)?;
    m.add_function(wrap_pyfunction!(unwind_phi, m)?)?;
    m.add_function(wrap_pyfunction!(total_phase, m)?)?;
    m.add_function(wrap_pyfunction!(displacement_kernel, m)?)?;
    m.add_function(wrap_pyfunction!(lab_estimates, m)?)?;
    Ok(())
}
