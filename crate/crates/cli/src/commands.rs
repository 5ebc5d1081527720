use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use serde::Serialize;
use turning_frame::classical::{q_of_tau, unwind_phi};
use turning_frame::io::{write_position_csv, write_series_csv, write_state_snapshot_csv, write_table};
use turning_frame::lab::{
    coherence_time_estimate, displacement_estimate, lambda_gravitational, PhysicalScenario,
};
use turning_frame::quantum::{
    evolve, expectation_series, to_position_representation, AnalyticRoute, PositionGrid,
    SeriesOptions,
};
use turning_frame::shift::{extract_shift_numeric, ShiftReport};
use turning_frame::{make_gaussian, moments, ClassicalState, MomentumState, ShiftConvention};

use crate::config::Config;
use crate::error::CliError;

/// Files written by a command and the text it prints on stdout.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Outcome {
    pub files: Vec<PathBuf>,
    pub stdout: String,
}

fn create(dir: &Path, name: &str) -> Result<(PathBuf, BufWriter<File>), CliError> {
    fs::create_dir_all(dir)
        .map_err(|e| CliError::Io(format!("cannot create {}: {e}", dir.display())))?;
    let path = dir.join(name);
    let file = File::create(&path)
        .map_err(|e| CliError::Io(format!("cannot create {}: {e}", path.display())))?;
    Ok((path, BufWriter::new(file)))
}

fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::Runtime(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn write_json<T: Serialize>(dir: &Path, name: &str, value: &T) -> Result<(PathBuf, String), CliError> {
    let text = to_json(value)?;
    let path = dir.join(name);
    fs::create_dir_all(dir)?;
    fs::write(&path, &text).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
    Ok((path, text))
}

fn initial_state(config: &Config) -> Result<MomentumState, CliError> {
    let model = config.frame_model()?;
    let spec = config.gaussian()?;
    let grid = config.momentum_grid()?;
    Ok(make_gaussian(spec, grid, &model, config.state.mode.into())?)
}

/// `classical.csv` with columns `tau,phi,q_classical`, for the orbit with
/// `q0 = state.q0` and `p = state.p0`.
pub fn classical(config: &Config, out_dir: &Path) -> Result<Outcome, CliError> {
    let model = config.frame_model()?;
    let state = ClassicalState::new(config.state.q0, config.state.p0)?;
    let taus = config.tau_samples()?;
    let rows = taus
        .iter()
        .map(|&tau| {
            let phi = unwind_phi(tau, state.p(), &model)?;
            Ok(vec![Some(tau), Some(phi), Some(q_of_tau(tau, &state, &model))])
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let (path, out) = create(out_dir, "classical.csv")?;
    write_table(out, &["tau", "phi", "q_classical"], rows)?;
    Ok(Outcome {
        stdout: format!("wrote {}\n", path.display()),
        files: vec![path],
    })
}

#[derive(Debug, Serialize)]
struct SnapshotSummary {
    tau: f64,
    norm: f64,
    q_mean: f64,
    momentum_file: String,
    position_file: Option<String>,
    position_norm: Option<f64>,
    position_coverage_ok: Option<bool>,
}

#[derive(Debug, Serialize)]
struct EvolveSummary {
    snapshots: Vec<SnapshotSummary>,
}

fn position_grid(config: &Config) -> Result<Option<PositionGrid>, CliError> {
    match (config.grid.q_min, config.grid.q_max, config.grid.q_n) {
        (None, None, None) => Ok(None),
        (Some(lo), Some(hi), Some(n)) => Ok(Some(PositionGrid::new(lo, hi, n)?)),
        _ => Err(CliError::Config(
            "grid.q_min, grid.q_max and grid.q_n must be given together".into(),
        )),
    }
}

/// One momentum CSV per snapshot, an optional position CSV per snapshot, and
/// `evolve_summary.json`.
pub fn evolve_snapshots(config: &Config, out_dir: &Path) -> Result<Outcome, CliError> {
    let snapshots = &config.tau.snapshots;
    if snapshots.is_empty() {
        return Err(CliError::Config("tau.snapshots must not be empty".into()));
    }
    if let Some(bad) = snapshots.iter().find(|t| !t.is_finite()) {
        return Err(CliError::Config(format!("tau.snapshots contains {bad}")));
    }
    let model = config.frame_model()?;
    let q_grid = position_grid(config)?;
    let initial = initial_state(config)?;
    let route = AnalyticRoute::new(&initial, &model)?;

    let mut files = Vec::new();
    let mut summary = Vec::new();
    for (i, &tau) in snapshots.iter().enumerate() {
        let state = evolve(&initial, tau, &model);
        let momentum_file = format!("momentum_{i:03}.csv");
        let (path, out) = create(out_dir, &momentum_file)?;
        write_state_snapshot_csv(&state, out)?;
        files.push(path);

        let (mut position_file, mut position_norm, mut coverage) = (None, None, None);
        if let Some(grid) = &q_grid {
            let profile = to_position_representation(&state, grid, &model)?;
            let name = format!("position_{i:03}.csv");
            let (path, out) = create(out_dir, &name)?;
            write_position_csv(&profile, out)?;
            files.push(path);
            position_file = Some(name);
            position_norm = Some(profile.norm);
            coverage = Some(profile.coverage_ok);
        }
        summary.push(SnapshotSummary {
            tau,
            norm: state.norm_squared().sqrt(),
            q_mean: route.at(tau),
            momentum_file,
            position_file,
            position_norm,
            position_coverage_ok: coverage,
        });
    }
    let (path, _) = write_json(out_dir, "evolve_summary.json", &EvolveSummary { snapshots: summary })?;
    files.push(path);
    let stdout = files.iter().map(|f| format!("wrote {}\n", f.display())).collect();
    Ok(Outcome { files, stdout })
}

/// `series.csv` and `shift_report.json`; the report is also printed.
pub fn shift(config: &Config, out_dir: &Path) -> Result<Outcome, CliError> {
    let model = config.frame_model()?;
    let initial = initial_state(config)?;
    let taus = config.tau_samples()?;
    let m = moments(&initial)?;
    let classical_p = match model.convention() {
        ShiftConvention::MeanMomentum => m.mean_p,
        ShiftConvention::MeanSquareMomentum => m.mean_p2.sqrt(),
    };
    let options = SeriesOptions {
        with_variance: true,
        classical: Some(ClassicalState::new(config.state.q0, classical_p)?),
        ..SeriesOptions::default()
    };
    let series = expectation_series(&initial, &taus, &model, &options)?;
    let (series_path, out) = create(out_dir, "series.csv")?;
    write_series_csv(&series, out)?;
    let report: ShiftReport = extract_shift_numeric(&series, &initial, &model)?;
    let (report_path, text) = write_json(out_dir, "shift_report.json", &report)?;
    Ok(Outcome {
        files: vec![series_path, report_path],
        stdout: text,
    })
}

#[derive(Debug, Serialize)]
struct EstimateInputs {
    mass_kg: f64,
    temperature_k: f64,
    gravity: f64,
}

#[derive(Debug, Serialize)]
#[allow(non_snake_case)]
struct EstimateReport {
    lambda_SI: f64,
    delta_q_m: f64,
    delta_tau_s: f64,
    inputs: EstimateInputs,
}

/// Laboratory estimates as JSON on stdout; nothing is written to disk.
pub fn estimate(scenario: &PhysicalScenario) -> Result<Outcome, CliError> {
    let report = EstimateReport {
        lambda_SI: lambda_gravitational(scenario),
        delta_q_m: displacement_estimate(scenario),
        delta_tau_s: coherence_time_estimate(scenario),
        inputs: EstimateInputs {
            mass_kg: scenario.mass,
            temperature_k: scenario.temperature,
            gravity: scenario.gravity,
        },
    };
    Ok(Outcome {
        files: vec![],
        stdout: to_json(&report)?,
    })
}
