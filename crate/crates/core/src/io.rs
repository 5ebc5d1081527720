//! CSV serialization of states, spectra, observables and series.
//!
//! Every file carries a header row. Numbers are written with 17 significant
//! digits so they round-trip exactly.

use std::io::{Read, Write};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{MomentumGrid, MomentumState};
use crate::quantum::{ExpectationSeries, PositionProfile};
use crate::spectral::{ObservableMatrix, SpectralState};

/// Round-trip formatting with 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn csv_err(e: csv::Error) -> Error {
    if e.is_io_error() {
        Error::Io(e.to_string())
    } else {
        Error::Parse(e.to_string())
    }
}

/// Writes a numeric table; `None` cells are left empty.
pub fn write_table<W, I>(out: W, header: &[&str], rows: I) -> Result<()>
where
    W: Write,
    I: IntoIterator<Item = Vec<Option<f64>>>,
{
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header).map_err(csv_err)?;
    for row in rows {
        w.write_record(row.iter().map(|v| v.map(fmt_f64).unwrap_or_default()))
            .map_err(csv_err)?;
    }
    w.flush().map_err(|e| Error::Io(e.to_string()))
}

fn read_table<R: Read>(input: R, header: &[&str]) -> Result<Vec<Vec<f64>>> {
    let mut r = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
    let found: Vec<String> = r.headers().map_err(csv_err)?.iter().map(str::to_owned).collect();
    if found != header {
        return Err(Error::Parse(format!("expected header {header:?}, found {found:?}")));
    }
    let mut rows = Vec::new();
    for (line, rec) in r.records().enumerate() {
        let rec = rec.map_err(csv_err)?;
        let row = rec
            .iter()
            .map(|s| {
                s.parse::<f64>()
                    .map_err(|e| Error::Parse(format!("row {}: `{s}`: {e}", line + 2)))
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    Ok(rows)
}

fn complex_rows<'a>(
    xs: &'a [f64],
    amps: &'a [Complex64],
    with_abs2: bool,
) -> impl Iterator<Item = Vec<Option<f64>>> + 'a {
    xs.iter().zip(amps).map(move |(x, a)| {
        let mut row = vec![Some(*x), Some(a.re), Some(a.im)];
        if with_abs2 {
            row.push(Some(a.norm_sqr()));
        }
        row
    })
}

/// `p,re,im`.
pub fn write_state_csv<W: Write>(state: &MomentumState, out: W) -> Result<()> {
    write_table(out, &["p", "re", "im"], complex_rows(&state.grid().nodes(), state.amps(), false))
}

/// `p,re,im,abs2`, the snapshot format.
pub fn write_state_snapshot_csv<W: Write>(state: &MomentumState, out: W) -> Result<()> {
    write_table(
        out,
        &["p", "re", "im", "abs2"],
        complex_rows(&state.grid().nodes(), state.amps(), true),
    )
}

/// `q,re,im,abs2`.
pub fn write_position_csv<W: Write>(profile: &PositionProfile, out: W) -> Result<()> {
    write_table(out, &["q", "re", "im", "abs2"], complex_rows(&profile.q, &profile.amps, true))
}

/// Reads `p,re,im` on a uniform grid. The state must be normalized.
pub fn read_state_csv<R: Read>(input: R, tau: f64) -> Result<MomentumState> {
    let rows = read_table(input, &["p", "re", "im"])?;
    let n = rows.len();
    if n < 2 {
        return Err(Error::Parse(format!("need at least 2 rows, found {n}")));
    }
    let grid = MomentumGrid::new(rows[0][0], rows[n - 1][0], n)?;
    let h = grid.spacing();
    for (i, (row, p)) in rows.iter().zip(grid.nodes()).enumerate() {
        if (row[0] - p).abs() > 1e-9 * h.max(p.abs()) {
            return Err(Error::Parse(format!("row {}: momentum grid is not uniform", i + 2)));
        }
    }
    let amps = rows.iter().map(|r| Complex64::new(r[1], r[2])).collect();
    MomentumState::new(grid, amps, tau)
}

/// `E,re,im`.
pub fn write_spectral_csv<W: Write>(state: &SpectralState, out: W) -> Result<()> {
    write_table(out, &["E", "re", "im"], complex_rows(state.energies(), state.coeffs(), false))
}

pub fn read_spectral_csv<R: Read>(input: R, tau: f64) -> Result<SpectralState> {
    let rows = read_table(input, &["E", "re", "im"])?;
    let energies = rows.iter().map(|r| r[0]).collect();
    let coeffs = rows.iter().map(|r| Complex64::new(r[1], r[2])).collect();
    SpectralState::new(energies, coeffs, tau)
}

fn matrix_header(dim: usize) -> Vec<String> {
    (0..dim).flat_map(|j| [format!("re{j}"), format!("im{j}")]).collect()
}

/// One row per matrix row, columns `re0,im0,re1,im1,...`.
pub fn write_observable_csv<W: Write>(obs: &ObservableMatrix, out: W) -> Result<()> {
    let header = matrix_header(obs.dim());
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    let rows = obs
        .rows()
        .map(|r| r.iter().flat_map(|c| [Some(c.re), Some(c.im)]).collect::<Vec<_>>());
    write_table(out, &header, rows)
}

pub fn read_observable_csv<R: Read>(mut input: R) -> Result<ObservableMatrix> {
    let mut text = String::new();
    input
        .read_to_string(&mut text)
        .map_err(|e| Error::Io(e.to_string()))?;
    let columns = text.lines().next().map_or(0, |l| l.split(',').count());
    if columns == 0 || columns % 2 != 0 {
        return Err(Error::Parse(format!("expected an even number of columns, found {columns}")));
    }
    let header = matrix_header(columns / 2);
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    let rows = read_table(text.as_bytes(), &header)?
        .into_iter()
        .map(|r| r.chunks(2).map(|c| Complex64::new(c[0], c[1])).collect())
        .collect();
    ObservableMatrix::from_rows(rows)
}

/// `tau,q_classical,q_mean,q_var,norm`; absent columns are left empty.
pub fn write_series_csv<W: Write>(series: &ExpectationSeries, out: W) -> Result<()> {
    let rows = (0..series.len()).map(|i| {
        vec![
            Some(series.taus()[i]),
            series.q_classical().map(|v| v[i]),
            Some(series.q_mean()[i]),
            series.q_var().map(|v| v[i]),
            Some(series.norm()[i]),
        ]
    });
    write_table(out, &["tau", "q_classical", "q_mean", "q_var", "norm"], rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::make_gaussian;
    use crate::model::{FrameModel, GaussianMode, GaussianSpec};
    use proptest::prelude::*;

    #[test]
    fn state_roundtrip_is_bit_exact() {
        let model = FrameModel::new(4.0, 1.0).unwrap();
        let grid = MomentumGrid::new(0.01, 5.0, 257).unwrap();
        let s = make_gaussian(GaussianSpec::new(4.0, 1.25, 1.0).unwrap(), grid, &model, GaussianMode::TruncatePositive).unwrap();
        let mut buf = Vec::new();
        write_state_csv(&s, &mut buf).unwrap();
        assert!(buf.starts_with(b"p,re,im\n"));
        let back = read_state_csv(buf.as_slice(), 0.0).unwrap();
        assert_eq!(back.amps(), s.amps());
        assert_eq!(back.grid().nodes(), s.grid().nodes());
    }

    #[test]
    fn observable_roundtrip() {
        let c = |re, im| Complex64::new(re, im);
        let m = ObservableMatrix::from_rows(vec![
            vec![c(1.0, 0.0), c(0.5, -0.25)],
            vec![c(0.5, 0.25), c(-2.0, 0.0)],
        ])
        .unwrap();
        let mut buf = Vec::new();
        write_observable_csv(&m, &mut buf).unwrap();
        assert!(buf.starts_with(b"re0,im0,re1,im1\n"));
        assert_eq!(read_observable_csv(buf.as_slice()).unwrap(), m);
    }

    #[test]
    fn bad_input_is_a_parse_error() {
        assert!(matches!(read_state_csv("x,y\n1,2\n".as_bytes(), 0.0), Err(Error::Parse(_))));
        assert!(matches!(read_state_csv("p,re,im\n0,1,0\n1,abc,0\n".as_bytes(), 0.0), Err(Error::Parse(_))));
        assert!(matches!(
            read_state_csv("p,re,im\n0,1,0\n1,0,0\n3,0,0\n".as_bytes(), 0.0),
            Err(Error::Parse(_))
        ));
    }

    proptest! {
        #[test]
        fn formatted_numbers_roundtrip(x in proptest::num::f64::NORMAL | proptest::num::f64::SUBNORMAL | proptest::num::f64::ZERO) {
            prop_assert_eq!(fmt_f64(x).parse::<f64>().unwrap(), x);
        }

        #[test]
        fn spectral_roundtrip(levels in proptest::collection::vec((0.01f64..10.0, -1.0f64..1.0, -1.0f64..1.0), 1..20)) {
            let mut levels = levels;
            levels.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
            levels.dedup_by(|a, b| a.0 == b.0);
            let norm: f64 = levels.iter().map(|l| l.1 * l.1 + l.2 * l.2).sum::<f64>().sqrt();
            prop_assume!(norm > 1e-3);
            let s = SpectralState::new(
                levels.iter().map(|l| l.0).collect(),
                levels.iter().map(|l| Complex64::new(l.1 / norm, l.2 / norm)).collect(),
                0.5,
            ).unwrap();
            let mut buf = Vec::new();
            write_spectral_csv(&s, &mut buf).unwrap();
            prop_assert_eq!(read_spectral_csv(buf.as_slice(), 0.5).unwrap(), s);
        }
    }
}
