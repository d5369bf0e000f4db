//! CSV formats: sampled potentials (`x,V`) and wavefunction traces
//! (`x,re_psi,im_psi`).

use std::fs::File;
use std::path::Path;

use symscat_core::{Complex64, Energy, PotentialSpec, WaveTrace};

use crate::error::{CliError, CliResult};

const SPACING_REL_TOL: f64 = 1e-9;

fn input_error(path: &Path, reason: impl Into<String>) -> CliError {
    CliError::Input {
        path: path.display().to_string(),
        reason: reason.into(),
    }
}

fn read_rows(path: &Path, header: &[&str]) -> CliResult<Vec<Vec<f64>>> {
    let file = File::open(path).map_err(|e| input_error(path, e.to_string()))?;
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(file);
    let found: Vec<String> = reader
        .headers()
        .map_err(|e| input_error(path, e.to_string()))?
        .iter()
        .map(str::to_owned)
        .collect();
    if found != header {
        return Err(input_error(
            path,
            format!(
                "expected header `{}`, found `{}`",
                header.join(","),
                found.join(",")
            ),
        ));
    }
    let mut rows = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(|e| input_error(path, e.to_string()))?;
        let row = record
            .iter()
            .map(|field| field.parse::<f64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| input_error(path, format!("row {}: {e}", line + 1)))?;
        rows.push(row);
    }
    Ok(rows)
}

/// Checks that `xs` is uniform to `1e-9` relative spacing and symmetric about 0.
/// Returns the half-width.
fn check_symmetric_grid(path: &Path, xs: &[f64]) -> CliResult<f64> {
    if xs.len() < 3 {
        return Err(input_error(path, "need at least 3 rows"));
    }
    let a = xs[xs.len() - 1];
    if !(a > 0.0) || (xs[0] + a).abs() > SPACING_REL_TOL * a {
        return Err(input_error(path, "grid must run from -a to a"));
    }
    let h = 2.0 * a / (xs.len() - 1) as f64;
    if let Some(i) = xs
        .windows(2)
        .position(|w| ((w[1] - w[0]) - h).abs() > SPACING_REL_TOL * h)
    {
        return Err(input_error(
            path,
            format!("non-uniform spacing after row {}", i + 1),
        ));
    }
    Ok(a)
}

pub fn read_sampled_potential(path: &Path) -> CliResult<PotentialSpec> {
    let rows = read_rows(path, &["x", "V"])?;
    let xs: Vec<f64> = rows.iter().map(|r| r[0]).collect();
    let half_width = check_symmetric_grid(path, &xs)?;
    Ok(PotentialSpec::Sampled {
        half_width,
        samples: rows.iter().map(|r| (r[0], r[1])).collect(),
    })
}

pub fn read_trace(path: &Path, energy: Energy) -> CliResult<WaveTrace> {
    let rows = read_rows(path, &["x", "re_psi", "im_psi"])?;
    let xs: Vec<f64> = rows.iter().map(|r| r[0]).collect();
    let half_width = check_symmetric_grid(path, &xs)?;
    let psi = rows.iter().map(|r| Complex64::new(r[1], r[2])).collect();
    Ok(WaveTrace::from_values(half_width, psi, energy)?)
}

/// Serializes rows of numbers under a header. `None` cells are left empty.
pub fn csv_table(
    header: &[&str],
    rows: impl IntoIterator<Item = Vec<Option<f64>>>,
) -> CliResult<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(header).map_err(csv_to_io)?;
    for row in rows {
        let cells: Vec<String> = row
            .into_iter()
            .map(|c| c.map(format_cell).unwrap_or_default())
            .collect();
        writer.write_record(&cells).map_err(csv_to_io)?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| CliError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Shortest round-trip form, switching to exponent notation far from 1.
fn format_cell(v: f64) -> String {
    let a = v.abs();
    if a != 0.0 && a.is_finite() && !(1e-4..1e16).contains(&a) {
        format!("{v:e}")
    } else {
        v.to_string()
    }
}

fn csv_to_io(e: csv::Error) -> CliError {
    CliError::Io(std::io::Error::other(e))
}
