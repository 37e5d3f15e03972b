//! Experiment runner for the `minnaert` crate: configuration, sweeps, and
//! CSV/SVG artifacts.

pub mod config;
pub mod error;
pub mod experiments;
pub mod table;

use std::fs;
use std::path::{Path, PathBuf};

use error::CliError;
use table::{emit_csv, emit_metadata, emit_svg_scatter, ResultTable};

/// Default (x, y) plot columns per table.
pub fn plot_columns(table: &str) -> Option<(&'static str, &'static str)> {
    match table {
        "table1" => Some(("delta", "relative_error_percent")),
        "table2" => Some(("d", "omega_s_re")),
        "spectrum_map" => Some(("omega_re", "objective")),
        "distance_sweep" => Some(("omega_re", "objective")),
        "scatter_sweep" => Some(("omega", "abs_g")),
        _ => None,
    }
}

/// Write `<name>.csv`, `<name>.meta.json` and, unless disabled, `<name>.svg`.
pub fn write_outputs(table: &ResultTable, dir: &Path, svg: bool) -> Result<Vec<PathBuf>, CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let csv = dir.join(format!("{}.csv", table.name));
    let meta = dir.join(format!("{}.meta.json", table.name));
    emit_csv(table, &csv)?;
    emit_metadata(table, &meta)?;
    let mut written = vec![csv, meta];
    if svg {
        if let Some((x, y)) = plot_columns(&table.name) {
            let path = dir.join(format!("{}.svg", table.name));
            emit_svg_scatter(table, x, y, &path)?;
            written.push(path);
        }
    }
    Ok(written)
}
