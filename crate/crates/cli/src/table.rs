//! Result tables and their CSV, metadata and SVG artifacts.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use minnaert::C64;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Real,
    Complex,
    Int,
    Text,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Real(f64),
    Complex(C64),
    Int(i64),
    Text(String),
}

impl Value {
    fn kind(&self) -> Kind {
        match self {
            Value::Real(_) => Kind::Real,
            Value::Complex(_) => Kind::Complex,
            Value::Int(_) => Kind::Int,
            Value::Text(_) => Kind::Text,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub experiment: String,
    pub config_hash: String,
    pub version: String,
    pub runtime_seconds: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResultTable {
    pub name: String,
    pub columns: Vec<(String, Kind)>,
    pub rows: Vec<Vec<Value>>,
    pub metadata: Metadata,
}

/// Scientific notation with 17 significant digits, enough for an exact round trip.
pub fn format_real(x: f64) -> String {
    format!("{x:.16e}")
}

impl ResultTable {
    pub fn new(name: &str, columns: &[(&str, Kind)]) -> Self {
        ResultTable {
            name: name.to_string(),
            columns: columns.iter().map(|(n, k)| (n.to_string(), *k)).collect(),
            rows: Vec::new(),
            metadata: Metadata {
                experiment: name.to_string(),
                config_hash: String::new(),
                version: env!("CARGO_PKG_VERSION").to_string(),
                runtime_seconds: 0.0,
            },
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        assert_eq!(row.len(), self.columns.len(), "row width must match the header");
        for (v, (name, kind)) in row.iter().zip(&self.columns) {
            assert_eq!(v.kind(), *kind, "column `{name}` holds {kind:?}");
        }
        self.rows.push(row);
    }

    /// Flat CSV header: complex columns become `<name>_re`, `<name>_im`.
    pub fn header(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (name, kind) in &self.columns {
            if *kind == Kind::Complex {
                out.push(format!("{name}_re"));
                out.push(format!("{name}_im"));
            } else {
                out.push(name.clone());
            }
        }
        out
    }

    fn flat_row(row: &[Value]) -> Vec<String> {
        let mut out = Vec::new();
        for v in row {
            match v {
                Value::Real(x) => out.push(format_real(*x)),
                Value::Complex(z) => {
                    out.push(format_real(z.re));
                    out.push(format_real(z.im));
                }
                Value::Int(i) => out.push(i.to_string()),
                Value::Text(s) => out.push(s.clone()),
            }
        }
        out
    }

    /// Numeric values of a flat column, NaN for non-numeric cells.
    pub fn flat_column(&self, name: &str) -> Result<Vec<f64>, CliError> {
        let index = self
            .header()
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| CliError::UnknownColumn(name.to_string()))?;
        Ok(self
            .rows
            .iter()
            .map(|r| Self::flat_row(r)[index].parse::<f64>().unwrap_or(f64::NAN))
            .collect())
    }

    pub fn to_csv(&self) -> String {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(self.header()).expect("in-memory write");
        for row in &self.rows {
            writer.write_record(Self::flat_row(row)).expect("in-memory write");
        }
        String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("UTF-8 output")
    }
}

pub fn emit_csv(table: &ResultTable, path: &Path) -> Result<(), CliError> {
    fs::write(path, table.to_csv()).map_err(|e| CliError::io(path, e))
}

pub fn emit_metadata(table: &ResultTable, path: &Path) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(&table.metadata).expect("metadata serializes");
    fs::write(path, text + "\n").map_err(|e| CliError::io(path, e))
}

/// Read a CSV written by [`emit_csv`] back as header plus string cells.
pub fn read_csv(path: &Path) -> Result<(Vec<String>, Vec<Vec<String>>), CliError> {
    let mut reader = csv::Reader::from_path(path).map_err(|e| CliError::io(path, e.into()))?;
    let header = reader
        .headers()
        .map_err(|e| CliError::io(path, e.into()))?
        .iter()
        .map(str::to_string)
        .collect();
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| CliError::io(path, e.into()))?;
        rows.push(record.iter().map(str::to_string).collect());
    }
    Ok((header, rows))
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const MARGIN: f64 = 60.0;

struct Scale {
    lo: f64,
    hi: f64,
    log: bool,
}

impl Scale {
    fn new(values: &[f64]) -> Scale {
        let finite: Vec<f64> = values.iter().copied().filter(|v| v.is_finite()).collect();
        let lo = finite.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = finite.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        // log axis for positive data spanning more than two decades
        let log = lo > 0.0 && hi / lo > 100.0;
        let (lo, hi) = if log { (lo.log10(), hi.log10()) } else { (lo, hi) };
        let (lo, hi) = if hi > lo { (lo, hi) } else { (lo - 0.5, hi + 0.5) };
        Scale { lo, hi, log }
    }

    fn unit(&self, v: f64) -> f64 {
        let v = if self.log { v.log10() } else { v };
        (v - self.lo) / (self.hi - self.lo)
    }

    fn label(&self, t: f64) -> String {
        let v = self.lo + t * (self.hi - self.lo);
        if self.log {
            format!("1e{v:.1}")
        } else {
            format!("{v:.4e}")
        }
    }
}

/// Static line-and-marker plot of `y_col` against `x_col`.
pub fn emit_svg_scatter(table: &ResultTable, x_col: &str, y_col: &str, path: &Path) -> Result<(), CliError> {
    let xs = table.flat_column(x_col)?;
    let ys = table.flat_column(y_col)?;
    let points: Vec<(f64, f64)> = xs.into_iter().zip(ys).filter(|(x, y)| x.is_finite() && y.is_finite()).collect();
    if points.is_empty() {
        return Err(CliError::EmptyTable(table.name.clone()));
    }
    let sx = Scale::new(&points.iter().map(|p| p.0).collect::<Vec<_>>());
    let sy = Scale::new(&points.iter().map(|p| p.1).collect::<Vec<_>>());
    let px = |x: f64| MARGIN + sx.unit(x) * (WIDTH - 2.0 * MARGIN);
    let py = |y: f64| HEIGHT - MARGIN - sy.unit(y) * (HEIGHT - 2.0 * MARGIN);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(
        svg,
        "<metadata>config_hash={} version={}</metadata>",
        table.metadata.config_hash, table.metadata.version
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="24" font-family="sans-serif" font-size="14" text-anchor="middle">{}: {} vs {}</text>"#,
        WIDTH / 2.0,
        table.name,
        y_col,
        x_col
    );
    let (x0, x1, y0, y1) = (MARGIN, WIDTH - MARGIN, HEIGHT - MARGIN, MARGIN);
    let _ = writeln!(
        svg,
        r#"<path d="M{x0} {y1} L{x0} {y0} L{x1} {y0}" stroke="black" fill="none"/>"#
    );
    for t in [0.0, 0.5, 1.0] {
        let x = x0 + t * (x1 - x0);
        let y = y0 - t * (y0 - y1);
        let _ = writeln!(
            svg,
            r#"<text x="{x}" y="{}" font-family="sans-serif" font-size="10" text-anchor="middle">{}</text>"#,
            y0 + 16.0,
            sx.label(t)
        );
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{y}" font-family="sans-serif" font-size="10" text-anchor="end">{}</text>"#,
            x0 - 4.0,
            sy.label(t)
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12" text-anchor="middle">{x_col}</text>"#,
        WIDTH / 2.0,
        HEIGHT - 18.0
    );
    let _ = writeln!(
        svg,
        r#"<text x="16" y="{}" font-family="sans-serif" font-size="12" text-anchor="middle" transform="rotate(-90 16 {})">{y_col}</text>"#,
        HEIGHT / 2.0,
        HEIGHT / 2.0
    );
    let mut line = String::new();
    for (i, (x, y)) in points.iter().enumerate() {
        let _ = write!(line, "{}{:.2} {:.2} ", if i == 0 { "M" } else { "L" }, px(*x), py(*y));
    }
    let _ = writeln!(svg, r#"<path d="{}" stroke="steelblue" fill="none"/>"#, line.trim_end());
    for (x, y) in &points {
        let _ = writeln!(svg, r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="steelblue"/>"#, px(*x), py(*y));
    }
    svg.push_str("</svg>\n");
    fs::write(path, svg).map_err(|e| CliError::io(path, e))
}
