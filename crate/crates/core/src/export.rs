//! CSV and JSON output.
//!
//! Every file starts with the configuration that produced it: a `# config:`
//! comment line for CSV, a `config` field for JSON reports built by callers.
//! Numbers are written with 15 significant digits, so outputs are
//! byte-identical across runs with the same configuration.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;

use crate::cutoff::SigmaSet;
use crate::Result;

/// `x` with 15 significant digits in scientific notation.
pub fn fmt_sig(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.14e}")
    } else {
        format!("{x}")
    }
}

/// A CSV table with a one-line config header.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub config: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new<C: Serialize>(config: &C, columns: &[&str]) -> Result<Self> {
        Ok(Self {
            config: serde_json::to_string(config)?,
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        })
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write_to<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "# config: {}", self.config)?;
        writeln!(out, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&x| fmt_sig(x)).collect();
            writeln!(out, "{}", cells.join(","))?;
        }
        Ok(())
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let mut buf = Vec::new();
        self.write_to(&mut buf)?;
        fs::write(path, buf)?;
        Ok(())
    }
}

/// `Σ` as `(p, q, g_residual)`, plus the strip coordinates and the image.
pub fn sigma_table<C: Serialize>(config: &C, sigma: &SigmaSet) -> Result<Table> {
    let mut t = Table::new(
        config,
        &["p", "q", "g_residual", "a", "b", "image_p", "image_q"],
    )?;
    for (s, img) in sigma.points.iter().zip(sigma.images()) {
        t.push(vec![
            s.point.p, s.point.q, s.residual, s.strip.a, s.strip.b, img.p, img.q,
        ]);
    }
    Ok(t)
}

/// Pretty JSON with a trailing newline.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    fs::write(path, s)?;
    Ok(())
}

/// Reads the config JSON back from the first line of a CSV written by
/// [`Table::write`].
pub fn read_config_header(csv: &str) -> Option<&str> {
    csv.lines().next()?.strip_prefix("# config: ")
}
