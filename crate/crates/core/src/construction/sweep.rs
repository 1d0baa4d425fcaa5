use serde::{Deserialize, Serialize};

use crate::exec::{self, ExecMode};
use crate::{Error, Result};

use super::certify::{lengths, run_certification, CertificationReport, CertifyParams, Lengths};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepEntry {
    pub delta: f64,
    pub width: f64,
    pub lengths: Lengths,
    /// Full report, when the sweep ran the whole pipeline.
    pub report: Option<CertificationReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sweep {
    /// Row-major over `deltas × widths`, both in the order given.
    pub deltas: Vec<f64>,
    pub widths: Vec<f64>,
    pub entries: Vec<SweepEntry>,
    /// `oscillation_bound` is nonincreasing as `δ` decreases, for every width.
    pub monotone_in_delta: bool,
    /// `oscillation_bound` is nonincreasing as the width decreases, for every `δ`.
    pub monotone_in_width: bool,
}

impl Sweep {
    pub fn entry(&self, i: usize, j: usize) -> &SweepEntry {
        &self.entries[i * self.widths.len() + j]
    }

    pub fn all_pass(&self) -> bool {
        self.entries
            .iter()
            .all(|e| e.report.as_ref().is_none_or(|r| r.all_pass()))
    }
}

/// Oscillation bounds over `deltas × widths` with every other parameter
/// taken from `base`. With `full` each entry runs [`run_certification`];
/// otherwise only the lengths are computed.
pub fn oscillation_sweep(
    base: &CertifyParams,
    deltas: &[f64],
    widths: &[f64],
    full: bool,
    mode: ExecMode,
) -> Result<Sweep> {
    if deltas.is_empty() || widths.is_empty() {
        return Err(Error::invalid(
            "sweep",
            "need at least one delta and one width",
        ));
    }
    let grid: Vec<(f64, f64)> = deltas
        .iter()
        .flat_map(|&d| widths.iter().map(move |&w| (d, w)))
        .collect();
    // entries run in parallel, so each pipeline runs sequentially inside
    let entries = exec::try_map(mode, &grid, |&(delta, width)| -> Result<SweepEntry> {
        let params = CertifyParams {
            delta,
            width,
            ..base.clone()
        };
        let l = lengths(&params)?;
        let report = if full {
            Some(run_certification(&params, ExecMode::Sequential)?.report)
        } else {
            None
        };
        Ok(SweepEntry {
            delta,
            width,
            lengths: l,
            report,
        })
    })?;
    let osc = |i: usize, j: usize| entries[i * widths.len() + j].lengths.oscillation_bound;
    let monotone_in_delta = (0..widths.len()).all(|j| {
        let pairs: Vec<(f64, f64)> = (0..deltas.len()).map(|i| (deltas[i], osc(i, j))).collect();
        nonincreasing_as_key_decreases(&pairs)
    });
    let monotone_in_width = (0..deltas.len()).all(|i| {
        let pairs: Vec<(f64, f64)> = (0..widths.len()).map(|j| (widths[j], osc(i, j))).collect();
        nonincreasing_as_key_decreases(&pairs)
    });
    Ok(Sweep {
        deltas: deltas.to_vec(),
        widths: widths.to_vec(),
        entries,
        monotone_in_delta,
        monotone_in_width,
    })
}

/// Whether `value` never increases when `key` decreases.
fn nonincreasing_as_key_decreases(pairs: &[(f64, f64)]) -> bool {
    let mut sorted = pairs.to_vec();
    sorted.sort_by(|a, b| b.0.total_cmp(&a.0));
    sorted.windows(2).all(|w| w[1].1 <= w[0].1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lengths_sweep_is_monotone() {
        let s = oscillation_sweep(
            &CertifyParams::default(),
            &[0.01, 0.04, 0.02],
            &[0.125, 0.5, 0.25],
            false,
            ExecMode::Parallel,
        )
        .unwrap();
        assert_eq!(s.entries.len(), 9);
        assert!(s.monotone_in_delta && s.monotone_in_width);
        assert!(s.entry(0, 0).lengths.oscillation_bound < s.entry(1, 1).lengths.oscillation_bound);
        assert!(s.all_pass());
    }

    #[test]
    fn detects_increase() {
        assert!(nonincreasing_as_key_decreases(&[
            (0.1, 2.0),
            (0.05, 1.0),
            (0.01, 1.0)
        ]));
        assert!(!nonincreasing_as_key_decreases(&[(0.1, 1.0), (0.05, 2.0)]));
    }

    #[test]
    fn rejects_empty() {
        assert!(oscillation_sweep(
            &CertifyParams::default(),
            &[],
            &[0.25],
            false,
            ExecMode::Sequential
        )
        .is_err());
    }
}
