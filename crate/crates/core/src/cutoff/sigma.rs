use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::flow::{flow_strip_end, FlowOptions};
use super::schedule::HamiltonianSchedule;
use crate::disk::{arc_abscissa, moving_arc, strip_to_disk, DiskPoint, StripPoint};
use crate::exec::{self, ExecMode};
use crate::geometry::hausdorff_to_arc;
use crate::numerics::bisect;
use crate::{Error, Result};

/// Largest `|g|` accepted for a point of `Σ`.
pub const SIGMA_TOL: f64 = 1e-8;
/// Default number of transversals.
pub const DEFAULT_RESOLUTION: usize = 64;
/// Strip-abscissa resolution of the bisection.
const A_TOL: f64 = 1e-13;

/// A zero of the scaling exponent on one transversal.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SigmaPoint {
    pub index: usize,
    pub strip: StripPoint,
    pub point: DiskPoint,
    /// `g` at the returned point.
    pub residual: f64,
    /// `φ_T` of the point, in strip coordinates.
    pub image: StripPoint,
}

/// Samples of the scaling-factor-1 set `Σ` of the time-`T` cut-off map.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SigmaSet {
    pub t_horizon: f64,
    pub delta: f64,
    /// Half-length of each transversal, in strip units.
    pub half_width: f64,
    pub points: Vec<SigmaPoint>,
}

impl SigmaSet {
    pub fn disk_points(&self) -> Vec<DiskPoint> {
        self.points.iter().map(|s| s.point).collect()
    }

    /// `φ_T(Σ)` in disk coordinates.
    pub fn images(&self) -> Vec<DiskPoint> {
        self.points.iter().map(|s| strip_to_disk(s.image)).collect()
    }

    pub fn max_residual(&self) -> f64 {
        self.points.iter().fold(0.0, |m, s| m.max(s.residual.abs()))
    }

    pub fn residuals_ok(&self) -> bool {
        self.max_residual() < SIGMA_TOL
    }

    /// Hausdorff distance of `Σ` to `C(0)`, in disk units.
    pub fn hausdorff_to_initial_arc(&self, arc_samples: usize) -> f64 {
        hausdorff_to_arc(
            &self.disk_points(),
            &moving_arc(self.t_horizon, 0.0, 2),
            arc_samples,
        )
    }

    /// Hausdorff distance of `φ_T(Σ)` to `C(T)`, in disk units.
    pub fn hausdorff_to_final_arc(&self, arc_samples: usize) -> f64 {
        hausdorff_to_arc(
            &self.images(),
            &moving_arc(self.t_horizon, self.t_horizon, 2),
            arc_samples,
        )
    }

    /// Hausdorff distance of `φ_T(Σ)` to `C(T)` in the strip chart, where
    /// `C(T)` is the segment `{√πT} × [0, π]`.
    pub fn strip_hausdorff_to_final_arc(&self, arc_samples: usize) -> f64 {
        let a = arc_abscissa(self.t_horizon, self.t_horizon);
        strip_hausdorff_to_segment(self.points.iter().map(|s| s.image), a, arc_samples)
    }
}

/// Hausdorff distance between strip points and the vertical segment
/// `{a} × [0, π]`, the segment sampled at `samples` points.
pub fn strip_hausdorff_to_segment(
    points: impl Iterator<Item = StripPoint> + Clone,
    a: f64,
    samples: usize,
) -> f64 {
    let to_seg = points
        .clone()
        .map(|w| (w.a - a).hypot(w.b - w.b.clamp(0.0, PI)))
        .fold(0.0, f64::max);
    let n = samples.max(2);
    let from_seg = (0..n)
        .map(|k| {
            let b = PI * k as f64 / (n - 1) as f64;
            points
                .clone()
                .map(|w| (w.a - a).hypot(w.b - b))
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max);
    to_seg.max(from_seg)
}

/// `Σ` sampled on `resolution` transversals to `C(0)`.
///
/// Transversal `k` is the strip segment `b = πk/(m−1)`, `|a − a_C| ≤ 2δ` with
/// `a_C = −√πT`; the chart is conformal, so these are normal to `C(0)`. The
/// zero of `g` on each is found by bisection.
pub fn sigma_set(sched: &HamiltonianSchedule, resolution: usize) -> Result<SigmaSet> {
    sigma_set_with(sched, resolution, ExecMode::default())
}

pub fn sigma_set_with(
    sched: &HamiltonianSchedule,
    resolution: usize,
    mode: ExecMode,
) -> Result<SigmaSet> {
    if resolution < 8 {
        return Err(Error::invalid(
            "resolution",
            format!("need at least 8 transversals, got {resolution}"),
        ));
    }
    let half_width = 2.0 * sched.delta;
    let a_c = arc_abscissa(sched.t_horizon, 0.0);
    let opts = FlowOptions::default();
    let indices: Vec<usize> = (0..resolution).collect();
    let points = exec::try_map(mode, &indices, |&k| -> Result<SigmaPoint> {
        let b = PI * k as f64 / (resolution - 1) as f64;
        let g = |a: f64| flow_strip_end(StripPoint { a, b }, sched, &opts).map(|(_, g)| g);
        let (lo, hi) = (a_c - half_width, a_c + half_width);
        let (g_lo, g_hi) = (g(lo)?, g(hi)?);
        // the integrator is deterministic, so errors inside the bisection
        // cannot occur after both endpoints succeeded
        let a = bisect(|a| g(a).unwrap_or(f64::NAN), lo, hi, A_TOL).ok_or(Error::NoBracket {
            index: k,
            g_lo,
            g_hi,
        })?;
        let strip = StripPoint { a, b };
        let (image, residual) = flow_strip_end(strip, sched, &opts)?;
        Ok(SigmaPoint {
            index: k,
            strip,
            point: strip_to_disk(strip),
            residual,
            image,
        })
    })?;
    Ok(SigmaSet {
        t_horizon: sched.t_horizon,
        delta: sched.delta,
        half_width,
        points,
    })
}
