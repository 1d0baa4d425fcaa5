use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::schedule::HamiltonianSchedule;
use crate::disk::{disk_to_strip, p_in_strip, q_in_strip, strip_to_disk, DiskPoint, StripPoint};
use crate::numerics::{Rk4, Solution};
use crate::{Result, SQRT_PI};

/// Largest step the integrators take by default.
pub const DEFAULT_STEP: f64 = 1e-2;

/// `f_t(p)·R(z) + f′_t(p)·V(z)` in disk coordinates.
pub fn x_cutoff(z: DiskPoint, t: f64, sched: &HamiltonianSchedule) -> (f64, f64) {
    let c = sched.profile_at(t).eval(z.p);
    (
        -2.0 * PI * c.value * z.q,
        2.0 * PI * c.value * z.p + c.derivative * z.ell(),
    )
}

/// Chart in which a trajectory is integrated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Coordinates {
    /// `w = a + ib`. Exact where `f_t(p) = p`, and the boundary is `b ∈ {0, π}`.
    #[default]
    Strip,
    /// `(p, q)`. Works at the fixed points, loses relative accuracy near them.
    Disk,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FlowOptions {
    /// Initial and largest step.
    pub h: f64,
    /// Step-doubling tolerance; ignored when `adaptive` is false.
    pub tol: f64,
    pub adaptive: bool,
    pub coords: Coordinates,
}

impl Default for FlowOptions {
    fn default() -> Self {
        Self {
            h: DEFAULT_STEP,
            tol: Rk4::DEFAULT_TOL,
            adaptive: true,
            coords: Coordinates::Strip,
        }
    }
}

impl FlowOptions {
    pub fn fixed(h: f64, coords: Coordinates) -> Self {
        Self {
            h,
            tol: f64::INFINITY,
            adaptive: false,
            coords,
        }
    }

    fn stepper(&self) -> Rk4 {
        if self.adaptive {
            Rk4::adaptive(self.h, self.tol)
        } else {
            Rk4::fixed(self.h)
        }
    }
}

/// Integration nodes of a cut-off (or piecewise) flow line.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub points: Vec<DiskPoint>,
    /// Running scaling exponent `−2π∫₀ᵗ f′(p) q`.
    pub g: Vec<f64>,
    /// Fiber angle of the lift that started at angle 0.
    pub fiber: Vec<f64>,
    pub coords: Coordinates,
    pub h: f64,
    pub max_error: f64,
    pub min_step: f64,
}

impl Trajectory {
    pub fn start(&self) -> DiskPoint {
        self.points[0]
    }

    pub fn end(&self) -> DiskPoint {
        *self.points.last().expect("trajectory has nodes")
    }

    pub fn scaling_exponent(&self) -> f64 {
        *self.g.last().expect("trajectory has nodes")
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Largest `π(p² + q²) − 1` over the nodes.
    pub fn max_excursion(&self) -> f64 {
        self.points
            .iter()
            .map(|z| z.capacity() - 1.0)
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// `[a, b, g, θ]` rates. Writing `X_f = f′·X + (f − pf′)·R`, the strip image of
/// `X` is `2√π` and that of `R` is `2π cosh w`.
pub(crate) fn strip_rhs(sched: &HamiltonianSchedule, t: f64, y: &[f64; 4]) -> [f64; 4] {
    let w = StripPoint { a: y[0], b: y[1] };
    let (p, q) = (p_in_strip(w), q_in_strip(w));
    let c = sched.profile_at(t).eval(p);
    let (da, db) = if c.rotation == 0.0 {
        (0.0, 0.0)
    } else {
        let r = 2.0 * PI * c.rotation;
        (r * w.a.cosh() * w.b.cos(), r * w.a.sinh() * w.b.sin())
    };
    [
        2.0 * SQRT_PI * c.derivative + da,
        db,
        -2.0 * PI * c.derivative * q,
        2.0 * PI * c.value - PI * c.derivative * p,
    ]
}

pub(crate) fn disk_rhs(sched: &HamiltonianSchedule, t: f64, y: &[f64; 4]) -> [f64; 4] {
    let z = DiskPoint { p: y[0], q: y[1] };
    let c = sched.profile_at(t).eval(z.p);
    [
        -2.0 * PI * c.value * z.q,
        2.0 * PI * c.value * z.p + c.derivative * z.ell(),
        -2.0 * PI * c.derivative * z.q,
        2.0 * PI * c.value - PI * c.derivative * z.p,
    ]
}

/// Initial condition of a flow line, in either chart.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FlowStart {
    Disk(DiskPoint),
    /// Keeps full relative precision exponentially close to `±iπ^{-1/2}`.
    Strip(StripPoint),
}

impl FlowStart {
    pub fn disk(self) -> DiskPoint {
        match self {
            FlowStart::Disk(z) => z,
            FlowStart::Strip(w) => strip_to_disk(w),
        }
    }

    pub fn strip(self) -> Option<StripPoint> {
        match self {
            FlowStart::Disk(z) => disk_to_strip(z).ok(),
            FlowStart::Strip(w) => Some(w),
        }
    }
}

impl From<DiskPoint> for FlowStart {
    fn from(z: DiskPoint) -> Self {
        FlowStart::Disk(z)
    }
}

impl From<StripPoint> for FlowStart {
    fn from(w: StripPoint) -> Self {
        FlowStart::Strip(w)
    }
}

/// Integrates `X_{f_t}` from `z0` over `[0, T]` with the default options.
pub fn integrate_cutoff(z0: DiskPoint, sched: &HamiltonianSchedule, h: f64) -> Result<Trajectory> {
    integrate_cutoff_with(
        z0,
        sched,
        &FlowOptions {
            h,
            ..FlowOptions::default()
        },
    )
}

/// Integrates over `[0, T]`. A strip request at a fixed point of the chart
/// falls back to disk coordinates.
pub fn integrate_cutoff_with(
    z0: impl Into<FlowStart>,
    sched: &HamiltonianSchedule,
    opts: &FlowOptions,
) -> Result<Trajectory> {
    integrate_cutoff_span(z0.into(), sched, opts, 0.0, sched.t_horizon)
}

fn integrate_cutoff_span(
    start: FlowStart,
    sched: &HamiltonianSchedule,
    opts: &FlowOptions,
    t0: f64,
    t1: f64,
) -> Result<Trajectory> {
    let stepper = opts.stepper();
    let strip = match opts.coords {
        Coordinates::Strip => start.strip(),
        Coordinates::Disk => None,
    };
    let z0 = start.disk();
    let (sol, coords): (Solution<[f64; 4]>, _) = match strip {
        Some(w) => (
            stepper.integrate(
                |t, y: &[f64; 4]| strip_rhs(sched, t, y),
                t0,
                [w.a, w.b, 0.0, 0.0],
                t1,
            )?,
            Coordinates::Strip,
        ),
        None => (
            stepper.integrate(
                |t, y: &[f64; 4]| disk_rhs(sched, t, y),
                t0,
                [z0.p, z0.q, 0.0, 0.0],
                t1,
            )?,
            Coordinates::Disk,
        ),
    };
    let points = sol
        .states
        .iter()
        .map(|y| match coords {
            Coordinates::Strip => strip_to_disk(StripPoint { a: y[0], b: y[1] }),
            Coordinates::Disk => DiskPoint { p: y[0], q: y[1] },
        })
        .collect();
    Ok(Trajectory {
        g: sol.states.iter().map(|y| y[2]).collect(),
        fiber: sol.states.iter().map(|y| y[3]).collect(),
        times: sol.times,
        points,
        coords,
        h: opts.h,
        max_error: sol.max_error,
        min_step: if sol.min_step.is_finite() {
            sol.min_step
        } else {
            0.0
        },
    })
}

/// Strip-coordinate endpoint and scaling exponent, without storing nodes.
pub(crate) fn flow_strip_end(
    w0: StripPoint,
    sched: &HamiltonianSchedule,
    opts: &FlowOptions,
) -> Result<(StripPoint, f64)> {
    let sol = opts.stepper().integrate(
        |t, y: &[f64; 4]| strip_rhs(sched, t, y),
        0.0,
        [w0.a, w0.b, 0.0, 0.0],
        sched.t_horizon,
    )?;
    let y = sol.last();
    Ok((StripPoint { a: y[0], b: y[1] }, y[2]))
}

/// `g = −2π∫₀ᵀ f′_t(p) q dt` along the cut-off flow line from `z0`.
pub fn scaling_exponent_cutoff(z0: DiskPoint, sched: &HamiltonianSchedule) -> Result<f64> {
    Ok(integrate_cutoff_with(z0, sched, &FlowOptions::default())?.scaling_exponent())
}

/// Strip-coordinate variant of [`scaling_exponent_cutoff`], which keeps full
/// relative precision for starts exponentially close to the repeller.
pub fn scaling_exponent_cutoff_strip(w0: StripPoint, sched: &HamiltonianSchedule) -> Result<f64> {
    Ok(flow_strip_end(w0, sched, &FlowOptions::default())?.1)
}
