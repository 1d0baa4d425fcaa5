//! The discontinuous `δ → 0` limit of the cut-off flow,
//!
//! ```text
//! X_t = pR + V   where p ≤ η(t)
//! X_t = η(t)R    where p > η(t)
//! ```
//!
//! Both regimes have closed-form flows. The inner one is the strip
//! translation `w' = 2√π`. The outer one is a rigid rotation at angular speed
//! `2πη(t)`, which is exactly the angular speed of the boundary point `z(t)`,
//! so in that regime `u` keeps a constant angle to `z(t)`. Integration then
//! reduces to locating the regime switches, done by sign-bracketing
//! `E(t) = p(u(t)) − η(t)` on a node grid and bisecting.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::cutoff::{
    integrate_cutoff_with, Coordinates, FlowOptions, FlowStart, HamiltonianSchedule, Trajectory,
};
use crate::disk::{
    ell_in_strip, p_in_strip, q_in_strip, strip_to_disk, BoundaryTrajectory, DiskPoint, StripPoint,
};
use crate::exec::{self, ExecMode};
use crate::numerics::Simpson;
use crate::{Error, Result, SQRT_PI};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// `p ≤ η(t)`: the uncut field.
    Inner,
    /// `p > η(t)`: rigid rotation.
    Outer,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CrossingKind {
    /// Outer to inner; happens on the lower half, `q(z(t*)) < 0`.
    Entrance,
    /// Inner to outer; happens on the upper half, `q(z(t*)) > 0`.
    Exit,
    None,
}

/// `(p, q) = r·(sin ψ, −cos ψ)` with `r² = (1 − ℓ)/π`: the angle is measured
/// from the repeller, so both `ψ` and `ℓ` keep relative precision near it.
#[derive(Clone, Copy, Debug, PartialEq)]
struct Rim {
    ell: f64,
    psi: f64,
}

impl Rim {
    fn from_strip(w: StripPoint) -> Self {
        Rim {
            ell: ell_in_strip(w),
            psi: p_in_strip(w).atan2(-q_in_strip(w)),
        }
    }

    fn from_disk(z: DiskPoint) -> Self {
        Rim {
            ell: z.ell().max(0.0),
            psi: z.p.atan2(-z.q),
        }
    }

    fn radius(self) -> f64 {
        ((1.0 - self.ell).max(0.0) / PI).sqrt()
    }

    fn p(self) -> f64 {
        self.radius() * self.psi.sin()
    }

    fn q(self) -> f64 {
        -self.radius() * self.psi.cos()
    }

    fn disk(self) -> DiskPoint {
        DiskPoint {
            p: self.p(),
            q: self.q(),
        }
    }

    /// Inverse chart via `tan b = ℓ/(2√π p)` and
    /// `cosh a = cos b/(√π p) − sin b`. `None` at the two fixed points.
    fn strip(self) -> Option<StripPoint> {
        let p = self.p();
        let q = self.q();
        if p.abs() < f64::MIN_POSITIVE {
            if self.ell <= 0.0 {
                return None;
            }
            // the axis p = 0, where √π q = tanh(a/2)
            return Some(StripPoint {
                a: 2.0 * (SQRT_PI * q).clamp(-1.0, 1.0).atanh(),
                b: PI / 2.0,
            });
        }
        let b = self.ell.atan2(2.0 * SQRT_PI * p);
        let c = b.cos() / (SQRT_PI * p) - b.sin();
        let a = if c < 2.0 {
            (SQRT_PI * q * (c + b.sin())).asinh()
        } else {
            q.signum() * c.acosh()
        };
        Some(StripPoint { a, b })
    }
}

/// `ψ` of the boundary point `z(t)`: `2 atan(e^{a(t)})`.
fn boundary_psi(z: &BoundaryTrajectory, t: f64) -> f64 {
    2.0 * z.strip(t).a.exp().atan()
}

#[derive(Clone, Copy, Debug)]
enum Phase {
    Inner {
        t0: f64,
        w0: Option<StripPoint>,
        z0: DiskPoint,
    },
    Outer {
        t0: f64,
        rim0: Rim,
    },
}

impl Phase {
    fn t0(&self) -> f64 {
        match *self {
            Phase::Inner { t0, .. } | Phase::Outer { t0, .. } => t0,
        }
    }

    fn regime(&self) -> Regime {
        match self {
            Phase::Inner { .. } => Regime::Inner,
            Phase::Outer { .. } => Regime::Outer,
        }
    }

    fn rim(&self, z: &BoundaryTrajectory, t: f64) -> Rim {
        match *self {
            Phase::Inner {
                t0, w0: Some(w0), ..
            } => Rim::from_strip(w0.flowed(t - t0)),
            Phase::Inner { z0, .. } => Rim::from_disk(z0),
            Phase::Outer { t0, rim0 } => Rim {
                ell: rim0.ell,
                psi: rim0.psi + boundary_psi(z, t) - boundary_psi(z, t0),
            },
        }
    }

    fn disk(&self, z: &BoundaryTrajectory, t: f64) -> DiskPoint {
        match *self {
            Phase::Inner {
                t0, w0: Some(w0), ..
            } => strip_to_disk(w0.flowed(t - t0)),
            Phase::Inner { z0, .. } => z0,
            Phase::Outer { .. } => self.rim(z, t).disk(),
        }
    }

    /// `(p, q)` with the best available precision.
    fn pq(&self, z: &BoundaryTrajectory, t: f64) -> (f64, f64) {
        match *self {
            Phase::Inner {
                t0, w0: Some(w0), ..
            } => {
                let w = w0.flowed(t - t0);
                (p_in_strip(w), q_in_strip(w))
            }
            Phase::Inner { z0, .. } => (z0.p, z0.q),
            Phase::Outer { .. } => {
                let r = self.rim(z, t);
                (r.p(), r.q())
            }
        }
    }

    fn event(&self, z: &BoundaryTrajectory, t: f64) -> f64 {
        self.pq(z, t).0 - z.eta(t)
    }

    /// The other regime's phase, started from this one's state at `t`.
    fn switched(&self, z: &BoundaryTrajectory, t: f64) -> Phase {
        let rim = self.rim(z, t);
        match self {
            Phase::Inner { .. } => Phase::Outer { t0: t, rim0: rim },
            Phase::Outer { .. } => Phase::Inner {
                t0: t,
                w0: rim.strip(),
                z0: rim.disk(),
            },
        }
    }

    /// Whether `e` is on the wrong side of the switching surface for this
    /// regime.
    fn violated_by(&self, e: f64) -> bool {
        match self {
            Phase::Inner { .. } => e > 0.0,
            Phase::Outer { .. } => e <= 0.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PiecewiseOptions {
    /// Event-detection nodes over `[0, T]`.
    pub nodes: usize,
    /// Bisection width for crossing times.
    pub event_tol: f64,
    /// Switches with `|q(z(t*)) − q(u(t*))|` below this are grazes of the
    /// boundary flow line (where the regimes agree), not crossings.
    pub graze_tol: f64,
}

impl Default for PiecewiseOptions {
    fn default() -> Self {
        Self {
            nodes: 4096,
            event_tol: 1e-12,
            graze_tol: 1e-13,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Segment {
    pub t0: f64,
    pub t1: f64,
    pub regime: Regime,
    pub trajectory: Trajectory,
}

/// A member of `𝓜(z)`: the limit flow line from one start, with at most one
/// regime switch.
#[derive(Clone, Debug, Serialize)]
pub struct PiecewiseTrajectory {
    pub t_horizon: f64,
    pub start: DiskPoint,
    /// The start had `p < 0` and was integrated as its mirror image.
    pub reflected: bool,
    pub segments: Vec<Segment>,
    pub crossing_time: Option<f64>,
    /// `E′(t*) = 2πη(t*)(q(z(t*)) − q(u(t*)))`.
    pub crossing_rate: Option<f64>,
    /// `q(z(t*))`.
    pub crossing_boundary_q: Option<f64>,
    /// Switches discarded as boundary grazes.
    pub grazes: usize,
    #[serde(skip)]
    phases: Vec<Phase>,
    #[serde(skip)]
    boundary: Option<BoundaryTrajectory>,
}

impl PiecewiseTrajectory {
    fn phase_at(&self, t: f64) -> &Phase {
        self.phases
            .iter()
            .rev()
            .find(|ph| ph.t0() <= t)
            .unwrap_or(&self.phases[0])
    }

    fn z(&self) -> &BoundaryTrajectory {
        self.boundary
            .as_ref()
            .expect("trajectory built by integrate_piecewise")
    }

    /// `u(t)` for any `t ∈ [0, T]`, evaluated in closed form.
    pub fn at(&self, t: f64) -> DiskPoint {
        let z = self.phase_at(t).disk(self.z(), t);
        if self.reflected {
            z.reflect()
        } else {
            z
        }
    }

    /// `(p, q)` of the unreflected representative at `t`.
    fn pq(&self, t: f64) -> (f64, f64) {
        self.phase_at(t).pq(self.z(), t)
    }

    pub fn regime_at(&self, t: f64) -> Regime {
        self.phase_at(t).regime()
    }

    /// `E(t) = p(u(t)) − η(t)` for the unreflected representative.
    pub fn event(&self, t: f64) -> f64 {
        self.phase_at(t).event(self.z(), t)
    }

    pub fn end(&self) -> DiskPoint {
        self.at(self.t_horizon)
    }

    /// The interval of the inner regime, if any.
    pub fn inner_interval(&self) -> Option<(f64, f64)> {
        self.segments
            .iter()
            .find(|s| s.regime == Regime::Inner)
            .map(|s| (s.t0, s.t1))
    }
}

/// The limit field `X_t` at `z`.
pub fn limit_field(z: DiskPoint, t: f64, sched: &HamiltonianSchedule) -> (f64, f64) {
    let eta = sched.eta(t);
    if z.p.abs() <= eta {
        (-2.0 * PI * z.p * z.q, 1.0 + PI * (z.p * z.p - z.q * z.q))
    } else {
        let f = eta.copysign(z.p);
        (-2.0 * PI * f * z.q, 2.0 * PI * f * z.p)
    }
}

pub fn integrate_piecewise(
    z0: impl Into<FlowStart>,
    sched: &HamiltonianSchedule,
) -> Result<PiecewiseTrajectory> {
    integrate_piecewise_with(z0, sched, &PiecewiseOptions::default())
}

pub fn integrate_piecewise_with(
    z0: impl Into<FlowStart>,
    sched: &HamiltonianSchedule,
    opts: &PiecewiseOptions,
) -> Result<PiecewiseTrajectory> {
    if opts.nodes < 2 {
        return Err(Error::invalid("nodes", "need at least two event nodes"));
    }
    let start = z0.into();
    let disk = start.disk();
    if disk.capacity() > 1.0 + 1e-9 {
        return Err(Error::invalid(
            "z0",
            format!("({}, {}) lies outside the disk", disk.p, disk.q),
        ));
    }
    let reflected = disk.p < 0.0;
    let strip = start.strip().map(|w| {
        if reflected {
            StripPoint {
                a: w.a,
                b: PI - w.b,
            }
        } else {
            w
        }
    });
    let u0 = if reflected { disk.reflect() } else { disk };

    let z = *sched.boundary();
    let t_end = sched.t_horizon;
    let mut phase = Phase::Inner {
        t0: 0.0,
        w0: strip,
        z0: u0,
    };
    if phase.violated_by(phase.event(&z, 0.0)) {
        phase = phase.switched(&z, 0.0);
    }
    // the boundary flow line itself: both regimes coincide along it
    let on_z = strip.is_some_and(|w| w.b == 0.0 && w.a == z.strip(0.0).a);

    let mut phases = vec![phase];
    let mut crossing: Option<(f64, f64, f64)> = None;
    let mut grazes = 0;
    let dt = t_end / opts.nodes as f64;
    let mut t_prev = 0.0;
    for k in 1..=opts.nodes {
        let t = if k == opts.nodes {
            t_end
        } else {
            k as f64 * dt
        };
        let cur = *phases.last().unwrap();
        if on_z || !cur.violated_by(cur.event(&z, t)) {
            t_prev = t;
            continue;
        }
        let (mut lo, mut hi) = (t_prev.max(cur.t0()), t);
        while hi - lo > opts.event_tol {
            let mid = 0.5 * (lo + hi);
            if cur.violated_by(cur.event(&z, mid)) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let t_star = hi;
        let (_, q_u) = cur.pq(&z, t_star);
        let q_z = z.q(t_star);
        let rate = 2.0 * PI * z.eta(t_star) * (q_z - q_u);
        phases.push(cur.switched(&z, t_star));
        if (q_z - q_u).abs() < opts.graze_tol {
            grazes += 1;
        } else if let Some((first, _, _)) = crossing {
            return Err(Error::MultipleCrossings {
                first,
                second: t_star,
            });
        } else {
            crossing = Some((t_star, rate, q_z));
        }
        t_prev = t;
    }

    let mut segments = Vec::with_capacity(phases.len());
    for (i, ph) in phases.iter().enumerate() {
        let t0 = ph.t0();
        let t1 = phases.get(i + 1).map_or(t_end, |n| n.t0());
        segments.push(Segment {
            t0,
            t1,
            regime: ph.regime(),
            trajectory: segment_nodes(ph, &z, t0, t1, dt, reflected),
        });
    }
    Ok(PiecewiseTrajectory {
        t_horizon: t_end,
        start: disk,
        reflected,
        segments,
        crossing_time: crossing.map(|c| c.0),
        crossing_rate: crossing.map(|c| c.1),
        crossing_boundary_q: crossing.map(|c| c.2),
        grazes,
        phases,
        boundary: Some(z),
    })
}

/// Nodes of one regime on `[t0, t1]`, with the running `−2π∫q` of the inner
/// regime (trapezoidal; the exact value is [`scaling_exponent_piecewise`]).
fn segment_nodes(
    ph: &Phase,
    z: &BoundaryTrajectory,
    t0: f64,
    t1: f64,
    dt: f64,
    reflected: bool,
) -> Trajectory {
    let n = (((t1 - t0) / dt).ceil() as usize).max(1);
    let times: Vec<f64> = (0..=n)
        .map(|k| {
            if k == n {
                t1
            } else {
                t0 + (t1 - t0) * k as f64 / n as f64
            }
        })
        .collect();
    let mut points = Vec::with_capacity(times.len());
    let mut g = Vec::with_capacity(times.len());
    let mut acc = 0.0;
    let mut last: Option<(f64, f64)> = None;
    for &t in &times {
        let pt = ph.disk(z, t);
        points.push(if reflected { pt.reflect() } else { pt });
        if ph.regime() == Regime::Inner {
            let q = ph.pq(z, t).1;
            if let Some((tl, ql)) = last {
                acc += -PI * (q + ql) * (t - tl);
            }
            last = Some((t, q));
        }
        g.push(acc);
    }
    Trajectory {
        times,
        points,
        g,
        fiber: Vec::new(),
        coords: match ph.regime() {
            Regime::Inner => Coordinates::Strip,
            Regime::Outer => Coordinates::Disk,
        },
        h: dt,
        max_error: 0.0,
        min_step: dt,
    }
}

/// Entrance or exit by the sign of `E′(t*)`.
pub fn classify_crossing(traj: &PiecewiseTrajectory) -> CrossingKind {
    match traj.crossing_rate {
        None => CrossingKind::None,
        Some(r) if r < 0.0 => CrossingKind::Entrance,
        Some(_) => CrossingKind::Exit,
    }
}

/// `g(u) = −2π∫ q(u(t)) dt` over the inner interval.
pub fn scaling_exponent_piecewise(traj: &PiecewiseTrajectory) -> f64 {
    let Some((t1, t2)) = traj.inner_interval() else {
        return 0.0;
    };
    if t2 <= t1 {
        return 0.0;
    }
    let panels = ((4.0 * (t2 - t1)).ceil() as usize).clamp(16, 4096);
    -2.0 * PI
        * Simpson::with_tol(1e-13)
            .panels(panels)
            .integrate(|t| traj.pq(t).1, t1, t2)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub delta: f64,
    /// `max_t |u_δ(t) − u(t)|` over the cut-off integration nodes.
    pub sup_distance: f64,
    pub g_cutoff: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub schema: u32,
    pub start: FlowStart,
    #[serde(rename = "T")]
    pub t_horizon: f64,
    pub crossing_time: Option<f64>,
    pub crossing_kind: CrossingKind,
    pub g_piecewise: f64,
    pub rows: Vec<ConvergenceRow>,
    /// Each distance is below its predecessor, or both are below
    /// [`NOISE_FLOOR`].
    pub decreasing: bool,
    /// Last distance over first.
    pub final_ratio: f64,
}

/// Distances this small count as zero when judging monotonicity.
pub const NOISE_FLOOR: f64 = 1e-8;

/// Sup-distance between cut-off and limit flow lines from `z0` for each `δ`.
/// The schedule supplies `T` and `μ`; its own `δ` is not used.
pub fn convergence_test(
    z0: impl Into<FlowStart>,
    sched: &HamiltonianSchedule,
    deltas: &[f64],
) -> Result<ConvergenceReport> {
    convergence_test_with(z0, sched, deltas, ExecMode::default())
}

pub fn convergence_test_with(
    z0: impl Into<FlowStart>,
    sched: &HamiltonianSchedule,
    deltas: &[f64],
    mode: ExecMode,
) -> Result<ConvergenceReport> {
    if deltas.is_empty() || deltas.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(Error::invalid(
            "deltas",
            "must be nonempty and strictly decreasing",
        ));
    }
    let start = z0.into();
    let limit = integrate_piecewise(start, sched)?;
    let rows = exec::try_map(mode, deltas, |&delta| {
        let s = HamiltonianSchedule::new(sched.t_horizon, delta, sched.mu)?;
        let cut = integrate_cutoff_with(start, &s, &FlowOptions::default())?;
        let sup_distance = cut
            .times
            .iter()
            .zip(&cut.points)
            .map(|(&t, &u)| u.distance(limit.at(t)))
            .fold(0.0, f64::max);
        Ok::<_, Error>(ConvergenceRow {
            delta,
            sup_distance,
            g_cutoff: cut.scaling_exponent(),
        })
    })?;
    let decreasing = rows.windows(2).all(|w| {
        w[1].sup_distance < w[0].sup_distance
            || w[0].sup_distance.max(w[1].sup_distance) < NOISE_FLOOR
    });
    let final_ratio = rows.last().unwrap().sup_distance / rows[0].sup_distance;
    Ok(ConvergenceReport {
        schema: 1,
        start,
        t_horizon: sched.t_horizon,
        crossing_time: limit.crossing_time,
        crossing_kind: classify_crossing(&limit),
        g_piecewise: scaling_exponent_piecewise(&limit),
        rows,
        decreasing,
        final_ratio,
    })
}

/// Which side of `C(0)` a strip start lies on: `+1` above (towards the
/// attractor), `−1` below, `0` on it.
pub fn side_of_arc(w: StripPoint, t_horizon: f64) -> i8 {
    let a_c = crate::disk::arc_abscissa(t_horizon, 0.0);
    match w.a.partial_cmp(&a_c) {
        Some(std::cmp::Ordering::Greater) => 1,
        Some(std::cmp::Ordering::Less) => -1,
        _ => 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cutoff::SmoothingProfile;
    use crate::disk::arc_abscissa;
    use crate::INV_SQRT_PI;

    fn sched(t: f64) -> HamiltonianSchedule {
        HamiltonianSchedule::new(t, 0.01, SmoothingProfile::default()).unwrap()
    }

    #[test]
    fn rim_round_trips_through_the_strip() {
        for (a, b) in [
            (0.3, 0.2),
            (-17.0, 1.0),
            (12.0, 0.01),
            (0.0, PI / 2.0),
            (-0.4, 1.5),
            (2.0, 0.0),
        ] {
            let w = StripPoint { a, b };
            let back = Rim::from_strip(w).strip().unwrap();
            assert!(
                (back.a - a).abs() < 1e-9 * (1.0 + a.abs()) && (back.b - b).abs() < 1e-9,
                "{w:?} -> {back:?}"
            );
        }
    }

    #[test]
    fn limit_field_regimes() {
        let s = sched(4.0);
        let eta = s.eta(0.5);
        let z = DiskPoint {
            p: 0.5 * eta,
            q: 0.1,
        };
        let (dp, dq) = limit_field(z, 0.5, &s);
        let (xp, xq) = crate::disk::vector_field_x(z);
        assert_eq!((dp, dq), (xp, xq));
        let z = DiskPoint {
            p: eta + 0.1,
            q: -0.2,
        };
        let (dp, dq) = limit_field(z, 0.5, &s);
        assert!(
            (dp - 2.0 * PI * eta * 0.2).abs() < 1e-15 && (dq - 2.0 * PI * eta * z.p).abs() < 1e-15
        );
    }

    #[test]
    fn limit_field_is_continuous_on_the_boundary() {
        let s = sched(3.0);
        let t = 1.0;
        let eta = s.eta(t);
        let phi = (eta * SQRT_PI).acos();
        let z = DiskPoint {
            p: INV_SQRT_PI * phi.cos(),
            q: -INV_SQRT_PI * phi.sin(),
        };
        let inner = limit_field(
            DiskPoint {
                p: z.p - 1e-15,
                ..z
            },
            t,
            &s,
        );
        let outer = limit_field(
            DiskPoint {
                p: z.p + 1e-15,
                ..z
            },
            t,
            &s,
        );
        assert!((inner.0 - outer.0).abs() < 1e-12 && (inner.1 - outer.1).abs() < 1e-12);
    }

    #[test]
    fn boundary_start_has_no_crossing() {
        let s = sched(10.0);
        let tr = integrate_piecewise(s.boundary().strip(0.0), &s).unwrap();
        assert_eq!(tr.crossing_time, None);
        for k in 0..=20 {
            let t = 0.5 * k as f64;
            assert!(tr.at(t).distance(s.boundary().at(t)) < 1e-12);
        }
        // the same start given in disk coordinates
        let tr = integrate_piecewise(s.boundary().at(0.0), &s).unwrap();
        assert_eq!(tr.crossing_time, None);
        assert!(tr.end().distance(s.boundary().at(10.0)) < 1e-8);
    }

    #[test]
    fn arc_start_is_inner_throughout_with_zero_exponent() {
        let t = 4.0;
        let s = sched(t);
        for b in [0.1, 0.8, 1.5] {
            let w = StripPoint {
                a: arc_abscissa(t, 0.0),
                b,
            };
            let tr = integrate_piecewise(w, &s).unwrap();
            assert_eq!(tr.crossing_time, None);
            assert_eq!(tr.segments.len(), 1);
            assert_eq!(tr.segments[0].regime, Regime::Inner);
            assert!(scaling_exponent_piecewise(&tr).abs() < 1e-10);
        }
    }

    #[test]
    fn crossing_rate_sign_matches_boundary_half() {
        let t = 4.0;
        let s = sched(t);
        for da in [-0.5, -0.1, 0.1, 0.5] {
            for b in [0.2, 0.9] {
                let w = StripPoint {
                    a: arc_abscissa(t, 0.0) + da,
                    b,
                };
                let tr = integrate_piecewise(w, &s).unwrap();
                match classify_crossing(&tr) {
                    CrossingKind::Entrance => assert!(tr.crossing_boundary_q.unwrap() < 0.0),
                    CrossingKind::Exit => assert!(tr.crossing_boundary_q.unwrap() > 0.0),
                    CrossingKind::None => {}
                }
            }
        }
    }

    #[test]
    fn reflected_start_mirrors() {
        let s = sched(3.0);
        let z = DiskPoint { p: 0.2, q: -0.1 };
        let a = integrate_piecewise(z, &s).unwrap();
        let b = integrate_piecewise(z.reflect(), &s).unwrap();
        assert!(b.reflected);
        for k in 0..=30 {
            let t = 0.1 * k as f64;
            assert!(a.at(t).reflect().distance(b.at(t)) < 1e-14);
        }
    }

    #[test]
    fn convergence_rejects_unsorted_deltas() {
        let s = sched(2.0);
        assert!(convergence_test(DiskPoint::ORIGIN, &s, &[0.01, 0.1]).is_err());
        assert!(convergence_test(DiskPoint::ORIGIN, &s, &[]).is_err());
    }
}
