//! The projected flow of `X = pR + V` on the disk `D(1) = {π(p² + q²) ≤ 1}`.
//!
//! In complex notation `z = p + iq` the flow solves the Riccati equation
//! `z' = iπz² + i`. The biholomorphism from the strip `ℝ × [0, π]`
//!
//! ```text
//! z = (i·e^w + 1) / (√π·(e^w + i))
//! ```
//!
//! conjugates it to the translation `w' = 2√π`, which gives closed forms for
//! the flow, for `q` along flow lines and for the scaling exponent
//! `g = −2π∫₀ᵀ q∘φ_t dt`. The repelling fixed point `−iπ^{-1/2}` sits at
//! `a = −∞`, the attracting one `iπ^{-1/2}` at `a = +∞`; the edge `b = 0` is the
//! right boundary arc `{p > 0}` and `b = π` the left one.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::numerics::Simpson;
use crate::{Error, Result, INV_SQRT_PI, SQRT_PI};

/// Distance to `±iπ^{-1/2}` below which the strip chart is singular.
pub const FIXED_POINT_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiskPoint {
    pub p: f64,
    pub q: f64,
}

impl DiskPoint {
    pub const ORIGIN: DiskPoint = DiskPoint { p: 0.0, q: 0.0 };
    /// The attracting fixed point `iπ^{-1/2}`.
    pub const TOP: DiskPoint = DiskPoint {
        p: 0.0,
        q: INV_SQRT_PI,
    };
    /// The repelling fixed point `−iπ^{-1/2}`.
    pub const BOTTOM: DiskPoint = DiskPoint {
        p: 0.0,
        q: -INV_SQRT_PI,
    };

    /// Checked constructor: `π(p² + q²) ≤ 1 + 1e-12`.
    pub fn new(p: f64, q: f64) -> Result<Self> {
        let z = DiskPoint { p, q };
        if !(z.capacity() <= 1.0 + 1e-12) {
            return Err(Error::invalid("z", format!("({p}, {q}) lies outside D(1)")));
        }
        Ok(z)
    }

    pub fn from_complex(z: Complex64) -> Self {
        DiskPoint { p: z.re, q: z.im }
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.p, self.q)
    }

    /// `π(p² + q²)`.
    pub fn capacity(self) -> f64 {
        PI * (self.p * self.p + self.q * self.q)
    }

    /// `ℓ = 1 − π(p² + q²)`, zero on the boundary.
    pub fn ell(self) -> f64 {
        1.0 - self.capacity()
    }

    pub fn norm(self) -> f64 {
        self.p.hypot(self.q)
    }

    pub fn distance(self, other: DiskPoint) -> f64 {
        (self.p - other.p).hypot(self.q - other.q)
    }

    /// Mirror image in the line `p = 0`.
    pub fn reflect(self) -> Self {
        DiskPoint {
            p: -self.p,
            q: self.q,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StripPoint {
    pub a: f64,
    pub b: f64,
}

impl StripPoint {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&b) || !a.is_finite() {
            return Err(Error::invalid(
                "w",
                format!("({a}, {b}) is not in ℝ × [0, π]"),
            ));
        }
        Ok(StripPoint { a, b })
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.a, self.b)
    }

    /// Translates along the flow of `X` for time `t`.
    pub fn flowed(self, t: f64) -> Self {
        StripPoint {
            a: self.a + 2.0 * SQRT_PI * t,
            b: self.b,
        }
    }
}

/// `z = (ie^w + 1)/(√π(e^w + i))`, evaluated through `e^{-w}` when `a > 0`
/// so that large `|a|` neither overflows nor cancels.
pub fn strip_to_disk(w: StripPoint) -> DiskPoint {
    let i = Complex64::i();
    let one = Complex64::new(1.0, 0.0);
    let z = if w.a <= 0.0 {
        let e = w.to_complex().exp();
        (i * e + one) / (SQRT_PI * (e + i))
    } else {
        let e = (-w.to_complex()).exp();
        (i + e) / (SQRT_PI * (one + i * e))
    };
    DiskPoint::from_complex(z)
}

/// Inverse chart: `e^w = (1 − i√π z)/(√π z − i)`, principal branch with `b`
/// folded into `[0, π]`.
pub fn disk_to_strip(z: DiskPoint) -> Result<StripPoint> {
    let d = z
        .distance(DiskPoint::TOP)
        .min(z.distance(DiskPoint::BOTTOM));
    if d < FIXED_POINT_TOL {
        return Err(Error::FixedPointSingular {
            p: z.p,
            q: z.q,
            distance: d,
        });
    }
    let i = Complex64::i();
    let zc = z.to_complex();
    let ew = (Complex64::new(1.0, 0.0) - i * SQRT_PI * zc) / (SQRT_PI * zc - i);
    let a = ew.norm().ln();
    let mut b = ew.arg();
    // Points on (or rounded just past) the boundary land on b ≈ 0 or b ≈ ±π.
    if b < 0.0 {
        b = if b > -0.5 * PI { 0.0 } else { PI };
    }
    Ok(StripPoint { a, b: b.min(PI) })
}

/// `√π·p = cos b / (cosh a + sin b)`, written with `sech a` to stay finite.
pub fn p_in_strip(w: StripPoint) -> f64 {
    let sech = 1.0 / w.a.cosh();
    INV_SQRT_PI * w.b.cos() * sech / (1.0 + w.b.sin() * sech)
}

/// `√π·q = (e^{2a} − 1)/(e^{2a} + 1 + 2e^a sin b)`.
pub fn q_in_strip(w: StripPoint) -> f64 {
    if w.a.abs() < 350.0 {
        let e = w.a.exp();
        INV_SQRT_PI * (e * e - 1.0) / (e * e + 1.0 + 2.0 * e * w.b.sin())
    } else {
        let sech = 1.0 / w.a.cosh();
        INV_SQRT_PI * w.a.tanh() / (1.0 + w.b.sin() * sech)
    }
}

/// `ℓ = 1 − π(p² + q²) = 2 sin b / (cosh a + sin b)`, accurate near the
/// boundary and the fixed points where `1 − π|z|²` cancels.
pub fn ell_in_strip(w: StripPoint) -> f64 {
    let sech = 1.0 / w.a.cosh();
    2.0 * w.b.sin() * sech / (1.0 + w.b.sin() * sech)
}

/// `X = (−2πpq, 1 + π(p² − q²))`.
pub fn vector_field_x(z: DiskPoint) -> (f64, f64) {
    (-2.0 * PI * z.p * z.q, 1.0 + PI * (z.p * z.p - z.q * z.q))
}

/// Time-`t` map of `X`, computed in the strip chart.
///
/// Points within [`FIXED_POINT_TOL`] of a fixed point have no usable strip
/// coordinate; for those the equivalent Möbius form
/// `u(t) = (u₀ + iτ)/(1 − iτu₀)`, `u = √π z`, `τ = tanh(√π t)` is used, which
/// fixes `±iπ^{-1/2}` exactly.
pub fn exact_flow(z: DiskPoint, t: f64) -> DiskPoint {
    if t == 0.0 {
        return z;
    }
    match disk_to_strip(z) {
        Ok(w) => strip_to_disk(w.flowed(t)),
        Err(_) => mobius_flow(z, t),
    }
}

pub(crate) fn mobius_flow(z: DiskPoint, t: f64) -> DiskPoint {
    let i = Complex64::i();
    let u0 = SQRT_PI * z.to_complex();
    let tau = (SQRT_PI * t).tanh();
    let u = (u0 + i * tau) / (Complex64::new(1.0, 0.0) - i * tau * u0);
    DiskPoint::from_complex(u / SQRT_PI)
}

/// `N(τ) = ln(e^{2τ} + 2 sin(b) e^τ + 1) − τ = ln(2 cosh τ + 2 sin b)`.
fn antiderivative_n(tau: f64, sin_b: f64) -> f64 {
    let m = tau.abs();
    let e = (-m).exp();
    m + (e * e + 2.0 * sin_b * e).ln_1p()
}

/// `g = −2π∫₀ᵀ q(φ_t(w₀)) dt = −[N(a + 2√πT) − N(a)]`.
pub fn scaling_exponent_exact(w0: StripPoint, t_horizon: f64) -> f64 {
    let s = w0.b.sin();
    let end = w0.a + 2.0 * SQRT_PI * t_horizon;
    -(antiderivative_n(end, s) - antiderivative_n(w0.a, s))
}

/// Strip abscissa of the arc `C(t)` for horizon `T`: `a = −√πT + 2√πt`.
pub fn arc_abscissa(t_horizon: f64, t: f64) -> f64 {
    -SQRT_PI * t_horizon + 2.0 * SQRT_PI * t
}

/// Samples of a circular arc `{strip_to_disk(a + ib) : b ∈ [0, π]}`.
///
/// The exact strip parametrisation is kept alongside the samples, so the
/// resolution can be raised later without re-deriving the arc.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ArcC {
    /// Flow horizon the arc belongs to.
    pub t_horizon: f64,
    /// Strip abscissa of every sample.
    pub a: f64,
    pub bs: Vec<f64>,
    pub samples: Vec<DiskPoint>,
}

impl ArcC {
    pub fn at_abscissa(t_horizon: f64, a: f64, m: usize) -> Self {
        let m = m.max(2);
        let bs: Vec<f64> = (0..m).map(|k| PI * k as f64 / (m - 1) as f64).collect();
        let samples = bs
            .iter()
            .map(|&b| strip_to_disk(StripPoint { a, b }))
            .collect();
        ArcC {
            t_horizon,
            a,
            bs,
            samples,
        }
    }

    pub fn refined(&self, m: usize) -> Self {
        Self::at_abscissa(self.t_horizon, self.a, m)
    }

    /// Strip points of the samples.
    pub fn strip_points(&self) -> impl Iterator<Item = StripPoint> + '_ {
        self.bs.iter().map(|&b| StripPoint { a: self.a, b })
    }

    /// The supporting circle in disk coordinates: centre `(0, coth a)/√π`,
    /// radius `|csch a|/√π`; `None` for `a = 0`, where the arc is the segment
    /// `q = 0`.
    pub fn circle(&self) -> Option<(DiskPoint, f64)> {
        if self.a.abs() < 1e-12 {
            return None;
        }
        let centre = DiskPoint {
            p: 0.0,
            q: INV_SQRT_PI / self.a.tanh(),
        };
        Some((centre, INV_SQRT_PI / self.a.sinh().abs()))
    }

    /// Euclidean distance from `z` to the arc (not the full circle).
    pub fn distance_to(&self, z: DiskPoint) -> f64 {
        let ends = [
            strip_to_disk(StripPoint { a: self.a, b: 0.0 }),
            strip_to_disk(StripPoint { a: self.a, b: PI }),
        ];
        let to_ends = ends[0].distance(z).min(ends[1].distance(z));
        match self.circle() {
            None => {
                if z.p.abs() <= INV_SQRT_PI {
                    z.q.abs()
                } else {
                    to_ends
                }
            }
            Some((c, r)) => {
                let d = z.distance(c);
                if d == 0.0 {
                    return r;
                }
                let foot = DiskPoint {
                    p: c.p + r * (z.p - c.p) / d,
                    q: c.q + r * (z.q - c.q) / d,
                };
                if foot.capacity() <= 1.0 {
                    (d - r).abs()
                } else {
                    to_ends
                }
            }
        }
    }
}

/// `C(T)` at `t = 0`: the set `a = −√πT`, sampled at `m` equally spaced `b`.
pub fn arc_c(t_horizon: f64, m: usize) -> Result<ArcC> {
    if !(t_horizon > 0.0) {
        return Err(Error::invalid(
            "T",
            format!("horizon must be positive, got {t_horizon}"),
        ));
    }
    if m < 2 {
        return Err(Error::invalid("m", "need at least two samples"));
    }
    Ok(ArcC::at_abscissa(
        t_horizon,
        arc_abscissa(t_horizon, 0.0),
        m,
    ))
}

/// The moving arc `C(t) = φ_t(C(0))`.
pub fn moving_arc(t_horizon: f64, t: f64, m: usize) -> ArcC {
    ArcC::at_abscissa(t_horizon, arc_abscissa(t_horizon, t), m)
}

/// The boundary flow line `z(t) = strip_to_disk(−√πT + 2√πt)`, normalised so
/// that `z(T/2) = π^{-1/2}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryTrajectory {
    pub t_horizon: f64,
}

impl BoundaryTrajectory {
    pub fn new(t_horizon: f64) -> Result<Self> {
        if !(t_horizon > 0.0) {
            return Err(Error::invalid(
                "T",
                format!("horizon must be positive, got {t_horizon}"),
            ));
        }
        Ok(Self { t_horizon })
    }

    pub fn strip(&self, t: f64) -> StripPoint {
        StripPoint {
            a: arc_abscissa(self.t_horizon, t),
            b: 0.0,
        }
    }

    pub fn at(&self, t: f64) -> DiskPoint {
        strip_to_disk(self.strip(t))
    }

    /// `η(t) = p(z(t)) = π^{-1/2} sech a(t)`.
    pub fn eta(&self, t: f64) -> f64 {
        INV_SQRT_PI / arc_abscissa(self.t_horizon, t).cosh()
    }

    /// `q(z(t)) = π^{-1/2} tanh a(t)`.
    pub fn q(&self, t: f64) -> f64 {
        INV_SQRT_PI * arc_abscissa(self.t_horizon, t).tanh()
    }

    /// Polar angle of `z(t)`, in `(−π/2, π/2)`: the Gudermannian of `a(t)`.
    pub fn angle(&self, t: f64) -> f64 {
        gudermannian(arc_abscissa(self.t_horizon, t))
    }
}

pub(crate) fn gudermannian(a: f64) -> f64 {
    a.sinh().atan()
}

/// `∫₀ᵀ p(z(t)) dt` along the boundary flow line, by adaptive Simpson.
pub fn p_integral(t_horizon: f64) -> Result<f64> {
    let z = BoundaryTrajectory::new(t_horizon)?;
    Ok(integrate_eta(&z))
}

pub(crate) fn integrate_eta(z: &BoundaryTrajectory) -> f64 {
    // The integrand is a sech bump of width ~1/(2√π), symmetric about T/2.
    // Integrating one half keeps the sum from overshooting 1/2 by rounding.
    let half = 0.5 * z.t_horizon;
    let panels = (4.0 * half).ceil().clamp(16.0, 4096.0) as usize;
    2.0 * Simpson::with_tol(1e-15)
        .panels(panels)
        .integrate(|t| z.eta(t), 0.0, half)
}

/// `1/2 − p_integral(T)`, computed from the tails `|a| > √πT` of
/// `(1/2π)∫ sech a da` so that it keeps relative precision after
/// `p_integral(T)` has rounded to `1/2`.
pub fn p_integral_deficit(t_horizon: f64) -> Result<f64> {
    BoundaryTrajectory::new(t_horizon)?;
    let x = SQRT_PI * t_horizon;
    // e^x sech a is below e^-60 past the window
    let tail = Simpson::with_tol(1e-15)
        .panels(64)
        .integrate(|a| tail_sech(a, x), x, x + 60.0);
    Ok(tail * (-x).exp() / PI)
}

/// `e^x sech(a)` for `a ≥ x`, without underflow.
fn tail_sech(a: f64, x: f64) -> f64 {
    2.0 * (x - a).exp() / (1.0 + (-2.0 * a).exp())
}
