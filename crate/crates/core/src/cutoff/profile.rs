use serde::{Deserialize, Serialize};

use crate::{Error, Result, INV_SQRT_PI};

/// The convex smoothing profile `μ` with `μ(x) = 1/2` for `x ≤ 0` and
/// `μ(x) = x` for `x ≥ 1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SmoothingProfile {
    /// `1/2 + x²/2` on `[0, 1]`; C¹ and piecewise quadratic.
    #[default]
    QuadraticSpline,
    /// `1/2 + x³ − x⁴/2` on `[0, 1]`; C², used to check μ-independence.
    SmoothstepC2,
}

impl SmoothingProfile {
    pub fn value(self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.5;
        }
        if x >= 1.0 {
            return x;
        }
        match self {
            SmoothingProfile::QuadraticSpline => 0.5 + 0.5 * x * x,
            SmoothingProfile::SmoothstepC2 => 0.5 + x * x * x * (1.0 - 0.5 * x),
        }
    }

    pub fn slope(self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        if x >= 1.0 {
            return 1.0;
        }
        match self {
            SmoothingProfile::QuadraticSpline => x,
            SmoothingProfile::SmoothstepC2 => x * x * (3.0 - 2.0 * x),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SmoothingProfile::QuadraticSpline => "quadratic-spline",
            SmoothingProfile::SmoothstepC2 => "smoothstep-c2",
        }
    }
}

impl std::str::FromStr for SmoothingProfile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quadratic-spline" => Ok(SmoothingProfile::QuadraticSpline),
            "smoothstep-c2" => Ok(SmoothingProfile::SmoothstepC2),
            _ => Err(Error::invalid(
                "mu",
                format!("expected quadratic-spline or smoothstep-c2, got {s:?}"),
            )),
        }
    }
}

/// `f(p)`, `f′(p)` and `f(p) − p·f′(p)` of a cut-off profile at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CutoffValue {
    pub value: f64,
    pub derivative: f64,
    /// `f − p f′`: the coefficient of `R` once `X_f` is written as
    /// `f′·X + (f − p f′)·R`. Exactly zero where `f(p) = p`.
    pub rotation: f64,
}

/// `f_{δ,η}(p) = η + δ − δμ((η − p + δ)/δ)` on `p ≥ 0`, extended oddly.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CutoffProfile {
    pub delta: f64,
    pub eta: f64,
    pub mu: SmoothingProfile,
}

impl CutoffProfile {
    pub fn new(delta: f64, eta: f64, mu: SmoothingProfile) -> Result<Self> {
        if !(delta > 0.0) || !delta.is_finite() {
            return Err(Error::invalid(
                "delta",
                format!("must be positive, got {delta}"),
            ));
        }
        if !(0.0..=INV_SQRT_PI * (1.0 + 1e-12)).contains(&eta) {
            return Err(Error::invalid(
                "eta",
                format!("must lie in [0, π^(-1/2)], got {eta}"),
            ));
        }
        Ok(Self { delta, eta, mu })
    }

    /// `max_p f = η + δ/2`, attained for `p ≥ η + δ`.
    pub fn max_value(&self) -> f64 {
        self.eta + 0.5 * self.delta
    }

    pub fn eval(&self, p: f64) -> CutoffValue {
        let s = p.abs();
        let (delta, eta) = (self.delta, self.eta);
        let x = (eta - s + delta) / delta;
        let (value, derivative, rotation) = if x >= 1.0 {
            (s, 1.0, 0.0)
        } else if x <= 0.0 {
            (eta + 0.5 * delta, 0.0, eta + 0.5 * delta)
        } else {
            let mu = self.mu.value(x);
            let dmu = self.mu.slope(x);
            let rotation = (eta + delta) * (1.0 - dmu) - delta * (mu - x * dmu);
            (eta + delta - delta * mu, dmu, rotation)
        };
        let sign = if p < 0.0 { -1.0 } else { 1.0 };
        CutoffValue {
            value: sign * value,
            derivative,
            rotation: sign * rotation,
        }
    }
}

/// `(f(p), f′(p))`.
pub fn f_cutoff(p: f64, prof: &CutoffProfile) -> (f64, f64) {
    let v = prof.eval(p);
    (v.value, v.derivative)
}
