use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::sphere::{flow_contact, ContactHamiltonian, SphereFlowResult, SpherePoint};
use crate::{Error, Result, INV_SQRT_PI};

use super::sphere_stepper;

/// Speed that turns the band `|X₃| ≤ w/2` by exactly `π` in unit time.
pub const ROTATION_SPEED: f64 = 0.25;
/// Default allowed `|pr κ₁(A)|` for the displaced point `A`.
pub const DEFAULT_TOL_DISPLACE: f64 = 1e-8;

/// `X₃ = 2π(q x₁ − p y₁)`, the height function of the axis about which the
/// finger rotates. It is invariant under the Reeb flow and `|X₃| ≤ 1`.
pub fn axis_height(z: &[f64]) -> f64 {
    2.0 * PI * (z[1] * z[2] - z[0] * z[3])
}

/// Odd profile `G` with `G′ = 1` on `|s| ≤ 1/2`, `G′ = 0` on `|s| ≥ 1` and a
/// quintic smoothstep between.
pub fn finger_profile(s: f64) -> (f64, f64) {
    let m = s.abs();
    let (g, dg) = if m <= 0.5 {
        (m, 1.0)
    } else if m < 1.0 {
        let x = 2.0 * (m - 0.5);
        let step = x * x * x * (10.0 + x * (-15.0 + 6.0 * x));
        let int_step = x * x * x * x * (2.5 + x * (-3.0 + x));
        (m - 0.5 * int_step, 1.0 - step)
    } else {
        (0.75, 0.0)
    };
    (g.copysign(s), dg)
}

/// `max G = G(1)`.
pub const FINGER_MAX: f64 = 0.75;

/// Strict contact isotopy lifted from a rotation of `ℂP¹` that is localised
/// to the band `|X₃| < w` around the great circle through `A = [1 : 0]` and
/// the point `[0 : 1]` over `p = q = 0`.
///
/// The contact Hamiltonian is `k = c·w·G(X₃/w)`. It is Reeb-invariant, so the
/// lift is strict. Inside `|X₃| ≤ w/2` it turns by `4πc = π` in unit time.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DisplacingIsotopy {
    pub width: f64,
    /// Sphere dimension index `n` of `S^{2n+1}`.
    pub n: usize,
    /// `∫₀¹ (max k − min k) dt`.
    pub hofer_norm: f64,
    /// `∫₀¹ max |k| dt`.
    pub length: f64,
    /// `|pr κ₁(A)|` measured at construction.
    pub displacement_miss: f64,
}

impl ContactHamiltonian for DisplacingIsotopy {
    fn value_and_gradient(&self, _t: f64, z: &[f64]) -> (f64, Vec<f64>) {
        let w = self.width;
        let (g, dg) = finger_profile(axis_height(z) / w);
        let k = 2.0 * PI * ROTATION_SPEED * dg;
        let mut grad = vec![0.0; z.len()];
        grad[0] = -k * z[3];
        grad[1] = k * z[2];
        grad[2] = k * z[1];
        grad[3] = -k * z[0];
        (ROTATION_SPEED * w * g, grad)
    }
}

impl DisplacingIsotopy {
    pub fn value(&self, z: &[f64]) -> f64 {
        ROTATION_SPEED * self.width * finger_profile(axis_height(z) / self.width).0
    }

    /// `κ_t(x)` with its scaling exponent; negative `t` flows backwards.
    pub fn flow(&self, x: &SpherePoint, t: f64) -> Result<SphereFlowResult> {
        flow_contact(self, x, 0.0, t, sphere_stepper())
    }

    /// The lift `(0, π^{-1/2}, 0, …)` of `A`.
    pub fn source_point(n: usize) -> SpherePoint {
        let mut c = vec![0.0; 2 * n + 2];
        c[1] = INV_SQRT_PI;
        SpherePoint::new(c).expect("on the sphere")
    }
}

/// Builds the finger isotopy of width `width` on `S^{2n+1}` and checks that its
/// time-1 map takes the lift of `A` into the fiber over the origin.
pub fn build_kappa(width: f64, n: usize, tol_displace: f64) -> Result<DisplacingIsotopy> {
    if !(width > 0.0 && width <= 2.0) {
        return Err(Error::invalid(
            "width",
            format!("must lie in (0, 2], got {width}"),
        ));
    }
    if n == 0 {
        return Err(Error::invalid(
            "n",
            "sphere dimension index must be positive",
        ));
    }
    let (max, min) = hamiltonian_extremes(width);
    let mut kappa = DisplacingIsotopy {
        width,
        n,
        hofer_norm: max - min,
        length: max.max(-min),
        displacement_miss: 0.0,
    };
    let end = kappa.flow(&DisplacingIsotopy::source_point(n), 1.0)?.end;
    let miss = end.p().hypot(end.q());
    if !(miss <= tol_displace) {
        return Err(Error::DisplacementFailed {
            miss,
            tolerance: tol_displace,
        });
    }
    kappa.displacement_miss = miss;
    Ok(kappa)
}

/// Extremes of `k` over the sphere, from a grid over the range `[−1, 1]` of
/// `X₃`; `k` is autonomous, so the time integrals are these values.
fn hamiltonian_extremes(width: f64) -> (f64, f64) {
    let n = 4096;
    (0..=n).fold((f64::NEG_INFINITY, f64::INFINITY), |(hi, lo), k| {
        let x3 = -1.0 + 2.0 * k as f64 / n as f64;
        let v = ROTATION_SPEED * width * finger_profile(x3 / width).0;
        (hi.max(v), lo.min(v))
    })
}
