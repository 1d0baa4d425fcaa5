//! The round contact sphere `∂B(1) = {π|z|² = 1} ⊂ ℝ^{2n+2}`.
//!
//! Coordinates are ordered `(p, q, x₁, y₁, …, x_n, y_n)`. The contact form is
//! the restriction of the Liouville form
//! `λ = ½(p dq − q dp) + ½Σ(xᵢ dyᵢ − yᵢ dxᵢ)`, whose Reeb flow is the
//! simultaneous rotation of every coordinate plane with period 1.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::disk::DiskPoint;
use crate::numerics::Rk4;
use crate::{Error, Result};

/// Allowed violation of `π|z|² = 1` for a [`SpherePoint`].
pub const SPHERE_TOL: f64 = 1e-12;
/// Allowed `⟨z, v⟩` for a [`TangentVector`].
pub const TANGENT_TOL: f64 = 1e-10;
/// Integrated states are pulled back radially once they drift this far.
pub const RENORMALIZE_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpherePoint {
    coords: Vec<f64>,
}

impl SpherePoint {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        check_len(coords.len())?;
        let v = constraint_violation(&coords);
        if v > SPHERE_TOL {
            return Err(Error::invalid(
                "coords",
                format!("π|z|² − 1 = {v:.3e} exceeds {SPHERE_TOL:e}"),
            ));
        }
        Ok(Self { coords })
    }

    /// Radial projection of any nonzero vector onto the sphere.
    pub fn normalized(mut coords: Vec<f64>) -> Result<Self> {
        check_len(coords.len())?;
        let r2: f64 = coords.iter().map(|c| c * c).sum();
        if !(r2 > 0.0) {
            return Err(Error::invalid("coords", "cannot normalise the zero vector"));
        }
        let s = 1.0 / (PI * r2).sqrt();
        coords.iter_mut().for_each(|c| *c *= s);
        Ok(Self { coords })
    }

    /// The point `(p, q, ζ)` where the fiber coordinates `(x₁, y₁, …)` are
    /// `√(ℓ/π)·(cos φ, sin φ, 0, …)` with `ℓ = 1 − π(p² + q²)`.
    pub fn lift(z: DiskPoint, fiber_angle: f64, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid(
                "n",
                "sphere dimension index must be positive",
            ));
        }
        let ell = (1.0 - PI * (z.p * z.p + z.q * z.q)).max(0.0);
        let r = (ell / PI).sqrt();
        let mut coords = vec![0.0; 2 * n + 2];
        coords[0] = z.p;
        coords[1] = z.q;
        coords[2] = r * fiber_angle.cos();
        coords[3] = r * fiber_angle.sin();
        Self::normalized(coords)
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.coords
    }

    /// The `n` in `S^{2n+1}`.
    pub fn n(&self) -> usize {
        self.coords.len() / 2 - 1
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn p(&self) -> f64 {
        self.coords[0]
    }

    pub fn q(&self) -> f64 {
        self.coords[1]
    }

    pub fn distance(&self, other: &SpherePoint) -> f64 {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }
}

fn check_len(len: usize) -> Result<()> {
    if len < 4 || !len.is_multiple_of(2) {
        return Err(Error::invalid(
            "coords",
            format!("need 2n+2 ≥ 4 coordinates, got {len}"),
        ));
    }
    Ok(())
}

/// `|π|z|² − 1|`.
pub fn constraint_violation(coords: &[f64]) -> f64 {
    (PI * coords.iter().map(|c| c * c).sum::<f64>() - 1.0).abs()
}

#[derive(Clone, Debug, PartialEq)]
pub struct TangentVector {
    pub base: SpherePoint,
    pub dir: Vec<f64>,
}

impl TangentVector {
    pub fn new(base: SpherePoint, dir: Vec<f64>) -> Result<Self> {
        if dir.len() != base.dim() {
            return Err(Error::DimensionMismatch {
                expected: base.dim(),
                actual: dir.len(),
            });
        }
        let dot = dot(base.coords(), &dir);
        if dot.abs() > TANGENT_TOL * (1.0 + norm(&dir)) {
            return Err(Error::invalid(
                "dir",
                format!("not tangent to the sphere: ⟨z, v⟩ = {dot:.3e}"),
            ));
        }
        Ok(Self { base, dir })
    }

    /// Orthogonal projection of an arbitrary ambient vector onto `T_base ∂B(1)`.
    pub fn project(base: SpherePoint, mut dir: Vec<f64>) -> Result<Self> {
        if dir.len() != base.dim() {
            return Err(Error::DimensionMismatch {
                expected: base.dim(),
                actual: dir.len(),
            });
        }
        let z = base.coords();
        let c = dot(z, &dir) / dot(z, z);
        dir.iter_mut().zip(z).for_each(|(d, zi)| *d -= c * zi);
        Ok(Self { base, dir })
    }
}

/// One of the named vector fields on the sphere.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldName {
    /// Reeb field.
    R,
    /// `F_i`, 1-based.
    F(usize),
    /// `JF_i`, 1-based.
    JF(usize),
    V,
    /// `X = pR + V`.
    X,
}

impl FromStr for FieldName {
    type Err = Error;

    /// Accepts `R`, `V`, `X`, `F_i`/`Fi` and `JF_i`/`JFi`.
    fn from_str(s: &str) -> Result<Self> {
        let index = |rest: &str| -> Result<usize> {
            rest.trim_start_matches('_')
                .parse::<usize>()
                .map_err(|_| Error::UnknownField(s.to_string()))
        };
        match s {
            "R" => Ok(FieldName::R),
            "V" => Ok(FieldName::V),
            "X" => Ok(FieldName::X),
            _ if s.starts_with("JF") => Ok(FieldName::JF(index(&s[2..])?)),
            _ if s.starts_with('F') => Ok(FieldName::F(index(&s[1..])?)),
            _ => Err(Error::UnknownField(s.to_string())),
        }
    }
}

impl fmt::Display for FieldName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldName::R => write!(f, "R"),
            FieldName::F(i) => write!(f, "F_{i}"),
            FieldName::JF(i) => write!(f, "JF_{i}"),
            FieldName::V => write!(f, "V"),
            FieldName::X => write!(f, "X"),
        }
    }
}

/// `λ_at(v)`.
pub fn liouville(at: &SpherePoint, v: &TangentVector) -> Result<f64> {
    same_dim(at, &v.dir)?;
    Ok(liouville_raw(at.coords(), &v.dir))
}

pub(crate) fn liouville_raw(z: &[f64], v: &[f64]) -> f64 {
    z.chunks_exact(2)
        .zip(v.chunks_exact(2))
        .map(|(z, v)| 0.5 * (z[0] * v[1] - z[1] * v[0]))
        .sum()
}

/// `dλ(u, v) = dp∧dq(u, v) + Σ dxᵢ∧dyᵢ(u, v)`, the standard symplectic form.
pub fn d_liouville(u: &[f64], v: &[f64]) -> f64 {
    u.chunks_exact(2)
        .zip(v.chunks_exact(2))
        .map(|(u, v)| u[0] * v[1] - u[1] * v[0])
        .sum()
}

/// Evaluates one of the displayed fields at `at`.
pub fn field(name: FieldName, at: &SpherePoint) -> Result<TangentVector> {
    let n = at.n();
    let check = |i: usize| {
        if i == 0 || i > n {
            Err(Error::IndexOutOfRange { index: i, n })
        } else {
            Ok(i)
        }
    };
    let z = at.coords();
    let dir = match name {
        FieldName::R => reeb_raw(z),
        FieldName::F(i) => f_raw(z, check(i)?),
        FieldName::JF(i) => jf_raw(z, check(i)?),
        FieldName::V => v_raw(z),
        FieldName::X => x_raw(z),
    };
    Ok(TangentVector {
        base: at.clone(),
        dir,
    })
}

/// `R = 2πJz`.
pub(crate) fn reeb_raw(z: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; z.len()];
    for (o, z) in out.chunks_exact_mut(2).zip(z.chunks_exact(2)) {
        o[0] = -2.0 * PI * z[1];
        o[1] = 2.0 * PI * z[0];
    }
    out
}

fn f_raw(z: &[f64], i: usize) -> Vec<f64> {
    let (p, q, x, y) = (z[0], z[1], z[2 * i], z[2 * i + 1]);
    let mut out = vec![0.0; z.len()];
    out[0] = -2.0 * PI * x;
    out[1] = 2.0 * PI * y;
    out[2 * i] = 2.0 * PI * p;
    out[2 * i + 1] = -2.0 * PI * q;
    out
}

fn jf_raw(z: &[f64], i: usize) -> Vec<f64> {
    let (p, q, x, y) = (z[0], z[1], z[2 * i], z[2 * i + 1]);
    let mut out = vec![0.0; z.len()];
    out[0] = -2.0 * PI * y;
    out[1] = -2.0 * PI * x;
    out[2 * i] = 2.0 * PI * q;
    out[2 * i + 1] = 2.0 * PI * p;
    out
}

/// `V = ½Σ(yᵢFᵢ − xᵢJFᵢ)`, expanded: the `p` component cancels.
pub(crate) fn v_raw(z: &[f64]) -> Vec<f64> {
    let (p, q) = (z[0], z[1]);
    let mut out = vec![0.0; z.len()];
    let mut fiber = 0.0;
    for i in 1..z.len() / 2 {
        let (x, y) = (z[2 * i], z[2 * i + 1]);
        fiber += x * x + y * y;
        out[2 * i] = PI * (y * p - x * q);
        out[2 * i + 1] = -PI * (q * y + p * x);
    }
    out[1] = PI * fiber;
    out
}

pub(crate) fn x_raw(z: &[f64]) -> Vec<f64> {
    let p = z[0];
    let mut out = v_raw(z);
    for (o, r) in out.iter_mut().zip(reeb_raw(z)) {
        *o += p * r;
    }
    out
}

/// The contact vector field with contact Hamiltonian `h` at `z`:
/// `h·R + J·grad_ξ h`, where `grad_ξ` is the projection of the ambient
/// gradient onto the contact plane `ξ = span(z, Jz)^⊥`.
pub fn contact_field_raw(z: &[f64], h: f64, grad: &[f64]) -> Vec<f64> {
    let zz = dot(z, z);
    let jz: Vec<f64> = z.chunks_exact(2).flat_map(|c| [-c[1], c[0]]).collect();
    let a = dot(grad, z) / zz;
    let b = dot(grad, &jz) / zz;
    let proj: Vec<f64> = grad
        .iter()
        .zip(z)
        .zip(&jz)
        .map(|((g, z), jz)| g - a * z - b * jz)
        .collect();
    let reeb = reeb_raw(z);
    let mut out = vec![0.0; z.len()];
    for k in 0..z.len() / 2 {
        // J(u, v) = (−v, u) on each plane
        out[2 * k] = h * reeb[2 * k] - proj[2 * k + 1];
        out[2 * k + 1] = h * reeb[2 * k + 1] + proj[2 * k];
    }
    out
}

/// `|dp(v) + dλ(X, v) + 2πq·λ(v)|`: the residual of the identity
/// `d(λ(X)) + dλ(X, −) = −2πqλ` evaluated on `v`.
pub fn verify_contact_identity(at: &SpherePoint, v: &TangentVector) -> Result<f64> {
    same_dim(at, &v.dir)?;
    if v.base.coords() != at.coords() {
        return Err(Error::invalid(
            "v",
            "tangent vector is based at a different point",
        ));
    }
    let z = at.coords();
    let x = x_raw(z);
    Ok((v.dir[0] + d_liouville(&x, &v.dir) + 2.0 * PI * z[1] * liouville_raw(z, &v.dir)).abs())
}

/// Time-`s` Reeb flow: rotation by `2πs` in every coordinate plane.
pub fn reeb_flow(at: &SpherePoint, s: f64) -> SpherePoint {
    SpherePoint {
        coords: rotate_raw(at.coords(), 2.0 * PI * s),
    }
}

pub(crate) fn rotate_raw(z: &[f64], angle: f64) -> Vec<f64> {
    // reduce first so that s and s + 1 give bit-identical results
    let angle = angle.rem_euclid(2.0 * PI);
    let (s, c) = angle.sin_cos();
    z.chunks_exact(2)
        .flat_map(|w| [c * w[0] - s * w[1], s * w[0] + c * w[1]])
        .collect()
}

/// The projection `∂B(1) → D(1)` onto the `(p, q)` plane.
pub fn project_to_disk(at: &SpherePoint) -> DiskPoint {
    DiskPoint {
        p: at.p(),
        q: at.q(),
    }
}

/// A (possibly time-dependent) contact Hamiltonian on the sphere.
pub trait ContactHamiltonian: Sync {
    /// Value and ambient gradient at `z` (the gradient of any extension off the
    /// sphere; only its contact-plane part matters).
    fn value_and_gradient(&self, t: f64, z: &[f64]) -> (f64, Vec<f64>);

    fn field(&self, t: f64, z: &[f64]) -> Vec<f64> {
        let (h, grad) = self.value_and_gradient(t, z);
        contact_field_raw(z, h, &grad)
    }
}

/// Result of integrating a contact vector field on the sphere.
#[derive(Clone, Debug)]
pub struct SphereFlowResult {
    pub end: SpherePoint,
    /// `g` with `φ*λ = e^g λ` at the start point: `∫ dH(R) dt` along the flow.
    pub scaling_exponent: f64,
    /// Number of accepted states pulled back onto the sphere.
    pub renormalizations: usize,
    pub max_violation: f64,
}

/// Flows `x0` by the contact vector field of `ham` from `t0` to `t1`.
pub fn flow_contact<H: ContactHamiltonian + ?Sized>(
    ham: &H,
    x0: &SpherePoint,
    t0: f64,
    t1: f64,
    stepper: Rk4,
) -> Result<SphereFlowResult> {
    use std::cell::Cell;
    let dim = x0.dim();
    let count = Cell::new(0usize);
    let worst = Cell::new(0.0f64);
    let project = |y: &mut Vec<f64>| {
        let v = constraint_violation(&y[..dim]);
        worst.set(worst.get().max(v));
        if v > RENORMALIZE_TOL {
            count.set(count.get() + 1);
            let s = 1.0 / (PI * y[..dim].iter().map(|c| c * c).sum::<f64>()).sqrt();
            y[..dim].iter_mut().for_each(|c| *c *= s);
        }
    };
    let rhs = |t: f64, y: &Vec<f64>| {
        let z = &y[..dim];
        let (h, grad) = ham.value_and_gradient(t, z);
        let mut out = contact_field_raw(z, h, &grad);
        out.push(dot(&grad, &reeb_raw(z)));
        out
    };
    let mut y0 = x0.coords.clone();
    y0.push(0.0);
    let sol = stepper.integrate_projected(rhs, project, t0, y0, t1)?;
    let mut end = sol.states.into_iter().last().expect("initial node");
    let scaling_exponent = end.pop().expect("augmented state");
    Ok(SphereFlowResult {
        end: SpherePoint { coords: end },
        scaling_exponent,
        renormalizations: count.get(),
        max_violation: worst.get(),
    })
}

fn same_dim(at: &SpherePoint, v: &[f64]) -> Result<()> {
    if v.len() != at.dim() {
        return Err(Error::DimensionMismatch {
            expected: at.dim(),
            actual: v.len(),
        });
    }
    Ok(())
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(a, b)| a * b).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}
