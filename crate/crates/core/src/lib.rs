//! Cut-off contact flows on the round sphere `∂B(1) ⊂ ℝ^{2n+2}`.
//!
//! The crate is organised bottom-up:
//!
//! - [`sphere`]: the Liouville form, Reeb flow and the fields `R, F_i, JF_i, V, X`
//!   on the sphere, plus the general contact vector field of a Hamiltonian.
//! - [`disk`]: the projected flow of `X = pR + V` on the disk `D(1)`, its strip
//!   linearisation and closed-form scaling exponents.
//! - [`cutoff`]: the time-dependent cut-off flow, its scaling-factor-1 set and
//!   its Shelukhin-Hofer length.
//! - [`piecewise`]: the discontinuous limit dynamics with event-detected
//!   regime switches.
//! - [`construction`]: the displacing isotopy, the composed isotopy and the
//!   translated-point search that produce a [`construction::CertificationReport`].
//!
//! - [`geometry`] and [`export`]: Hausdorff distances, circle fits and the
//!   CSV/JSON writers used by the command-line driver.
//!
//! Point-wise batch work goes through [`exec`], which runs on rayon when the
//! `parallel` feature is enabled and falls back to plain iterators otherwise.

pub mod construction;
pub mod cutoff;
pub mod disk;
pub mod error;
pub mod exec;
pub mod export;
pub mod geometry;
pub mod numerics;
pub mod piecewise;
pub mod sphere;

pub use error::{Error, Result};

/// `√π`.
pub const SQRT_PI: f64 = 1.772_453_850_905_516;

/// `π^{-1/2}`, the radius of the disk `D(1)`.
pub const INV_SQRT_PI: f64 = 0.564_189_583_547_756_3;
