//! Generic numerical kernels: adaptive Simpson quadrature, classical RK4 with
//! step-doubling control, bracketing root finders and a 1-D minimiser.

pub mod ode;
pub mod quad;
pub mod roots;

pub use ode::{rk4_step, Rk4, Solution};
pub use quad::{adaptive_simpson, Simpson};
pub use roots::{bisect, golden_section_min};
