//! The composed isotopy `ψ_t = κ_t γ_t` on `S^{2n+1}` and its certification.
//!
//! `γ` is the cut-off isotopy run to time `T` and reparametrised to unit
//! time. It focuses `Σ` near `−iπ^{-1/2}` and carries it to `iπ^{-1/2}`.
//! `κ` is a strict isotopy that moves a neighbourhood of the fiber over
//! `iπ^{-1/2}` into a neighbourhood of the fiber over the origin. Since Reeb
//! orbits keep `|pr|` fixed, `ψ₁` has no translated points once those
//! neighbourhoods are small.

mod certify;
mod compose;
mod gamma;
mod kappa;
mod search;
mod sweep;

pub use certify::{
    certify, lengths, lift_samples, run_certification, Certification, CertificationReport,
    CertifyParams, Criteria, DisplacementMargins, KappaKind, Lengths, REPORT_SCHEMA,
};
pub use compose::{compose_psi, ComposedImage, ComposedIsotopy};
pub use gamma::{build_gamma, CutoffHamiltonian, Gamma};
pub use kappa::{
    axis_height, build_kappa, finger_profile, DisplacingIsotopy, DEFAULT_TOL_DISPLACE, FINGER_MAX,
    ROTATION_SPEED,
};
pub use search::{
    closest_reeb_time, rotational_bound, search_margin, translated_point_search,
    TranslatedPointSearch,
};
pub use sweep::{oscillation_sweep, Sweep, SweepEntry};

use crate::cutoff::DEFAULT_STEP;
use crate::numerics::Rk4;

/// Stepper for sphere-level flows: the cut-off flow's step and tolerance.
pub(crate) fn sphere_stepper() -> Rk4 {
    Rk4::adaptive(DEFAULT_STEP, Rk4::DEFAULT_TOL)
}
