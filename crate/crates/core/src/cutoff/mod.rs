//! The time-dependent cut-off flow `X_{f_t} = f_t(p)R + f′_t(p)V`.

mod flow;
mod length;
mod profile;
mod schedule;
mod sigma;

pub use flow::{
    integrate_cutoff, integrate_cutoff_with, scaling_exponent_cutoff,
    scaling_exponent_cutoff_strip, x_cutoff, Coordinates, FlowOptions, FlowStart, Trajectory,
    DEFAULT_STEP,
};
pub use length::{shelukhin_length, shelukhin_length_grid};
pub use profile::{f_cutoff, CutoffProfile, CutoffValue, SmoothingProfile};
pub use schedule::HamiltonianSchedule;
pub use sigma::{
    sigma_set, sigma_set_with, strip_hausdorff_to_segment, SigmaPoint, SigmaSet,
    DEFAULT_RESOLUTION, SIGMA_TOL,
};
