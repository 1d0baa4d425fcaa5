use super::schedule::HamiltonianSchedule;
use crate::disk::integrate_eta;
use crate::numerics::quad::DEFAULT_TOL;
use crate::numerics::Simpson;
use crate::INV_SQRT_PI;

/// Shelukhin-Hofer length of the cut-off isotopy over `[0, T]`:
/// `∫₀ᵀ max_p f_t(p) dt = ∫₀ᵀ η(t) dt + δT/2`.
pub fn shelukhin_length(sched: &HamiltonianSchedule) -> f64 {
    integrate_eta(sched.boundary()) + 0.5 * sched.delta * sched.t_horizon
}

/// The same length with `max_p f_t` taken over a grid of `grid` points of
/// `p ∈ [0, π^{-1/2} + δ]` at every quadrature node.
pub fn shelukhin_length_grid(sched: &HamiltonianSchedule, grid: usize) -> f64 {
    let n = grid.max(2);
    let top = INV_SQRT_PI + sched.delta;
    let max_f = |t: f64| {
        let prof = sched.profile_at(t);
        (0..n)
            .map(|k| prof.eval(top * k as f64 / (n - 1) as f64).value)
            .fold(f64::NEG_INFINITY, f64::max)
    };
    let panels = (4.0 * sched.t_horizon).ceil().clamp(16.0, 4096.0) as usize;
    Simpson::with_tol(DEFAULT_TOL)
        .panels(panels)
        .integrate(max_f, 0.0, sched.t_horizon)
}
