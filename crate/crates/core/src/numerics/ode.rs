use crate::{Error, Result};

/// State vectors the integrator can advance.
pub trait State: Clone {
    /// `self + h·k`
    fn axpy(&self, h: f64, k: &Self) -> Self;
    /// `self + h/6·(k1 + 2k2 + 2k3 + k4)`
    fn rk4_combine(&self, h: f64, k: [&Self; 4]) -> Self;
    fn max_abs_diff(&self, other: &Self) -> f64;
}

impl<const N: usize> State for [f64; N] {
    fn axpy(&self, h: f64, k: &Self) -> Self {
        std::array::from_fn(|i| self[i] + h * k[i])
    }

    fn rk4_combine(&self, h: f64, k: [&Self; 4]) -> Self {
        std::array::from_fn(|i| {
            self[i] + h / 6.0 * (k[0][i] + 2.0 * k[1][i] + 2.0 * k[2][i] + k[3][i])
        })
    }

    fn max_abs_diff(&self, other: &Self) -> f64 {
        self.iter()
            .zip(other)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }
}

impl State for Vec<f64> {
    fn axpy(&self, h: f64, k: &Self) -> Self {
        self.iter().zip(k).map(|(y, k)| y + h * k).collect()
    }

    fn rk4_combine(&self, h: f64, k: [&Self; 4]) -> Self {
        (0..self.len())
            .map(|i| self[i] + h / 6.0 * (k[0][i] + 2.0 * k[1][i] + 2.0 * k[2][i] + k[3][i]))
            .collect()
    }

    fn max_abs_diff(&self, other: &Self) -> f64 {
        self.iter()
            .zip(other)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }
}

/// One classical fourth-order Runge-Kutta step.
pub fn rk4_step<S: State, F: Fn(f64, &S) -> S>(f: &F, t: f64, y: &S, h: f64) -> S {
    let k1 = f(t, y);
    let k2 = f(t + 0.5 * h, &y.axpy(0.5 * h, &k1));
    let k3 = f(t + 0.5 * h, &y.axpy(0.5 * h, &k2));
    let k4 = f(t + h, &y.axpy(h, &k3));
    y.rk4_combine(h, [&k1, &k2, &k3, &k4])
}

/// Accepted nodes of an integration.
#[derive(Clone, Debug)]
pub struct Solution<S> {
    pub times: Vec<f64>,
    pub states: Vec<S>,
    /// Largest accepted step-doubling error estimate (0 for fixed steps).
    pub max_error: f64,
    pub min_step: f64,
    pub max_step: f64,
}

impl<S> Solution<S> {
    pub fn last(&self) -> &S {
        self.states
            .last()
            .expect("solution has at least the initial node")
    }
}

/// Classical RK4 driver.
///
/// With `adaptive` set, every step is checked by step doubling: the error
/// estimate `|y_{h/2,h/2} − y_h| / 15` must stay below `tol`, otherwise the
/// step is halved. Steps grow back (up to `h`) when the estimate is far below
/// tolerance. Without it the step is fixed at `h` (the last one shortened to
/// land on the end time).
#[derive(Clone, Copy, Debug)]
pub struct Rk4 {
    pub h: f64,
    pub tol: f64,
    pub min_step: f64,
    pub adaptive: bool,
}

impl Rk4 {
    pub const DEFAULT_TOL: f64 = 1e-10;

    pub fn fixed(h: f64) -> Self {
        Self {
            h,
            tol: f64::INFINITY,
            min_step: 0.0,
            adaptive: false,
        }
    }

    pub fn adaptive(h: f64, tol: f64) -> Self {
        Self {
            h,
            tol,
            min_step: h * 1e-9,
            adaptive: true,
        }
    }

    pub fn integrate<S, F>(&self, f: F, t0: f64, y0: S, t1: f64) -> Result<Solution<S>>
    where
        S: State,
        F: Fn(f64, &S) -> S,
    {
        self.integrate_projected(f, |_| {}, t0, y0, t1)
    }

    /// Like [`Rk4::integrate`], with `project` applied to every accepted state
    /// (used to pull sphere states back onto their constraint surface).
    pub fn integrate_projected<S, F, P>(
        &self,
        f: F,
        project: P,
        t0: f64,
        y0: S,
        t1: f64,
    ) -> Result<Solution<S>>
    where
        S: State,
        F: Fn(f64, &S) -> S,
        P: Fn(&mut S),
    {
        if !(self.h > 0.0) {
            return Err(Error::invalid(
                "h",
                format!("step must be positive, got {}", self.h),
            ));
        }
        let span = t1 - t0;
        let dir = if span >= 0.0 { 1.0 } else { -1.0 };
        let mut sol = Solution {
            times: vec![t0],
            states: vec![y0.clone()],
            max_error: 0.0,
            min_step: f64::INFINITY,
            max_step: 0.0,
        };
        let mut t = t0;
        let mut y = y0;
        let mut h = self.h.min(span.abs());
        let end_eps = 1e-14 * (1.0 + t1.abs());
        while (t1 - t) * dir > end_eps {
            let remaining = (t1 - t).abs();
            let last = h >= remaining;
            let step = if last { remaining } else { h };
            let (next, err) = if self.adaptive {
                let full = rk4_step(&f, t, &y, dir * step);
                let half = rk4_step(&f, t, &y, 0.5 * dir * step);
                let two = rk4_step(&f, t + 0.5 * dir * step, &half, 0.5 * dir * step);
                let err = two.max_abs_diff(&full) / 15.0;
                if !err.is_finite() || err > self.tol {
                    h = 0.5 * step;
                    if h < self.min_step {
                        return Err(Error::StepFailure {
                            t,
                            step,
                            error: err,
                        });
                    }
                    continue;
                }
                (two, err)
            } else {
                (rk4_step(&f, t, &y, dir * step), 0.0)
            };
            t = if last { t1 } else { t + dir * step };
            y = next;
            project(&mut y);
            sol.max_error = sol.max_error.max(err);
            sol.min_step = sol.min_step.min(step);
            sol.max_step = sol.max_step.max(step);
            sol.times.push(t);
            sol.states.push(y.clone());
            if self.adaptive && err < self.tol / 64.0 {
                h = (2.0 * step).min(self.h);
            }
        }
        Ok(sol)
    }
}
