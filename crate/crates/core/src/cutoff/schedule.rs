use serde::{Deserialize, Serialize};

use super::profile::{CutoffProfile, SmoothingProfile};
use crate::disk::BoundaryTrajectory;
use crate::{Error, Result, INV_SQRT_PI};

/// Time-dependent cut-off data: `δ`, `η(t) = p(z(t))` along the boundary flow
/// line of horizon `T`, and the smoothing profile.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ScheduleDoc", into = "ScheduleDoc")]
pub struct HamiltonianSchedule {
    pub t_horizon: f64,
    pub delta: f64,
    pub mu: SmoothingProfile,
    boundary: BoundaryTrajectory,
}

impl HamiltonianSchedule {
    pub fn new(t_horizon: f64, delta: f64, mu: SmoothingProfile) -> Result<Self> {
        let boundary = BoundaryTrajectory::new(t_horizon)?;
        if !(delta > 0.0) || !delta.is_finite() {
            return Err(Error::invalid(
                "delta",
                format!("must be positive, got {delta}"),
            ));
        }
        Ok(Self {
            t_horizon,
            delta,
            mu,
            boundary,
        })
    }

    pub fn boundary(&self) -> &BoundaryTrajectory {
        &self.boundary
    }

    pub fn eta(&self, t: f64) -> f64 {
        self.boundary.eta(t).min(INV_SQRT_PI)
    }

    pub fn profile_at(&self, t: f64) -> CutoffProfile {
        CutoffProfile {
            delta: self.delta,
            eta: self.eta(t),
            mu: self.mu,
        }
    }

    /// `max_p f_t = η(t) + δ/2`: the contact Hamiltonian's maximum at time `t`.
    pub fn max_hamiltonian(&self, t: f64) -> f64 {
        self.profile_at(t).max_value()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScheduleDoc {
    #[serde(rename = "T")]
    t: f64,
    delta: f64,
    #[serde(default)]
    mu: SmoothingProfile,
    #[serde(default = "boundary_source")]
    trajectory_source: String,
}

fn boundary_source() -> String {
    "boundary".into()
}

impl TryFrom<ScheduleDoc> for HamiltonianSchedule {
    type Error = Error;

    fn try_from(doc: ScheduleDoc) -> Result<Self> {
        if doc.trajectory_source != "boundary" {
            return Err(Error::invalid(
                "trajectory_source",
                format!(
                    "only \"boundary\" is supported, got {:?}",
                    doc.trajectory_source
                ),
            ));
        }
        HamiltonianSchedule::new(doc.t, doc.delta, doc.mu)
    }
}

impl From<HamiltonianSchedule> for ScheduleDoc {
    fn from(s: HamiltonianSchedule) -> Self {
        ScheduleDoc {
            t: s.t_horizon,
            delta: s.delta,
            mu: s.mu,
            trajectory_source: boundary_source(),
        }
    }
}
