use crate::cutoff::{shelukhin_length, HamiltonianSchedule};
use crate::sphere::{flow_contact, ContactHamiltonian, SphereFlowResult, SpherePoint};
use crate::Result;

use super::sphere_stepper;

/// `H(t, z) = f_t(p)` on the sphere, with `t ∈ [0, T]`. Its contact vector
/// field is `f_t(p)R + f′_t(p)V`, which projects to the disk cut-off field.
#[derive(Clone, Copy, Debug)]
pub struct CutoffHamiltonian<'a> {
    pub sched: &'a HamiltonianSchedule,
}

impl ContactHamiltonian for CutoffHamiltonian<'_> {
    fn value_and_gradient(&self, t: f64, z: &[f64]) -> (f64, Vec<f64>) {
        let c = self.sched.profile_at(t).eval(z[0]);
        let mut grad = vec![0.0; z.len()];
        grad[0] = c.derivative;
        (c.value, grad)
    }
}

/// `γ_t = φ_{tT}` for `t ∈ [0, 1]`, generated by `T·h_{tT}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Gamma {
    pub sched: HamiltonianSchedule,
    /// Length of `γ`, equal to that of `φ` on `[0, T]`.
    pub length: f64,
}

/// The cut-off isotopy reparametrised to unit time.
pub fn build_gamma(sched: HamiltonianSchedule) -> Gamma {
    Gamma {
        length: shelukhin_length(&sched),
        sched,
    }
}

impl Gamma {
    pub fn hamiltonian(&self, t: f64, z: &[f64]) -> f64 {
        let tt = self.sched.t_horizon;
        tt * self.sched.profile_at(t * tt).eval(z[0]).value
    }

    /// `γ_t(x)` with its scaling exponent.
    pub fn flow(&self, x: &SpherePoint, t: f64) -> Result<SphereFlowResult> {
        let h = CutoffHamiltonian { sched: &self.sched };
        flow_contact(&h, x, 0.0, t * self.sched.t_horizon, sphere_stepper())
    }
}
