use crate::sphere::SpherePoint;
use crate::Result;

use super::gamma::Gamma;
use super::kappa::DisplacingIsotopy;

/// `ψ_t = κ_t γ_t`. Without `κ` this is `γ` itself.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComposedIsotopy {
    pub gamma: Gamma,
    pub kappa: Option<DisplacingIsotopy>,
}

/// `ψ₁(x)` and the intermediate point `γ₁(x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ComposedImage {
    pub gamma_end: SpherePoint,
    pub end: SpherePoint,
    pub gamma_exponent: f64,
    pub kappa_exponent: f64,
}

impl ComposedImage {
    /// Scaling exponent of `ψ₁` at the start point.
    pub fn scaling_exponent(&self) -> f64 {
        self.gamma_exponent + self.kappa_exponent
    }
}

pub fn compose_psi(gamma: Gamma, kappa: Option<DisplacingIsotopy>) -> ComposedIsotopy {
    ComposedIsotopy { gamma, kappa }
}

impl ComposedIsotopy {
    /// Upper bound `length(κ) + length(γ)` for the length of `ψ`.
    pub fn length(&self) -> f64 {
        self.gamma.length + self.kappa.map_or(0.0, |k| k.length)
    }

    pub fn at(&self, x: &SpherePoint, t: f64) -> Result<ComposedImage> {
        let g = self.gamma.flow(x, t)?;
        let (end, kappa_exponent) = match &self.kappa {
            Some(k) => {
                let r = k.flow(&g.end, t)?;
                (r.end, r.scaling_exponent)
            }
            None => (g.end.clone(), 0.0),
        };
        Ok(ComposedImage {
            gamma_end: g.end,
            end,
            gamma_exponent: g.scaling_exponent,
            kappa_exponent,
        })
    }

    pub fn map(&self, x: &SpherePoint) -> Result<ComposedImage> {
        self.at(x, 1.0)
    }

    /// Generating contact Hamiltonian `k_t + T·h_{tT}∘κ_t^{-1}`; `κ` is
    /// strict, so no conformal factor appears.
    pub fn hamiltonian(&self, t: f64, y: &SpherePoint) -> Result<f64> {
        match &self.kappa {
            Some(k) => {
                let back = k.flow(y, -t)?.end;
                Ok(k.value(y.coords()) + self.gamma.hamiltonian(t, back.coords()))
            }
            None => Ok(self.gamma.hamiltonian(t, y.coords())),
        }
    }
}
