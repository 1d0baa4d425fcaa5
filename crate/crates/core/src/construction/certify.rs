use std::f64::consts::PI;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::cutoff::{sigma_set_with, HamiltonianSchedule, SigmaSet, SmoothingProfile};
use crate::disk::DiskPoint;
use crate::exec::{self, ExecMode};
use crate::sphere::{project_to_disk, SpherePoint};
use crate::{Error, Result, INV_SQRT_PI};

use super::compose::{compose_psi, ComposedIsotopy};
use super::gamma::build_gamma;
use super::kappa::{build_kappa, DisplacingIsotopy, DEFAULT_TOL_DISPLACE};
use super::search::{search_margin, TranslatedPointSearch};

pub const REPORT_SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KappaKind {
    #[default]
    Finger,
    /// `κ = id`: the negative control.
    None,
}

impl std::str::FromStr for KappaKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "finger" => Ok(KappaKind::Finger),
            "none" => Ok(KappaKind::None),
            _ => Err(Error::invalid(
                "kappa",
                format!("expected finger or none, got {s:?}"),
            )),
        }
    }
}

/// Inputs of [`certify`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CertifyParams {
    #[serde(rename = "T")]
    pub t_horizon: f64,
    pub delta: f64,
    pub mu: SmoothingProfile,
    pub kappa: KappaKind,
    pub width: f64,
    pub eps: f64,
    pub n: usize,
    /// Radius of `U_−` about `−iπ^{-1/2}`.
    pub r_minus: f64,
    /// Radius of `U_+` about `iπ^{-1/2}`.
    pub r_plus: f64,
    /// Radius of the disk about the origin that `κ₁` must reach.
    pub eps_disk: f64,
    pub sigma_resolution: usize,
    pub fibers: usize,
    pub s_grid: usize,
    pub tol_displace: f64,
    /// Margins at or below this are indistinguishable from a Reeb chord at
    /// the integration tolerance.
    pub margin_floor: f64,
}

impl Default for CertifyParams {
    fn default() -> Self {
        Self {
            t_horizon: 10.0,
            delta: 0.01,
            mu: SmoothingProfile::QuadraticSpline,
            kappa: KappaKind::Finger,
            width: 0.25,
            eps: 0.4,
            n: 1,
            r_minus: 1e-4 * INV_SQRT_PI,
            r_plus: 1e-4 * INV_SQRT_PI,
            eps_disk: 0.2 * INV_SQRT_PI,
            sigma_resolution: 64,
            fibers: 64,
            s_grid: 256,
            tol_displace: DEFAULT_TOL_DISPLACE,
            margin_floor: 1e-6,
        }
    }
}

impl CertifyParams {
    pub fn validate(&self) -> Result<()> {
        HamiltonianSchedule::new(self.t_horizon, self.delta, self.mu)?;
        let positive = [
            ("eps", self.eps),
            ("width", self.width),
            ("r_minus", self.r_minus),
            ("r_plus", self.r_plus),
            ("eps_disk", self.eps_disk),
            ("tol_displace", self.tol_displace),
            ("margin_floor", self.margin_floor),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::invalid(name, format!("must be positive, got {v}")));
            }
        }
        if self.width > 2.0 {
            return Err(Error::invalid(
                "width",
                format!("must lie in (0, 2], got {}", self.width),
            ));
        }
        if self.n == 0 {
            return Err(Error::invalid(
                "n",
                "sphere dimension index must be positive",
            ));
        }
        if self.fibers == 0 || self.s_grid < 2 {
            return Err(Error::invalid(
                "fibers",
                "need at least one fiber angle and two Reeb times",
            ));
        }
        Ok(())
    }

    fn schedule(&self) -> Result<HamiltonianSchedule> {
        HamiltonianSchedule::new(self.t_horizon, self.delta, self.mu)
    }
}

/// Margins of the inclusions the construction relies on; all must be
/// positive.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DisplacementMargins {
    /// `ε_disk − max |pr κ₁(x)|` over samples `x` of `pr^{-1}(U_+)`.
    pub kappa_into_disk: f64,
    /// `r_− − max |pr x + iπ^{-1/2}|` over `x ∈ Σ`.
    pub sigma_in_u_minus: f64,
    /// `r_+ − max |pr γ₁(x) − iπ^{-1/2}|` over the lifted samples of `Σ`.
    pub image_in_u_plus: f64,
    /// `π^{-1/2} − r_− − ε_disk`: `D(ε_disk)` and `U_−` are disjoint.
    pub disjointness: f64,
}

impl DisplacementMargins {
    pub fn all_positive(&self) -> bool {
        [
            self.kappa_into_disk,
            self.sigma_in_u_minus,
            self.image_in_u_plus,
            self.disjointness,
        ]
        .iter()
        .all(|&m| m > 0.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Criteria {
    /// `oscillation_bound < 1 + ε`.
    pub oscillation: bool,
    /// `translated_point_margin > margin_floor`.
    pub no_translated_points: bool,
    /// Every displacement margin is positive.
    pub displacement: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificationReport {
    pub schema: u32,
    pub parameters: CertifyParams,
    pub length_gamma: f64,
    pub length_kappa: f64,
    /// `length_gamma + length_kappa`, an upper bound for the length of `ψ`.
    pub length_psi: f64,
    pub oscillation_bound: f64,
    /// `oscillation_bound − 1`: the `ε` these parameters achieve.
    pub achieved_eps: f64,
    pub hofer_norm_kappa: f64,
    #[serde(rename = "sigma_hausdorff_to_C0")]
    pub sigma_hausdorff_to_c0: f64,
    pub sigma_points: usize,
    pub sigma_max_residual: f64,
    pub displacement_margins: DisplacementMargins,
    /// `|pr κ₁(A)|`; absent without `κ`.
    pub displacement_miss: Option<f64>,
    /// Largest `|g|` of `κ₁` over the sampled points.
    pub kappa_max_scaling_exponent: f64,
    pub translated_point_margin: f64,
    pub rotational_bound: f64,
    pub criteria: Criteria,
}

impl CertificationReport {
    pub fn all_pass(&self) -> bool {
        let c = self.criteria;
        c.oscillation && c.no_translated_points && c.displacement
    }

    pub fn summary(&self) -> String {
        let p = &self.parameters;
        let mark = |b: bool| if b { "ok" } else { "UNMET" };
        let m = &self.displacement_margins;
        let mut s = String::new();
        let _ = writeln!(s, "certification (schema {})", self.schema);
        let _ = writeln!(
            s,
            "  T = {}, delta = {}, mu = {}, kappa = {:?}, width = {}, eps = {}",
            p.t_horizon,
            p.delta,
            p.mu.name(),
            p.kappa,
            p.width,
            p.eps
        );
        let _ = writeln!(s, "  length(gamma)       {:.12}", self.length_gamma);
        let _ = writeln!(s, "  length(kappa)       {:.12}", self.length_kappa);
        let _ = writeln!(s, "  length(psi) <=      {:.12}", self.length_psi);
        let _ = writeln!(
            s,
            "  oscillation bound   {:.12}  (achieved eps {:.6})",
            self.oscillation_bound, self.achieved_eps
        );
        let _ = writeln!(
            s,
            "  Sigma: {} points, max |g| {:.2e}, Hausdorff to C(0) {:.3e}",
            self.sigma_points, self.sigma_max_residual, self.sigma_hausdorff_to_c0
        );
        let _ = writeln!(
            s,
            "  margins: kappa->disk {:.3e}, Sigma in U- {:.3e}, image in U+ {:.3e}, disjoint {:.3e}",
            m.kappa_into_disk, m.sigma_in_u_minus, m.image_in_u_plus, m.disjointness
        );
        let _ = writeln!(
            s,
            "  translated-point margin {:.6e} (rotational bound {:.6e})",
            self.translated_point_margin, self.rotational_bound
        );
        let _ = writeln!(
            s,
            "  (i)   oscillation < 1 + eps   {}",
            mark(self.criteria.oscillation)
        );
        let _ = writeln!(
            s,
            "  (ii)  no translated points    {}",
            mark(self.criteria.no_translated_points)
        );
        let _ = writeln!(
            s,
            "  (iii) displacement margins    {}",
            mark(self.criteria.displacement)
        );
        s
    }
}

/// Lengths and the oscillation bound, without any flows.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Lengths {
    pub length_gamma: f64,
    pub length_kappa: f64,
    pub length_psi: f64,
    pub oscillation_bound: f64,
    pub hofer_norm_kappa: f64,
}

pub fn lengths(params: &CertifyParams) -> Result<Lengths> {
    params.validate()?;
    let gamma = build_gamma(params.schedule()?);
    let kappa = build_kappa_for(params).map_err(|e| e.in_stage("kappa"))?;
    Ok(lengths_of(&compose_psi(gamma, kappa)))
}

fn lengths_of(psi: &ComposedIsotopy) -> Lengths {
    let length_kappa = psi.kappa.map_or(0.0, |k| k.length);
    let length_psi = psi.length();
    Lengths {
        length_gamma: psi.gamma.length,
        length_kappa,
        length_psi,
        oscillation_bound: 2.0 * length_psi,
        hofer_norm_kappa: psi.kappa.map_or(0.0, |k| k.hofer_norm),
    }
}

fn build_kappa_for(params: &CertifyParams) -> Result<Option<DisplacingIsotopy>> {
    match params.kappa {
        KappaKind::Finger => build_kappa(params.width, params.n, params.tol_displace).map(Some),
        KappaKind::None => Ok(None),
    }
}

/// Everything [`certify`] computes, including the point clouds.
#[derive(Clone, Debug)]
pub struct Certification {
    pub report: CertificationReport,
    pub sigma: SigmaSet,
    /// Lifts of `Σ` over the sampled fiber angles.
    pub samples: Vec<SpherePoint>,
    pub gamma_images: Vec<SpherePoint>,
    /// `ψ₁` of the samples.
    pub images: Vec<SpherePoint>,
    pub search: TranslatedPointSearch,
}

/// Runs the full pipeline with the default execution mode.
pub fn certify(params: &CertifyParams) -> Result<CertificationReport> {
    Ok(run_certification(params, ExecMode::default())?.report)
}

pub fn run_certification(params: &CertifyParams, mode: ExecMode) -> Result<Certification> {
    params.validate().map_err(|e| e.in_stage("parameters"))?;
    let sched = params.schedule()?;
    let kappa = build_kappa_for(params).map_err(|e| e.in_stage("kappa"))?;
    let psi = compose_psi(build_gamma(sched), kappa);

    let sigma =
        sigma_set_with(&sched, params.sigma_resolution, mode).map_err(|e| e.in_stage("sigma"))?;
    let samples = lift_samples(&sigma.disk_points(), params.fibers, params.n)
        .map_err(|e| e.in_stage("sigma"))?;

    let mapped = exec::try_map(mode, &samples, |x| psi.map(x)).map_err(|e| e.in_stage("psi"))?;
    let kappa_max_scaling_exponent = mapped
        .iter()
        .fold(0.0_f64, |m, r| m.max(r.kappa_exponent.abs()));
    let (gamma_images, images): (Vec<_>, Vec<_>) =
        mapped.into_iter().map(|r| (r.gamma_end, r.end)).unzip();

    let search =
        search_margin(&samples, &images, params.s_grid, mode).map_err(|e| e.in_stage("search"))?;

    let kappa_into_disk =
        params.eps_disk - max_kappa_radius(&psi, params, mode).map_err(|e| e.in_stage("kappa"))?;
    let top = DiskPoint {
        p: 0.0,
        q: INV_SQRT_PI,
    };
    let bottom = DiskPoint {
        p: 0.0,
        q: -INV_SQRT_PI,
    };
    let margins = DisplacementMargins {
        kappa_into_disk,
        sigma_in_u_minus: params.r_minus
            - sigma
                .disk_points()
                .iter()
                .fold(0.0_f64, |m, z| m.max(z.distance(bottom))),
        image_in_u_plus: params.r_plus
            - gamma_images
                .iter()
                .fold(0.0_f64, |m, x| m.max(project_to_disk(x).distance(top))),
        disjointness: INV_SQRT_PI - params.r_minus - params.eps_disk,
    };

    let l = lengths_of(&psi);
    let report = CertificationReport {
        schema: REPORT_SCHEMA,
        parameters: params.clone(),
        length_gamma: l.length_gamma,
        length_kappa: l.length_kappa,
        length_psi: l.length_psi,
        oscillation_bound: l.oscillation_bound,
        achieved_eps: l.oscillation_bound - 1.0,
        hofer_norm_kappa: l.hofer_norm_kappa,
        sigma_hausdorff_to_c0: sigma.hausdorff_to_initial_arc(4 * params.sigma_resolution.max(64)),
        sigma_points: sigma.points.len(),
        sigma_max_residual: sigma.max_residual(),
        displacement_margins: margins,
        displacement_miss: psi.kappa.map(|k| k.displacement_miss),
        kappa_max_scaling_exponent,
        translated_point_margin: search.margin,
        rotational_bound: search.rotational_bound,
        criteria: Criteria {
            oscillation: l.oscillation_bound < 1.0 + params.eps,
            no_translated_points: search.margin > params.margin_floor,
            displacement: margins.all_positive() && psi.kappa.is_some(),
        },
    };
    Ok(Certification {
        report,
        sigma,
        samples,
        gamma_images,
        images,
        search,
    })
}

/// Lifts of disk points over `fibers` equally spaced fiber angles.
pub fn lift_samples(points: &[DiskPoint], fibers: usize, n: usize) -> Result<Vec<SpherePoint>> {
    let mut out = Vec::with_capacity(points.len() * fibers);
    for z in points {
        for k in 0..fibers {
            out.push(SpherePoint::lift(
                *z,
                2.0 * PI * k as f64 / fibers as f64,
                n,
            )?);
        }
    }
    Ok(out)
}

/// `max |pr κ₁(x)|` over a polar grid of `U_+ ∩ D(1)` lifted over 16 fiber
/// angles; `κ = id` without a finger.
fn max_kappa_radius(psi: &ComposedIsotopy, params: &CertifyParams, mode: ExecMode) -> Result<f64> {
    let mut disk = vec![DiskPoint {
        p: 0.0,
        q: INV_SQRT_PI,
    }];
    for ring in 1..=4 {
        let r = params.r_plus * ring as f64 / 4.0;
        for k in 0..32 {
            let th = 2.0 * PI * k as f64 / 32.0;
            let z = DiskPoint {
                p: r * th.cos(),
                q: INV_SQRT_PI + r * th.sin(),
            };
            if z.capacity() <= 1.0 {
                disk.push(z);
            }
        }
    }
    let samples = lift_samples(&disk, 16, params.n)?;
    let radii = exec::try_map(mode, &samples, |x| -> Result<f64> {
        let end = match &psi.kappa {
            Some(k) => k.flow(x, 1.0)?.end,
            None => x.clone(),
        };
        Ok(project_to_disk(&end).norm())
    })?;
    Ok(radii.into_iter().fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> CertifyParams {
        CertifyParams {
            t_horizon: 6.0,
            delta: 0.02,
            sigma_resolution: 8,
            fibers: 8,
            s_grid: 64,
            ..Default::default()
        }
    }

    #[test]
    fn small_instance_certifies() {
        let r = certify(&quick()).unwrap();
        assert!(r.all_pass(), "{}", r.summary());
        assert!(r.translated_point_margin > 0.1);
        assert!(r.rotational_bound <= r.translated_point_margin);
        assert!(r.kappa_max_scaling_exponent < 1e-8);
        assert_eq!(r.oscillation_bound, 2.0 * r.length_psi);
    }

    #[test]
    fn report_is_recomputable() {
        let p = quick();
        let r = certify(&p).unwrap();
        let l = lengths(&p).unwrap();
        assert_eq!(
            (l.length_gamma, l.length_kappa, l.oscillation_bound),
            (r.length_gamma, r.length_kappa, r.oscillation_bound)
        );
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains("\"sigma_hausdorff_to_C0\"") && json.contains("\"schema\":1"));
        let back: CertificationReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn identity_kappa_fails() {
        let r = certify(&CertifyParams {
            kappa: KappaKind::None,
            ..quick()
        })
        .unwrap();
        assert!(!r.criteria.no_translated_points);
        assert!(r.translated_point_margin < 1e-3);
        assert!(!r.criteria.displacement);
        assert!(!r.all_pass());
    }

    #[test]
    fn unreachable_eps_is_flagged() {
        let r = certify(&CertifyParams {
            eps: 0.05,
            ..quick()
        })
        .unwrap();
        assert!(!r.criteria.oscillation);
        assert!(r.criteria.no_translated_points);
    }

    #[test]
    fn params_json() {
        let p: CertifyParams = serde_json::from_str(r#"{"T": 8.0, "kappa": "none"}"#).unwrap();
        assert_eq!(p.t_horizon, 8.0);
        assert_eq!(p.kappa, KappaKind::None);
        assert!(serde_json::from_str::<CertifyParams>(r#"{"T": 8.0, "bogus": 1}"#).is_err());
        assert!(CertifyParams {
            delta: -1.0,
            ..Default::default()
        }
        .validate()
        .is_err());
    }
}
