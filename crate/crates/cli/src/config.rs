use std::fs;
use std::path::Path;
use std::str::FromStr;

use contactlab::construction::{CertifyParams, KappaKind};
use contactlab::cutoff::SmoothingProfile;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Loads a command config from `path`, or the defaults.
pub fn load<C: DeserializeOwned + Default>(path: Option<&Path>) -> Result<C, CliError> {
    match path {
        None => Ok(C::default()),
        Some(p) => {
            let text = fs::read_to_string(p)
                .map_err(|e| CliError::Config(format!("{}: {e}", p.display())))?;
            serde_json::from_str(&text)
                .map_err(|e| CliError::Config(format!("{}: {e}", p.display())))
        }
    }
}

fn set<T>(slot: &mut T, flag: Option<T>) {
    if let Some(v) = flag {
        *slot = v;
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FlowMode {
    #[default]
    Exact,
    Cutoff,
}

/// Starting points of `flow`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Starts {
    /// Centres of an `N × N` grid of cells covering the disk.
    Grid(usize),
    /// `N` uniform points of the disk drawn from the config seed.
    Random(usize),
}

impl FromStr for Starts {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (kind, n) = s
            .split_once(':')
            .ok_or_else(|| format!("expected grid:N or random:N, got {s:?}"))?;
        let n: usize = n.parse().map_err(|_| format!("bad count in {s:?}"))?;
        if n == 0 || n > 1000 {
            return Err(format!("count must lie in 1..=1000, got {n}"));
        }
        match kind {
            "grid" => Ok(Starts::Grid(n)),
            "random" => Ok(Starts::Random(n)),
            _ => Err(format!("unknown start family {kind:?}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FlowConfig {
    pub mode: FlowMode,
    #[serde(rename = "T")]
    pub t_horizon: f64,
    pub delta: f64,
    pub mu: SmoothingProfile,
    pub starts: String,
    /// Time samples per exact trajectory.
    pub samples: usize,
    pub seed: u64,
}

impl Default for FlowConfig {
    fn default() -> Self {
        Self {
            mode: FlowMode::Exact,
            t_horizon: 5.0,
            delta: 0.01,
            mu: SmoothingProfile::QuadraticSpline,
            starts: "grid:20".into(),
            samples: 200,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, Default, clap::Args)]
pub struct FlowFlags {
    /// Flow of X = pR + V, in closed form.
    #[arg(long, conflicts_with = "cutoff")]
    pub exact: bool,
    /// Cut-off flow, integrated numerically.
    #[arg(long)]
    pub cutoff: bool,
    #[arg(short = 'T', long = "horizon")]
    pub t_horizon: Option<f64>,
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long)]
    pub mu: Option<SmoothingProfile>,
    /// grid:N or random:N.
    #[arg(long)]
    pub starts: Option<String>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
}

impl FlowConfig {
    pub fn apply(&mut self, f: FlowFlags) {
        if f.exact {
            self.mode = FlowMode::Exact;
        }
        if f.cutoff {
            self.mode = FlowMode::Cutoff;
        }
        set(&mut self.t_horizon, f.t_horizon);
        set(&mut self.delta, f.delta);
        set(&mut self.mu, f.mu);
        set(&mut self.starts, f.starts);
        set(&mut self.samples, f.samples);
        set(&mut self.seed, f.seed);
    }

    pub fn validate(&self) -> Result<Starts, CliError> {
        positive("T", self.t_horizon)?;
        positive("delta", self.delta)?;
        if self.t_horizon > 100.0 {
            return Err(CliError::Config(format!(
                "T must be at most 100, got {}",
                self.t_horizon
            )));
        }
        if !(2..=100_000).contains(&self.samples) {
            return Err(CliError::Config(format!(
                "samples must lie in 2..=100000, got {}",
                self.samples
            )));
        }
        self.starts.parse().map_err(CliError::Config)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SigmaConfig {
    #[serde(rename = "T")]
    pub t_horizon: f64,
    pub deltas: Vec<f64>,
    pub mu: SmoothingProfile,
    pub resolution: usize,
}

impl Default for SigmaConfig {
    fn default() -> Self {
        Self {
            t_horizon: 10.0,
            deltas: vec![0.1, 0.05, 0.02, 0.01],
            mu: SmoothingProfile::QuadraticSpline,
            resolution: 64,
        }
    }
}

#[derive(Clone, Debug, Default, clap::Args)]
pub struct SigmaFlags {
    #[arg(short = 'T', long = "horizon")]
    pub t_horizon: Option<f64>,
    /// One or more comma-separated values.
    #[arg(long = "delta", value_delimiter = ',')]
    pub deltas: Option<Vec<f64>>,
    #[arg(long)]
    pub mu: Option<SmoothingProfile>,
    #[arg(long)]
    pub resolution: Option<usize>,
}

impl SigmaConfig {
    pub fn apply(&mut self, f: SigmaFlags) {
        set(&mut self.t_horizon, f.t_horizon);
        set(&mut self.deltas, f.deltas);
        set(&mut self.mu, f.mu);
        set(&mut self.resolution, f.resolution);
    }

    pub fn validate(&self) -> Result<(), CliError> {
        positive("T", self.t_horizon)?;
        if self.deltas.is_empty() {
            return Err(CliError::Config("need at least one delta".into()));
        }
        for &d in &self.deltas {
            positive("delta", d)?;
        }
        if !(8..=4096).contains(&self.resolution) {
            return Err(CliError::Config(format!(
                "resolution must lie in 8..=4096, got {}",
                self.resolution
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, clap::Args)]
pub struct CertifyFlags {
    #[arg(short = 'T', long = "horizon")]
    pub t_horizon: Option<f64>,
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long)]
    pub mu: Option<SmoothingProfile>,
    /// finger or none.
    #[arg(long)]
    pub kappa: Option<KappaKind>,
    #[arg(long)]
    pub width: Option<f64>,
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub resolution: Option<usize>,
    #[arg(long)]
    pub fibers: Option<usize>,
    #[arg(long)]
    pub s_grid: Option<usize>,
}

pub fn apply_certify(p: &mut CertifyParams, f: CertifyFlags) {
    set(&mut p.t_horizon, f.t_horizon);
    set(&mut p.delta, f.delta);
    set(&mut p.mu, f.mu);
    set(&mut p.kappa, f.kappa);
    set(&mut p.width, f.width);
    set(&mut p.eps, f.eps);
    set(&mut p.n, f.n);
    set(&mut p.sigma_resolution, f.resolution);
    set(&mut p.fibers, f.fibers);
    set(&mut p.s_grid, f.s_grid);
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SweepConfig {
    #[serde(rename = "T")]
    pub t_horizon: f64,
    pub deltas: Vec<f64>,
    pub widths: Vec<f64>,
    pub eps: f64,
    /// Run the whole certification per entry instead of the lengths only.
    pub full: bool,
    pub resolution: usize,
    pub fibers: usize,
    pub s_grid: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        let base = CertifyParams::default();
        Self {
            t_horizon: base.t_horizon,
            deltas: vec![0.04, 0.02, 0.01],
            widths: vec![0.5, 0.25, 0.125],
            eps: base.eps,
            full: false,
            resolution: base.sigma_resolution,
            fibers: base.fibers,
            s_grid: base.s_grid,
        }
    }
}

#[derive(Clone, Debug, Default, clap::Args)]
pub struct SweepFlags {
    #[arg(short = 'T', long = "horizon")]
    pub t_horizon: Option<f64>,
    #[arg(long = "delta", value_delimiter = ',')]
    pub deltas: Option<Vec<f64>>,
    #[arg(long = "width", value_delimiter = ',')]
    pub widths: Option<Vec<f64>>,
    #[arg(long)]
    pub eps: Option<f64>,
    /// Run the whole certification for every entry.
    #[arg(long)]
    pub full: bool,
    #[arg(long)]
    pub resolution: Option<usize>,
    #[arg(long)]
    pub fibers: Option<usize>,
    #[arg(long)]
    pub s_grid: Option<usize>,
}

impl SweepConfig {
    pub fn apply(&mut self, f: SweepFlags) {
        set(&mut self.t_horizon, f.t_horizon);
        set(&mut self.deltas, f.deltas);
        set(&mut self.widths, f.widths);
        set(&mut self.eps, f.eps);
        if f.full {
            self.full = true;
        }
        set(&mut self.resolution, f.resolution);
        set(&mut self.fibers, f.fibers);
        set(&mut self.s_grid, f.s_grid);
    }

    pub fn base(&self) -> CertifyParams {
        CertifyParams {
            t_horizon: self.t_horizon,
            eps: self.eps,
            sigma_resolution: self.resolution,
            fibers: self.fibers,
            s_grid: self.s_grid,
            ..CertifyParams::default()
        }
    }
}

fn positive(name: &str, v: f64) -> Result<(), CliError> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(CliError::Config(format!(
            "{name} must be positive, got {v}"
        )))
    }
}
