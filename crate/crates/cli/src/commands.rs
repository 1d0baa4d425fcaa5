use std::f64::consts::PI;
use std::fs;
use std::path::Path;

use contactlab::construction::{oscillation_sweep, run_certification, CertifyParams};
use contactlab::cutoff::{integrate_cutoff_with, sigma_set, FlowOptions, HamiltonianSchedule};
use contactlab::disk::{disk_to_strip, exact_flow, moving_arc, scaling_exponent_exact, DiskPoint};
use contactlab::exec::{self, ExecMode};
use contactlab::export::{sigma_table, write_json, Table};
use contactlab::INV_SQRT_PI;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::config::{FlowConfig, FlowMode, SigmaConfig, Starts, SweepConfig};
use crate::svg::Portrait;
use crate::{CliError, Outcome};

/// Values at or below this are treated as equal when checking that Hausdorff
/// distances decrease.
const NOISE_FLOOR: f64 = 1e-8;

#[derive(Serialize)]
struct Header<'a, C: Serialize> {
    command: &'a str,
    config: &'a C,
}

fn header_json<C: Serialize>(command: &str, config: &C) -> String {
    serde_json::to_string(&Header { command, config }).expect("configs serialise")
}

fn start_points(starts: Starts, seed: u64) -> Vec<DiskPoint> {
    match starts {
        Starts::Grid(n) => {
            let r = INV_SQRT_PI;
            let mut out = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    let z = DiskPoint {
                        p: -r + (2 * i + 1) as f64 * r / n as f64,
                        q: -r + (2 * j + 1) as f64 * r / n as f64,
                    };
                    if z.capacity() < 0.999 {
                        out.push(z);
                    }
                }
            }
            out
        }
        Starts::Random(n) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..n)
                .map(|_| {
                    let rho = INV_SQRT_PI * rng.random::<f64>().sqrt() * 0.999;
                    let th = 2.0 * PI * rng.random::<f64>();
                    DiskPoint {
                        p: rho * th.cos(),
                        q: rho * th.sin(),
                    }
                })
                .collect()
        }
    }
}

struct Line {
    times: Vec<f64>,
    points: Vec<DiskPoint>,
    g: Vec<f64>,
}

pub fn flow(cfg: &FlowConfig, out: &Path) -> Result<Outcome, CliError> {
    let starts = cfg.validate()?;
    let sched = HamiltonianSchedule::new(cfg.t_horizon, cfg.delta, cfg.mu)
        .map_err(|e| CliError::Config(e.to_string()))?;
    let t = cfg.t_horizon;
    let z0s = start_points(starts, cfg.seed);
    let lines: Vec<Line> = match cfg.mode {
        FlowMode::Exact => exec::map(ExecMode::Parallel, &z0s, |&z0| {
            let w0 = disk_to_strip(z0).ok();
            let times: Vec<f64> = (0..cfg.samples)
                .map(|k| t * k as f64 / (cfg.samples - 1) as f64)
                .collect();
            Line {
                points: times.iter().map(|&s| exact_flow(z0, s)).collect(),
                g: times
                    .iter()
                    .map(|&s| w0.map_or(f64::NAN, |w| scaling_exponent_exact(w, s)))
                    .collect(),
                times,
            }
        }),
        FlowMode::Cutoff => exec::try_map(ExecMode::Parallel, &z0s, |&z0| {
            integrate_cutoff_with(z0, &sched, &FlowOptions::default()).map(|tr| Line {
                g: tr.g.clone(),
                times: tr.times,
                points: tr.points,
            })
        })
        .map_err(|e| CliError::Stage(e.in_stage("flow")))?,
    };

    let header = header_json("flow", cfg);
    let mut table = Table {
        config: header.clone(),
        columns: ["start", "t", "p", "q", "g"].map(String::from).to_vec(),
        rows: vec![],
    };
    for (i, l) in lines.iter().enumerate() {
        for k in 0..l.times.len() {
            table.push(vec![
                i as f64,
                l.times[k],
                l.points[k].p,
                l.points[k].q,
                l.g[k],
            ]);
        }
    }
    let stem = match cfg.mode {
        FlowMode::Exact => "flow_exact",
        FlowMode::Cutoff => "flow_cutoff",
    };
    fs::create_dir_all(out)?;
    table
        .write(&out.join(format!("{stem}.csv")))
        .map_err(CliError::Stage)?;

    let mut fig = Portrait::new(&header);
    for l in &lines {
        let g_end = *l.g.last().unwrap_or(&f64::NAN);
        let colour = if g_end < -1e-9 {
            "#c0392b"
        } else if g_end > 1e-9 {
            "#2471a3"
        } else {
            "#7f8c8d"
        };
        let stride = (l.points.len() / 200).max(1);
        let pts: Vec<DiskPoint> = l
            .points
            .iter()
            .step_by(stride)
            .chain(l.points.last())
            .copied()
            .collect();
        fig.polyline(&pts, colour, 0.6);
        fig.dot(l.points[0], colour);
    }
    for (s, colour, width) in [
        (0.0, "black", 2.0),
        (0.5 * t, "#27ae60", 1.2),
        (t, "#8e44ad", 2.0),
    ] {
        fig.polyline(&moving_arc(t, s, 257).samples, colour, width);
    }
    fig.label(
        8.0,
        16.0,
        &format!("{stem}: T = {t}; C(0) black, C(T/2) green, C(T) purple"),
    );
    fig.label(8.0, 632.0, "trajectories: red g(T) < 0, blue g(T) > 0");
    fs::write(out.join(format!("{stem}.svg")), fig.finish())?;
    println!(
        "{} trajectories from {} starts written to {}",
        stem,
        lines.len(),
        out.display()
    );
    Ok(Outcome::Pass)
}

pub fn sigma(cfg: &SigmaConfig, out: &Path) -> Result<Outcome, CliError> {
    cfg.validate()?;
    fs::create_dir_all(out)?;
    let header = header_json("sigma", cfg);
    let mut rows = Vec::new();
    println!(
        "{:>10} {:>7} {:>12} {:>14} {:>14}",
        "delta", "points", "max |g|", "H(disk, C(T))", "H(strip, C(T))"
    );
    for &delta in &cfg.deltas {
        let sched = HamiltonianSchedule::new(cfg.t_horizon, delta, cfg.mu)
            .map_err(|e| CliError::Config(e.to_string()))?;
        let s =
            sigma_set(&sched, cfg.resolution).map_err(|e| CliError::Stage(e.in_stage("sigma")))?;
        let mut table = sigma_table(&(), &s).map_err(CliError::Stage)?;
        table.config = header.clone();
        table
            .write(&out.join(format!("sigma_delta_{delta}.csv")))
            .map_err(CliError::Stage)?;
        let arc_samples = 4 * cfg.resolution;
        let row = json!({
            "delta": delta,
            "points": s.points.len(),
            "max_residual": s.max_residual(),
            "residuals_ok": s.residuals_ok(),
            "hausdorff_to_CT": s.hausdorff_to_final_arc(arc_samples),
            "strip_hausdorff_to_CT": s.strip_hausdorff_to_final_arc(arc_samples),
            "hausdorff_to_C0": s.hausdorff_to_initial_arc(arc_samples),
        });
        println!(
            "{:>10} {:>7} {:>12.3e} {:>14.6e} {:>14.6e}",
            delta,
            s.points.len(),
            s.max_residual(),
            row["hausdorff_to_CT"].as_f64().unwrap_or(f64::NAN),
            row["strip_hausdorff_to_CT"].as_f64().unwrap_or(f64::NAN)
        );
        rows.push((delta, s.residuals_ok(), row));
    }
    rows.sort_by(|a, b| b.0.total_cmp(&a.0));
    let dist: Vec<f64> = rows
        .iter()
        .map(|r| r.2["hausdorff_to_CT"].as_f64().unwrap_or(f64::NAN))
        .collect();
    let monotone = dist.windows(2).all(|w| w[1] <= w[0].max(NOISE_FLOOR));
    let residuals_ok = rows.iter().all(|r| r.1);
    let summary = json!({
        "schema": 1,
        "config": serde_json::from_str::<serde_json::Value>(&header)?,
        "rows": rows.iter().map(|r| r.2.clone()).collect::<Vec<_>>(),
        "monotone": monotone,
        "residuals_ok": residuals_ok,
    });
    write_json(&out.join("sigma_summary.json"), &summary).map_err(CliError::Stage)?;
    println!("monotone: {monotone}, residuals below tolerance: {residuals_ok}");
    Ok(if residuals_ok {
        Outcome::Pass
    } else {
        Outcome::Unmet
    })
}

pub fn certify(params: &CertifyParams, out: &Path) -> Result<Outcome, CliError> {
    params
        .validate()
        .map_err(|e| CliError::Config(e.to_string()))?;
    let c = run_certification(params, ExecMode::Parallel).map_err(CliError::Stage)?;
    fs::create_dir_all(out)?;
    let header = header_json("certify", params);
    write_json(&out.join("certificate.json"), &c.report).map_err(CliError::Stage)?;
    let summary = c.report.summary();
    fs::write(
        out.join("certificate.txt"),
        format!("# config: {header}\n{summary}"),
    )?;
    let mut sigma = sigma_table(&(), &c.sigma).map_err(CliError::Stage)?;
    sigma.config = header.clone();
    sigma
        .write(&out.join("sigma.csv"))
        .map_err(CliError::Stage)?;

    let dim = c.samples.first().map_or(0, |x| x.dim());
    let mut columns = vec!["sample".to_string(), "fiber".to_string()];
    columns.extend((0..dim).map(|k| format!("x{k}")));
    columns.extend((0..dim).map(|k| format!("psi_x{k}")));
    let mut cloud = Table {
        config: header,
        columns,
        rows: vec![],
    };
    for (i, (x, y)) in c.samples.iter().zip(&c.images).enumerate() {
        let mut row = vec![(i / params.fibers) as f64, (i % params.fibers) as f64];
        row.extend_from_slice(x.coords());
        row.extend_from_slice(y.coords());
        cloud.push(row);
    }
    cloud
        .write(&out.join("psi_images.csv"))
        .map_err(CliError::Stage)?;
    print!("{summary}");
    Ok(if c.report.all_pass() {
        Outcome::Pass
    } else {
        Outcome::Unmet
    })
}

pub fn sweep(cfg: &SweepConfig, out: &Path) -> Result<Outcome, CliError> {
    let base = cfg.base();
    base.validate()
        .map_err(|e| CliError::Config(e.to_string()))?;
    for &v in cfg.deltas.iter().chain(&cfg.widths) {
        if !(v > 0.0 && v.is_finite()) {
            return Err(CliError::Config(format!(
                "sweep values must be positive, got {v}"
            )));
        }
    }
    let s = oscillation_sweep(
        &base,
        &cfg.deltas,
        &cfg.widths,
        cfg.full,
        ExecMode::Parallel,
    )
    .map_err(|e| match e {
        contactlab::Error::InvalidParameter { .. } => CliError::Config(e.to_string()),
        e => CliError::Stage(e.in_stage("sweep")),
    })?;
    fs::create_dir_all(out)?;
    let header = header_json("sweep", cfg);
    let mut table = Table {
        config: header.clone(),
        columns: [
            "delta",
            "width",
            "length_gamma",
            "length_kappa",
            "oscillation_bound",
            "translated_point_margin",
        ]
        .map(String::from)
        .to_vec(),
        rows: vec![],
    };
    println!(
        "{:>8} {:>8} {:>16} {:>16}",
        "delta", "width", "oscillation", "margin"
    );
    for e in &s.entries {
        let margin = e
            .report
            .as_ref()
            .map_or(f64::NAN, |r| r.translated_point_margin);
        table.push(vec![
            e.delta,
            e.width,
            e.lengths.length_gamma,
            e.lengths.length_kappa,
            e.lengths.oscillation_bound,
            margin,
        ]);
        println!(
            "{:>8} {:>8} {:>16.12} {:>16.6e}",
            e.delta, e.width, e.lengths.oscillation_bound, margin
        );
    }
    table
        .write(&out.join("sweep.csv"))
        .map_err(CliError::Stage)?;
    let doc = json!({
        "schema": 1,
        "config": serde_json::from_str::<serde_json::Value>(&header)?,
        "sweep": s,
    });
    write_json(&out.join("sweep.json"), &doc).map_err(CliError::Stage)?;
    println!(
        "nonincreasing in delta: {}, in width: {}",
        s.monotone_in_delta, s.monotone_in_width
    );
    let ok = s.monotone_in_delta && s.monotone_in_width && s.all_pass();
    Ok(if ok { Outcome::Pass } else { Outcome::Unmet })
}
