use serde::{Deserialize, Serialize};

use crate::exec::{self, ExecMode};
use crate::numerics::golden_section_min;
use crate::sphere::{project_to_disk, reeb_flow, SpherePoint};
use crate::{Error, Result};

use super::compose::ComposedIsotopy;

/// Outcome of the search for Reeb chords from `Σ` to `ψ₁(Σ)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TranslatedPointSearch {
    /// `min_{x, s} |ψ₁(x) − R_s(x)|`.
    pub margin: f64,
    /// Sample index and Reeb time of the minimiser.
    pub argmin: usize,
    pub s: f64,
    /// Gap between the radius ranges of `pr(Σ)` and `pr(ψ₁(Σ))`; a lower bound
    /// for `margin`, since the Reeb flow preserves `|pr|`.
    pub rotational_bound: f64,
}

/// Searches for translated points of `ψ₁` on the samples `sigma`.
pub fn translated_point_search(
    psi: &ComposedIsotopy,
    sigma: &[SpherePoint],
    s_grid: usize,
    mode: ExecMode,
) -> Result<TranslatedPointSearch> {
    let images = exec::try_map(mode, sigma, |x| psi.map(x).map(|r| r.end))?;
    search_margin(sigma, &images, s_grid, mode)
}

/// The search on precomputed images `images[i] = ψ₁(sigma[i])`.
///
/// For each sample the Reeb time is scanned on `s_grid` points of `[0, 1)`
/// and the best cell refined by golden-section search.
pub fn search_margin(
    sigma: &[SpherePoint],
    images: &[SpherePoint],
    s_grid: usize,
    mode: ExecMode,
) -> Result<TranslatedPointSearch> {
    if sigma.is_empty() {
        return Err(Error::invalid("sigma", "no samples to search"));
    }
    if sigma.len() != images.len() {
        return Err(Error::DimensionMismatch {
            expected: sigma.len(),
            actual: images.len(),
        });
    }
    if s_grid < 2 {
        return Err(Error::invalid("s_grid", "need at least two Reeb times"));
    }
    let pairs: Vec<(&SpherePoint, &SpherePoint)> = sigma.iter().zip(images).collect();
    let best = exec::map(mode, &pairs, |(x, y)| closest_reeb_time(x, y, s_grid));
    let (argmin, &(s, margin)) = best
        .iter()
        .enumerate()
        .min_by(|a, b| a.1 .1.total_cmp(&b.1 .1))
        .expect("nonempty");
    Ok(TranslatedPointSearch {
        margin,
        argmin,
        s,
        rotational_bound: rotational_bound(sigma, images),
    })
}

/// `(s, |y − R_s(x)|)` minimising the distance over `s ∈ [0, 1)`.
pub fn closest_reeb_time(x: &SpherePoint, y: &SpherePoint, s_grid: usize) -> (f64, f64) {
    let dist = |s: f64| reeb_flow(x, s).distance(y);
    let step = 1.0 / s_grid as f64;
    let (k, _) = (0..s_grid)
        .map(|k| (k, dist(k as f64 * step)))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("s_grid ≥ 2");
    let centre = k as f64 * step;
    let (s, d) = golden_section_min(dist, centre - step, centre + step, 1e-12);
    let grid_d = dist(centre);
    if grid_d <= d {
        (centre, grid_d)
    } else {
        (s.rem_euclid(1.0), d)
    }
}

/// Distance between the intervals `{|pr x|}` and `{|pr y|}`; zero if they
/// overlap.
pub fn rotational_bound(sigma: &[SpherePoint], images: &[SpherePoint]) -> f64 {
    let range = |pts: &[SpherePoint]| {
        pts.iter()
            .map(|x| project_to_disk(x).norm())
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), r| {
                (lo.min(r), hi.max(r))
            })
    };
    let (a, b) = (range(sigma), range(images));
    (b.0 - a.1).max(a.0 - b.1).max(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disk::DiskPoint;

    /// `min_s |y − R_s x|² = |x|² + |y|² − 2|⟨x, y⟩_ℂ|`.
    fn closed_form(x: &SpherePoint, y: &SpherePoint) -> f64 {
        let (mut re, mut im) = (0.0, 0.0);
        for (u, v) in x.coords().chunks_exact(2).zip(y.coords().chunks_exact(2)) {
            re += u[0] * v[0] + u[1] * v[1];
            im += u[0] * v[1] - u[1] * v[0];
        }
        let nx: f64 = x.coords().iter().map(|c| c * c).sum();
        let ny: f64 = y.coords().iter().map(|c| c * c).sum();
        (nx + ny - 2.0 * re.hypot(im)).max(0.0).sqrt()
    }

    fn pts() -> Vec<SpherePoint> {
        (0..12)
            .map(|k| {
                SpherePoint::lift(
                    DiskPoint {
                        p: 0.3 * (k as f64).sin(),
                        q: 0.2 * (k as f64).cos(),
                    },
                    k as f64,
                    1,
                )
                .unwrap()
            })
            .collect()
    }

    #[test]
    fn identity_has_zero_margin() {
        let x = pts();
        let r = search_margin(&x, &x, 256, ExecMode::Sequential).unwrap();
        assert_eq!(r.margin, 0.0);
        assert_eq!(r.s, 0.0);
    }

    #[test]
    fn reeb_images_are_translated_points() {
        let x = pts();
        let y: Vec<SpherePoint> = x.iter().map(|p| reeb_flow(p, 0.3137)).collect();
        let r = search_margin(&x, &y, 64, ExecMode::Parallel).unwrap();
        assert!(r.margin < 1e-6);
    }

    #[test]
    fn refined_distance_matches_closed_form() {
        let x = pts();
        for (i, a) in x.iter().enumerate() {
            let b = &x[(i + 5) % x.len()];
            let (_, d) = closest_reeb_time(a, b, 256);
            assert!(
                (d - closed_form(a, b)).abs() < 1e-7,
                "{d} vs {}",
                closed_form(a, b)
            );
        }
    }

    #[test]
    fn rotational_bound_is_below_margin() {
        let x: Vec<SpherePoint> = (0..8)
            .map(|k| SpherePoint::lift(DiskPoint { p: 0.0, q: -0.5 }, k as f64, 1).unwrap())
            .collect();
        let y: Vec<SpherePoint> = (0..8)
            .map(|k| SpherePoint::lift(DiskPoint { p: 0.01, q: 0.02 }, 0.3 * k as f64, 1).unwrap())
            .collect();
        let r = search_margin(&x, &y, 256, ExecMode::Parallel).unwrap();
        assert!(r.rotational_bound > 0.4);
        assert!(r.rotational_bound <= r.margin + 1e-12);
    }

    #[test]
    fn input_validation() {
        let x = pts();
        assert!(search_margin(&[], &[], 8, ExecMode::Sequential).is_err());
        assert!(search_margin(&x, &x[..3], 8, ExecMode::Sequential).is_err());
    }
}
