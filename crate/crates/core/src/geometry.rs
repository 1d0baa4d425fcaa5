//! Set distances and circle fits in the `(p, q)` plane.

use serde::{Deserialize, Serialize};

use crate::disk::{ArcC, DiskPoint};
use crate::{Error, Result, INV_SQRT_PI};

/// `sup_{a ∈ A} inf_{b ∈ B} |a − b|`.
pub fn directed_hausdorff(a: &[DiskPoint], b: &[DiskPoint]) -> f64 {
    a.iter()
        .map(|x| {
            b.iter()
                .map(|y| x.distance(*y))
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max)
}

/// Symmetric Hausdorff distance of two finite sets; infinite if exactly one
/// of them is empty.
pub fn hausdorff(a: &[DiskPoint], b: &[DiskPoint]) -> f64 {
    if a.is_empty() && b.is_empty() {
        return 0.0;
    }
    directed_hausdorff(a, b).max(directed_hausdorff(b, a))
}

/// Hausdorff distance between a finite set and an arc `{a = const}`: the
/// arc side is sampled at `arc_samples` points, the set side measured
/// against the exact arc.
pub fn hausdorff_to_arc(points: &[DiskPoint], arc: &ArcC, arc_samples: usize) -> f64 {
    if points.is_empty() {
        return f64::INFINITY;
    }
    let to_arc = points
        .iter()
        .map(|z| arc.distance_to(*z))
        .fold(0.0, f64::max);
    let fine = arc.refined(arc_samples.max(2));
    to_arc.max(directed_hausdorff(&fine.samples, points))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Circle {
    pub centre: DiskPoint,
    pub radius: f64,
    /// Root-mean-square of `|z − c| − r` over the fitted points.
    pub rms_residual: f64,
}

impl Circle {
    /// Angle between this circle and `∂D(1)` at their intersection, from
    /// `cos θ = (|c|² − r² − ρ²)/(2rρ)`; `π/2` when they are orthogonal.
    pub fn boundary_angle(&self) -> f64 {
        let rho = INV_SQRT_PI;
        let c2 = self.centre.p * self.centre.p + self.centre.q * self.centre.q;
        ((c2 - self.radius * self.radius - rho * rho) / (2.0 * self.radius * rho))
            .clamp(-1.0, 1.0)
            .acos()
    }
}

/// Algebraic least-squares circle fit `p² + q² + Dp + Eq + F = 0`, solved in
/// coordinates centred on the mean for conditioning.
pub fn fit_circle(points: &[DiskPoint]) -> Result<Circle> {
    if points.len() < 3 {
        return Err(Error::invalid(
            "points",
            "a circle fit needs at least three points",
        ));
    }
    let n = points.len() as f64;
    let mp = points.iter().map(|z| z.p).sum::<f64>() / n;
    let mq = points.iter().map(|z| z.q).sum::<f64>() / n;
    // normal equations for (D, E, F) in shifted coordinates
    let mut m = [[0.0; 3]; 3];
    let mut rhs = [0.0; 3];
    for z in points {
        let (u, v) = (z.p - mp, z.q - mq);
        let row = [u, v, 1.0];
        let target = -(u * u + v * v);
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] += row[i] * row[j];
            }
            rhs[i] += row[i] * target;
        }
    }
    let [d, e, f] =
        solve3(m, rhs).ok_or_else(|| Error::invalid("points", "points are collinear"))?;
    let (cu, cv) = (-0.5 * d, -0.5 * e);
    let r2 = cu * cu + cv * cv - f;
    if !(r2 > 0.0) {
        return Err(Error::invalid("points", "degenerate circle fit"));
    }
    let radius = r2.sqrt();
    let centre = DiskPoint {
        p: cu + mp,
        q: cv + mq,
    };
    let rms_residual = (points
        .iter()
        .map(|z| (z.distance(centre) - radius).powi(2))
        .sum::<f64>()
        / n)
        .sqrt();
    Ok(Circle {
        centre,
        radius,
        rms_residual,
    })
}

fn solve3(mut m: [[f64; 3]; 3], mut b: [f64; 3]) -> Option<[f64; 3]> {
    let scale = m.iter().flatten().fold(0.0f64, |s, x| s.max(x.abs()));
    for col in 0..3 {
        let piv = (col..3).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))?;
        if m[piv][col].abs() <= 1e-14 * scale {
            return None;
        }
        m.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..3 {
            let k = m[row][col] / m[col][col];
            let pivot_row = m[col];
            for (c, v) in m[row].iter_mut().enumerate().skip(col) {
                *v -= k * pivot_row[c];
            }
            b[row] -= k * b[col];
        }
    }
    let mut x = [0.0; 3];
    for row in (0..3).rev() {
        let s: f64 = (row + 1..3).map(|c| m[row][c] * x[c]).sum();
        x[row] = (b[row] - s) / m[row][row];
    }
    Some(x)
}
