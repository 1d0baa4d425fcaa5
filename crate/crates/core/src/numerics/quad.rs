/// Absolute tolerance used for every scaling-exponent and length integral.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Adaptive Simpson rule with Richardson correction.
///
/// The interval is first cut into `panels` equal pieces so that narrow
/// features in long integration windows are not stepped over by the first
/// coarse estimate; each panel is then refined adaptively with its share of
/// the tolerance.
#[derive(Clone, Copy, Debug)]
pub struct Simpson {
    pub tol: f64,
    pub max_depth: u32,
    pub panels: usize,
}

impl Default for Simpson {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            max_depth: 48,
            panels: 16,
        }
    }
}

impl Simpson {
    pub fn with_tol(tol: f64) -> Self {
        Self {
            tol,
            ..Self::default()
        }
    }

    pub fn panels(mut self, panels: usize) -> Self {
        self.panels = panels.max(1);
        self
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64) -> f64 {
        if a == b {
            return 0.0;
        }
        let n = self.panels.max(1);
        let width = (b - a) / n as f64;
        let eps = self.tol / n as f64;
        (0..n)
            .map(|k| {
                let lo = a + width * k as f64;
                let hi = if k + 1 == n { b } else { lo + width };
                panel(&f, lo, hi, eps, self.max_depth)
            })
            .sum()
    }
}

/// `∫_a^b f` to absolute tolerance `tol`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    Simpson::with_tol(tol).integrate(f, a, b)
}

fn panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, eps: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = (b - a) * (fa + 4.0 * fm + fb) / 6.0;
    refine(f, a, m, b, fa, fm, fb, whole, eps, depth)
}

#[allow(clippy::too_many_arguments)]
fn refine<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    m: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    eps: f64,
    depth: u32,
) -> f64 {
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) * (fa + 4.0 * flm + fm) / 6.0;
    let right = (b - m) * (fm + 4.0 * frm + fb) / 6.0;
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * eps {
        return left + right + delta / 15.0;
    }
    refine(f, a, lm, m, fa, flm, fm, left, 0.5 * eps, depth - 1)
        + refine(f, m, rm, b, fm, frm, fb, right, 0.5 * eps, depth - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials_up_to_cubic_are_exact() {
        let v = adaptive_simpson(|x| 3.0 * x * x * x - x + 2.0, -1.0, 2.0, 1e-12);
        // 3/4 x^4 - x^2/2 + 2x on [-1, 2]
        let exact = (0.75 * 16.0 - 2.0 + 4.0) - (0.75 - 0.5 - 2.0);
        assert!((v - exact).abs() < 1e-12);
    }

    #[test]
    fn narrow_bump_in_long_window() {
        let v = Simpson::with_tol(1e-11).panels(64).integrate(
            |x| 1.0 / (x - 500.0).cosh(),
            0.0,
            1000.0,
        );
        assert!((v - std::f64::consts::PI).abs() < 1e-9, "{v}");
    }

    #[test]
    fn empty_interval() {
        assert_eq!(adaptive_simpson(|x| x, 3.0, 3.0, 1e-10), 0.0);
    }
}
