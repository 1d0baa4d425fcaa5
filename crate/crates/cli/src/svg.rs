//! Phase portraits of the disk as plain SVG.

use std::fmt::Write as _;

use contactlab::disk::DiskPoint;
use contactlab::INV_SQRT_PI;

const SIZE: f64 = 640.0;
const MARGIN: f64 = 20.0;

pub struct Portrait {
    header: String,
    body: String,
}

impl Portrait {
    /// An empty portrait of `D(1)`. `config` goes into the leading comment.
    pub fn new(config: &str) -> Self {
        let mut p = Portrait {
            header: format!("<!-- config: {} -->\n", config.replace("--", "- -")),
            body: String::new(),
        };
        let c = SIZE / 2.0;
        let r = SIZE / 2.0 - MARGIN;
        let _ = writeln!(
            p.body,
            r#"<circle cx="{c:.2}" cy="{c:.2}" r="{r:.2}" fill="none" stroke="black" stroke-width="1.5"/>"#
        );
        p
    }

    fn map(z: DiskPoint) -> (f64, f64) {
        let s = (SIZE / 2.0 - MARGIN) / INV_SQRT_PI;
        (SIZE / 2.0 + s * z.p, SIZE / 2.0 - s * z.q)
    }

    pub fn polyline(&mut self, points: &[DiskPoint], colour: &str, width: f64) {
        if points.len() < 2 {
            return;
        }
        let mut d = String::new();
        for z in points {
            let (x, y) = Self::map(*z);
            let _ = write!(d, "{x:.2},{y:.2} ");
        }
        let _ = writeln!(
            self.body,
            r#"<polyline points="{}" fill="none" stroke="{colour}" stroke-width="{width:.2}"/>"#,
            d.trim_end()
        );
    }

    pub fn dot(&mut self, z: DiskPoint, colour: &str) {
        let (x, y) = Self::map(z);
        let _ = writeln!(
            self.body,
            r#"<circle cx="{x:.2}" cy="{y:.2}" r="1.5" fill="{colour}"/>"#
        );
    }

    pub fn label(&mut self, x: f64, y: f64, text: &str) {
        let _ = writeln!(
            self.body,
            r#"<text x="{x:.1}" y="{y:.1}" font-family="sans-serif" font-size="12">{text}</text>"#
        );
    }

    pub fn finish(self) -> String {
        format!(
            "{}<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n{}</svg>\n",
            self.header, self.body
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn emits_elements() {
        let mut p = Portrait::new(r#"{"a":"--x"}"#);
        p.polyline(
            &[DiskPoint { p: 0.0, q: 0.0 }, DiskPoint { p: 0.1, q: 0.1 }],
            "red",
            1.0,
        );
        p.dot(
            DiskPoint {
                p: 0.0,
                q: INV_SQRT_PI,
            },
            "blue",
        );
        let s = p.finish();
        assert!(s.starts_with("<!-- config: {\"a\":\"- -x\"} -->"));
        assert!(s.contains("<polyline") && s.contains("cy=\"20.00\"") && s.ends_with("</svg>\n"));
    }
}
