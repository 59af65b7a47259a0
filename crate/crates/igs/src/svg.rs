//! Minimal self-contained SVG output: a log-log scatter of the covering
//! curve with its fitted line and slope annotation. SVG 1.1, no external
//! assets.

use crate::boxcover::{CoverCurve, SlopeFit};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN_L: f64 = 70.0;
const MARGIN_R: f64 = 20.0;
const MARGIN_T: f64 = 30.0;
const MARGIN_B: f64 = 55.0;

struct Scale {
    lo: f64,
    hi: f64,
    pix_lo: f64,
    pix_hi: f64,
}

impl Scale {
    fn map(&self, v: f64) -> f64 {
        let t = (v.ln() - self.lo) / (self.hi - self.lo);
        self.pix_lo + t * (self.pix_hi - self.pix_lo)
    }
}

fn decade_ticks(lo: f64, hi: f64) -> Vec<f64> {
    let mut ticks = Vec::new();
    let start = lo.log10().floor() as i32;
    let end = hi.log10().ceil() as i32;
    for e in start..=end {
        for m in [1.0, 2.0, 5.0] {
            let v = m * 10f64.powi(e);
            if v >= lo * 0.999 && v <= hi * 1.001 {
                ticks.push(v);
            }
        }
    }
    ticks
}

fn fmt_tick(v: f64) -> String {
    if v >= 1.0 {
        format!("{}", v.round() as u64)
    } else {
        format!("{v}")
    }
}

/// Renders the curve (as N_L / |V|) with the fitted power law.
pub fn loglog_svg(curve: &CoverCurve, fit: &SlopeFit) -> String {
    let v = curve.node_count as f64;
    let pts: Vec<(f64, f64)> =
        curve.points.iter().map(|&(l, n)| (l as f64, n as f64 / v)).collect();
    let (mut xmin, mut xmax) = (f64::INFINITY, 0.0f64);
    let (mut ymin, mut ymax) = (f64::INFINITY, 0.0f64);
    for &(x, y) in &pts {
        xmin = xmin.min(x);
        xmax = xmax.max(x);
        ymin = ymin.min(y);
        ymax = ymax.max(y);
    }
    let xs = Scale {
        lo: (xmin * 0.9).ln(),
        hi: (xmax * 1.1).ln(),
        pix_lo: MARGIN_L,
        pix_hi: WIDTH - MARGIN_R,
    };
    let ys = Scale {
        lo: (ymin * 0.8).ln(),
        hi: (ymax * 1.25).ln(),
        pix_lo: HEIGHT - MARGIN_B,
        pix_hi: MARGIN_T,
    };

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    // frame
    out.push_str(&format!(
        "<rect x=\"{MARGIN_L}\" y=\"{MARGIN_T}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n",
        WIDTH - MARGIN_L - MARGIN_R,
        HEIGHT - MARGIN_T - MARGIN_B
    ));
    // ticks and grid
    for t in decade_ticks(xmin * 0.9, xmax * 1.1) {
        let x = xs.map(t);
        out.push_str(&format!(
            "<line x1=\"{x:.1}\" y1=\"{MARGIN_T}\" x2=\"{x:.1}\" y2=\"{}\" stroke=\"#dddddd\"/>\n",
            HEIGHT - MARGIN_B
        ));
        out.push_str(&format!(
            "<text x=\"{x:.1}\" y=\"{}\" font-size=\"12\" text-anchor=\"middle\">{}</text>\n",
            HEIGHT - MARGIN_B + 18.0,
            fmt_tick(t)
        ));
    }
    for t in decade_ticks(ymin * 0.8, ymax * 1.25) {
        let y = ys.map(t);
        out.push_str(&format!(
            "<line x1=\"{MARGIN_L}\" y1=\"{y:.1}\" x2=\"{}\" y2=\"{y:.1}\" stroke=\"#dddddd\"/>\n",
            WIDTH - MARGIN_R
        ));
        out.push_str(&format!(
            "<text x=\"{}\" y=\"{:.1}\" font-size=\"12\" text-anchor=\"end\">{t:.4}</text>\n",
            MARGIN_L - 6.0,
            y + 4.0
        ));
    }
    // fitted line: log N = intercept + slope log L, normalised by |V|
    let x0 = xmin;
    let x1 = xmax;
    let yfit = |x: f64| (fit.intercept + fit.slope * x.ln()).exp() / v;
    out.push_str(&format!(
        "<line x1=\"{:.1}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" stroke=\"black\" stroke-width=\"1.5\"/>\n",
        xs.map(x0),
        ys.map(yfit(x0)),
        xs.map(x1),
        ys.map(yfit(x1))
    ));
    // scatter
    for &(x, y) in &pts {
        out.push_str(&format!(
            "<rect x=\"{:.1}\" y=\"{:.1}\" width=\"6\" height=\"6\" fill=\"none\" stroke=\"#7b2d8b\"/>\n",
            xs.map(x) - 3.0,
            ys.map(y) - 3.0
        ));
    }
    // labels
    out.push_str(&format!(
        "<text x=\"{:.1}\" y=\"{}\" font-size=\"14\" text-anchor=\"middle\">L</text>\n",
        (MARGIN_L + WIDTH - MARGIN_R) / 2.0,
        HEIGHT - 12.0
    ));
    out.push_str(&format!(
        "<text x=\"18\" y=\"{:.1}\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 18 {:.1})\">N_L / |V|</text>\n",
        (MARGIN_T + HEIGHT - MARGIN_B) / 2.0,
        (MARGIN_T + HEIGHT - MARGIN_B) / 2.0
    ));
    out.push_str(&format!(
        "<text x=\"{:.1}\" y=\"{}\" font-size=\"13\">slope {:.4} (dimension {:.4}, stderr {:.4})</text>\n",
        MARGIN_L + 8.0,
        MARGIN_T + 18.0,
        fit.slope,
        -fit.slope,
        fit.stderr
    ));
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boxcover;
    use crate::graph::{Arc, ColoredDigraph};

    #[test]
    fn svg_is_self_contained() {
        let arcs = (0..60u32).map(|i| Arc { tail: i, head: i + 1, color: 1 }).collect();
        let g = ColoredDigraph::from_arcs(1, arcs);
        let report = boxcover::estimate_box_dimension(&g, None, None).unwrap();
        let svg = loglog_svg(&report.curve, &report.fit);
        assert!(svg.starts_with("<svg"));
        assert!(svg.ends_with("</svg>\n"));
        assert!(svg.contains("slope"));
        assert_eq!(svg.matches("http").count(), 1, "only the xmlns, no external assets");
    }
}
