//! Minimal self-contained SVG line plots.

use std::fmt::Write;

use crate::sim::Trace;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const MARGIN_LEFT: f64 = 80.0;
const MARGIN_RIGHT: f64 = 20.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 60.0;
/// Polylines are decimated to at most this many vertices.
const MAX_VERTICES: usize = 4000;

pub const PALETTE: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

#[derive(Debug, Clone)]
pub struct Series {
    pub label: String,
    pub color: String,
    pub points: Vec<(f64, f64)>,
}

impl Series {
    pub fn new(label: impl Into<String>, color: &str, points: Vec<(f64, f64)>) -> Self {
        Self { label: label.into(), color: color.to_string(), points }
    }
}

#[derive(Debug, Clone)]
pub struct LinePlot {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    /// Use the same scale on both axes.
    pub equal_aspect: bool,
    pub series: Vec<Series>,
}

#[derive(Debug, Clone, Copy)]
struct Range {
    lo: f64,
    hi: f64,
}

impl Range {
    fn of(values: impl Iterator<Item = f64>) -> Self {
        let (lo, hi) = values
            .filter(|v| v.is_finite())
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
        if !lo.is_finite() {
            return Range { lo: -1.0, hi: 1.0 };
        }
        if hi - lo <= f64::EPSILON * lo.abs().max(1.0) {
            let pad = lo.abs().max(1.0) * 0.5;
            return Range { lo: lo - pad, hi: hi + pad };
        }
        Range { lo, hi }
    }

    fn span(&self) -> f64 {
        self.hi - self.lo
    }

    fn widen_to(&self, span: f64) -> Self {
        let mid = 0.5 * (self.lo + self.hi);
        Range { lo: mid - 0.5 * span, hi: mid + 0.5 * span }
    }
}

/// Tick positions at a 1-2-5 step covering the range.
fn ticks(range: Range) -> Vec<f64> {
    let raw = range.span() / 6.0;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0].into_iter().map(|m| m * mag).find(|s| *s >= raw).unwrap_or(10.0 * mag);
    let first = (range.lo / step).ceil() as i64;
    let last = (range.hi / step).floor() as i64;
    (first..=last).map(|i| i as f64 * step).collect()
}

fn tick_label(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    let a = v.abs();
    if (1e-3..1e5).contains(&a) {
        let s = format!("{v:.4}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        format!("{v:.2e}")
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

impl LinePlot {
    pub fn to_svg(&self) -> String {
        let all = || self.series.iter().flat_map(|s| s.points.iter());
        let mut xr = Range::of(all().map(|p| p.0));
        let mut yr = Range::of(all().map(|p| p.1));
        let pw = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
        let ph = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
        if self.equal_aspect {
            let scale = (xr.span() / pw).max(yr.span() / ph);
            xr = xr.widen_to(scale * pw);
            yr = yr.widen_to(scale * ph);
        }
        let sx = |x: f64| MARGIN_LEFT + (x - xr.lo) / xr.span() * pw;
        let sy = |y: f64| MARGIN_TOP + ph - (y - yr.lo) / yr.span() * ph;

        let mut svg = String::new();
        let _ = writeln!(
            svg,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
        );
        let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="24" text-anchor="middle" font-size="15">{}</text>"#,
            WIDTH / 2.0,
            escape(&self.title)
        );

        for x in ticks(xr) {
            let px = sx(x);
            let _ = writeln!(
                svg,
                r##"<line x1="{px:.2}" y1="{MARGIN_TOP}" x2="{px:.2}" y2="{:.2}" stroke="#e0e0e0"/><text x="{px:.2}" y="{:.2}" text-anchor="middle">{}</text>"##,
                MARGIN_TOP + ph,
                MARGIN_TOP + ph + 16.0,
                tick_label(x)
            );
        }
        for y in ticks(yr) {
            let py = sy(y);
            let _ = writeln!(
                svg,
                r##"<line x1="{MARGIN_LEFT}" y1="{py:.2}" x2="{:.2}" y2="{py:.2}" stroke="#e0e0e0"/><text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"##,
                MARGIN_LEFT + pw,
                MARGIN_LEFT - 6.0,
                py + 4.0,
                tick_label(y)
            );
        }
        let _ = writeln!(
            svg,
            r#"<rect x="{MARGIN_LEFT}" y="{MARGIN_TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            MARGIN_LEFT + pw / 2.0,
            HEIGHT - 16.0,
            escape(&self.x_label)
        );
        let _ = writeln!(
            svg,
            r#"<text x="18" y="{:.2}" text-anchor="middle" transform="rotate(-90 18 {:.2})">{}</text>"#,
            MARGIN_TOP + ph / 2.0,
            MARGIN_TOP + ph / 2.0,
            escape(&self.y_label)
        );

        for (i, s) in self.series.iter().enumerate() {
            let stride = s.points.len().div_ceil(MAX_VERTICES).max(1);
            let mut path = String::new();
            let last = s.points.len().saturating_sub(1);
            for (j, &(x, y)) in s.points.iter().enumerate() {
                if (j % stride == 0 || j == last) && x.is_finite() && y.is_finite() {
                    let _ = write!(path, "{:.2},{:.2} ", sx(x), sy(y));
                }
            }
            let _ = writeln!(
                svg,
                r#"<polyline fill="none" stroke="{}" stroke-width="1.2" points="{}"/>"#,
                s.color,
                path.trim_end()
            );
            let ly = MARGIN_TOP + 16.0 + 16.0 * i as f64;
            let lx = MARGIN_LEFT + 10.0;
            let _ = writeln!(
                svg,
                r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{}" stroke-width="2"/><text x="{}" y="{}">{}</text>"#,
                lx + 20.0,
                s.color,
                lx + 26.0,
                ly + 4.0,
                escape(&s.label)
            );
        }
        svg.push_str("</svg>\n");
        svg
    }
}

/// Reference and actual paths in the XY plane.
pub fn xy_path_plot(trace: &Trace, title: &str) -> LinePlot {
    LinePlot {
        title: title.into(),
        x_label: "X (nm)".into(),
        y_label: "Y (nm)".into(),
        equal_aspect: true,
        series: vec![
            Series::new("reference", PALETTE[0], trace.records.iter().map(|r| (r.x_ref, r.y_ref)).collect()),
            Series::new("actual", PALETTE[1], trace.records.iter().map(|r| (r.x_act, r.y_act)).collect()),
        ],
    }
}

/// Contour error against time for one or more labelled traces.
pub fn contour_error_plot(traces: &[(&str, &Trace)], title: &str) -> LinePlot {
    LinePlot {
        title: title.into(),
        x_label: "t (s)".into(),
        y_label: "contour error (nm)".into(),
        equal_aspect: false,
        series: traces
            .iter()
            .enumerate()
            .map(|(i, (label, trace))| {
                Series::new(*label, PALETTE[i % PALETTE.len()], trace.records.iter().map(|r| (r.t, r.eps)).collect())
            })
            .collect(),
    }
}
