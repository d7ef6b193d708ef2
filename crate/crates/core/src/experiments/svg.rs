//! Minimal static SVG line/scatter charts.

use std::fmt::Write as _;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 140.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 55.0;

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
    /// Half-height of a symmetric error bar.
    pub err: Option<f64>,
    /// Drawn hollow: the true value lies above `y`.
    pub censored: bool,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point {
            x,
            y,
            err: None,
            censored: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Series {
    pub label: String,
    pub points: Vec<Point>,
}

#[derive(Debug, Clone, Default)]
pub struct Chart {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub series: Vec<Series>,
    /// Dashed vertical reference lines `(x, label)`.
    pub vlines: Vec<(f64, String)>,
    pub log_y: bool,
}

#[derive(Debug, Clone, Copy)]
struct Range {
    lo: f64,
    hi: f64,
}

impl Range {
    fn padded(lo: f64, hi: f64) -> Range {
        if !(lo.is_finite() && hi.is_finite()) {
            return Range { lo: 0.0, hi: 1.0 };
        }
        if (hi - lo).abs() < 1e-12 {
            let d = if lo.abs() > 1e-12 {
                lo.abs() * 0.1
            } else {
                1.0
            };
            return Range {
                lo: lo - d,
                hi: hi + d,
            };
        }
        let pad = 0.05 * (hi - lo);
        Range {
            lo: lo - pad,
            hi: hi + pad,
        }
    }

    fn map(&self, v: f64, a: f64, b: f64) -> f64 {
        a + (v - self.lo) / (self.hi - self.lo) * (b - a)
    }
}

fn nice_step(span: f64, target_ticks: usize) -> f64 {
    let raw = span / target_ticks as f64;
    let mag = 10f64.powf(raw.log10().floor());
    let norm = raw / mag;
    let nice = if norm < 1.5 {
        1.0
    } else if norm < 3.0 {
        2.0
    } else if norm < 7.0 {
        5.0
    } else {
        10.0
    };
    nice * mag
}

fn ticks(r: Range) -> Vec<f64> {
    let step = nice_step(r.hi - r.lo, 6);
    let start = (r.lo / step).ceil() as i64;
    let end = (r.hi / step).floor() as i64;
    (start..=end).map(|i| i as f64 * step).collect()
}

fn fmt_tick(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    let a = v.abs();
    if !(1e-3..1e4).contains(&a) {
        format!("{v:.0e}")
    } else {
        let s = format!("{v:.3}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

impl Chart {
    fn y_value(&self, y: f64) -> f64 {
        if self.log_y {
            y.max(1e-16).log10()
        } else {
            y
        }
    }

    /// Data extent over all points, error bars and reference lines.
    fn extent(&self) -> (Range, Range) {
        let mut xs = (f64::INFINITY, f64::NEG_INFINITY);
        let mut ys = (f64::INFINITY, f64::NEG_INFINITY);
        for p in self.series.iter().flat_map(|s| &s.points) {
            if !(p.x.is_finite() && p.y.is_finite()) {
                continue;
            }
            xs = (xs.0.min(p.x), xs.1.max(p.x));
            let e = p.err.unwrap_or(0.0);
            ys = (
                ys.0.min(self.y_value(p.y - e).min(self.y_value(p.y))),
                ys.1.max(self.y_value(p.y + e)),
            );
        }
        for (x, _) in &self.vlines {
            xs = (xs.0.min(*x), xs.1.max(*x));
        }
        (Range::padded(xs.0, xs.1), Range::padded(ys.0, ys.1))
    }

    pub fn render(&self) -> String {
        let (xr, yr) = self.extent();
        let (x0, x1) = (MARGIN_LEFT, WIDTH - MARGIN_RIGHT);
        let (y0, y1) = (HEIGHT - MARGIN_BOTTOM, MARGIN_TOP);
        let px = |x: f64| xr.map(x, x0, x1);
        let py = |y: f64| yr.map(self.y_value(y), y0, y1);

        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
        );
        let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="22" text-anchor="middle" font-size="14">{}</text>"#,
            (x0 + x1) / 2.0,
            escape(&self.title)
        );

        // axes
        let _ = writeln!(
            s,
            r#"<rect x="{x0:.1}" y="{y1:.1}" width="{:.1}" height="{:.1}" fill="none" stroke="black"/>"#,
            x1 - x0,
            y0 - y1
        );
        for t in ticks(xr) {
            let x = px(t);
            let _ = writeln!(
                s,
                r#"<line x1="{x:.1}" y1="{y0:.1}" x2="{x:.1}" y2="{:.1}" stroke="black"/><text x="{x:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
                y0 + 5.0,
                y0 + 18.0,
                fmt_tick(t)
            );
        }
        for t in ticks(yr) {
            let y = yr.map(t, y0, y1);
            let label = if self.log_y {
                fmt_tick(10f64.powf(t))
            } else {
                fmt_tick(t)
            };
            let _ = writeln!(
                s,
                r#"<line x1="{:.1}" y1="{y:.1}" x2="{x0:.1}" y2="{y:.1}" stroke="black"/><text x="{:.1}" y="{:.1}" text-anchor="end">{label}</text>"#,
                x0 - 5.0,
                x0 - 8.0,
                y + 4.0
            );
        }
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
            (x0 + x1) / 2.0,
            HEIGHT - 15.0,
            escape(&self.x_label)
        );
        let _ = writeln!(
            s,
            r#"<text x="18" y="{:.1}" text-anchor="middle" transform="rotate(-90 18 {:.1})">{}</text>"#,
            (y0 + y1) / 2.0,
            (y0 + y1) / 2.0,
            escape(&self.y_label)
        );

        for (x, label) in &self.vlines {
            let x = px(*x);
            let _ = writeln!(
                s,
                r##"<line x1="{x:.1}" y1="{y0:.1}" x2="{x:.1}" y2="{y1:.1}" stroke="#777" stroke-dasharray="5,4"/><text x="{:.1}" y="{:.1}" fill="#555">{}</text>"##,
                x + 4.0,
                y1 + 14.0,
                escape(label)
            );
        }

        for (i, series) in self.series.iter().enumerate() {
            let color = PALETTE[i % PALETTE.len()];
            let pts: Vec<&Point> = series
                .points
                .iter()
                .filter(|p| p.x.is_finite() && p.y.is_finite())
                .collect();
            if pts.len() > 1 {
                let path: Vec<String> = pts
                    .iter()
                    .map(|p| format!("{:.1},{:.1}", px(p.x), py(p.y)))
                    .collect();
                let _ = writeln!(
                    s,
                    r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#,
                    path.join(" ")
                );
            }
            for p in &pts {
                let (cx, cy) = (px(p.x), py(p.y));
                if let Some(e) = p.err.filter(|e| *e > 0.0) {
                    let (lo, hi) = (py(p.y - e), py(p.y + e));
                    let _ = writeln!(
                        s,
                        r#"<path d="M{cx:.1},{lo:.1}V{hi:.1}M{:.1},{lo:.1}h8M{:.1},{hi:.1}h8" stroke="{color}"/>"#,
                        cx - 4.0,
                        cx - 4.0
                    );
                }
                let fill = if p.censored { "white" } else { color };
                let _ = writeln!(
                    s,
                    r#"<rect x="{:.1}" y="{:.1}" width="7" height="7" fill="{fill}" stroke="{color}"/>"#,
                    cx - 3.5,
                    cy - 3.5
                );
            }
            let ly = MARGIN_TOP + 10.0 + 18.0 * i as f64;
            let lx = x1 + 15.0;
            let _ = writeln!(
                s,
                r#"<rect x="{lx:.1}" y="{:.1}" width="10" height="10" fill="{color}"/><text x="{:.1}" y="{:.1}">{}</text>"#,
                ly - 5.0,
                lx + 16.0,
                ly + 4.0,
                escape(&series.label)
            );
        }
        s.push_str("</svg>\n");
        s
    }
}
