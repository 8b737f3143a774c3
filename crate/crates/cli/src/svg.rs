//! Minimal SVG charts: axes, series, legend.

use std::fmt::Write as _;

const W: f64 = 640.0;
const H: f64 = 400.0;
const LEFT: f64 = 60.0;
const RIGHT: f64 = 160.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 50.0;
const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"];

#[derive(Debug, Clone)]
pub struct Series {
    pub name: String,
    pub points: Vec<(f64, f64)>,
    pub dashed: bool,
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

struct Frame {
    x: [f64; 2],
    y: [f64; 2],
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        let span = (self.x[1] - self.x[0]).max(1e-12);
        LEFT + (x - self.x[0]) / span * (W - LEFT - RIGHT)
    }

    fn py(&self, y: f64) -> f64 {
        let span = (self.y[1] - self.y[0]).max(1e-12);
        H - BOTTOM - (y - self.y[0]) / span * (H - TOP - BOTTOM)
    }
}

fn header(out: &mut String, title: &str) {
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" font-family="sans-serif" font-size="12">"#);
    let _ = writeln!(out, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(out, r#"<text x="{}" y="24" text-anchor="middle" font-size="14">{}</text>"#, (W - RIGHT + LEFT) / 2.0, escape(title));
}

fn axes(out: &mut String, f: &Frame, x_label: &str, y_label: &str) {
    let (x0, x1, y0, y1) = (f.px(f.x[0]), f.px(f.x[1]), f.py(f.y[0]), f.py(f.y[1]));
    let _ = writeln!(out, r#"<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}" stroke="black"/>"#);
    let _ = writeln!(out, r#"<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="black"/>"#);
    for i in 0..=5 {
        let t = i as f64 / 5.0;
        let xv = f.x[0] + t * (f.x[1] - f.x[0]);
        let yv = f.y[0] + t * (f.y[1] - f.y[0]);
        let _ = writeln!(out, r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{xv:.2}</text>"#, f.px(xv), y0 + 16.0);
        let _ = writeln!(out, r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{yv:.2}</text>"#, x0 - 6.0, f.py(yv) + 4.0);
    }
    let _ = writeln!(out, r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#, (x0 + x1) / 2.0, H - 12.0, escape(x_label));
    let _ = writeln!(
        out,
        r#"<text x="16" y="{:.1}" text-anchor="middle" transform="rotate(-90 16 {:.1})">{}</text>"#,
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0,
        escape(y_label)
    );
}

fn legend(out: &mut String, names: &[(String, &str, bool)]) {
    for (i, (name, color, dashed)) in names.iter().enumerate() {
        let y = TOP + 10.0 + 18.0 * i as f64;
        let x = W - RIGHT + 16.0;
        let dash = if *dashed { r#" stroke-dasharray="4 3""# } else { "" };
        let _ = writeln!(out, r#"<line x1="{x}" y1="{y}" x2="{}" y2="{y}" stroke="{color}" stroke-width="2"{dash}/>"#, x + 20.0);
        let _ = writeln!(out, r#"<text x="{}" y="{}">{}</text>"#, x + 26.0, y + 4.0, escape(name));
    }
}

fn bounds(values: impl Iterator<Item = f64>, floor_zero: bool) -> [f64; 2] {
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for v in values.filter(|v| v.is_finite()) {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if !lo.is_finite() {
        return [0.0, 1.0];
    }
    if floor_zero {
        lo = lo.min(0.0);
    }
    if hi - lo < 1e-9 {
        hi = lo + 1.0;
    }
    [lo, hi]
}

pub fn line_chart(title: &str, x_label: &str, y_label: &str, series: &[Series]) -> String {
    let f = Frame {
        x: bounds(series.iter().flat_map(|s| s.points.iter().map(|p| p.0)), false),
        y: bounds(series.iter().flat_map(|s| s.points.iter().map(|p| p.1)), true),
    };
    let mut out = String::new();
    header(&mut out, title);
    axes(&mut out, &f, x_label, y_label);
    let mut names = Vec::new();
    for (i, s) in series.iter().enumerate() {
        let color = if s.dashed { "#777777" } else { COLORS[i % COLORS.len()] };
        let pts: Vec<String> = s.points.iter().map(|&(x, y)| format!("{:.1},{:.1}", f.px(x), f.py(y))).collect();
        let dash = if s.dashed { r#" stroke-dasharray="4 3""# } else { "" };
        let _ = writeln!(out, r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="2"{dash}/>"#, pts.join(" "));
        if !s.dashed {
            for &(x, y) in &s.points {
                let _ = writeln!(out, r#"<circle cx="{:.1}" cy="{:.1}" r="3" fill="{color}"/>"#, f.px(x), f.py(y));
            }
        }
        names.push((s.name.clone(), color, s.dashed));
    }
    legend(&mut out, &names);
    out.push_str("</svg>\n");
    out
}

/// Stacked bars: one bar per label, one segment per category.
pub fn stacked_bars(title: &str, y_label: &str, categories: &[&str], bars: &[(String, Vec<f64>)]) -> String {
    let f = Frame { x: [0.0, bars.len().max(1) as f64], y: [0.0, 1.0] };
    let mut out = String::new();
    header(&mut out, title);
    let (x0, y0) = (f.px(0.0), f.py(0.0));
    let _ = writeln!(out, r#"<line x1="{x0}" y1="{y0}" x2="{}" y2="{y0}" stroke="black"/>"#, f.px(f.x[1]));
    let _ = writeln!(out, r#"<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{}" stroke="black"/>"#, f.py(1.0));
    for i in 0..=5 {
        let v = i as f64 / 5.0;
        let _ = writeln!(out, r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{v:.1}</text>"#, x0 - 6.0, f.py(v) + 4.0);
    }
    let _ = writeln!(
        out,
        r#"<text x="16" y="{:.1}" text-anchor="middle" transform="rotate(-90 16 {:.1})">{}</text>"#,
        (TOP + H - BOTTOM) / 2.0,
        (TOP + H - BOTTOM) / 2.0,
        escape(y_label)
    );
    let bar_w = (f.px(1.0) - f.px(0.0)) * 0.7;
    for (i, (label, values)) in bars.iter().enumerate() {
        let cx = f.px(i as f64 + 0.5);
        let mut acc = 0.0;
        for (c, v) in values.iter().enumerate() {
            let (top, bottom) = (f.py(acc + v), f.py(acc));
            let _ = writeln!(
                out,
                r#"<rect x="{:.1}" y="{top:.1}" width="{bar_w:.1}" height="{:.1}" fill="{}"/>"#,
                cx - bar_w / 2.0,
                bottom - top,
                COLORS[c % COLORS.len()]
            );
            acc += v;
        }
        let _ = writeln!(
            out,
            r#"<text x="{cx:.1}" y="{:.1}" text-anchor="end" font-size="10" transform="rotate(-30 {cx:.1} {:.1})">{}</text>"#,
            y0 + 14.0,
            y0 + 14.0,
            escape(label)
        );
    }
    let names: Vec<(String, &str, bool)> = categories.iter().enumerate().map(|(i, c)| (c.to_string(), COLORS[i % COLORS.len()], false)).collect();
    legend(&mut out, &names);
    out.push_str("</svg>\n");
    out
}
