//! Minimal SVG line plots.

use std::fmt::Write;

use crate::report::fmt_num;

pub struct Series<'a> {
    pub label: &'a str,
    pub points: &'a [(f64, f64)],
    pub dashed: bool,
}

const W: f64 = 640.0;
const H: f64 = 480.0;
const PAD: f64 = 48.0;

fn coord(x: f64) -> String {
    // Fixed precision keeps files byte-stable and small.
    format!("{x:.3}")
}

/// Polylines on common axes with equal scaling in x and y.
pub fn plot(title: &str, series: &[Series]) -> String {
    let pts = series.iter().flat_map(|s| s.points.iter()).filter(|(x, y)| x.is_finite() && y.is_finite());
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in pts {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if !x0.is_finite() {
        (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
    }
    let span = (x1 - x0).max(y1 - y0).max(1e-12);
    let scale = ((W - 2.0 * PAD) / span).min((H - 2.0 * PAD) / span);
    let px = |x: f64| PAD + (x - x0) * scale;
    let py = |y: f64| H - PAD - (y - y0) * scale;

    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#);
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{PAD}" y="24" font-family="sans-serif" font-size="14">{}</text>"#, escape(title));
    let _ = writeln!(
        s,
        r#"<text x="{PAD}" y="{}" font-family="monospace" font-size="10">x: [{}, {}]  y: [{}, {}]</text>"#,
        H - 12.0,
        fmt_num(x0),
        fmt_num(x1),
        fmt_num(y0),
        fmt_num(y1)
    );
    let colors = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];
    for (i, ser) in series.iter().enumerate() {
        let color = colors[i % colors.len()];
        let path: Vec<String> = ser
            .points
            .iter()
            .filter(|(x, y)| x.is_finite() && y.is_finite())
            .map(|&(x, y)| format!("{},{}", coord(px(x)), coord(py(y))))
            .collect();
        let dash = if ser.dashed { r#" stroke-dasharray="4 3""# } else { "" };
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.5"{dash} points="{}"><title>{}</title></polyline>"#,
            path.join(" "),
            escape(ser.label)
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="11" fill="{color}">{}</text>"#,
            W - 200.0,
            40.0 + 14.0 * i as f64,
            escape(ser.label)
        );
    }
    s.push_str("</svg>\n");
    s
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plot_is_wellformed_and_stable() {
        let pts = [(0.0, 2.0), (1.0, 1.7), (2.0, 0.0)];
        let a = plot("t<1>", &[Series { label: "p", points: &pts, dashed: false }]);
        let b = plot("t<1>", &[Series { label: "p", points: &pts, dashed: false }]);
        assert_eq!(a, b);
        assert!(a.starts_with("<svg") && a.trim_end().ends_with("</svg>"));
        assert!(a.contains("t&lt;1&gt;") && a.contains("<polyline"));
    }
}
