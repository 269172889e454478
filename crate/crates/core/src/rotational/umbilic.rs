//! Umbilic points of the rotation surface: zeros of `F`.

use serde::Serialize;

use crate::error::{domain, Result};
use crate::rotational::curvature::curvature_sample;
use crate::rotational::profile::{Chart, ProfileCurve};

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum UmbilicScan {
    /// `F` vanishes along the whole scanned curve.
    TotallyUmbilic,
    /// Isolated umbilics, by abscissa; `0.0` is the axis point.
    Points(Vec<f64>),
}

const SUBDIV: usize = 8;

/// Locate sign changes of `F` along a graph-chart curve.
pub fn umbilic_scan(curve: &ProfileCurve) -> Result<UmbilicScan> {
    if curve.chart != Chart::Graph {
        return domain("umbilic_scan needs a graph-chart curve");
    }
    let (lo, hi) = curve.range();
    let samples = curve.graph_samples();
    // Scan grid: step endpoints refined by SUBDIV.
    let mut xs: Vec<f64> = Vec::new();
    let mut prev = if lo > 0.0 { lo } else { samples.first().map_or(hi, |s| s.x) };
    xs.push(prev);
    for s in &samples {
        if s.x <= prev {
            continue;
        }
        for k in 1..=SUBDIV {
            xs.push(prev + (s.x - prev) * k as f64 / SUBDIV as f64);
        }
        prev = s.x;
    }
    let f_at = |x: f64| -> Option<(f64, f64)> {
        let st = curve.graph_state_at(x)?;
        let c = curvature_sample(&st).ok()?;
        let scale = (x * st.gamma.abs()).max((x * x - 4.0).abs() * st.gamma_p.abs()).max(1e-300);
        Some((c.f_val, scale))
    };
    let vals: Vec<(f64, f64, f64)> = xs
        .iter()
        .filter_map(|&x| f_at(x).map(|(f, s)| (x, f, s)))
        .collect();

    let max_rel = vals
        .iter()
        .map(|(_, f, s)| f.abs() / s.max(1.0))
        .fold(0.0, f64::max);
    if max_rel <= 1e-9 {
        return Ok(UmbilicScan::TotallyUmbilic);
    }

    let mut points = Vec::new();
    if curve.b.is_some() {
        points.push(0.0);
    }
    for w in vals.windows(2) {
        let (xa, fa, _) = w[0];
        let (xb, fb, sb) = w[1];
        if fa == 0.0 {
            points.push(xa);
            continue;
        }
        if fa * fb >= 0.0 {
            continue;
        }
        let (mut a, mut b, mut f_lo) = (xa, xb, fa);
        let mut x_mid = 0.5 * (a + b);
        for _ in 0..200 {
            x_mid = 0.5 * (a + b);
            let Some((fm, sm)) = f_at(x_mid) else { break };
            if fm.abs() < 1e-10 * sm.max(sb) || b - a < 1e-15 * b {
                break;
            }
            if (fm < 0.0) == (f_lo < 0.0) {
                a = x_mid;
                f_lo = fm;
            } else {
                b = x_mid;
            }
        }
        points.push(x_mid);
    }
    if let Some(&(xl, fl, _)) = vals.last() {
        if fl == 0.0 && points.last() != Some(&xl) {
            points.push(xl);
        }
    }
    Ok(UmbilicScan::Points(points))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rotational::profile::integrate_graph;

    #[test]
    fn sphere_and_plane_are_totally_umbilic() {
        for b in [0.0, 2.0] {
            let c = integrate_graph(b, 1.5, 1e-11).unwrap();
            assert_eq!(umbilic_scan(&c).unwrap(), UmbilicScan::TotallyUmbilic);
        }
    }

    #[test]
    fn b1_has_only_the_axis_umbilic() {
        let c = integrate_graph(1.0, 1.0, 1e-11).unwrap();
        assert_eq!(umbilic_scan(&c).unwrap(), UmbilicScan::Points(vec![0.0]));
    }
}
