//! Named fixture surfaces with conformal (isothermal) charts.
//!
//! * `sphere R`: inverse stereographic projection from the south pole, outward normal.
//! * `cylinder R`: arclength chart around the axis, outward normal.
//! * `plane`: the `xy` plane.
//! * `torus R,r`: longitude together with the conformal latitude
//!   `sigma = int r / (R + r cos theta) dtheta`.
//! * `ellipsoid a,b,c`: curvature-line coordinates `(mu, nu)` rescaled to
//!   `ds = sqrt(-mu / 4 Pi(mu)) dmu`, `dt = sqrt(nu / 4 Pi(nu)) dnu`, where
//!   `Pi(t) = (A - t)(B - t)(C - t)` with `A > B > C` the squared semi-axes.
//!   The metric is then `(nu - mu)(ds^2 + dt^2)`. The chart covers the open
//!   octant where all coordinates are positive, trimmed away from the
//!   umbilics and the coordinate planes; `mu(s)` and `nu(t)` are inverted
//!   numerically.

use std::f64::consts::PI;

use crate::error::{domain, LabError, Result};
use crate::numerics::jet::Jet;
use crate::numerics::quad::integrate;
use crate::surface::chart::{ChartDomain, ParametricSurface};

pub const FIXTURE_NAMES: [&str; 5] = ["sphere R", "cylinder R", "plane", "ellipsoid a,b,c", "torus R,r"];

fn positive(x: f64, what: &str) -> Result<f64> {
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        domain(format!("{what} must be positive and finite, got {x}"))
    }
}

pub fn sphere(r: f64) -> Result<ParametricSurface> {
    let r = positive(r, "sphere radius")?;
    let d = ChartDomain::new((-2.0, 2.0), (-2.0, 2.0))?;
    Ok(ParametricSurface::from_jets(format!("sphere {r}"), d, move |u, v| {
        let (u, v) = (Jet::var_u(u), Jet::var_v(v));
        let q = u * u + v * v;
        let s = (q + 1.0).recip() * r;
        [u * 2.0 * s, v * 2.0 * s, (1.0 - q) * s]
    }))
}

pub fn cylinder(r: f64) -> Result<ParametricSurface> {
    let r = positive(r, "cylinder radius")?;
    let d = ChartDomain::new((-0.9 * PI * r, 0.9 * PI * r), (-2.0, 2.0))?;
    Ok(ParametricSurface::from_jets(format!("cylinder {r}"), d, move |u, v| {
        let a = Jet::var_u(u) / r;
        [a.cos() * r, a.sin() * r, Jet::var_v(v)]
    }))
}

pub fn plane() -> ParametricSurface {
    let d = ChartDomain { u: (-2.0, 2.0), v: (-2.0, 2.0) };
    ParametricSurface::from_jets("plane", d, |u, v| [Jet::var_u(u), Jet::var_v(v), Jet::constant(0.0)])
}

pub fn torus(big_r: f64, r: f64) -> Result<ParametricSurface> {
    positive(r, "torus tube radius")?;
    if !(big_r > r) || !big_r.is_finite() {
        return domain(format!("torus needs R > r, got R = {big_r}, r = {r}"));
    }
    let c = (big_r * big_r - r * r).sqrt();
    let k = ((big_r - r) / (big_r + r)).sqrt();
    let sigma = |theta: f64| 2.0 * r / c * (k * (0.5 * theta).tan()).atan();
    let edge = sigma(PI - 0.2);
    let d = ChartDomain::new((-3.0, 3.0), (-edge, edge))?;
    Ok(ParametricSurface::from_jets(format!("torus {big_r},{r}"), d, move |u, v| {
        let theta = ((Jet::var_v(v) * (0.5 * c / r)).tan() / k).atan() * 2.0;
        let phi = Jet::var_u(u);
        let ring = theta.cos() * r + big_r;
        [ring * phi.cos(), ring * phi.sin(), theta.sin() * r]
    }))
}

/// One of the two conformal coordinates of the ellipsoid chart, `m(s)`
/// with `dm/ds = 1 / sqrt(w(m))` and `w(m) = sign * m / (4 Pi(m))`.
#[derive(Debug, Clone, Copy)]
struct ConformalCoordinate {
    sq: [f64; 3],
    sign: f64,
    lo: f64,
    hi: f64,
    mid: f64,
}

impl ConformalCoordinate {
    fn pi(&self, m: f64) -> f64 {
        let [a, b, c] = self.sq;
        (a - m) * (b - m) * (c - m)
    }

    fn pi_prime(&self, m: f64) -> f64 {
        let [a, b, c] = self.sq;
        -((b - m) * (c - m) + (a - m) * (c - m) + (a - m) * (b - m))
    }

    fn w(&self, m: f64) -> f64 {
        self.sign * m / (4.0 * self.pi(m))
    }

    fn w_prime(&self, m: f64) -> f64 {
        let p = self.pi(m);
        self.sign * (p - m * self.pi_prime(m)) / (4.0 * p * p)
    }

    fn s_of(&self, m: f64) -> f64 {
        let f = |x: f64| self.w(x).sqrt();
        integrate(&f, self.mid, m, 1e-15, 1e-14)
            .map(|e| e.value)
            .unwrap_or_else(|e| panic!("ellipsoid chart quadrature: {e}"))
    }

    /// Safeguarded Newton for `s_of(m) = s` on `[lo, hi]`.
    fn m_of(&self, s: f64) -> f64 {
        let (mut a, mut b) = (self.lo, self.hi);
        let mut m = self.mid + s / self.w(self.mid).sqrt();
        if !(a < m && m < b) {
            m = 0.5 * (a + b);
        }
        for _ in 0..60 {
            let g = self.s_of(m) - s;
            if g > 0.0 {
                b = m;
            } else {
                a = m;
            }
            let step = g / self.w(m).sqrt();
            let mut next = m - step;
            if !(a < next && next < b) {
                next = 0.5 * (a + b);
            }
            if (next - m).abs() <= 1e-15 * m.abs() {
                return next;
            }
            m = next;
        }
        m
    }

    fn jet(&self, s: f64, along_u: bool) -> Jet {
        let m = self.m_of(s);
        let w = self.w(m);
        let d1 = 1.0 / w.sqrt();
        let d2 = -0.5 * self.w_prime(m) / (w * w);
        if along_u {
            Jet::of_u(m, d1, d2)
        } else {
            Jet::of_v(m, d1, d2)
        }
    }
}

pub fn ellipsoid(a: f64, b: f64, c: f64) -> Result<ParametricSurface> {
    let axes = [positive(a, "semi-axis a")?, positive(b, "semi-axis b")?, positive(c, "semi-axis c")?];
    let mut order = [0usize, 1, 2];
    order.sort_by(|&i, &j| axes[j].total_cmp(&axes[i]));
    let sq = order.map(|i| axes[i] * axes[i]);
    if !(sq[0] > sq[1] && sq[1] > sq[2]) {
        return domain("the ellipsoid chart needs three distinct semi-axes");
    }
    let trim = 0.1;
    let coord = |lo: f64, hi: f64, sign: f64| {
        let w = hi - lo;
        ConformalCoordinate { sq, sign, lo: lo + trim * w, hi: hi - trim * w, mid: 0.5 * (lo + hi) }
    };
    let mu = coord(sq[2], sq[1], -1.0);
    let nu = coord(sq[1], sq[0], 1.0);
    let d = ChartDomain::new((mu.s_of(mu.lo), mu.s_of(mu.hi)), (nu.s_of(nu.lo), nu.s_of(nu.hi)))?;
    let denom = [
        (sq[0] - sq[1]) * (sq[0] - sq[2]),
        (sq[1] - sq[0]) * (sq[1] - sq[2]),
        (sq[2] - sq[0]) * (sq[2] - sq[1]),
    ];
    Ok(ParametricSurface::from_jets(format!("ellipsoid {a},{b},{c}"), d, move |s, t| {
        let (m, n) = (mu.jet(s, true), nu.jet(t, false));
        let sorted: [Jet; 3] =
            std::array::from_fn(|k| ((sq[k] - m) * (sq[k] - n) * (sq[k] / denom[k])).sqrt());
        let mut out = [Jet::default(); 3];
        for (k, &axis) in order.iter().enumerate() {
            out[axis] = sorted[k];
        }
        out
    }))
}

fn parse_number(s: &str) -> Option<f64> {
    let s = s.trim();
    if let Some(inner) = s.strip_prefix("sqrt(").and_then(|r| r.strip_suffix(')')) {
        return parse_number(inner).map(f64::sqrt);
    }
    s.parse().ok()
}

fn parse_list(s: &str, n: usize, name: &str) -> Result<Vec<f64>> {
    let vals: Option<Vec<f64>> = s.split(',').map(parse_number).collect();
    match vals {
        Some(v) if v.len() == n => Ok(v),
        _ => domain(format!("{name} expects {n} comma-separated numbers, got '{s}'")),
    }
}

/// Looks up a fixture such as `"sphere 2"`, `"cylinder sqrt(2)"`, `"plane"`,
/// `"ellipsoid 1,1.2,1.5"` or `"torus 2,1"`.
pub fn by_name(spec: &str) -> Result<ParametricSurface> {
    let spec = spec.trim();
    let (kind, args) = spec.split_once(char::is_whitespace).unwrap_or((spec, ""));
    let args: String = args.split_whitespace().collect();
    match kind {
        "sphere" => sphere(parse_list(&args, 1, "sphere")?[0]),
        "cylinder" => cylinder(parse_list(&args, 1, "cylinder")?[0]),
        "plane" if args.is_empty() => Ok(plane()),
        "ellipsoid" => {
            let v = parse_list(&args, 3, "ellipsoid")?;
            ellipsoid(v[0], v[1], v[2])
        }
        "torus" => {
            let v = parse_list(&args, 2, "torus")?;
            torus(v[0], v[1])
        }
        _ => Err(LabError::Domain(format!(
            "unknown fixture '{spec}'; known: {}",
            FIXTURE_NAMES.join(", ")
        ))),
    }
}

/// Same point set with derivatives taken by finite differences.
pub fn finite_difference(surface: &ParametricSurface, step: Option<f64>) -> Result<ParametricSurface> {
    let s = surface.clone();
    ParametricSurface::from_points(
        format!("{} (finite differences)", surface.name),
        surface.domain,
        move |u, v| s.position(u, v).into(),
        step,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_resolve() {
        for n in ["sphere 2", "cylinder sqrt(2)", "plane", "ellipsoid 1, 1.2, 1.5", "torus 2,1"] {
            assert!(by_name(n).is_ok(), "{n}");
        }
        for n in ["sphere", "sphere -1", "cone 1", "torus 1,2", "ellipsoid 1,1,2", "plane 3"] {
            assert!(by_name(n).is_err(), "{n}");
        }
    }

    #[test]
    fn points_lie_on_their_surfaces() {
        let e = ellipsoid(1.0, 1.2, 1.5).unwrap();
        let t = torus(2.0, 1.0).unwrap();
        let s = sphere(3.0).unwrap();
        for (u, v) in e.domain.grid(7) {
            let x = e.position(u, v);
            let q = x[0] * x[0] + x[1] * x[1] / 1.44 + x[2] * x[2] / 2.25;
            assert!((q - 1.0).abs() < 1e-13, "{q}");
        }
        for (u, v) in t.domain.grid(7) {
            let x = t.position(u, v);
            let rho = (x[0] * x[0] + x[1] * x[1]).sqrt();
            assert!(((rho - 2.0).powi(2) + x[2] * x[2] - 1.0).abs() < 1e-13);
        }
        for (u, v) in s.domain.grid(7) {
            assert!((s.position(u, v).norm() - 3.0).abs() < 1e-14);
        }
    }

    #[test]
    fn ellipsoid_inversion_round_trips() {
        let sq = [2.25, 1.44, 1.0];
        let c = ConformalCoordinate { sq, sign: -1.0, lo: 1.044, hi: 1.396, mid: 1.22 };
        for m in [1.05, 1.2, 1.39] {
            assert!((c.m_of(c.s_of(m)) - m).abs() < 1e-13);
        }
    }
}
