//! Cauchy–Pompeiu representation of `h / z^k` on a disc, checked numerically.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{domain, LabError, Result};
use crate::numerics::quad::gauss_legendre;
use crate::weakholo::field::FieldOnDisc;

/// Disc `|z - center| < radius` with `grid_n` radial cells for area sums.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscDomain {
    pub center: Complex64,
    pub radius: f64,
    pub grid_n: usize,
}

impl DiscDomain {
    pub fn new(center: Complex64, radius: f64, grid_n: usize) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return domain(format!("disc radius must be positive, got {radius}"));
        }
        if grid_n < 16 {
            return domain(format!("grid_n must be at least 16, got {grid_n}"));
        }
        Ok(Self { center, radius, grid_n })
    }

    /// Cell centers of a `grid_n x grid_n` Cartesian grid that fall inside the disc.
    pub fn grid_points(&self) -> Vec<Complex64> {
        let n = self.grid_n;
        let r = self.radius;
        let mut pts = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let x = r * (-1.0 + (2 * i + 1) as f64 / n as f64);
                let y = r * (-1.0 + (2 * j + 1) as f64 / n as f64);
                if x * x + y * y < r * r {
                    pts.push(self.center + Complex64::new(x, y));
                }
            }
        }
        pts
    }

    pub fn cell_area(&self) -> f64 {
        (2.0 * self.radius / self.grid_n as f64).powi(2)
    }
}

/// Both sides of the identity
/// `2 pi i h(xi) xi^-k = oint h / (z^k (z - xi)) dz + int h_zbar / (z^k (z - xi)) dz ^ dzbar`,
/// in coordinates relative to the disc center.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PompeiuBreakdown {
    pub lhs: [f64; 2],
    pub boundary: [f64; 2],
    pub area: [f64; 2],
    pub residual: f64,
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

// C-infinity step: 1 on [0, 1/2], 0 on [1, inf).
fn cutoff(r: f64) -> f64 {
    if r <= 0.5 {
        return 1.0;
    }
    if r >= 1.0 {
        return 0.0;
    }
    let t = (1.0 - r) / 0.5;
    let a = (-1.0 / t).exp();
    let b = (-1.0 / (1.0 - t)).exp();
    a / (a + b)
}

fn check_vanishing(field: &FieldOnDisc, k: u32, d: &DiscDomain) -> Result<()> {
    let m = |r: f64| -> f64 {
        (0..16)
            .map(|j| {
                let z = Complex64::from_polar(r, 2.0 * PI * j as f64 / 16.0);
                field.h(d.center + z).norm() / r.powi(k as i32 - 1)
            })
            .fold(0.0, f64::max)
    };
    let (r1, r2) = (1e-3 * d.radius, 1e-5 * d.radius);
    let (m1, m2) = (m(r1), m(r2));
    if !m2.is_finite() || (m2 > 0.5 * m1 && m2 > 1e-12) {
        return domain(format!(
            "h / z^{} does not vanish at the center (sampled {m1:e} at r = {r1:e}, {m2:e} at r = {r2:e})",
            k - 1
        ));
    }
    Ok(())
}

pub fn cauchy_pompeiu(
    field: &FieldOnDisc,
    k: u32,
    xi: Complex64,
    d: &DiscDomain,
) -> Result<PompeiuBreakdown> {
    if k == 0 {
        return domain("k must be a positive integer");
    }
    if xi.norm() == 0.0 {
        return domain("xi must be nonzero");
    }
    let r = d.radius;
    if xi.norm() >= r {
        return domain(format!("|xi| = {} must be below the radius {r}", xi.norm()));
    }
    check_vanishing(field, k, d)?;
    let c = d.center;
    let ki = k as i32;
    let i = Complex64::i();

    let lhs = 2.0 * PI * i * field.h(c + xi) * xi.powi(-ki);

    // Boundary: trapezoid on the circle, spectrally accurate for smooth h.
    let nb = (4 * d.grid_n).max(256);
    let mut boundary = Complex64::new(0.0, 0.0);
    for j in 0..nb {
        let z = Complex64::from_polar(r, 2.0 * PI * j as f64 / nb as f64);
        boundary += field.h(c + z) / (z.powi(ki) * (z - xi)) * i * z;
    }
    boundary *= 2.0 * PI / nb as f64;

    // Area term split by a smooth partition of unity around xi.
    let eps = (0.25 * r).min(0.5 * xi.norm()).min(0.5 * (r - xi.norm()));
    let u = |z: Complex64| field.h_zbar(c + z) * z.powi(-ki);

    // Polar grid about 0: midpoint in rho, trapezoid in theta.
    let nr = 2 * d.grid_n;
    let nt = 4 * d.grid_n;
    let dr = r / nr as f64;
    let dt = 2.0 * PI / nt as f64;
    let mut outer = Complex64::new(0.0, 0.0);
    for jr in 0..nr {
        let rho = (jr as f64 + 0.5) * dr;
        let mut ring = Complex64::new(0.0, 0.0);
        for jt in 0..nt {
            let z = Complex64::from_polar(rho, jt as f64 * dt);
            let w = 1.0 - cutoff((z - xi).norm() / eps);
            if w != 0.0 {
                ring += u(z) * w / (z - xi);
            }
        }
        outer += ring * rho;
    }
    outer *= dr * dt;

    // Polar Gauss about xi; the kernel 1/(z - xi) times r dr is e^{-i phi} dr.
    let (gx, gw) = gauss_legendre(24);
    let nphi = 96;
    let mut inner = Complex64::new(0.0, 0.0);
    for (a, b) in [(0.0, 0.5 * eps), (0.5 * eps, eps)] {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        for (x, w) in gx.iter().zip(&gw) {
            let rr = mid + half * x;
            let s = cutoff(rr / eps);
            let mut ring = Complex64::new(0.0, 0.0);
            for jp in 0..nphi {
                let e = Complex64::from_polar(1.0, 2.0 * PI * jp as f64 / nphi as f64);
                ring += u(xi + rr * e) * e.conj();
            }
            inner += ring * s * w * half;
        }
    }
    inner *= 2.0 * PI / nphi as f64;

    // dz ^ dzbar = -2i du dv
    let area = -2.0 * i * (outer + inner);
    let total = boundary + area;
    if !total.is_finite() || !lhs.is_finite() {
        return Err(LabError::Convergence {
            what: "Cauchy-Pompeiu quadrature".into(),
            best: f64::NAN,
            error: f64::INFINITY,
        });
    }
    Ok(PompeiuBreakdown {
        lhs: pair(lhs),
        boundary: pair(boundary),
        area: pair(area),
        residual: (lhs - total).norm(),
    })
}

pub fn cauchy_pompeiu_residual(
    field: &FieldOnDisc,
    k: u32,
    xi: Complex64,
    d: &DiscDomain,
) -> Result<f64> {
    Ok(cauchy_pompeiu(field, k, xi, d)?.residual)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::fit::loglog_fit;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn unit(n: usize) -> DiscDomain {
        DiscDomain::new(c(0.0, 0.0), 1.0, n).unwrap()
    }

    #[test]
    fn holomorphic_monomials() {
        for k in 1..=4u32 {
            let f = FieldOnDisc::parse(&format!("z^{k}")).unwrap();
            for xi in [c(0.3, 0.0), c(0.0, 0.5), c(-0.2, 0.6)] {
                let b = cauchy_pompeiu(&f, k, xi, &unit(64)).unwrap();
                assert!(b.residual < 1e-10, "k={k} xi={xi}: {b:?}");
                assert!((b.lhs[1] - 2.0 * PI).abs() < 1e-12 && b.lhs[0].abs() < 1e-12);
                assert!(b.area[0] == 0.0 && b.area[1] == 0.0);
            }
        }
    }

    #[test]
    fn area_term_of_conjugate_factor() {
        // h = z^2 zbar: the area term carries all of 2 pi i conj(xi).
        let f = FieldOnDisc::parse("z^2*zbar").unwrap();
        let xi = c(0.3, 0.2);
        let b = cauchy_pompeiu(&f, 2, xi, &unit(256)).unwrap();
        let want = 2.0 * PI * Complex64::i() * xi.conj();
        assert!((c(b.lhs[0], b.lhs[1]) - want).norm() < 1e-12);
        assert!((c(b.area[0], b.area[1]) - want).norm() < 1e-5, "{b:?}");
        assert!(b.residual < 1e-5, "{b:?}");
    }

    #[test]
    fn second_order_under_refinement() {
        let f = FieldOnDisc::parse("z^2*zbar*exp(z)").unwrap();
        let ns = [32usize, 64, 128, 256];
        let steps: Vec<f64> = ns.iter().map(|n| 1.0 / *n as f64).collect();
        let res: Vec<f64> = ns
            .iter()
            .map(|&n| cauchy_pompeiu_residual(&f, 2, c(0.3, 0.2), &unit(n)).unwrap())
            .collect();
        let fit = loglog_fit(&steps, &res);
        assert!((1.7..=2.3).contains(&fit.slope), "slope {} residuals {res:?}", fit.slope);
    }

    #[test]
    fn preconditions() {
        let f = FieldOnDisc::parse("z").unwrap();
        assert!(cauchy_pompeiu(&f, 1, c(0.0, 0.0), &unit(32)).is_err());
        assert!(cauchy_pompeiu(&f, 1, c(1.5, 0.0), &unit(32)).is_err());
        // h / z^(k-1) = 1 does not vanish
        assert!(cauchy_pompeiu(&f, 2, c(0.3, 0.0), &unit(32)).is_err());
        assert!(DiscDomain::new(c(0.0, 0.0), 1.0, 8).is_err());
    }
}
