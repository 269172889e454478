//! The growth bound `|h_zbar| <= phi(z) G(|h|)` checked on a grid.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{domain, Result};
use crate::weakholo::field::FieldOnDisc;
use crate::weakholo::pompeiu::DiscDomain;

pub type WeightFn = Arc<dyn Fn(Complex64) -> f64 + Send + Sync>;
pub type GrowthFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone)]
pub struct GrowthBound {
    phi: WeightFn,
    g: GrowthFn,
    pub p: f64,
    pub limsup_ratio: Option<f64>,
}

impl fmt::Debug for GrowthBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GrowthBound")
            .field("p", &self.p)
            .field("limsup_ratio", &self.limsup_ratio)
            .finish()
    }
}

/// Sample points for checking `G`.
fn g_samples() -> impl Iterator<Item = f64> {
    (0..=110).map(|j| 1e-8 * 10f64.powf(j as f64 / 10.0))
}

impl GrowthBound {
    /// Validates `p > 2`, `G >= 0` on samples in `[1e-8, 1e3]`, and, when given,
    /// `G(t)/t <= limsup_ratio` for sampled `t < 1e-3`.
    pub fn new(
        phi: impl Fn(Complex64) -> f64 + Send + Sync + 'static,
        g: impl Fn(f64) -> f64 + Send + Sync + 'static,
        p: f64,
        limsup_ratio: Option<f64>,
    ) -> Result<Self> {
        if !(p > 2.0) {
            return domain(format!("p must exceed 2, got {p}"));
        }
        for t in g_samples() {
            let gt = g(t);
            if !(gt >= 0.0) {
                return domain(format!("G({t:e}) = {gt} is negative or not finite"));
            }
            if let Some(l) = limsup_ratio {
                if t < 1e-3 && gt / t > l + 1e-9 {
                    return domain(format!("G(t)/t = {} exceeds {l} at t = {t:e}", gt / t));
                }
            }
        }
        Ok(Self { phi: Arc::new(phi), g: Arc::new(g), p, limsup_ratio })
    }

    /// `phi` constant, `G(t) = t`.
    pub fn linear(phi: f64, p: f64) -> Result<Self> {
        Self::new(move |_| phi, |t| t, p, Some(1.0))
    }

    pub fn phi(&self, z: Complex64) -> f64 {
        (self.phi)(z)
    }

    pub fn g(&self, t: f64) -> f64 {
        (self.g)(t)
    }

    /// Riemann sum of `phi^p` over the disc grid; finite values are the only
    /// available evidence for `phi` being locally `L^p`.
    pub fn phi_lp_sum(&self, d: &DiscDomain) -> f64 {
        let a = d.cell_area();
        d.grid_points().iter().map(|z| self.phi(*z).powf(self.p) * a).sum()
    }
}

/// `min over the grid of phi G(|h|) - |h_zbar|`; nonnegative certifies the bound there.
pub fn weak_bound_margin(field: &FieldOnDisc, bound: &GrowthBound, d: &DiscDomain) -> f64 {
    d.grid_points()
        .iter()
        .map(|&z| bound.phi(z) * bound.g(field.h(z).norm()) - field.h_zbar(z).norm())
        .fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half_disc() -> DiscDomain {
        DiscDomain::new(Complex64::new(0.0, 0.0), 0.5, 64).unwrap()
    }

    #[test]
    fn holomorphic_always_satisfies() {
        let f = FieldOnDisc::parse("(z-0.1)^3").unwrap();
        let b = GrowthBound::linear(0.0, 3.0).unwrap();
        assert!(weak_bound_margin(&f, &b, &half_disc()) >= 0.0);
    }

    #[test]
    fn z_exp_zbar_satisfies_with_phi_two() {
        let f = FieldOnDisc::parse("z*exp(zbar)").unwrap();
        let b = GrowthBound::linear(2.0, 3.0).unwrap();
        assert!(weak_bound_margin(&f, &b, &half_disc()) >= 0.0);
    }

    #[test]
    fn zbar_violates() {
        let f = FieldOnDisc::parse("zbar").unwrap();
        let b = GrowthBound::linear(1.0, 3.0).unwrap();
        assert!(weak_bound_margin(&f, &b, &half_disc()) < 0.0);
    }

    #[test]
    fn validation() {
        assert!(GrowthBound::linear(1.0, 2.0).is_err());
        assert!(GrowthBound::new(|_| 1.0, |t| -t, 3.0, None).is_err());
        assert!(GrowthBound::new(|_| 1.0, |t| t.sqrt(), 3.0, Some(10.0)).is_err());
        let b = GrowthBound::linear(1.0, 3.0).unwrap();
        let s = b.phi_lp_sum(&half_disc());
        assert!((s - std::f64::consts::PI * 0.25).abs() < 0.02);
    }
}
