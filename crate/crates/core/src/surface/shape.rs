//! First and second fundamental forms, curvatures and the shrinker residuals.

use nalgebra::Vector3;
use serde::Serialize;

use crate::error::{LabError, Result};
use crate::surface::chart::{Derivs, ParametricSurface};
use crate::surface::weight::WeightSpec;

/// Relative tolerance for treating a chart point as isothermal.
pub const ISOTHERMAL_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShapeSample {
    pub g11: f64,
    pub g12: f64,
    pub g22: f64,
    pub h11: f64,
    pub h12: f64,
    pub h22: f64,
    /// Trace of the shape operator; `-2/R` on the outward sphere of radius `R`.
    pub h: f64,
    pub k: f64,
    pub phi_norm: f64,
    pub nu: [f64; 3],
    pub x: [f64; 3],
    /// Conformal factor `g = alpha |dz|^2` when the chart is isothermal here.
    pub alpha: Option<f64>,
}

impl ShapeSample {
    pub fn from_derivs(d: &Derivs, u: f64, v: f64) -> Result<Self> {
        let (g11, g12, g22) = (d.xu.dot(&d.xu), d.xu.dot(&d.xv), d.xv.dot(&d.xv));
        let det = g11 * g22 - g12 * g12;
        if !(det > 1e-12 * (g11 + g22).powi(2)) {
            return Err(LabError::Immersion { u, v, gram: det });
        }
        let nu: Vector3<f64> = d.xu.cross(&d.xv).normalize();
        let (h11, h12, h22) = (d.xuu.dot(&nu), d.xuv.dot(&nu), d.xvv.dot(&nu));
        let h = (g22 * h11 - 2.0 * g12 * h12 + g11 * h22) / det;
        let k = (h11 * h22 - h12 * h12) / det;
        let phi_norm = (0.5 * (h * h - 4.0 * k)).max(0.0).sqrt();
        let defect = (g11 - g22).abs() + 2.0 * g12.abs();
        let alpha = (defect < ISOTHERMAL_TOL * (g11 + g22)).then_some(0.5 * (g11 + g22));
        Ok(Self {
            g11,
            g12,
            g22,
            h11,
            h12,
            h22,
            h,
            k,
            phi_norm,
            nu: nu.into(),
            x: d.x.into(),
            alpha,
        })
    }

    pub fn x_dot_nu(&self) -> f64 {
        Vector3::from(self.x).dot(&Vector3::from(self.nu))
    }

    pub fn x_norm_sq(&self) -> f64 {
        Vector3::from(self.x).norm_squared()
    }

    /// Principal curvatures, smaller first.
    pub fn principal(&self) -> (f64, f64) {
        let r = (0.25 * self.h * self.h - self.k).max(0.0).sqrt();
        (0.5 * self.h - r, 0.5 * self.h + r)
    }
}

pub fn shape_sample(surface: &ParametricSurface, u: f64, v: f64) -> Result<ShapeSample> {
    ShapeSample::from_derivs(&surface.derivs(u, v)?, u, v)
}

/// `H + <X, nu>/2`; changes sign, not size, when the orientation flips.
pub fn shrinker_residual(surface: &ParametricSurface, u: f64, v: f64) -> Result<f64> {
    let s = shape_sample(surface, u, v)?;
    Ok(s.h + 0.5 * s.x_dot_nu())
}

/// `lambda - H - <X, nu>/2`.
pub fn lambda_residual(surface: &ParametricSurface, u: f64, v: f64, lambda: f64) -> Result<f64> {
    Ok(lambda - shrinker_residual(surface, u, v)?)
}

/// `H_f = H + 2 F1(|X|^2) <X, nu>`.
pub fn weighted_mean_curvature(
    surface: &ParametricSurface,
    weight: &WeightSpec,
    u: f64,
    v: f64,
) -> Result<f64> {
    let s = shape_sample(surface, u, v)?;
    Ok(weighted_h(&s, weight))
}

pub(crate) fn weighted_h(s: &ShapeSample, weight: &WeightSpec) -> f64 {
    s.h + 2.0 * weight.f1(s.x_norm_sq()) * s.x_dot_nu()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::fixtures::{by_name, cylinder, plane, sphere};
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::f64::consts::SQRT_2;

    #[test]
    fn sphere_of_radius_two() {
        let s = sphere(2.0).unwrap();
        for (u, v) in s.domain.grid(5) {
            let a = shape_sample(&s, u, v).unwrap();
            assert_relative_eq!(a.h, -1.0, epsilon = 1e-12);
            assert_relative_eq!(a.k, 0.25, epsilon = 1e-12);
            assert!(a.phi_norm < 1e-6);
            assert!(a.alpha.is_some());
            assert!(shrinker_residual(&s, u, v).unwrap().abs() < 1e-10);
            assert!(lambda_residual(&s, u, v, 0.0).unwrap().abs() < 1e-10);
        }
    }

    #[test]
    fn plane_and_cylinder() {
        let p = plane();
        let a = shape_sample(&p, 0.3, -1.1).unwrap();
        assert_eq!((a.h, a.k, a.phi_norm), (0.0, 0.0, 0.0));
        assert_eq!(shrinker_residual(&p, 0.3, -1.1).unwrap(), 0.0);
        assert_eq!(lambda_residual(&p, 0.3, -1.1, 0.0).unwrap(), 0.0);

        let c = cylinder(SQRT_2).unwrap();
        let a = shape_sample(&c, 0.7, 0.4).unwrap();
        let (k1, k2) = a.principal();
        assert_relative_eq!(k1, -1.0 / SQRT_2, epsilon = 1e-12);
        assert_relative_eq!(k2, 0.0, epsilon = 1e-12);
        assert_relative_eq!(a.phi_norm, 0.5, epsilon = 1e-12);
        assert!(shrinker_residual(&c, 0.7, 0.4).unwrap().abs() < 1e-10);
    }

    #[test]
    fn unit_sphere_and_lambda() {
        let s = sphere(1.0).unwrap();
        assert_relative_eq!(shrinker_residual(&s, 0.2, 0.5).unwrap(), -1.5, epsilon = 1e-12);
        assert!(lambda_residual(&s, 0.2, 0.5, -1.5).unwrap().abs() < 1e-12);
        for r in [0.5, 3.0, 7.0] {
            let s = sphere(r).unwrap();
            let lam = -2.0 / r + r / 2.0;
            assert!(lambda_residual(&s, -0.4, 1.3, lam).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn weighted_mean_curvature_examples() {
        let s2 = sphere(2.0).unwrap();
        assert!(weighted_mean_curvature(&s2, &WeightSpec::linear(0.25), 0.1, 0.2).unwrap().abs() < 1e-12);
        let h = shape_sample(&s2, 0.1, 0.2).unwrap().h;
        assert_eq!(weighted_mean_curvature(&s2, &WeightSpec::constant(5.0), 0.1, 0.2).unwrap(), h);
        // unit sphere, F = t/2: H = -2, 2 * 1/2 * <X, nu> = 1
        let s1 = sphere(1.0).unwrap();
        assert_relative_eq!(
            weighted_mean_curvature(&s1, &WeightSpec::linear(0.5), 0.1, 0.2).unwrap(),
            -1.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn finite_difference_surface_agrees() {
        let e = by_name("ellipsoid 1,1.2,1.5").unwrap();
        let f = crate::surface::fixtures::finite_difference(&e, None).unwrap();
        for (u, v) in e.domain.grid(4) {
            let (a, b) = (shape_sample(&e, u, v).unwrap(), shape_sample(&f, u, v).unwrap());
            assert_relative_eq!(a.h, b.h, max_relative = 1e-5);
            assert_relative_eq!(a.k, b.k, max_relative = 1e-5);
        }
    }

    #[test]
    fn degenerate_chart_is_rejected() {
        let d = crate::surface::chart::ChartDomain::new((-1.0, 1.0), (-1.0, 1.0)).unwrap();
        let s = ParametricSurface::from_jets("line", d, |u, _| {
            use crate::numerics::jet::Jet;
            [Jet::var_u(u), Jet::constant(0.0), Jet::constant(0.0)]
        });
        assert!(matches!(shape_sample(&s, 0.0, 0.0), Err(LabError::Immersion { .. })));
        assert!(shape_sample(&plane(), 5.0, 0.0).is_err());
    }

    const FIXTURES: [&str; 5] = ["sphere 2", "cylinder sqrt(2)", "plane", "ellipsoid 1,1.2,1.5", "torus 2,1"];

    proptest! {
        #[test]
        fn phi_norm_matches_curvatures(idx in 0usize..5, a in 0.0..1.0f64, b in 0.0..1.0f64) {
            let s = by_name(FIXTURES[idx]).unwrap();
            let u = s.domain.u.0 + a * (s.domain.u.1 - s.domain.u.0);
            let v = s.domain.v.0 + b * (s.domain.v.1 - s.domain.v.0);
            let x = shape_sample(&s, u, v).unwrap();
            let want = 0.5 * (x.h * x.h - 4.0 * x.k);
            let scale = x.h * x.h + x.k.abs() + 1e-300;
            prop_assert!((x.phi_norm * x.phi_norm - want).abs() <= 1e-10 * scale);
            prop_assert!(x.alpha.is_some());
            let alpha = x.alpha.unwrap();
            prop_assert!((x.g11 - x.g22).abs() < 1e-8 * alpha && x.g12.abs() < 1e-8 * alpha);
        }

        #[test]
        fn swapping_the_chart_flips_only_the_sign(idx in 0usize..5, a in 0.0..1.0f64, b in 0.0..1.0f64) {
            let s = by_name(FIXTURES[idx]).unwrap();
            let t = s.swapped();
            let u = s.domain.u.0 + a * (s.domain.u.1 - s.domain.u.0);
            let v = s.domain.v.0 + b * (s.domain.v.1 - s.domain.v.0);
            let r1 = shrinker_residual(&s, u, v).unwrap();
            let r2 = shrinker_residual(&t, v, u).unwrap();
            prop_assert!((r1 + r2).abs() <= 1e-12 * (1.0 + r1.abs()));
        }
    }
}
