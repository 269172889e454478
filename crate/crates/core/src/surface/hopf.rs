//! Hopf differential `P dz^2`, its weighted version `Q = exp(-f/2) P`, and the
//! identity for `Q_zbar` on isothermal charts.
//!
//! In codimension one the normal is automatically parallel and `<H_f, nu>`
//! is the scalar `H_f`. With `z = u + iv`, `g = alpha |dz|^2` and a radial
//! weight `f = F(|X|^2)`:
//!
//! ```text
//! Q_zbar = (alpha/4) e^{-F/2} [ (H_f)_z + (F1 H_f - 2 (2 F2 + F1^2) <X, nu>) <X, X_z> ]
//! ```
//!
//! `(H_f)_z` is taken by centered differences at the same step as `Q_zbar`.
//! For `F = 0` this is the Codazzi equation `P_zbar = (alpha/4) H_z`.

use nalgebra::Vector3;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{domain, LabError, Result};
use crate::surface::chart::{ParametricSurface, FD_STEP_FRACTION};
use crate::surface::shape::{shape_sample, weighted_h, ShapeSample};
use crate::surface::weight::WeightSpec;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HopfSample {
    pub p: Complex64,
    pub q: Complex64,
    pub f_val: f64,
    pub alpha: f64,
}

fn require_isothermal(s: &ShapeSample, u: f64, v: f64) -> Result<f64> {
    s.alpha.ok_or_else(|| LabError::NotIsothermal {
        u,
        v,
        defect: ((s.g11 - s.g22).abs() + 2.0 * s.g12.abs()) / (s.g11 + s.g22),
    })
}

fn hopf_from_shape(s: &ShapeSample, weight: &WeightSpec, u: f64, v: f64) -> Result<HopfSample> {
    let alpha = require_isothermal(s, u, v)?;
    let p = 0.25 * Complex64::new(s.h11 - s.h22, -2.0 * s.h12);
    let f_val = weight.f(s.x_norm_sq());
    Ok(HopfSample { p, q: (-0.5 * f_val).exp() * p, f_val, alpha })
}

pub fn hopf_differential(
    surface: &ParametricSurface,
    weight: &WeightSpec,
    u: f64,
    v: f64,
) -> Result<HopfSample> {
    hopf_from_shape(&shape_sample(surface, u, v)?, weight, u, v)
}

/// Relative defect of `|Phi|^2 = (8/alpha^2) |P|^2` at a point.
pub fn hopf_norm_defect(surface: &ParametricSurface, u: f64, v: f64) -> Result<f64> {
    let s = shape_sample(surface, u, v)?;
    let hs = hopf_from_shape(&s, &WeightSpec::constant(0.0), u, v)?;
    let lhs = s.phi_norm * s.phi_norm;
    let rhs = 8.0 * hs.p.norm_sqr() / (hs.alpha * hs.alpha);
    let scale = s.h * s.h + s.k.abs();
    Ok(if scale == 0.0 { (lhs - rhs).abs() } else { (lhs - rhs).abs() / scale })
}

/// Both sides of the `Q_zbar` identity at one step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QzbarComparison {
    pub step: f64,
    pub finite_difference: Complex64,
    pub closed_form: Complex64,
    pub residual: f64,
}

fn compare_at(
    surface: &ParametricSurface,
    weight: &WeightSpec,
    u: f64,
    v: f64,
    h: f64,
) -> Result<(QzbarComparison, f64)> {
    let eval = |a: f64, b: f64| -> Result<(Complex64, f64)> {
        let s = shape_sample(surface, a, b)?;
        Ok((hopf_from_shape(&s, weight, a, b)?.q, weighted_h(&s, weight)))
    };
    let (qe, he) = eval(u + h, v)?;
    let (qw, hw) = eval(u - h, v)?;
    let (qn, hn) = eval(u, v + h)?;
    let (qs, hs) = eval(u, v - h)?;
    let i = Complex64::i();
    let q_zbar = 0.5 * ((qe - qw) + i * (qn - qs)) / (2.0 * h);
    let hf_z = 0.5 * (Complex64::from(he - hw) - i * (hn - hs)) / (2.0 * h);

    let d = surface.derivs(u, v)?;
    let s = shape_sample(surface, u, v)?;
    let alpha = require_isothermal(&s, u, v)?;
    let t = s.x_norm_sq();
    let (f, f1, f2) = (weight.f(t), weight.f1(t), weight.f2(t));
    let hf = weighted_h(&s, weight);
    let x_nu = s.x_dot_nu();
    let x: Vector3<f64> = d.x;
    let x_xz = 0.5 * Complex64::new(x.dot(&d.xu), -x.dot(&d.xv));
    let bracket = hf_z + (f1 * hf - 2.0 * (2.0 * f2 + f1 * f1) * x_nu) * x_xz;
    let closed = 0.25 * alpha * (-0.5 * f).exp() * bracket;

    let scale = 0.25 * alpha * (-0.5 * f).exp() * (s.h.abs() + s.phi_norm + (2.0 * f1 * x_nu).abs())
        / surface.domain.scale();
    Ok((
        QzbarComparison {
            step: h,
            finite_difference: q_zbar,
            closed_form: closed,
            residual: (q_zbar - closed).norm(),
        },
        scale,
    ))
}

/// Compares `Q_zbar` by centered differences at `fd_step` with the closed form.
///
/// The comparison is repeated at `fd_step / 2`; if halving the step makes the
/// residual grow by more than `1e-8` of the natural derivative scale, roundoff
/// dominates and `StepTooSmall` is returned.
pub fn qzbar_identity(
    surface: &ParametricSurface,
    weight: &WeightSpec,
    u: f64,
    v: f64,
    fd_step: f64,
) -> Result<QzbarComparison> {
    if !(fd_step > 0.0) || !fd_step.is_finite() {
        return domain(format!("finite-difference step must be positive, got {fd_step}"));
    }
    let (coarse, scale) = compare_at(surface, weight, u, v, fd_step)?;
    let (fine, _) = compare_at(surface, weight, u, v, 0.5 * fd_step)?;
    if fine.residual > coarse.residual && fine.residual > 1e-8 * scale {
        return Err(LabError::StepTooSmall { step: fd_step });
    }
    Ok(coarse)
}

pub fn qzbar_identity_residual(
    surface: &ParametricSurface,
    weight: &WeightSpec,
    u: f64,
    v: f64,
    fd_step: f64,
) -> Result<f64> {
    Ok(qzbar_identity(surface, weight, u, v, fd_step)?.residual)
}

/// `|P_zbar - (alpha/4) H_z|`, the unweighted case.
pub fn codazzi_residual(surface: &ParametricSurface, u: f64, v: f64, fd_step: f64) -> Result<f64> {
    qzbar_identity_residual(surface, &WeightSpec::constant(0.0), u, v, fd_step)
}

/// Default step for the identity checks on a surface.
pub fn default_step(surface: &ParametricSurface) -> f64 {
    FD_STEP_FRACTION * surface.domain.scale()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::fit::loglog_fit;
    use crate::surface::chart::ChartDomain;
    use crate::surface::fixtures::{by_name, cylinder, ellipsoid, sphere};
    use crate::numerics::jet::Jet;
    use std::f64::consts::SQRT_2;

    fn generic_point(s: &ParametricSurface) -> (f64, f64) {
        let d = s.domain;
        (d.u.0 + 0.37 * (d.u.1 - d.u.0), d.v.0 + 0.61 * (d.v.1 - d.v.0))
    }

    #[test]
    fn umbilic_sphere_has_no_hopf_differential() {
        let s = sphere(2.0).unwrap();
        for (u, v) in s.domain.grid(4) {
            let h = hopf_differential(&s, &WeightSpec::linear(0.25), u, v).unwrap();
            assert!(h.p.norm() < 1e-12 * h.alpha);
        }
    }

    #[test]
    fn cylinder_hopf_matches_phi_norm() {
        let c = cylinder(SQRT_2).unwrap();
        let h = hopf_differential(&c, &WeightSpec::constant(0.0), 0.2, 0.3).unwrap();
        assert!((h.p.norm() - h.alpha / (2.0 * SQRT_2) * 0.5).abs() < 1e-14);
        let w = hopf_differential(&c, &WeightSpec::linear(0.25), 0.2, 0.3).unwrap();
        assert!((w.q.norm() - (-0.5 * w.f_val).exp() * w.p.norm()).abs() < 1e-15);
    }

    #[test]
    fn ellipsoid_is_not_umbilic_inside_the_chart() {
        let e = ellipsoid(1.0, 1.2, 1.5).unwrap();
        for (u, v) in e.domain.grid(6) {
            assert!(hopf_differential(&e, &WeightSpec::constant(0.0), u, v).unwrap().p.norm() > 1e-3);
        }
    }

    #[test]
    fn hopf_norm_identity_on_every_fixture() {
        for name in ["sphere 2", "cylinder sqrt(2)", "plane", "ellipsoid 1,1.2,1.5", "torus 2,1"] {
            let s = by_name(name).unwrap();
            for (u, v) in s.domain.grid(10) {
                assert!(hopf_norm_defect(&s, u, v).unwrap() < 1e-8, "{name} at ({u}, {v})");
            }
        }
    }

    #[test]
    fn non_isothermal_chart_is_rejected() {
        let d = ChartDomain::new((-1.0, 1.0), (-1.0, 1.0)).unwrap();
        let s = ParametricSurface::from_jets("stretched plane", d, |u, v| {
            [Jet::var_u(u) * 2.0, Jet::var_v(v), Jet::constant(0.0)]
        });
        let e = hopf_differential(&s, &WeightSpec::constant(0.0), 0.0, 0.0).unwrap_err();
        assert!(matches!(e, LabError::NotIsothermal { .. }));
    }

    #[test]
    fn qzbar_vanishes_on_round_spheres() {
        for r in [1.0, 2.0, 3.5] {
            let s = sphere(r).unwrap();
            for w in [WeightSpec::linear(0.25), WeightSpec::new("t^2", |t| t * t, |t| 2.0 * t, |_| 2.0).unwrap()] {
                let c = qzbar_identity(&s, &w, 0.3, -0.7, default_step(&s)).unwrap();
                assert!(c.residual < 1e-8, "{c:?}");
            }
        }
    }

    #[test]
    fn qzbar_on_ellipsoid_and_torus() {
        let w = WeightSpec::linear(0.25);
        for name in ["ellipsoid 1,1.2,1.5", "torus 2,1"] {
            let s = by_name(name).unwrap();
            let (u, v) = generic_point(&s);
            let c = qzbar_identity(&s, &w, u, v, default_step(&s)).unwrap();
            assert!(c.residual < 1e-5, "{name}: {c:?}");
            assert!(c.closed_form.norm() > 1e-3, "{name}: identity is not trivial here");
            assert!(codazzi_residual(&s, u, v, default_step(&s)).unwrap() < 1e-5);
        }
    }

    #[test]
    fn qzbar_residual_is_second_order() {
        let s = ellipsoid(1.0, 1.2, 1.5).unwrap();
        let (u, v) = generic_point(&s);
        let steps: Vec<f64> = [2e-2, 1e-2, 5e-3].iter().map(|f| f * s.domain.scale()).collect();
        let res: Vec<f64> = steps
            .iter()
            .map(|&h| qzbar_identity_residual(&s, &WeightSpec::linear(0.25), u, v, h).unwrap())
            .collect();
        let fit = loglog_fit(&steps, &res);
        assert!((fit.slope - 2.0).abs() < 0.3, "slope {} from {res:?}", fit.slope);
    }

    #[test]
    fn tiny_step_is_reported() {
        let s = ellipsoid(1.0, 1.2, 1.5).unwrap();
        let (u, v) = generic_point(&s);
        let e = qzbar_identity(&s, &WeightSpec::linear(0.25), u, v, 1e-11).unwrap_err();
        assert!(matches!(e, LabError::StepTooSmall { .. }), "{e:?}");
        assert!(qzbar_identity(&s, &WeightSpec::linear(0.25), u, v, 0.0).is_err());
    }
}
