//! Principal curvatures and derived quantities of a profile point.

use serde::Serialize;

use crate::error::{domain, LabError, Result};
use crate::rotational::ProfileState;

/// `gamma''` from the profile equation.
pub fn profile_rhs(x: f64, gamma: f64, gamma_p: f64) -> f64 {
    (1.0 + gamma_p * gamma_p) * ((0.5 * x - 1.0 / x) * gamma_p - 0.5 * gamma)
}

/// Pointwise geometry of the rotation surface at a profile point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvatureSample {
    pub x: f64,
    /// Rotational principal curvature.
    pub k1: f64,
    /// Meridian principal curvature.
    pub k2: f64,
    pub h: f64,
    /// `|Phi| = |k1 - k2| / sqrt 2`.
    pub phi_norm: f64,
    pub x_norm_sq: f64,
    /// `|X^T|^2 = (x + gamma gamma')^2 / (1 + gamma'^2)`.
    pub tangency_defect: f64,
    /// `F = x gamma - (x^2 - 4) gamma'`; umbilic points are its zeros.
    pub f_val: f64,
}

pub fn curvature_sample(s: &ProfileState) -> Result<CurvatureSample> {
    let ProfileState { x, gamma: g, gamma_p: gp } = *s;
    if !(x > 0.0) || !x.is_finite() || !g.is_finite() || !gp.is_finite() {
        return domain(format!("curvature needs x > 0 and finite data, got x = {x}"));
    }
    let w2 = 1.0 + gp * gp;
    let w = w2.sqrt();
    let gpp = profile_rhs(x, g, gp);
    let k1 = -gp / (x * w);
    let k2 = -gpp / (w2 * w);
    let h = (g - x * gp) / (2.0 * w);
    let f_val = x * g - (x * x - 4.0) * gp;
    let phi_norm = f_val.abs() / (2.0 * std::f64::consts::SQRT_2 * x * w);
    let t = x + g * gp;
    Ok(CurvatureSample {
        x,
        k1,
        k2,
        h,
        phi_norm,
        x_norm_sq: x * x + g * g,
        tangency_defect: t * t / w2,
        f_val,
    })
}

/// `|X^T| |H| / |Phi|`, the ratio controlling the weak holomorphicity bound.
pub fn ratio_field(c: &CurvatureSample) -> Result<f64> {
    if c.phi_norm <= 1e-13 * (c.k1.abs() + c.k2.abs()) {
        return Err(LabError::Umbilic { x: c.x });
    }
    Ok(c.tangency_defect.sqrt() * c.h.abs() / c.phi_norm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn sphere_radius_two() {
        for x in [0.1, 0.7, 1.5, 1.99] {
            let g = (4.0f64 - x * x).sqrt();
            let c = curvature_sample(&ProfileState { x, gamma: g, gamma_p: -x / g }).unwrap();
            assert!((c.k1 - 0.5).abs() < 1e-12);
            assert!((c.k2 - 0.5).abs() < 1e-12);
            assert!((c.h - 1.0).abs() < 1e-12);
            assert!(c.phi_norm < 1e-12);
            assert!(c.tangency_defect < 1e-20);
            assert!((c.x_norm_sq - 4.0).abs() < 1e-12);
        }
    }

    #[test]
    fn plane_is_flat() {
        let c = curvature_sample(&ProfileState { x: 0.8, gamma: 0.0, gamma_p: 0.0 }).unwrap();
        assert_eq!((c.k1, c.k2, c.h, c.phi_norm), (0.0, 0.0, 0.0, 0.0));
    }

    #[test]
    fn axis_is_outside_domain() {
        assert!(curvature_sample(&ProfileState { x: 0.0, gamma: 1.0, gamma_p: 0.0 }).is_err());
    }

    #[test]
    fn ratio_rejects_umbilic() {
        let g = 3.0f64.sqrt();
        let c = curvature_sample(&ProfileState { x: 1.0, gamma: g, gamma_p: -1.0 / g }).unwrap();
        let e = ratio_field(&c).unwrap_err();
        assert!(matches!(e, LabError::Umbilic { .. }));
    }

    proptest! {
        #[test]
        fn mean_curvature_is_trace(x in 0.01f64..5.0, g in -4.0f64..4.0, gp in -20.0f64..20.0) {
            let c = curvature_sample(&ProfileState { x, gamma: g, gamma_p: gp }).unwrap();
            prop_assert!((c.k1 + c.k2 - c.h).abs() <= 1e-10 * (1.0 + c.k1.abs() + c.k2.abs()));
            let tf = (c.k1 - c.k2).abs() / std::f64::consts::SQRT_2;
            prop_assert!((tf - c.phi_norm).abs() <= 1e-10 * (1.0 + tf));
            prop_assert!(c.tangency_defect <= c.x_norm_sq * (1.0 + 1e-12));
        }
    }
}
