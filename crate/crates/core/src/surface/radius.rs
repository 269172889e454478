//! Radii of the round spheres centered at the origin that solve the weighted
//! and the constant-`lambda` equations.

use crate::error::{LabError, Result};
use crate::surface::weight::WeightSpec;

const SCAN_MIN: f64 = 1e-3;
const SCAN_MAX: f64 = 1e3;
const SCAN_RATIO: f64 = 1.25;

/// Smallest `R` in the scan range with `F1(R^2) R^2 = 1`, to `1e-12` relative.
pub fn sphere_radius_for_weight(weight: &WeightSpec) -> Result<f64> {
    let g = |r: f64| weight.f1(r * r) * r * r - 1.0;
    let mut lo = SCAN_MIN;
    let mut g_lo = g(lo);
    let mut bracket = None;
    while lo < SCAN_MAX {
        if g_lo == 0.0 {
            return Ok(lo);
        }
        let hi = lo * SCAN_RATIO;
        let g_hi = g(hi);
        if g_lo.signum() != g_hi.signum() && g_hi.is_finite() && g_lo.is_finite() {
            bracket = Some((lo, hi, g_lo));
            break;
        }
        lo = hi;
        g_lo = g_hi;
    }
    let Some((mut a, mut b, g_a)) = bracket else {
        return Err(LabError::NoSolution(format!(
            "F1(R^2) R^2 - 1 keeps one sign for R in [{SCAN_MIN}, {SCAN_MAX}] ({})",
            weight.label
        )));
    };
    while b - a > 1e-14 * a {
        let m = 0.5 * (a + b);
        let gm = g(m);
        if gm == 0.0 {
            return Ok(m);
        }
        if gm.signum() == g_a.signum() {
            a = m;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

/// `sqrt(lambda^2 + 4) - lambda`, evaluated without cancellation.
pub fn lambda_sphere_radius(lambda: f64) -> f64 {
    let s = lambda.hypot(2.0);
    if lambda > 0.0 {
        4.0 / (s + lambda)
    } else {
        s - lambda
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn linear_weights() {
        for (c, r) in [(0.25, 2.0), (0.5, 2f64.sqrt()), (1.0, 1.0)] {
            let got = sphere_radius_for_weight(&WeightSpec::linear(c)).unwrap();
            assert!((got - r).abs() <= 1e-12 * r, "{c}: {got}");
        }
    }

    #[test]
    fn nonlinear_weight_and_failure() {
        // F1 = t: R^4 = 1
        let w = WeightSpec::new("t^2/2", |t| 0.5 * t * t, |t| t, |_| 1.0).unwrap();
        assert!((sphere_radius_for_weight(&w).unwrap() - 1.0).abs() < 1e-12);
        let e = sphere_radius_for_weight(&WeightSpec::constant(1.0)).unwrap_err();
        assert!(matches!(e, LabError::NoSolution(_)));
        assert!(sphere_radius_for_weight(&WeightSpec::linear(-1.0)).is_err());
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(lambda_sphere_radius(0.0), 2.0);
        assert!((lambda_sphere_radius(1.5) - 1.0).abs() < 1e-15);
        assert!((lambda_sphere_radius(-1.5) - 4.0).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn lambda_radius_identity(lambda in -1e3..1e3f64) {
            let r = lambda_sphere_radius(lambda);
            prop_assert!(r > 0.0);
            // R + 2 lambda cancels for large negative lambda; scale by the operand size.
            let scale = 4f64.max(r * (r + 2.0 * lambda.abs()));
            prop_assert!((r * (r + 2.0 * lambda) - 4.0).abs() <= 1e-12 * scale);
        }

        #[test]
        fn constant_f1_gives_inverse_sqrt(c in 1e-5..1e5f64) {
            let r = sphere_radius_for_weight(&WeightSpec::linear(c)).unwrap();
            let want = 1.0 / c.sqrt();
            prop_assert!((r - want).abs() <= 1e-12 * want);
        }
    }
}
