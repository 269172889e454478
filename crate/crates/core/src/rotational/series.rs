//! Power series of the profile near the axis, `gamma(x) = sum a_n x^n` with
//! `gamma(0) = b`, `gamma'(0) = 0`.

use crate::error::{domain, Result};
use crate::rotational::ProfileState;

/// Below this abscissa profiles are evaluated from the series.
pub const SERIES_SWITCH_X: f64 = 1e-2;
/// Largest abscissa at which [`taylor_profile`] is trusted.
pub const TAYLOR_TRUST_RADIUS: f64 = 0.25;
pub const DEFAULT_SERIES_ORDER: usize = 14;

fn at(a: &[f64], i: isize) -> f64 {
    if i < 0 {
        0.0
    } else {
        a.get(i as usize).copied().unwrap_or(0.0)
    }
}

// Coefficients of gamma'.
fn deriv(a: &[f64], len: usize) -> Vec<f64> {
    (0..len).map(|i| (i as f64 + 1.0) * at(a, i as isize + 1)).collect()
}

/// Coefficient of `x^k` in `(1 + gamma'^2) ((x^2/2 - 1) gamma' - x gamma / 2)`.
fn rhs_coeff(a: &[f64], d: &[f64], k: usize) -> f64 {
    let inner = |m: usize| {
        let m = m as isize;
        0.5 * at(d, m - 2) - at(d, m) - 0.5 * at(a, m - 1)
    };
    let mut r = inner(k);
    for j in 0..=k {
        let g2: f64 = (0..=j).map(|i| at(d, i as isize) * at(d, (j - i) as isize)).sum();
        if g2 != 0.0 {
            r += g2 * inner(k - j);
        }
    }
    r
}

/// Even coefficients `a_0, a_2, ..., a_order` of the axis series with `a_0 = b`.
pub fn series_coefficients(b: f64, order: usize) -> Result<Vec<f64>> {
    if order < 4 || order % 2 == 1 {
        return domain(format!("series order must be even and at least 4, got {order}"));
    }
    Ok(all_coefficients(b, order)?.into_iter().step_by(2).collect())
}

/// All coefficients `a_0 ..= a_order` (odd ones are zero).
///
/// The equation multiplied by `x` reads `x gamma'' + gamma' = R + gamma'` with
/// `R` as in `rhs_coeff`; matching `x^(n-1)` gives `n^2 a_n = R_(n-1)` where
/// `R_(n-1)` only involves `a_0 .. a_(n-1)`.
pub fn all_coefficients(b: f64, order: usize) -> Result<Vec<f64>> {
    if !b.is_finite() {
        return domain("axis height b must be finite");
    }
    if order < 2 {
        return domain("series order must be at least 2");
    }
    let mut a = vec![0.0; order + 1];
    a[0] = b;
    for n in 1..=order {
        let d = deriv(&a[..n], n);
        let r = rhs_coeff(&a[..n], &d, n - 1);
        a[n] = r / (n * n) as f64;
    }
    Ok(a)
}

/// Truncated series with evaluation helpers.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileSeries {
    pub b: f64,
    pub coeffs: Vec<f64>,
}

impl ProfileSeries {
    pub fn new(b: f64, order: usize) -> Result<Self> {
        Ok(Self { b, coeffs: all_coefficients(b, order)? })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn gamma(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    pub fn gamma_p(&self, x: f64) -> f64 {
        let n = self.coeffs.len();
        (1..n).rev().fold(0.0, |acc, i| acc * x + i as f64 * self.coeffs[i])
    }

    pub fn gamma_pp(&self, x: f64) -> f64 {
        let n = self.coeffs.len();
        (2..n)
            .rev()
            .fold(0.0, |acc, i| acc * x + (i * (i - 1)) as f64 * self.coeffs[i])
    }

    pub fn state(&self, x: f64) -> ProfileState {
        ProfileState { x, gamma: self.gamma(x), gamma_p: self.gamma_p(x) }
    }

    /// Power-series coefficients of `F = x gamma - (x^2 - 4) gamma'`.
    pub fn f_coefficients(&self) -> Vec<f64> {
        let a = &self.coeffs;
        let d = deriv(a, a.len());
        (0..a.len() + 2)
            .map(|k| {
                let k = k as isize;
                at(a, k - 1) - at(&d, k - 2) + 4.0 * at(&d, k)
            })
            .collect()
    }

    /// Power-series coefficients of `x + gamma gamma'`.
    pub fn tangency_coefficients(&self) -> Vec<f64> {
        let a = &self.coeffs;
        let d = deriv(a, a.len());
        let len = 2 * a.len();
        (0..len)
            .map(|k| {
                let mut c: f64 = (0..=k).map(|i| at(a, i as isize) * at(&d, (k - i) as isize)).sum();
                if k == 1 {
                    c += 1.0;
                }
                c
            })
            .collect()
    }

    /// Coefficients `c_k` of `x gamma'' - R` for the truncated polynomial; the
    /// residual of the second-order equation is `sum c_k x^(k-1)`.
    ///
    /// Forming the residual coefficient-wise keeps the cancellation of the
    /// matched orders exact up to rounding of each coefficient.
    pub fn ode_residual_coefficients(&self) -> Vec<f64> {
        let a = &self.coeffs;
        let len = 3 * a.len() + 2;
        let d = deriv(a, len);
        (0..len)
            .map(|k| {
                let lhs = (k as f64 + 1.0) * k as f64 * at(a, k as isize + 1);
                // x gamma'' + gamma' - gamma' : the -gamma' sits inside R.
                lhs - rhs_coeff(a, &d, k)
            })
            .collect()
    }

    /// `gamma'' - (1 + gamma'^2)((x/2 - 1/x) gamma' - gamma/2)` at `x > 0`.
    pub fn ode_residual(&self, x: f64) -> f64 {
        let c = self.ode_residual_coefficients();
        // c_0 is identically zero (gamma'(0) = 0); start from x^0.
        c.iter().skip(1).rev().fold(0.0, |acc, ck| acc * x + ck)
    }
}

/// Profile state from the order-`order` series at `0 <= x <= TAYLOR_TRUST_RADIUS`.
pub fn taylor_profile(b: f64, x: f64, order: usize) -> Result<ProfileState> {
    if !(0.0..=TAYLOR_TRUST_RADIUS).contains(&x) {
        return domain(format!(
            "taylor_profile needs 0 <= x <= {TAYLOR_TRUST_RADIUS}, got {x}; use the integrator beyond it"
        ));
    }
    Ok(ProfileSeries::new(b, order)?.state(x))
}

/// Fourth coefficient as printed in the reference closed form, kept for audit reports.
pub fn reference_a4(b: f64) -> f64 {
    -(b / 256.0) * (3.0 + b * b / 4.0)
}

/// Cubic coefficient of `F` as printed in the reference closed form.
pub fn reference_f_cubic(b: f64) -> f64 {
    -(b / 16.0) * (1.0 + b * b / 4.0)
}

/// Closed forms implied by the recursion.
pub fn derived_a4(b: f64) -> f64 {
    -(b / 256.0) * (1.0 + b * b / 4.0)
}

pub fn derived_f_cubic(b: f64) -> f64 {
    (b / 16.0) * (1.0 - b * b / 4.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::fit::loglog_fit;
    use proptest::prelude::*;

    #[test]
    fn frozen_coefficients_b1() {
        // Independent values from a separate power-series solver.
        let a = series_coefficients(1.0, 8).unwrap();
        assert_eq!(a.len(), 5);
        assert_eq!(a[0], 1.0);
        assert!((a[1] + 0.125).abs() < 1e-15);
        assert!((a[2] + 0.0048828125).abs() < 1e-15);
        assert!((a[3] + 3.458_658_854_166_666_7e-4).abs() < 1e-15);
        assert!((a[4] + 3.073_612_848_917_643e-5).abs() < 1e-15);
    }

    #[test]
    fn sphere_is_binomial_series() {
        // 2 sqrt(1 - x^2/4) = 2 - x^2/4 - x^4/64 - x^6/512 - 5 x^8/16384
        let a = all_coefficients(2.0, 8).unwrap();
        let want = [2.0, 0.0, -0.25, 0.0, -1.0 / 64.0, 0.0, -1.0 / 512.0, 0.0, -5.0 / 16384.0];
        for (x, y) in a.iter().zip(want) {
            assert!((x - y).abs() < 1e-15, "{x} vs {y}");
        }
    }

    #[test]
    fn plane_series_vanishes() {
        assert!(series_coefficients(0.0, 10).unwrap().iter().all(|c| *c == 0.0));
    }

    #[test]
    fn a4_and_f_cubic_closed_forms() {
        for b in [0.3, 1.0, 2.0, 3.0, 5.5] {
            let s = ProfileSeries::new(b, 10).unwrap();
            assert!((s.coeffs[4] - derived_a4(b)).abs() < 1e-14 * (1.0 + b.powi(3)));
            let f = s.f_coefficients();
            assert!(f[1].abs() < 1e-14 * (1.0 + b));
            assert!((f[3] - derived_f_cubic(b)).abs() < 1e-13 * (1.0 + b.powi(3)));
            let t = s.tangency_coefficients();
            assert!((t[1] - (1.0 - b * b / 4.0)).abs() < 1e-14 * (1.0 + b * b));
        }
        // reference closed forms disagree unless b = 0
        assert!((reference_a4(1.0) - derived_a4(1.0)).abs() > 1e-3);
    }

    #[test]
    fn residual_decays_like_x_to_the_order() {
        for b in [0.5, 1.0, 3.0] {
            let s = ProfileSeries::new(b, 8).unwrap();
            let xs: Vec<f64> = (0..9).map(|j| 1e-3 * 10f64.powf(j as f64 / 4.0)).collect();
            let rs: Vec<f64> = xs.iter().map(|x| s.ode_residual(*x).abs()).collect();
            let fit = loglog_fit(&xs, &rs);
            assert!(fit.slope >= 6.8, "b = {b}: slope {}", fit.slope);
        }
    }

    #[test]
    fn taylor_profile_trust_region() {
        assert!(taylor_profile(1.0, 0.3, 14).is_err());
        assert_eq!(
            taylor_profile(1.7, 0.0, 14).unwrap(),
            ProfileState { x: 0.0, gamma: 1.7, gamma_p: 0.0 }
        );
        assert!(series_coefficients(1.0, 2).is_err());
        assert!(series_coefficients(1.0, 7).is_err());
        let s = taylor_profile(2.0, 0.1, 14).unwrap();
        assert!((s.gamma - (4.0f64 - 0.01).sqrt()).abs() < 1e-14);
    }

    proptest! {
        #[test]
        fn odd_coefficients_vanish(b in -6.0f64..6.0, order in 2usize..24) {
            let a = all_coefficients(b, order).unwrap();
            for (i, c) in a.iter().enumerate() {
                if i % 2 == 1 {
                    prop_assert_eq!(*c, 0.0);
                }
            }
        }

        #[test]
        fn series_is_odd_in_b(b in -6.0f64..6.0) {
            let p = series_coefficients(b, 12).unwrap();
            let m = series_coefficients(-b, 12).unwrap();
            for (x, y) in p.iter().zip(m) {
                prop_assert!((x + y).abs() <= 1e-15 * x.abs().max(1.0));
            }
        }
    }
}
