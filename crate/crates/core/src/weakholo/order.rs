//! Vanishing order of a field at a point: log-log growth and winding number.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{domain, LabError, Result};
use crate::numerics::fit::loglog_fit;
use crate::weakholo::field::FieldOnDisc;

const CIRCLE_SAMPLES: usize = 256;
const MIN_WINDING_SAMPLES: usize = 64;
const MAX_WINDING_SAMPLES: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZeroOrderReport {
    /// Slope of `log mean|h|` against `log r`; `+inf` when `h` vanishes on a circle.
    pub order_loglog: f64,
    /// Winding number on the smallest radius.
    pub order_winding: i64,
    pub fit_residual: f64,
    pub radii_used: Vec<f64>,
}

fn mean_abs_on_circle(field: &FieldOnDisc, z0: Complex64, r: f64) -> f64 {
    (0..CIRCLE_SAMPLES)
        .map(|j| field.h(z0 + Complex64::from_polar(r, 2.0 * PI * j as f64 / CIRCLE_SAMPLES as f64)).norm())
        .sum::<f64>()
        / CIRCLE_SAMPLES as f64
}

pub fn zero_order_loglog(field: &FieldOnDisc, z0: Complex64, radii: &[f64]) -> Result<ZeroOrderReport> {
    if radii.len() < 2 {
        return domain("need at least two radii");
    }
    if radii.iter().any(|r| !(*r > 0.0)) || radii.windows(2).any(|w| w[1] >= w[0]) {
        return domain("radii must be positive and strictly decreasing");
    }
    let means: Vec<f64> = radii.iter().map(|&r| mean_abs_on_circle(field, z0, r)).collect();
    if means.contains(&0.0) {
        return Ok(ZeroOrderReport {
            order_loglog: f64::INFINITY,
            order_winding: 0,
            fit_residual: 0.0,
            radii_used: radii.to_vec(),
        });
    }
    let fit = loglog_fit(radii, &means);
    let smallest = *radii.last().expect("nonempty");
    let order_winding = zero_order_winding(field, z0, smallest)?;
    Ok(ZeroOrderReport {
        order_loglog: fit.slope,
        order_winding,
        fit_residual: fit.residual,
        radii_used: radii.to_vec(),
    })
}

/// Winding number of `h` around the positively oriented circle `|z - z0| = r`.
///
/// The phase is unwrapped sample to sample; whenever a single increment
/// reaches `pi/2` the circle is resampled at twice the resolution.
pub fn zero_order_winding(field: &FieldOnDisc, z0: Complex64, r: f64) -> Result<i64> {
    if !(r > 0.0) {
        return domain(format!("radius must be positive, got {r}"));
    }
    let mut n = MIN_WINDING_SAMPLES;
    loop {
        let vals: Vec<Complex64> = (0..n)
            .map(|j| field.h(z0 + Complex64::from_polar(r, 2.0 * PI * j as f64 / n as f64)))
            .collect();
        let scale = vals.iter().map(|v| v.norm()).fold(0.0, f64::max);
        let min_abs = vals.iter().map(|v| v.norm()).fold(f64::INFINITY, f64::min);
        if !(min_abs > 1e-12 * scale.max(1e-300)) || !min_abs.is_finite() {
            return Err(LabError::DegenerateCircle { radius: r, min_abs });
        }
        let mut total = 0.0;
        let mut aliased = false;
        for j in 0..n {
            let d = (vals[(j + 1) % n] / vals[j]).arg();
            if d.abs() >= 0.5 * PI {
                aliased = true;
                break;
            }
            total += d;
        }
        if !aliased {
            return Ok((total / (2.0 * PI)).round() as i64);
        }
        if n >= MAX_WINDING_SAMPLES {
            return Err(LabError::Convergence {
                what: "winding number phase unwrapping".into(),
                best: total / (2.0 * PI),
                error: 0.5,
            });
        }
        n *= 2;
    }
}

/// A half-integer stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct HalfInteger(pub i64);

impl HalfInteger {
    pub fn twice(self) -> i64 {
        self.0
    }

    pub fn value(self) -> f64 {
        self.0 as f64 / 2.0
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// Poincaré index of the line field `Im(P dz^2) = 0` at `z0`: minus half the winding of `P`.
pub fn direction_field_index(p_field: &FieldOnDisc, z0: Complex64, r: f64) -> Result<HalfInteger> {
    Ok(HalfInteger(-zero_order_winding(p_field, z0, r)?))
}
