//! Radial weights `f(X) = F(|X|^2)` with their first two derivatives.

use std::fmt;
use std::sync::Arc;

use crate::error::{domain, Result};

pub type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone)]
pub struct WeightSpec {
    pub label: String,
    f: ScalarFn,
    f1: ScalarFn,
    f2: ScalarFn,
}

impl fmt::Debug for WeightSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeightSpec({})", self.label)
    }
}

/// Arguments at which weights are sanity-checked.
fn sample_args() -> impl Iterator<Item = f64> {
    (0..=40).map(|j| 0.05 * 1.2f64.powi(j))
}

impl WeightSpec {
    /// Checked constructor; see [`WeightSpec::check_consistency`].
    pub fn new(
        label: impl Into<String>,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        f1: impl Fn(f64) -> f64 + Send + Sync + 'static,
        f2: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        let w = Self { label: label.into(), f: Arc::new(f), f1: Arc::new(f1), f2: Arc::new(f2) };
        w.check_consistency()?;
        Ok(w)
    }

    /// `F(t) = c t`.
    pub fn linear(c: f64) -> Self {
        Self {
            label: format!("F(t) = {c} t"),
            f: Arc::new(move |t| c * t),
            f1: Arc::new(move |_| c),
            f2: Arc::new(|_| 0.0),
        }
    }

    /// `F(t) = c`; the unweighted case when `c = 0`.
    pub fn constant(c: f64) -> Self {
        Self {
            label: format!("F(t) = {c}"),
            f: Arc::new(move |_| c),
            f1: Arc::new(|_| 0.0),
            f2: Arc::new(|_| 0.0),
        }
    }

    pub fn f(&self, t: f64) -> f64 {
        (self.f)(t)
    }

    pub fn f1(&self, t: f64) -> f64 {
        (self.f1)(t)
    }

    pub fn f2(&self, t: f64) -> f64 {
        (self.f2)(t)
    }

    /// Finite values on sample arguments in `[0.05, 75]`, and `F1`, `F2` matching
    /// centered differences of `F`, `F1` to `1e-6` relative.
    pub fn check_consistency(&self) -> Result<()> {
        for t in sample_args() {
            let (f, f1, f2) = (self.f(t), self.f1(t), self.f2(t));
            if !(f.is_finite() && f1.is_finite() && f2.is_finite()) {
                return domain(format!("weight {} is not finite at t = {t}", self.label));
            }
            let h = 1e-5 * t;
            let d1 = (self.f(t + h) - self.f(t - h)) / (2.0 * h);
            let d2 = (self.f1(t + h) - self.f1(t - h)) / (2.0 * h);
            let scale = 1.0 + f.abs() / t + f1.abs();
            if (d1 - f1).abs() > 1e-6 * scale {
                return domain(format!("F1 disagrees with dF/dt at t = {t}: {f1} vs {d1}"));
            }
            if (d2 - f2).abs() > 1e-6 * (1.0 + f1.abs() / t + f2.abs()) {
                return domain(format!("F2 disagrees with dF1/dt at t = {t}: {f2} vs {d2}"));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_are_consistent() {
        WeightSpec::linear(0.25).check_consistency().unwrap();
        WeightSpec::constant(3.0).check_consistency().unwrap();
        WeightSpec::new("t^2", |t| t * t, |t| 2.0 * t, |_| 2.0).unwrap();
    }

    #[test]
    fn rejects_wrong_derivative() {
        assert!(WeightSpec::new("bad", |t| t * t, |t| t, |_| 1.0).is_err());
        assert!(WeightSpec::new("bad2", |t| t * t, |t| 2.0 * t, |_| 0.0).is_err());
        assert!(WeightSpec::new("log", |t: f64| (t - 1.0).ln(), |t| 1.0 / (t - 1.0), |t| -1.0 / ((t - 1.0) * (t - 1.0))).is_err());
    }
}
