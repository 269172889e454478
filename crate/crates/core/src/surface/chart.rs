//! Parametric surfaces in 3-space and their pointwise derivative data.

use std::fmt;
use std::sync::Arc;

use nalgebra::Vector3;

use crate::error::{domain, Result};
use crate::numerics::jet::Jet;

pub type JetMap = Arc<dyn Fn(f64, f64) -> [Jet; 3] + Send + Sync>;
pub type PointMap = Arc<dyn Fn(f64, f64) -> [f64; 3] + Send + Sync>;

/// Default finite-difference step as a fraction of the chart scale.
pub const FD_STEP_FRACTION: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChartDomain {
    pub u: (f64, f64),
    pub v: (f64, f64),
}

impl ChartDomain {
    pub fn new(u: (f64, f64), v: (f64, f64)) -> Result<Self> {
        if !(u.0 < u.1) || !(v.0 < v.1) || ![u.0, u.1, v.0, v.1].iter().all(|x| x.is_finite()) {
            return domain(format!("bad chart rectangle {u:?} x {v:?}"));
        }
        Ok(Self { u, v })
    }

    pub fn contains(&self, u: f64, v: f64) -> bool {
        (self.u.0..=self.u.1).contains(&u) && (self.v.0..=self.v.1).contains(&v)
    }

    /// Shorter side of the rectangle.
    pub fn scale(&self) -> f64 {
        (self.u.1 - self.u.0).min(self.v.1 - self.v.0)
    }

    /// `n x n` cell-centered grid, row-major in `u`.
    pub fn grid(&self, n: usize) -> Vec<(f64, f64)> {
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            let u = self.u.0 + (self.u.1 - self.u.0) * (i as f64 + 0.5) / n as f64;
            for j in 0..n {
                let v = self.v.0 + (self.v.1 - self.v.0) * (j as f64 + 0.5) / n as f64;
                out.push((u, v));
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DerivativeAccess {
    ClosedForm,
    FiniteDifference { step: f64 },
}

#[derive(Clone)]
enum Source {
    Jet(JetMap),
    Points(PointMap),
}

/// Position and first and second partials at a chart point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Derivs {
    pub x: Vector3<f64>,
    pub xu: Vector3<f64>,
    pub xv: Vector3<f64>,
    pub xuu: Vector3<f64>,
    pub xuv: Vector3<f64>,
    pub xvv: Vector3<f64>,
}

#[derive(Clone)]
pub struct ParametricSurface {
    pub name: String,
    pub domain: ChartDomain,
    pub access: DerivativeAccess,
    source: Source,
}

impl fmt::Debug for ParametricSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ParametricSurface")
            .field("name", &self.name)
            .field("domain", &self.domain)
            .field("access", &self.access)
            .finish()
    }
}

impl ParametricSurface {
    /// Surface whose derivatives come from a second-order jet of the position.
    pub fn from_jets(
        name: impl Into<String>,
        domain: ChartDomain,
        map: impl Fn(f64, f64) -> [Jet; 3] + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            domain,
            access: DerivativeAccess::ClosedForm,
            source: Source::Jet(Arc::new(map)),
        }
    }

    /// Surface given by position only; derivatives by centered differences.
    /// `step = None` uses the default fraction of the chart scale.
    pub fn from_points(
        name: impl Into<String>,
        domain: ChartDomain,
        map: impl Fn(f64, f64) -> [f64; 3] + Send + Sync + 'static,
        step: Option<f64>,
    ) -> Result<Self> {
        let step = step.unwrap_or(FD_STEP_FRACTION * domain.scale());
        if !(step > 0.0) {
            return crate::error::domain(format!("finite-difference step must be positive, got {step}"));
        }
        Ok(Self {
            name: name.into(),
            domain,
            access: DerivativeAccess::FiniteDifference { step },
            source: Source::Points(Arc::new(map)),
        })
    }

    /// Same surface with chart order `(u, v) -> (v, u)`; flips the normal.
    pub fn swapped(&self) -> Self {
        let source = match &self.source {
            Source::Jet(m) => {
                let m = m.clone();
                Source::Jet(Arc::new(move |u, v| m(v, u).map(swap_jet)))
            }
            Source::Points(m) => {
                let m = m.clone();
                Source::Points(Arc::new(move |u, v| m(v, u)))
            }
        };
        Self {
            name: format!("{} (swapped)", self.name),
            domain: ChartDomain { u: self.domain.v, v: self.domain.u },
            access: self.access,
            source,
        }
    }

    /// Position only; no domain check.
    pub fn position(&self, u: f64, v: f64) -> Vector3<f64> {
        match &self.source {
            Source::Jet(m) => {
                let j = m(u, v);
                Vector3::new(j[0].v, j[1].v, j[2].v)
            }
            Source::Points(m) => Vector3::from(m(u, v)),
        }
    }

    pub fn derivs(&self, u: f64, v: f64) -> Result<Derivs> {
        if !self.domain.contains(u, v) {
            return domain(format!("({u}, {v}) lies outside the chart of {}", self.name));
        }
        Ok(match &self.source {
            Source::Jet(m) => {
                let j = m(u, v);
                let pick = |f: fn(&Jet) -> f64| Vector3::new(f(&j[0]), f(&j[1]), f(&j[2]));
                Derivs {
                    x: pick(|a| a.v),
                    xu: pick(|a| a.du),
                    xv: pick(|a| a.dv),
                    xuu: pick(|a| a.duu),
                    xuv: pick(|a| a.duv),
                    xvv: pick(|a| a.dvv),
                }
            }
            Source::Points(m) => {
                let DerivativeAccess::FiniteDifference { step: s } = self.access else {
                    unreachable!("point surfaces always carry a step")
                };
                let p = |a: f64, b: f64| Vector3::from(m(a, b));
                let x = p(u, v);
                let (pu, mu) = (p(u + s, v), p(u - s, v));
                let (pv, mv) = (p(u, v + s), p(u, v - s));
                Derivs {
                    x,
                    xu: (pu - mu) / (2.0 * s),
                    xv: (pv - mv) / (2.0 * s),
                    xuu: (pu - 2.0 * x + mu) / (s * s),
                    xvv: (pv - 2.0 * x + mv) / (s * s),
                    xuv: (p(u + s, v + s) - p(u + s, v - s) - p(u - s, v + s) + p(u - s, v - s))
                        / (4.0 * s * s),
                }
            }
        })
    }
}

fn swap_jet(j: Jet) -> Jet {
    Jet { v: j.v, du: j.dv, dv: j.du, duu: j.dvv, duv: j.duv, dvv: j.duu }
}
