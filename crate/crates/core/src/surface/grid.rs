//! Per-point diagnostics over a chart grid.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::surface::chart::ParametricSurface;
use crate::surface::hopf::{default_step, hopf_norm_defect, qzbar_identity_residual};
use crate::surface::shape::{shape_sample, weighted_h};
use crate::surface::weight::WeightSpec;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SurfaceGridRow {
    pub u: f64,
    pub v: f64,
    pub h: f64,
    pub k: f64,
    pub phi_norm: f64,
    pub shrinker_residual: f64,
    pub weighted_h: f64,
    /// Relative defect of `|Phi|^2 = (8/alpha^2)|P|^2`.
    pub hopf_norm_defect: f64,
    pub qzbar_residual: f64,
}

impl SurfaceGridRow {
    pub const COLUMNS: [&'static str; 9] = [
        "u",
        "v",
        "H",
        "K",
        "phi_norm",
        "shrinker_residual",
        "weighted_H",
        "hopf_norm_defect",
        "qzbar_residual",
    ];

    pub fn values(&self) -> [f64; 9] {
        [
            self.u,
            self.v,
            self.h,
            self.k,
            self.phi_norm,
            self.shrinker_residual,
            self.weighted_h,
            self.hopf_norm_defect,
            self.qzbar_residual,
        ]
    }
}

/// Diagnostics on the `n x n` cell-centered grid, in grid order.
pub fn surface_grid(surface: &ParametricSurface, weight: &WeightSpec, n: usize) -> Result<Vec<SurfaceGridRow>> {
    let step = default_step(surface);
    surface
        .domain
        .grid(n)
        .into_par_iter()
        .map(|(u, v)| {
            let s = shape_sample(surface, u, v)?;
            Ok(SurfaceGridRow {
                u,
                v,
                h: s.h,
                k: s.k,
                phi_norm: s.phi_norm,
                shrinker_residual: s.h + 0.5 * s.x_dot_nu(),
                weighted_h: weighted_h(&s, weight),
                hopf_norm_defect: hopf_norm_defect(surface, u, v)?,
                qzbar_residual: qzbar_identity_residual(surface, weight, u, v, step)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::fixtures::sphere;

    #[test]
    fn grid_on_the_shrinking_sphere() {
        let rows = surface_grid(&sphere(2.0).unwrap(), &WeightSpec::linear(0.25), 4).unwrap();
        assert_eq!(rows.len(), 16);
        for r in rows {
            assert!(r.shrinker_residual.abs() < 1e-10 && r.weighted_h.abs() < 1e-10);
            assert!(r.qzbar_residual < 1e-8);
        }
    }
}
