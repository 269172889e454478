//! Surfaces in 3-space: curvature, the shrinker equation, radial weights and
//! the Hopf differential identities. Codimension one only; the unit normal is
//! the normalized cross product in chart order.

pub mod chart;
pub mod fixtures;
pub mod grid;
pub mod hopf;
pub mod radius;
pub mod shape;
pub mod weight;

pub use chart::{ChartDomain, DerivativeAccess, Derivs, ParametricSurface};
pub use fixtures::by_name;
pub use grid::{surface_grid, SurfaceGridRow};
pub use hopf::{
    codazzi_residual, default_step, hopf_differential, hopf_norm_defect, qzbar_identity,
    qzbar_identity_residual, HopfSample, QzbarComparison,
};
pub use radius::{lambda_sphere_radius, sphere_radius_for_weight};
pub use shape::{lambda_residual, shape_sample, shrinker_residual, weighted_mean_curvature, ShapeSample};
pub use weight::WeightSpec;
