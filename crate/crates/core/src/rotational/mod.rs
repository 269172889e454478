//! Rotationally symmetric shrinkers: the profile curve `(x, gamma(x))` rotated
//! about the vertical axis, its curvatures and near-axis behaviour.

pub mod axis;
pub mod curvature;
pub mod profile;
pub mod series;
pub mod shoot;
pub mod umbilic;

use serde::Serialize;

/// Graph-chart state: abscissa, height and slope.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProfileState {
    pub x: f64,
    pub gamma: f64,
    pub gamma_p: f64,
}

/// Arclength-chart state: the tangent is `(cos theta, sin theta)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ArcState {
    pub s: f64,
    pub x: f64,
    pub y: f64,
    pub theta: f64,
}

impl ArcState {
    /// Start an arclength integration from a graph-chart state.
    pub fn from_graph(state: &ProfileState, s: f64) -> Self {
        Self { s, x: state.x, y: state.gamma, theta: state.gamma_p.atan() }
    }
}

pub use axis::{
    axis_ratio_limit, lp_integral, zero_order_report, AxisOrderReport, AxisRatioReport,
    LpIntegrand,
};
pub use curvature::{curvature_sample, ratio_field, CurvatureSample};
pub use profile::{
    integrate_arclength, integrate_arclength_with, integrate_graph, integrate_graph_from,
    ArcOptions, Chart, ProfileCurve, ProfileEvent, ProfileEventKind,
};
pub use series::{series_coefficients, taylor_profile, ProfileSeries};
pub use shoot::{shoot_profile, ShotClass, ShotRecord};
pub use umbilic::{umbilic_scan, UmbilicScan};
