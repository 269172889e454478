//! Shooting from the axis in the arclength chart and classifying the fate of
//! each trajectory.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, Result};
use crate::rotational::profile::{integrate_arclength_with, ArcOptions, ProfileEventKind};
use crate::rotational::series::{ProfileSeries, DEFAULT_SERIES_ORDER, SERIES_SWITCH_X};
use crate::rotational::ArcState;

/// Arclength budget per trajectory.
pub const SHOT_LENGTH: f64 = 40.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ShotClass {
    /// Returned to the axis perpendicularly while staying on `|X| = 2`.
    ClosedSphere,
    /// Returned to the axis; `smooth` when it meets the axis perpendicularly.
    AxisReturn { smooth: bool },
    /// Left the ball of radius `ArcOptions::radius_cap`.
    Escape,
    /// Crossed `y = 0` but neither closed up nor escaped within the budget;
    /// records whether the first crossing lies outside `|X| = 2`.
    HeightZero { first_outside_sphere: bool },
    /// Used the whole arclength or step budget without another fate.
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShotRecord {
    pub b: f64,
    pub class: ShotClass,
    pub s_final: f64,
    pub x_final: f64,
    pub y_final: f64,
    pub theta_final: f64,
    pub height_zero_crossings: usize,
    /// `(s, x)` at the first crossing of `y = 0`.
    pub first_height_zero: Option<(f64, f64)>,
    /// Largest `| |X|^2 - 4 |` along the trajectory.
    pub max_sphere_defect: f64,
}

/// Shoot from the axis at height `b` and classify.
pub fn shoot_one(b: f64, opts: &ArcOptions) -> Result<ShotRecord> {
    let series = ProfileSeries::new(b, DEFAULT_SERIES_ORDER)?;
    let start = ArcState::from_graph(&series.state(SERIES_SWITCH_X), 0.0);
    let curve = integrate_arclength_with(start, SHOT_LENGTH, opts)?;
    let end = curve.final_arc_state().expect("arclength curve");
    let crossings: Vec<_> = curve
        .events
        .iter()
        .filter(|e| e.kind == ProfileEventKind::HeightZero)
        .collect();
    let max_sphere_defect = curve
        .arc_samples()
        .iter()
        .map(|s| (s.x * s.x + s.y * s.y - 4.0).abs())
        .fold(0.0, f64::max);
    let class = match curve.termination {
        ProfileEventKind::AxisApproach => {
            // Perpendicular arrival: tangent nearly horizontal.
            let smooth = end.theta.sin().abs() < 0.05;
            if smooth && max_sphere_defect < 1e-6 {
                ShotClass::ClosedSphere
            } else {
                ShotClass::AxisReturn { smooth }
            }
        }
        ProfileEventKind::RadiusCap => ShotClass::Escape,
        _ => match crossings.first() {
            Some(e) => ShotClass::HeightZero { first_outside_sphere: e.x > 2.0 },
            None => ShotClass::BudgetExhausted,
        },
    };
    Ok(ShotRecord {
        b,
        class,
        s_final: end.s,
        x_final: end.x,
        y_final: end.y,
        theta_final: end.theta,
        height_zero_crossings: crossings.len(),
        first_height_zero: crossings.first().map(|e| (e.at, e.x)),
        max_sphere_defect,
    })
}

/// Classify `n` equally spaced starting heights in `[b_lo, b_hi]`.
///
/// An empty interval (`b_lo > b_hi`) gives an empty table.
pub fn shoot_profile(b_lo: f64, b_hi: f64, n: usize) -> Result<Vec<ShotRecord>> {
    if n < 2 {
        return domain(format!("shoot_profile needs n >= 2, got {n}"));
    }
    if !(b_lo.is_finite() && b_hi.is_finite()) {
        return domain("b range must be finite");
    }
    if b_lo > b_hi {
        return Ok(Vec::new());
    }
    let opts = ArcOptions::default();
    (0..n)
        .into_par_iter()
        .map(|i| shoot_one(b_lo + (b_hi - b_lo) * i as f64 / (n - 1) as f64, &opts))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_closes() {
        let r = shoot_one(2.0, &ArcOptions::default()).unwrap();
        assert_eq!(r.class, ShotClass::ClosedSphere, "{r:?}");
        assert_eq!(r.height_zero_crossings, 1);
    }

    #[test]
    fn empty_range_gives_empty_table() {
        assert!(shoot_profile(3.0, 1.0, 5).unwrap().is_empty());
        assert!(shoot_profile(1.0, 3.0, 1).is_err());
    }

    #[test]
    fn small_and_large_b_behave_differently() {
        let t = shoot_profile(0.1, 5.0, 2).unwrap();
        assert_eq!(t.len(), 2);
        assert_ne!(t[0].class, t[1].class, "{t:?}");
    }
}
