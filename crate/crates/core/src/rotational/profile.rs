//! Integration of the profile curve in the graph chart `gamma(x)` and in the
//! arclength chart `(x(s), y(s), theta(s))`.

use serde::Serialize;

use crate::error::{domain, Result};
use crate::numerics::ode::{self, Event, Options, Solution, Stop};
use crate::rotational::curvature::profile_rhs;
use crate::rotational::series::{ProfileSeries, DEFAULT_SERIES_ORDER, SERIES_SWITCH_X};
use crate::rotational::{ArcState, ProfileState};

/// Slope magnitude at which the graph chart is abandoned.
pub const VERTICAL_SLOPE: f64 = 1e3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Chart {
    Graph,
    Arclength,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProfileEventKind {
    /// Requested endpoint reached.
    Reached,
    /// `|gamma'|` exceeded [`VERTICAL_SLOPE`].
    VerticalTangent,
    /// The curve crossed the horizontal plane `y = 0`.
    HeightZero,
    /// The curve came within `axis_eps` of the rotation axis.
    AxisApproach,
    /// `|(x, y)|` exceeded the escape radius.
    RadiusCap,
    StepUnderflow,
    BudgetExhausted,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProfileEvent {
    pub kind: ProfileEventKind,
    /// Value of the independent variable (`x` or `s`).
    pub at: f64,
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone)]
enum Trajectory {
    SeriesOnly,
    Graph(Solution<2>),
    Arc(Solution<3>),
}

/// An integrated profile with dense evaluation.
#[derive(Debug, Clone)]
pub struct ProfileCurve {
    pub chart: Chart,
    /// Axis height when the curve starts on the axis.
    pub b: Option<f64>,
    series: Option<ProfileSeries>,
    traj: Trajectory,
    pub events: Vec<ProfileEvent>,
    pub termination: ProfileEventKind,
}

fn graph_system(x: f64, y: &[f64; 2]) -> [f64; 2] {
    [y[1], profile_rhs(x, y[0], y[1])]
}

fn arc_system(_s: f64, y: &[f64; 3]) -> [f64; 3] {
    let (x, h, th) = (y[0], y[1], y[2]);
    let (sn, cs) = th.sin_cos();
    [cs, sn, (0.5 * x - 1.0 / x) * sn - 0.5 * h * cs]
}

fn stop_kind(stop: Stop, event_kinds: &[ProfileEventKind]) -> ProfileEventKind {
    match stop {
        Stop::Reached => ProfileEventKind::Reached,
        Stop::Event(i) => event_kinds[i],
        Stop::StepUnderflow => ProfileEventKind::StepUnderflow,
        Stop::BudgetExhausted => ProfileEventKind::BudgetExhausted,
    }
}

/// Integrate the profile that meets the axis perpendicularly at height `b`,
/// from the axis out to `x_end`.
///
/// The series is used on `(0, SERIES_SWITCH_X]`, then Dormand–Prince with
/// local error tolerance `tol`.
pub fn integrate_graph(b: f64, x_end: f64, tol: f64) -> Result<ProfileCurve> {
    if !(x_end > 0.0) {
        return domain(format!("x_end must be positive, got {x_end}"));
    }
    let series = ProfileSeries::new(b, DEFAULT_SERIES_ORDER)?;
    if x_end <= SERIES_SWITCH_X {
        return Ok(ProfileCurve {
            chart: Chart::Graph,
            b: Some(b),
            series: Some(series),
            traj: Trajectory::SeriesOnly,
            events: Vec::new(),
            termination: ProfileEventKind::Reached,
        });
    }
    let start = series.state(SERIES_SWITCH_X);
    let mut curve = integrate_graph_from(start, x_end, tol)?;
    curve.b = Some(b);
    curve.series = Some(series);
    Ok(curve)
}

/// Integrate the graph chart from an arbitrary state with `x > 0`.
pub fn integrate_graph_from(start: ProfileState, x_end: f64, tol: f64) -> Result<ProfileCurve> {
    if !(start.x > 0.0) || !(x_end > start.x) {
        return domain(format!(
            "graph integration needs 0 < x_start < x_end, got {} and {x_end}",
            start.x
        ));
    }
    if !(tol > 0.0) {
        return domain("tolerance must be positive");
    }
    let events = [
        Event::new(|_x, y: &[f64; 2]| y[1].abs() - VERTICAL_SLOPE, true),
        Event::new(|_x, y: &[f64; 2]| y[0], false),
    ];
    let kinds = [ProfileEventKind::VerticalTangent, ProfileEventKind::HeightZero];
    let sol = ode::integrate(
        &graph_system,
        start.x,
        [start.gamma, start.gamma_p],
        x_end,
        &Options::with_tol(tol),
        &events,
    )?;
    let events = sol
        .events
        .iter()
        .map(|e| ProfileEvent { kind: kinds[e.index], at: e.t, x: e.t, y: e.y[0] })
        .collect();
    Ok(ProfileCurve {
        chart: Chart::Graph,
        b: None,
        series: None,
        termination: stop_kind(sol.stop, &kinds),
        traj: Trajectory::Graph(sol),
        events,
    })
}

/// Arclength-chart options.
#[derive(Debug, Clone, Copy)]
pub struct ArcOptions {
    pub tol: f64,
    /// Terminal event when `x` drops below this.
    pub axis_eps: f64,
    /// Terminal event when `sqrt(x^2 + y^2)` exceeds this.
    pub radius_cap: f64,
    pub max_steps: usize,
}

impl Default for ArcOptions {
    fn default() -> Self {
        Self { tol: 1e-10, axis_eps: 1e-3, radius_cap: 20.0, max_steps: 200_000 }
    }
}

pub fn integrate_arclength(start: ArcState, s_end: f64, tol: f64) -> Result<ProfileCurve> {
    integrate_arclength_with(start, s_end, &ArcOptions { tol, ..ArcOptions::default() })
}

pub fn integrate_arclength_with(
    start: ArcState,
    s_end: f64,
    opts: &ArcOptions,
) -> Result<ProfileCurve> {
    if !(start.x > 0.0) {
        return domain(format!("arclength integration needs x > 0, got {}", start.x));
    }
    if !(opts.tol > 0.0) {
        return domain("tolerance must be positive");
    }
    let axis_eps = opts.axis_eps;
    let cap = opts.radius_cap;
    let events = [
        Event::new(move |_s, y: &[f64; 3]| y[0] - axis_eps, true),
        Event::new(move |_s, y: &[f64; 3]| y[0].hypot(y[1]) - cap, true),
        Event::new(|_s, y: &[f64; 3]| y[1], false),
    ];
    let kinds = [
        ProfileEventKind::AxisApproach,
        ProfileEventKind::RadiusCap,
        ProfileEventKind::HeightZero,
    ];
    let o = Options { max_steps: opts.max_steps, ..Options::with_tol(opts.tol) };
    let sol = ode::integrate(&arc_system, start.s, [start.x, start.y, start.theta], s_end, &o, &events)?;
    let events = sol
        .events
        .iter()
        .map(|e| ProfileEvent { kind: kinds[e.index], at: e.t, x: e.y[0], y: e.y[1] })
        .collect();
    Ok(ProfileCurve {
        chart: Chart::Arclength,
        b: None,
        series: None,
        termination: stop_kind(sol.stop, &kinds),
        traj: Trajectory::Arc(sol),
        events,
    })
}

impl ProfileCurve {
    /// Range of the independent variable actually covered.
    pub fn range(&self) -> (f64, f64) {
        match &self.traj {
            Trajectory::SeriesOnly => (0.0, SERIES_SWITCH_X),
            Trajectory::Graph(s) => (if self.series.is_some() { 0.0 } else { s.t0 }, s.t_final),
            Trajectory::Arc(s) => (s.t0, s.t_final),
        }
    }

    pub fn series(&self) -> Option<&ProfileSeries> {
        self.series.as_ref()
    }

    /// Graph state at abscissa `x`.
    ///
    /// In the arclength chart this returns the first point along the curve
    /// with that abscissa.
    pub fn graph_state_at(&self, x: f64) -> Option<ProfileState> {
        if let Some(series) = &self.series {
            if x > 0.0 && x <= SERIES_SWITCH_X {
                return Some(series.state(x));
            }
        }
        match &self.traj {
            Trajectory::SeriesOnly => None,
            Trajectory::Graph(sol) => {
                sol.eval(x).map(|y| ProfileState { x, gamma: y[0], gamma_p: y[1] })
            }
            Trajectory::Arc(sol) => {
                let mut prev_s = sol.t0;
                let mut prev_x = sol.y0[0];
                if prev_x == x {
                    let y = sol.y0;
                    return Some(ProfileState { x, gamma: y[1], gamma_p: y[2].tan() });
                }
                for step in &sol.steps {
                    let s1 = step.t1().min(sol.t_final);
                    let x1 = step.eval(s1)[0];
                    if (prev_x - x) * (x1 - x) <= 0.0 && prev_x != x1 {
                        let (mut lo, mut hi) = (prev_s, s1);
                        let flo = prev_x - x;
                        for _ in 0..200 {
                            let mid = 0.5 * (lo + hi);
                            let fm = step.eval(mid)[0] - x;
                            if (fm < 0.0) == (flo < 0.0) {
                                lo = mid;
                            } else {
                                hi = mid;
                            }
                            if hi - lo < 1e-15 * hi.abs().max(1.0) {
                                break;
                            }
                        }
                        let y = step.eval(0.5 * (lo + hi));
                        return Some(ProfileState { x, gamma: y[1], gamma_p: y[2].tan() });
                    }
                    prev_s = s1;
                    prev_x = x1;
                }
                None
            }
        }
    }

    /// Arclength state at parameter `s` (arclength chart only).
    pub fn arc_state_at(&self, s: f64) -> Option<ArcState> {
        match &self.traj {
            Trajectory::Arc(sol) => {
                sol.eval(s).map(|y| ArcState { s, x: y[0], y: y[1], theta: y[2] })
            }
            _ => None,
        }
    }

    /// Final state in the graph chart (`None` for arclength curves).
    pub fn final_graph_state(&self) -> Option<ProfileState> {
        match &self.traj {
            Trajectory::SeriesOnly => self.series.as_ref().map(|s| s.state(SERIES_SWITCH_X)),
            Trajectory::Graph(sol) => Some(ProfileState {
                x: sol.t_final,
                gamma: sol.y_final[0],
                gamma_p: sol.y_final[1],
            }),
            Trajectory::Arc(_) => None,
        }
    }

    pub fn final_arc_state(&self) -> Option<ArcState> {
        match &self.traj {
            Trajectory::Arc(sol) => Some(ArcState {
                s: sol.t_final,
                x: sol.y_final[0],
                y: sol.y_final[1],
                theta: sol.y_final[2],
            }),
            _ => None,
        }
    }

    /// Step endpoints of the integration (plus series samples near the axis).
    pub fn graph_samples(&self) -> Vec<ProfileState> {
        let mut out = Vec::new();
        if let Some(series) = &self.series {
            for k in 1..=10 {
                out.push(series.state(SERIES_SWITCH_X * k as f64 / 10.0));
            }
        }
        if let Trajectory::Graph(sol) = &self.traj {
            for st in &sol.steps {
                let x = st.t1().min(sol.t_final);
                let y = st.eval(x);
                out.push(ProfileState { x, gamma: y[0], gamma_p: y[1] });
            }
        }
        out
    }

    pub fn arc_samples(&self) -> Vec<ArcState> {
        match &self.traj {
            Trajectory::Arc(sol) => std::iter::once(ArcState {
                s: sol.t0,
                x: sol.y0[0],
                y: sol.y0[1],
                theta: sol.y0[2],
            })
            .chain(sol.steps.iter().map(|st| {
                let s = st.t1().min(sol.t_final);
                let y = st.eval(s);
                ArcState { s, x: y[0], y: y[1], theta: y[2] }
            }))
            .collect(),
            _ => Vec::new(),
        }
    }

    /// Points `(x, y)` on a uniform grid of the independent variable.
    pub fn resample(&self, n: usize) -> Vec<(f64, f64)> {
        let (a, b) = self.range();
        let n = n.max(2);
        (0..n)
            .filter_map(|i| {
                let t = a + (b - a) * i as f64 / (n - 1) as f64;
                match self.chart {
                    Chart::Graph => {
                        let t = if t <= 0.0 { (b - a) * 1e-6 } else { t };
                        self.graph_state_at(t).map(|s| (s.x, s.gamma))
                    }
                    Chart::Arclength => self.arc_state_at(t).map(|s| (s.x, s.y)),
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_profile_stays_on_sphere() {
        let c = integrate_graph(2.0, 1.5, 1e-11).unwrap();
        assert_eq!(c.termination, ProfileEventKind::Reached);
        for x in [0.005, 0.3, 1.0, 1.5] {
            let s = c.graph_state_at(x).unwrap();
            assert!((s.gamma - (4.0 - x * x).sqrt()).abs() < 1e-8, "x = {x}");
        }
    }

    #[test]
    fn plane_profile_is_zero() {
        let c = integrate_graph(0.0, 3.0, 1e-10).unwrap();
        let s = c.graph_state_at(2.5).unwrap();
        assert_eq!(s.gamma, 0.0);
    }

    #[test]
    fn sphere_hits_vertical_tangent_near_equator() {
        let c = integrate_graph(2.0, 2.5, 1e-10).unwrap();
        assert_eq!(c.termination, ProfileEventKind::VerticalTangent);
        let x = c.final_graph_state().unwrap().x;
        assert!(x < 2.0 && x > 1.99, "{x}");
    }

    #[test]
    fn arclength_sphere_closes_at_axis() {
        let c = integrate_graph(2.0, 0.5, 1e-11).unwrap();
        let st = ArcState::from_graph(&c.final_graph_state().unwrap(), 0.0);
        let arc = integrate_arclength(st, 10.0, 1e-11).unwrap();
        assert_eq!(arc.termination, ProfileEventKind::AxisApproach);
        let end = arc.final_arc_state().unwrap();
        assert!((end.y + 2.0).abs() < 1e-5);
        assert_eq!(arc.events.iter().filter(|e| e.kind == ProfileEventKind::HeightZero).count(), 1);
    }

    #[test]
    fn rejects_bad_ranges() {
        assert!(integrate_graph(1.0, -1.0, 1e-10).is_err());
        assert!(integrate_graph_from(ProfileState { x: 0.0, gamma: 1.0, gamma_p: 0.0 }, 1.0, 1e-9).is_err());
    }
}
