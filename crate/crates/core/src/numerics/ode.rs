//! Dormand–Prince 5(4) integrator with PI step control, dense output and
//! event location.

use crate::error::{domain, Result};

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;
const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

/// Right-hand side of `y' = f(t, y)`.
pub trait OdeSystem<const N: usize> {
    fn rhs(&self, t: f64, y: &[f64; N]) -> [f64; N];
}

impl<const N: usize, F: Fn(f64, &[f64; N]) -> [f64; N]> OdeSystem<N> for F {
    fn rhs(&self, t: f64, y: &[f64; N]) -> [f64; N] {
        self(t, y)
    }
}

/// One accepted step with its continuous extension.
#[derive(Debug, Clone, Copy)]
pub struct DenseStep<const N: usize> {
    pub t0: f64,
    pub h: f64,
    rcont: [[f64; N]; 5],
}

impl<const N: usize> DenseStep<N> {
    pub fn t1(&self) -> f64 {
        self.t0 + self.h
    }

    pub fn contains(&self, t: f64) -> bool {
        let (lo, hi) = if self.h >= 0.0 {
            (self.t0, self.t1())
        } else {
            (self.t1(), self.t0)
        };
        t >= lo && t <= hi
    }

    pub fn eval(&self, t: f64) -> [f64; N] {
        let th = (t - self.t0) / self.h;
        let th1 = 1.0 - th;
        let r = &self.rcont;
        std::array::from_fn(|i| {
            r[0][i] + th * (r[1][i] + th1 * (r[2][i] + th * (r[3][i] + th1 * r[4][i])))
        })
    }
}

/// Why integration stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stop {
    Reached,
    Event(usize),
    StepUnderflow,
    BudgetExhausted,
}

/// A scalar event function; a sign change of `g` along the solution is an event.
pub struct Event<'a, const N: usize> {
    pub g: Box<dyn Fn(f64, &[f64; N]) -> f64 + 'a>,
    pub terminal: bool,
}

impl<'a, const N: usize> Event<'a, N> {
    pub fn new(g: impl Fn(f64, &[f64; N]) -> f64 + 'a, terminal: bool) -> Self {
        Self { g: Box::new(g), terminal }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EventHit<const N: usize> {
    pub index: usize,
    pub t: f64,
    pub y: [f64; N],
}

#[derive(Debug, Clone, Copy)]
pub struct Options {
    pub atol: f64,
    pub rtol: f64,
    pub max_steps: usize,
    pub h_init: Option<f64>,
    pub h_max: f64,
    pub event_tol: f64,
}

impl Options {
    pub fn with_tol(tol: f64) -> Self {
        Self { atol: tol, rtol: tol, ..Self::default() }
    }
}

impl Default for Options {
    fn default() -> Self {
        Self {
            atol: 1e-10,
            rtol: 1e-10,
            max_steps: 200_000,
            h_init: None,
            h_max: f64::INFINITY,
            event_tol: 1e-12,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Solution<const N: usize> {
    pub t0: f64,
    pub y0: [f64; N],
    pub steps: Vec<DenseStep<N>>,
    pub t_final: f64,
    pub y_final: [f64; N],
    pub events: Vec<EventHit<N>>,
    pub stop: Stop,
}

impl<const N: usize> Solution<N> {
    /// Dense evaluation anywhere in the integrated range.
    pub fn eval(&self, t: f64) -> Option<[f64; N]> {
        if t == self.t0 {
            return Some(self.y0);
        }
        let forward = self.t_final >= self.t0;
        let inside = if forward {
            t >= self.t0 && t <= self.t_final
        } else {
            t <= self.t0 && t >= self.t_final
        };
        if !inside {
            return None;
        }
        // Steps are monotone in t, so binary search on the step start.
        let idx = self.steps.partition_point(|s| {
            if forward {
                s.t1() < t
            } else {
                s.t1() > t
            }
        });
        self.steps.get(idx.min(self.steps.len().saturating_sub(1))).map(|s| s.eval(t))
    }
}

fn axpy<const N: usize>(y: &[f64; N], h: f64, terms: &[(f64, &[f64; N])]) -> [f64; N] {
    std::array::from_fn(|i| y[i] + h * terms.iter().map(|(c, k)| c * k[i]).sum::<f64>())
}

fn finite<const N: usize>(v: &[f64; N]) -> bool {
    v.iter().all(|x| x.is_finite())
}

/// Integrate from `t0` to `t_end` (either direction).
pub fn integrate<const N: usize, S: OdeSystem<N>>(
    sys: &S,
    t0: f64,
    y0: [f64; N],
    t_end: f64,
    opts: &Options,
    events: &[Event<'_, N>],
) -> Result<Solution<N>> {
    if !finite(&y0) || !t0.is_finite() || !t_end.is_finite() {
        return domain("non-finite initial data for ODE integration");
    }
    if opts.atol <= 0.0 || opts.rtol < 0.0 {
        return domain("ODE tolerances must be positive");
    }
    let mut sol = Solution {
        t0,
        y0,
        steps: Vec::new(),
        t_final: t0,
        y_final: y0,
        events: Vec::new(),
        stop: Stop::Reached,
    };
    if t_end == t0 {
        return Ok(sol);
    }
    let dir = (t_end - t0).signum();
    let span = (t_end - t0).abs();
    let h_max = opts.h_max.min(span);

    let mut t = t0;
    let mut y = y0;
    let mut k1 = sys.rhs(t, &y);
    if !finite(&k1) {
        return domain("ODE right-hand side is not finite at the initial point");
    }
    let mut h = match opts.h_init {
        Some(h) => h.abs().min(h_max),
        None => initial_step(sys, t, &y, &k1, dir, opts).min(h_max),
    };
    let mut g_prev: Vec<f64> = events.iter().map(|e| (e.g)(t, &y)).collect();
    let mut facold: f64 = 1e-4;
    let mut rejected_last = false;
    let n_f = N as f64;

    for _ in 0..opts.max_steps {
        let remaining = (t_end - t) * dir;
        if remaining <= 0.0 {
            sol.stop = Stop::Reached;
            break;
        }
        let last = h >= remaining;
        let hs = if last { remaining } else { h } * dir;
        if hs.abs() <= 1e-14 * t.abs().max(1.0) {
            sol.stop = Stop::StepUnderflow;
            break;
        }

        let k2 = sys.rhs(t + C2 * hs, &axpy(&y, hs, &[(A21, &k1)]));
        let k3 = sys.rhs(t + C3 * hs, &axpy(&y, hs, &[(A31, &k1), (A32, &k2)]));
        let k4 = sys.rhs(t + C4 * hs, &axpy(&y, hs, &[(A41, &k1), (A42, &k2), (A43, &k3)]));
        let k5 = sys.rhs(
            t + C5 * hs,
            &axpy(&y, hs, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]),
        );
        let k6 = sys.rhs(
            t + hs,
            &axpy(&y, hs, &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)]),
        );
        let y1 = axpy(&y, hs, &[(A71, &k1), (A73, &k3), (A74, &k4), (A75, &k5), (A76, &k6)]);
        let k7 = sys.rhs(t + hs, &y1);

        let ok = finite(&y1) && finite(&k7) && [&k2, &k3, &k4, &k5, &k6].iter().all(|k| finite(k));
        let err = if ok {
            let mut acc = 0.0;
            for i in 0..N {
                let e = hs
                    * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
                let sc = opts.atol + opts.rtol * y[i].abs().max(y1[i].abs());
                acc += (e / sc).powi(2);
            }
            (acc / n_f).sqrt()
        } else {
            f64::INFINITY
        };

        if err <= 1.0 {
            // PI controller (Hairer's beta = 0.04).
            let beta = 0.04;
            let fac11 = err.max(1e-16).powf(0.2 - 0.75 * beta);
            let mut fac = fac11 / facold.powf(beta) / 0.9;
            fac = fac.clamp(1.0 / 10.0, 5.0);
            facold = err.max(1e-4);
            let mut h_new = (hs.abs() / fac).min(h_max);
            if rejected_last {
                h_new = h_new.min(hs.abs());
            }
            rejected_last = false;

            let ydiff: [f64; N] = std::array::from_fn(|i| y1[i] - y[i]);
            let bspl: [f64; N] = std::array::from_fn(|i| hs * k1[i] - ydiff[i]);
            let step = DenseStep {
                t0: t,
                h: hs,
                rcont: [
                    y,
                    ydiff,
                    bspl,
                    std::array::from_fn(|i| ydiff[i] - hs * k7[i] - bspl[i]),
                    std::array::from_fn(|i| {
                        hs * (D1 * k1[i]
                            + D3 * k3[i]
                            + D4 * k4[i]
                            + D5 * k5[i]
                            + D6 * k6[i]
                            + D7 * k7[i])
                    }),
                ],
            };
            let t1 = if last { t_end } else { t + hs };

            // Events, earliest first.
            let mut terminal_hit: Option<EventHit<N>> = None;
            let mut hits: Vec<EventHit<N>> = Vec::new();
            let g_new: Vec<f64> = events.iter().map(|e| (e.g)(t1, &y1)).collect();
            for (idx, ev) in events.iter().enumerate() {
                let (ga, gb) = (g_prev[idx], g_new[idx]);
                let crosses = (ga < 0.0 && gb >= 0.0) || (ga > 0.0 && gb <= 0.0);
                if !crosses || !ga.is_finite() || !gb.is_finite() {
                    continue;
                }
                let (mut lo, mut hi) = (t, t1);
                let mut glo = ga;
                while (hi - lo).abs() > opts.event_tol {
                    let mid = 0.5 * (lo + hi);
                    if mid == lo || mid == hi {
                        break;
                    }
                    let gm = (ev.g)(mid, &step.eval(mid));
                    if (gm < 0.0) == (glo < 0.0) && gm != 0.0 {
                        lo = mid;
                        glo = gm;
                    } else {
                        hi = mid;
                    }
                }
                let hit = EventHit { index: idx, t: hi, y: step.eval(hi) };
                if ev.terminal {
                    let earlier = terminal_hit.is_none_or(|h| (hit.t - h.t) * dir < 0.0);
                    if earlier {
                        terminal_hit = Some(hit);
                    }
                } else {
                    hits.push(hit);
                }
            }
            hits.sort_by(|a, b| ((a.t - b.t) * dir).total_cmp(&0.0));
            if let Some(th) = terminal_hit {
                sol.events.extend(hits.into_iter().filter(|h| (h.t - th.t) * dir <= 0.0));
                sol.events.push(th);
                let truncated = DenseStep { h: step.h, ..step };
                sol.steps.push(truncated);
                sol.t_final = th.t;
                sol.y_final = th.y;
                sol.stop = Stop::Event(th.index);
                return Ok(sol);
            }
            sol.events.extend(hits);
            g_prev = g_new;
            sol.steps.push(step);
            t = t1;
            y = y1;
            k1 = k7;
            sol.t_final = t;
            sol.y_final = y;
            h = h_new;
            if last {
                sol.stop = Stop::Reached;
                return Ok(sol);
            }
        } else {
            let shrink = if err.is_finite() {
                (0.9 / err.powf(0.2)).clamp(0.1, 0.9)
            } else {
                0.25
            };
            h = hs.abs() * shrink;
            rejected_last = true;
        }
        sol.stop = Stop::BudgetExhausted;
    }
    Ok(sol)
}

fn initial_step<const N: usize, S: OdeSystem<N>>(
    sys: &S,
    t: f64,
    y: &[f64; N],
    f0: &[f64; N],
    dir: f64,
    opts: &Options,
) -> f64 {
    let sc: [f64; N] = std::array::from_fn(|i| opts.atol + opts.rtol * y[i].abs());
    let norm = |v: &[f64; N]| {
        (v.iter().zip(&sc).map(|(a, s)| (a / s).powi(2)).sum::<f64>() / N as f64).sqrt()
    };
    let d0 = norm(y);
    let d1 = norm(f0);
    let h0 = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
    let y1: [f64; N] = std::array::from_fn(|i| y[i] + dir * h0 * f0[i]);
    let f1 = sys.rhs(t + dir * h0, &y1);
    if !finite(&f1) {
        return h0 * 1e-3;
    }
    let df: [f64; N] = std::array::from_fn(|i| f1[i] - f0[i]);
    let d2 = norm(&df) / h0;
    let h1 = if d1.max(d2) <= 1e-15 {
        (h0 * 1e-3).max(1e-6)
    } else {
        (0.01 / d1.max(d2)).powf(0.2)
    };
    (100.0 * h0).min(h1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_decay() {
        let sys = |_t: f64, y: &[f64; 1]| [-y[0]];
        let sol = integrate(&sys, 0.0, [1.0], 5.0, &Options::with_tol(1e-12), &[]).unwrap();
        assert_eq!(sol.stop, Stop::Reached);
        assert!((sol.y_final[0] - (-5.0f64).exp()).abs() < 1e-11);
        // dense output between steps
        let y = sol.eval(2.345).unwrap();
        assert!((y[0] - (-2.345f64).exp()).abs() < 1e-9);
    }

    #[test]
    fn backward_integration() {
        let sys = |_t: f64, y: &[f64; 2]| [y[1], -y[0]];
        let sol = integrate(&sys, 1.0, [1.0f64.sin(), 1.0f64.cos()], -2.0, &Options::with_tol(1e-11), &[]).unwrap();
        assert!((sol.y_final[0] - (-2.0f64).sin()).abs() < 1e-9);
    }

    #[test]
    fn terminal_event_located() {
        // harmonic oscillator, first zero of cos after t = 0 at pi/2
        let sys = |_t: f64, y: &[f64; 2]| [y[1], -y[0]];
        let ev = [Event::new(|_t, y: &[f64; 2]| y[0], true)];
        let sol = integrate(&sys, 0.0, [1.0, 0.0], 10.0, &Options::with_tol(1e-12), &ev).unwrap();
        assert_eq!(sol.stop, Stop::Event(0));
        assert!((sol.t_final - std::f64::consts::FRAC_PI_2).abs() < 1e-9);
    }

    #[test]
    fn non_terminal_events_are_counted() {
        let sys = |_t: f64, y: &[f64; 2]| [y[1], -y[0]];
        let ev = [Event::new(|_t, y: &[f64; 2]| y[0], false)];
        let sol = integrate(&sys, 0.0, [1.0, 0.0], 10.0, &Options::with_tol(1e-10), &ev).unwrap();
        assert_eq!(sol.events.len(), 3);
        assert!((sol.events[1].t - 1.5 * std::f64::consts::PI).abs() < 1e-8);
    }

    #[test]
    fn blow_up_stops_with_underflow() {
        // y' = y^2, y(0) = 1 blows up at t = 1
        let sys = |_t: f64, y: &[f64; 1]| [y[0] * y[0]];
        let sol = integrate(&sys, 0.0, [1.0], 2.0, &Options::with_tol(1e-10), &[]).unwrap();
        assert_ne!(sol.stop, Stop::Reached);
        assert!(sol.t_final < 1.0);
    }
}
