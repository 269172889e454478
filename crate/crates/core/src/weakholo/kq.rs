//! The constant `K_q = int_C dA / |w (w - 1)|^q`, `1 < q < 2`, by a fixed
//! decomposition of the plane: two small discs around the singular points,
//! the rest of `|w| < 2`, a finite exterior shell and an asymptotic tail.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, LabError, Result};
use crate::numerics::quad;

/// Radius of the discs cut out around `0` and `1`.
pub const KQ_SPLIT_RADIUS: f64 = 0.25;
const INNER_RADIUS: f64 = 2.0;

fn check_q(q: f64) -> Result<()> {
    if !(q > 1.0 && q < 2.0) {
        return domain(format!("q must lie in (1, 2), got {q}"));
    }
    Ok(())
}

/// Periodic trapezoid rule on `[0, 2 pi)`, doubled until it settles.
fn periodic_mean<F: Fn(f64) -> f64>(f: F, rel_tol: f64) -> f64 {
    let mut n = 16usize;
    let mut sum: f64 = (0..n).map(|j| f(2.0 * PI * j as f64 / n as f64)).sum();
    let mut prev = 2.0 * PI * sum / n as f64;
    loop {
        // add the midpoints
        let mid: f64 = (0..n).map(|j| f(2.0 * PI * (j as f64 + 0.5) / n as f64)).sum();
        sum += mid;
        n *= 2;
        let cur = 2.0 * PI * sum / n as f64;
        if (cur - prev).abs() <= rel_tol * cur.abs() || n >= 1 << 16 {
            return cur;
        }
        prev = cur;
    }
}

/// `int_0^{2 pi} |rho e^{i theta} - 1|^{-q} d theta` for `rho` away from 1.
fn angular(rho: f64, q: f64) -> f64 {
    periodic_mean(|t| (Complex64::from_polar(rho, t) - 1.0).norm().powf(-q), 1e-15)
}

/// Contribution of `D_eps(0)`: `int_0^eps rho^{1-q} angular(rho) d rho`, via `t = rho^{2-q}`.
fn disc_piece(q: f64, eps: f64, plus: bool, abs_tol: f64) -> Result<quad::Estimate> {
    let a = 2.0 - q;
    let f = |t: f64| {
        let rho = t.powf(1.0 / a);
        if plus {
            periodic_mean(|th| (Complex64::from_polar(rho, th) + 1.0).norm().powf(-q), 1e-15)
        } else {
            angular(rho, q)
        }
    };
    let e = quad::integrate(&f, 0.0, eps.powf(a), abs_tol * a, 1e-13)?;
    Ok(quad::Estimate { value: e.value / a, error: e.error / a })
}

/// Contribution of the disc `|w| < eps` alone.
pub fn kq_disc_contribution(q: f64, eps: f64) -> Result<f64> {
    check_q(q)?;
    if !(eps > 0.0 && eps < 1.0) {
        return domain(format!("eps must lie in (0, 1), got {eps}"));
    }
    let scale = 2.0 * PI * eps.powf(2.0 - q) / (2.0 - q);
    Ok(disc_piece(q, eps, false, 1e-12 * scale)?.value)
}

/// Breakdown of [`kq_constant`].
#[derive(Debug, Clone, Copy, Serialize)]
pub struct KqEstimate {
    pub q: f64,
    pub value: f64,
    pub abs_error: f64,
    pub disc_zero: f64,
    pub disc_one: f64,
    pub annulus: f64,
    pub exterior: f64,
    pub tail: f64,
    pub cutoff: f64,
}

/// Two-term tail beyond `rho_m` and the half-width of its rigorous bracket.
fn tail(q: f64, rho_m: f64) -> (f64, f64) {
    let lead = rho_m.powf(2.0 - 2.0 * q) / (2.0 * q - 2.0);
    let value = 2.0 * PI * (lead + 0.25 * q * q * rho_m.powf(-2.0 * q) / (2.0 * q));
    let upper = 2.0 * PI * (1.0 - 1.0 / rho_m).powf(-q) * lead;
    let lower = 2.0 * PI * (1.0 + 1.0 / rho_m).powf(-q) * lead;
    (value, (upper - value).max(value - lower))
}

pub fn kq_constant(q: f64, tol: f64) -> Result<KqEstimate> {
    check_q(q)?;
    if !(tol > 0.0) {
        return domain("tolerance must be positive");
    }
    let eps = KQ_SPLIT_RADIUS;
    let d0 = disc_piece(q, eps, false, tol / 8.0)?;
    let d1 = disc_piece(q, eps, true, tol / 8.0)?;

    // |w| in [eps, 2] minus D_eps(1); symmetric in theta -> integrate [theta0, pi] twice.
    let inner_tol = tol * 1e-3;
    let ring = |rho: f64| {
        let theta0 = if (rho - 1.0).abs() < eps {
            ((rho * rho + 1.0 - eps * eps) / (2.0 * rho)).clamp(-1.0, 1.0).acos()
        } else {
            0.0
        };
        let g = |t: f64| (Complex64::from_polar(rho, t) - 1.0).norm().powf(-q);
        let e = quad::integrate(&g, theta0, PI, inner_tol, 1e-13)
            .map(|e| e.value)
            .unwrap_or(f64::NAN);
        2.0 * rho.powf(1.0 - q) * e
    };
    let annulus = quad::integrate_pieces(
        &ring,
        &[eps, 1.0 - eps, 1.0, 1.0 + eps, INNER_RADIUS],
        tol / 4.0,
        1e-13,
    )?;

    let mut rho_m = (8.0 * PI * q / ((2.0 * q - 2.0) * tol))
        .powf(1.0 / (2.0 * q - 1.0))
        .max(16.0);
    let (mut tail_value, mut tail_err) = tail(q, rho_m);
    while tail_err > tol / 4.0 {
        rho_m *= 2.0;
        (tail_value, tail_err) = tail(q, rho_m);
    }
    // rho = e^s on [2, rho_m]
    let shell = |s: f64| {
        let rho = s.exp();
        rho.powf(2.0 - q) * angular(rho, q)
    };
    let exterior = quad::integrate(&shell, INNER_RADIUS.ln(), rho_m.ln(), tol / 4.0, 1e-13)?;

    let value = d0.value + d1.value + annulus.value + exterior.value + tail_value;
    let abs_error = d0.error + d1.error + annulus.error + exterior.error + tail_err;
    if !value.is_finite() || abs_error > tol {
        return Err(LabError::Convergence { what: format!("K_q at q = {q}"), best: value, error: abs_error });
    }
    Ok(KqEstimate {
        q,
        value,
        abs_error,
        disc_zero: d0.value,
        disc_one: d1.value,
        annulus: annulus.value,
        exterior: exterior.value,
        tail: tail_value,
        cutoff: rho_m,
    })
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct KqMonteCarlo {
    pub q: f64,
    pub value: f64,
    pub std_error: f64,
    pub samples: u64,
    pub seed: u64,
}

const CHUNK: u64 = 1 << 16;

#[derive(Clone, Copy)]
enum Stratum {
    DiscZero,
    DiscOne,
    Annulus,
    Exterior,
}

fn integrand(w: Complex64, q: f64) -> f64 {
    (w.norm() * (w - 1.0).norm()).powf(-q)
}

fn draw(stratum: Stratum, q: f64, rng: &mut ChaCha8Rng) -> f64 {
    let eps = KQ_SPLIT_RADIUS;
    // u in (0, 1]
    let u = 1.0 - rng.random::<f64>();
    let theta = 2.0 * PI * rng.random::<f64>();
    match stratum {
        Stratum::DiscZero | Stratum::DiscOne => {
            let rho = eps * u.powf(1.0 / (2.0 - q));
            let w = Complex64::from_polar(rho, theta);
            let other = match stratum {
                Stratum::DiscZero => (w - 1.0).norm(),
                _ => (w + 1.0).norm(),
            };
            2.0 * PI * eps.powf(2.0 - q) / (2.0 - q) * other.powf(-q)
        }
        Stratum::Annulus => {
            let rho = INNER_RADIUS * u.sqrt();
            let w = Complex64::from_polar(rho, theta);
            if w.norm() < eps || (w - 1.0).norm() < eps {
                0.0
            } else {
                PI * INNER_RADIUS * INNER_RADIUS * integrand(w, q)
            }
        }
        Stratum::Exterior => {
            let rho = INNER_RADIUS * u.powf(-1.0 / (2.0 * q - 2.0));
            let w = Complex64::from_polar(rho, theta);
            let c = 2.0 * PI * INNER_RADIUS.powf(2.0 - 2.0 * q) / (2.0 * q - 2.0);
            c * (rho / (w - 1.0).norm()).powf(q)
        }
    }
}

/// Importance-sampled Monte Carlo over the same four regions, one quarter of
/// the samples each. Deterministic for a given seed regardless of thread count.
pub fn kq_monte_carlo(q: f64, samples: u64, seed: u64) -> Result<KqMonteCarlo> {
    check_q(q)?;
    if samples < 4 * CHUNK {
        return domain(format!("need at least {} samples", 4 * CHUNK));
    }
    let per = samples / 4;
    let chunks = per.div_ceil(CHUNK);
    let strata = [Stratum::DiscZero, Stratum::DiscOne, Stratum::Annulus, Stratum::Exterior];
    let mut value = 0.0;
    let mut var = 0.0;
    for (si, &st) in strata.iter().enumerate() {
        let parts: Vec<(f64, f64, u64)> = (0..chunks)
            .into_par_iter()
            .map(|c| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(((si as u64) << 40) | c);
                let n = CHUNK.min(per - c * CHUNK);
                let (mut s, mut s2) = (0.0, 0.0);
                for _ in 0..n {
                    let x = draw(st, q, &mut rng);
                    s += x;
                    s2 += x * x;
                }
                (s, s2, n)
            })
            .collect();
        let (s, s2, n) = parts
            .iter()
            .fold((0.0, 0.0, 0u64), |(a, b, c), (x, y, z)| (a + x, b + y, c + z));
        let mean = s / n as f64;
        value += mean;
        var += (s2 / n as f64 - mean * mean) / n as f64;
    }
    Ok(KqMonteCarlo { q, value, std_error: var.sqrt(), samples: 4 * per, seed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use statrs::function::gamma::gamma;

    /// `pi [G(1-q/2)/G(q/2)]^2 G(q-1)/G(2-q)`, the Fourier-side evaluation of
    /// the same integral; independent of the decomposition.
    fn closed_form(q: f64) -> f64 {
        PI * (gamma(1.0 - q / 2.0) / gamma(q / 2.0)).powi(2) * gamma(q - 1.0) / gamma(2.0 - q)
    }

    #[test]
    fn matches_closed_form() {
        for q in [1.2, 1.5, 1.8, 1.95] {
            let k = kq_constant(q, 1e-7).unwrap();
            assert!((k.value - closed_form(q)).abs() < 1e-6 * k.value, "q={q}: {k:?} vs {}", closed_form(q));
            assert!(k.abs_error <= 1e-7);
        }
        assert!((closed_form(1.5) - 27.5007).abs() < 1e-3);
    }

    #[test]
    fn discs_are_symmetric() {
        let k = kq_constant(1.5, 1e-8).unwrap();
        assert!((k.disc_zero - k.disc_one).abs() < 1e-8);
    }

    #[test]
    fn small_disc_scaling() {
        let q = 1.5;
        let eps = 1e-3;
        let v = kq_disc_contribution(q, eps).unwrap();
        let approx = 2.0 * PI * eps.powf(2.0 - q) / (2.0 - q);
        assert!((v / approx - 1.0).abs() < 0.05);
    }

    #[test]
    fn monte_carlo_agrees_and_is_reproducible() {
        let a = kq_monte_carlo(1.5, 1 << 21, 7).unwrap();
        let b = kq_monte_carlo(1.5, 1 << 21, 7).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert!((a.value / closed_form(1.5) - 1.0).abs() < 0.01, "{a:?}");
    }

    #[test]
    fn rejects_q_outside_range() {
        for q in [1.0, 2.0, 0.5, f64::NAN] {
            assert!(kq_constant(q, 1e-6).is_err());
        }
    }
}
