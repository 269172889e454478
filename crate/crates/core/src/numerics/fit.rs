//! Least-squares line fits and Richardson extrapolation.

/// Result of fitting `y = slope * x + intercept`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    /// Euclidean norm of the residual vector.
    pub residual: f64,
}

pub fn linear_fit(xs: &[f64], ys: &[f64]) -> LinearFit {
    assert_eq!(xs.len(), ys.len());
    assert!(xs.len() >= 2, "need at least two points");
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - slope * x - intercept).powi(2))
        .sum::<f64>()
        .sqrt();
    LinearFit { slope, intercept, residual }
}

/// Slope of `ln y` against `ln x`.
pub fn loglog_fit(xs: &[f64], ys: &[f64]) -> LinearFit {
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    linear_fit(&lx, &ly)
}

/// Richardson table for a sequence `values[j] = A(h_0 / ratio^j)` whose error
/// expands in powers `h^(order), h^(2 order), ...`.
///
/// Returns the diagonal; its last entry is the best estimate.
pub fn richardson(values: &[f64], ratio: f64, order: f64) -> Vec<f64> {
    let mut table = values.to_vec();
    let mut diag = vec![table[0]];
    let n = values.len();
    for k in 1..n {
        let f = ratio.powf(order * k as f64);
        let mut next = Vec::with_capacity(n - k);
        for j in 0..(n - k) {
            next.push((f * table[j + 1] - table[j]) / (f - 1.0));
        }
        diag.push(next[0]);
        table = next;
    }
    // diag[k] uses values 0..=k; the last column has one entry.
    diag
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_line() {
        let f = linear_fit(&[0.0, 1.0, 2.0], &[1.0, 3.0, 5.0]);
        assert!((f.slope - 2.0).abs() < 1e-14);
        assert!((f.intercept - 1.0).abs() < 1e-14);
        assert!(f.residual < 1e-14);
    }

    #[test]
    fn richardson_removes_even_powers() {
        // A(h) = 3 + h^2 - 2 h^4
        let vals: Vec<f64> = (0..4)
            .map(|j| {
                let h = 0.1 / 2f64.powi(j);
                3.0 + h * h - 2.0 * h.powi(4)
            })
            .collect();
        let d = richardson(&vals, 2.0, 2.0);
        assert!((d[2] - 3.0).abs() < 1e-14);
    }
}
