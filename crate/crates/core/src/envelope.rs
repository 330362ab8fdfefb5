//! Window fits of the constant in `|F| ≤ C · E`.
//!
//! A fit takes log-ratios `ln(|F(r)| / E(r))` and reports, for each radius
//! `R`, `C*(R) = sup_{|r| ≤ R} |F|/E`. Stable `C*` across dyadic radii
//! certifies the bound numerically; drift refutes it.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum EnvelopeVerdict {
    Holds,
    Fails,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WindowFit {
    pub radius: f64,
    /// `ln C*`; `-inf` when every sample vanishes (serialized as null).
    pub log_constant: Option<f64>,
    pub constant: f64,
    pub samples: usize,
}

/// `[R/4, R/2, R]`.
pub fn dyadic_radii(r_max: f64) -> Vec<f64> {
    vec![0.25 * r_max, 0.5 * r_max, r_max]
}

/// Cumulative window maxima over `(|coordinate|, log_ratio)` samples.
/// Samples with `log_ratio = -inf` count towards `samples` only.
pub fn fit_windows(points: &[(f64, f64)], radii: &[f64]) -> Vec<WindowFit> {
    radii
        .iter()
        .map(|&radius| {
            let mut best = f64::NEG_INFINITY;
            let mut samples = 0;
            for &(r, lr) in points {
                if r.abs() <= radius {
                    samples += 1;
                    if lr > best {
                        best = lr;
                    }
                }
            }
            WindowFit {
                radius,
                log_constant: best.is_finite().then_some(best),
                constant: if best.is_finite() { best.exp() } else { 0.0 },
                samples,
            }
        })
        .collect()
}

/// `C*_last / C*_first - 1`, in log space so huge constants stay finite.
/// Zero when all windows vanish, infinite when only later ones are nonzero.
pub fn relative_drift(fits: &[WindowFit]) -> f64 {
    let first = fits.first().and_then(|f| f.log_constant);
    let last = fits.last().and_then(|f| f.log_constant);
    match (first, last) {
        (_, None) => 0.0,
        (None, Some(_)) => f64::INFINITY,
        (Some(a), Some(b)) => (b - a).exp_m1(),
    }
}

/// Ratios `C*_{j+1} / C*_j` between consecutive windows.
pub fn growth_factors(fits: &[WindowFit]) -> Vec<f64> {
    fits.windows(2)
        .map(|w| match (w[0].log_constant, w[1].log_constant) {
            (Some(a), Some(b)) => (b - a).exp(),
            (None, Some(_)) => f64::INFINITY,
            _ => 1.0,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounded_ratio_is_stable() {
        let pts: Vec<(f64, f64)> = (0..400)
            .map(|i| {
                let r = i as f64 * 0.1;
                (r, -(r - 2.0).powi(2))
            })
            .collect();
        let fits = fit_windows(&pts, &dyadic_radii(40.0));
        assert!(relative_drift(&fits).abs() < 1e-12);
        assert!((fits[0].constant - 1.0).abs() < 1e-12);
    }

    #[test]
    fn growing_ratio_drifts() {
        let pts: Vec<(f64, f64)> = (0..400).map(|i| (i as f64 * 0.1, i as f64 * 0.1)).collect();
        let fits = fit_windows(&pts, &dyadic_radii(39.9));
        assert!(relative_drift(&fits) > 1e10);
        assert!(growth_factors(&fits).iter().all(|&g| g > 10.0));
    }

    #[test]
    fn all_zero_is_zero_constant() {
        let pts = vec![(1.0, f64::NEG_INFINITY); 5];
        let fits = fit_windows(&pts, &[1.0, 2.0]);
        assert_eq!(fits[1].constant, 0.0);
        assert_eq!(fits[1].samples, 5);
        assert_eq!(relative_drift(&fits), 0.0);
    }
}
