//! Adaptive Simpson quadrature.

use crate::error::{LabError, Result};

const MAX_DEPTH: u32 = 48;
const PANELS: usize = 16;

/// `∫_a^b f` by adaptive Simpson with relative tolerance `rel_tol`
/// (absolute floor `abs_tol`).
pub fn adaptive_simpson<F>(f: F, a: f64, b: f64, rel_tol: f64, abs_tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if a == b {
        return Ok(0.0);
    }
    // Start from fixed panels: a single Simpson triple can agree with its
    // halves by accident (nodes at zeros of an oscillating integrand).
    let nodes: Vec<f64> = (0..=2 * PANELS).map(|i| a + (b - a) * i as f64 / (2 * PANELS) as f64).collect();
    let values: Vec<f64> = nodes.iter().map(|&x| f(x)).collect();
    if let Some(k) = values.iter().position(|v| !v.is_finite()) {
        return Err(LabError::InvalidData(format!(
            "integrand not finite at {}",
            nodes[k]
        )));
    }
    let wholes: Vec<f64> = (0..PANELS)
        .map(|p| (nodes[2 * p + 2] - nodes[2 * p]) / 6.0 * (values[2 * p] + 4.0 * values[2 * p + 1] + values[2 * p + 2]))
        .collect();
    // coarse magnitude estimate so the tolerance is relative
    let probe = values.iter().map(|v| v.abs()).sum::<f64>() * (b - a).abs() / values.len() as f64;
    let total: f64 = wholes.iter().sum();
    let eps = (rel_tol * probe.max(total.abs())).max(abs_tol) / PANELS as f64;
    let mut sum = 0.0;
    for (p, whole) in wholes.into_iter().enumerate() {
        let (i, j, k) = (2 * p, 2 * p + 1, 2 * p + 2);
        sum += recurse(&f, nodes[i], nodes[k], values[i], values[j], values[k], whole, eps, MAX_DEPTH)?;
    }
    Ok(sum)
}

#[allow(clippy::too_many_arguments)]
fn recurse<F>(f: &F, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, eps: f64, depth: u32) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if !delta.is_finite() {
        return Err(LabError::InvalidData(format!(
            "integrand not finite near {m}"
        )));
    }
    if depth == 0 || delta.abs() <= 15.0 * eps {
        return Ok(left + right + delta / 15.0);
    }
    Ok(recurse(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1)?
        + recurse(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_and_exponential() {
        let v = adaptive_simpson(|x| x * x * x, 0.0, 2.0, 1e-12, 0.0).unwrap();
        assert!((v - 4.0).abs() < 1e-12);
        let v = adaptive_simpson(f64::exp, 0.0, 1.0, 1e-12, 0.0).unwrap();
        assert!((v - (1f64.exp() - 1.0)).abs() < 1e-11);
    }

    #[test]
    fn oscillatory() {
        let v = adaptive_simpson(|x| (-x * x).exp() * (5.0 * x).cos(), -8.0, 8.0, 1e-12, 1e-15).unwrap();
        let exact = std::f64::consts::PI.sqrt() * (-25.0f64 / 4.0).exp();
        assert!((v - exact).abs() < 1e-12, "{v} {exact}");
    }

    #[test]
    fn no_false_convergence_on_coarse_zeros() {
        // odd integrand shifted so the first five nodes nearly vanish
        let f = |t: f64| (-(t - 0.4) * (t - 0.4)).exp() * (2.0 * t).sin();
        let v = adaptive_simpson(f, -14.0, 14.0, 1e-13, 1e-16).unwrap();
        let exact = std::f64::consts::PI.sqrt() * (-1.0f64).exp() * 0.8f64.sin();
        assert!((v - exact).abs() < 1e-12, "{v} {exact}");
    }

    #[test]
    fn non_finite_is_error() {
        assert!(adaptive_simpson(|x| 1.0 / x, 0.0, 1.0, 1e-8, 0.0).is_err());
    }
}
