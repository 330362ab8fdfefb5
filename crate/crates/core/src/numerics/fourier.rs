use num_complex::Complex64;
use rustfft::FftPlanner;
use std::f64::consts::PI;

use super::grid::Grid;
use super::sampled::{uniform_step, SampledFunction, SpectralFunction};
use crate::error::{LabError, Result};

/// `f̂(ξ) = ∫ f(x) e^{-ixξ} dx` by the trapezoidal rule on the grid of `f`.
///
/// The dual frequency grid goes through an exact FFT, other uniform
/// frequency sets through a chirp transform, anything else through the
/// direct sum.
pub fn fourier_transform(f: &SampledFunction, xi_grid: &[f64]) -> Result<SpectralFunction> {
    check_forward_input(f, xi_grid)?;
    let values = if is_dual_of(&f.grid, xi_grid) {
        forward_dual(f)
    } else if let Some(d) = uniform_step(xi_grid) {
        let h = f.grid.step();
        chirp_transform(&f.values, f.grid.origin(), h, xi_grid[0], d, xi_grid.len(), -1.0)
            .into_iter()
            .map(|v| v * h)
            .collect()
    } else {
        direct_forward(f, xi_grid)
    };
    SpectralFunction::new(xi_grid.to_vec(), values)
}

/// Transform on the dual grid of `f`.
pub fn fourier_transform_dual(f: &SampledFunction) -> SpectralFunction {
    let xi = f.grid.dual_frequencies();
    let values = forward_dual(f);
    SpectralFunction { xi_values: xi, values }
}

/// Reference path: the defining sum evaluated term by term, `O(N M)`.
pub fn fourier_transform_direct(f: &SampledFunction, xi_grid: &[f64]) -> Result<SpectralFunction> {
    check_forward_input(f, xi_grid)?;
    SpectralFunction::new(xi_grid.to_vec(), direct_forward(f, xi_grid))
}

/// `f(x) = (1/2π) ∫ F(ξ) e^{ixξ} dξ` sampled on `grid`.
///
/// Uniform frequency sets use equal weights `dξ`, which makes the dual-grid
/// round trip exact. The result is the `2π/dξ`-periodic alias of the true
/// inverse, so the target grid must not be longer than `2π/dξ`.
pub fn inverse_fourier_transform(spec: &SpectralFunction, grid: Grid) -> Result<SampledFunction> {
    check_inverse_input(spec, &grid)?;
    let values = if is_dual_of(&grid, &spec.xi_values) {
        inverse_dual(spec, &grid)
    } else if let Some(d) = spec.uniform_step() {
        let scale = d / (2.0 * PI);
        chirp_transform(
            &spec.values,
            spec.xi_values[0],
            d,
            grid.origin(),
            grid.step(),
            grid.n_points,
            1.0,
        )
        .into_iter()
        .map(|v| v * scale)
        .collect()
    } else {
        direct_inverse(spec, &grid)
    };
    SampledFunction::new(grid, values, "inverse_fourier")
}

/// Direct trapezoidal inverse; the oracle for [`inverse_fourier_transform`].
pub fn inverse_fourier_transform_direct(
    spec: &SpectralFunction,
    grid: Grid,
) -> Result<SampledFunction> {
    check_inverse_input(spec, &grid)?;
    SampledFunction::new(grid, direct_inverse(spec, &grid), "inverse_fourier_direct")
}

/// `(∫ |F|² dξ)^{1/2}` with trapezoidal weights.
pub fn spectral_l2_norm(spec: &SpectralFunction) -> f64 {
    let w = trapezoid_weights(&spec.xi_values, spec.uniform_step().is_some());
    spec.values
        .iter()
        .zip(w)
        .map(|(v, w)| v.norm_sqr() * w)
        .sum::<f64>()
        .sqrt()
}

/// `out_j = Σ_k v_k exp(σ i (x0 + k dx)(w0 + j dw))` for `j < m`, via
/// Bluestein's identity `kj = (k² + j² - (j-k)²)/2` and one FFT convolution.
/// Indices are centred before squaring to keep the chirp phases small.
pub fn chirp_transform(
    values: &[Complex64],
    x0: f64,
    dx: f64,
    w0: f64,
    dw: f64,
    m: usize,
    sign: f64,
) -> Vec<Complex64> {
    let n = values.len();
    if n == 0 || m == 0 {
        return vec![Complex64::new(0.0, 0.0); m];
    }
    let a = (n / 2) as i64;
    let b = (m / 2) as i64;
    let xc = x0 + a as f64 * dx;
    let wc = w0 + b as f64 * dw;
    let theta = sign * dx * dw;
    let cis = |phase: f64| Complex64::from_polar(1.0, phase);
    let half_sq = |p: i64| 0.5 * (p * p) as f64;

    let len = (n + m - 1).next_power_of_two();
    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft_forward(len);
    let ifft = planner.plan_fft_inverse(len);

    let mut lhs = vec![Complex64::new(0.0, 0.0); len];
    for (k, v) in values.iter().enumerate() {
        let p = k as i64 - a;
        lhs[k] = v * cis(sign * p as f64 * dx * wc + theta * half_sq(p));
    }
    // chirp e^{-iθD²/2} for D = q - p, stored at index (q - q0) + (n-1) - k
    let p0 = -a;
    let q0 = -b;
    let d_min = q0 - (n as i64 - 1 - a);
    let mut rhs = vec![Complex64::new(0.0, 0.0); len];
    for (i, slot) in rhs.iter_mut().enumerate().take(n + m - 1) {
        let d = d_min + i as i64;
        *slot = cis(-theta * half_sq(d));
    }
    debug_assert_eq!(d_min, q0 - p0 - (n as i64 - 1));

    fft.process(&mut lhs);
    fft.process(&mut rhs);
    for (l, r) in lhs.iter_mut().zip(&rhs) {
        *l *= r;
    }
    ifft.process(&mut lhs);
    let norm = 1.0 / len as f64;

    (0..m)
        .map(|j| {
            let q = j as i64 - b;
            let conv = lhs[j + n - 1] * norm;
            conv * cis(sign * (xc * wc + xc * q as f64 * dw) + theta * half_sq(q))
        })
        .collect()
}

fn check_forward_input(f: &SampledFunction, xi_grid: &[f64]) -> Result<()> {
    if xi_grid.is_empty() {
        return Err(LabError::InvalidArgument("empty frequency grid".into()));
    }
    if f.values.iter().any(|v| !v.is_finite()) {
        return Err(LabError::InvalidData("non-finite sample".into()));
    }
    Ok(())
}

fn check_inverse_input(spec: &SpectralFunction, grid: &Grid) -> Result<()> {
    if spec.values.iter().any(|v| !v.is_finite()) {
        return Err(LabError::InvalidData("non-finite spectral value".into()));
    }
    if spec.len() < 2 {
        return Err(LabError::InvalidArgument(
            "inverse transform needs at least two frequencies".into(),
        ));
    }
    let widest = spec
        .xi_values
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(0.0, f64::max);
    let period = 2.0 * PI / widest;
    let extent = grid.step() * grid.n_points as f64;
    if extent > period * (1.0 + 1e-9) {
        return Err(LabError::InvalidArgument(format!(
            "target grid length {extent} exceeds the alias period {period} of the frequency grid"
        )));
    }
    Ok(())
}

fn is_dual_of(grid: &Grid, xi: &[f64]) -> bool {
    if xi.len() != grid.n_points {
        return false;
    }
    let d = grid.dual_step();
    let m = (grid.n_points / 2) as f64;
    xi.iter()
        .enumerate()
        .all(|(j, &x)| (x - (j as f64 - m) * d).abs() <= 1e-12 * d * (1.0 + m))
}

/// `x0 ξ_j` in turns, with the half-integer part of `x0/(n h)` split off so
/// the reduction modulo one stays exact on symmetric grids.
fn origin_turns(j_shift: f64, x0: f64, n: usize, h: f64) -> f64 {
    let q = x0 / (n as f64 * h);
    let q_half = (2.0 * q).round() / 2.0;
    (j_shift * q_half).rem_euclid(1.0) + j_shift * (q - q_half)
}

fn forward_dual(f: &SampledFunction) -> Vec<Complex64> {
    let grid = f.grid;
    let n = grid.n_points;
    let h = grid.step();
    let m = n / 2;
    let mut buf: Vec<Complex64> = f
        .values
        .iter()
        .enumerate()
        .map(|(k, v)| v * Complex64::from_polar(1.0, 2.0 * PI * ((k * m) % n) as f64 / n as f64))
        .collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let x0 = grid.origin();
    buf.iter()
        .enumerate()
        .map(|(j, v)| {
            let turns = origin_turns(j as f64 - m as f64, x0, n, h);
            v * Complex64::from_polar(h, -2.0 * PI * turns)
        })
        .collect()
}

fn inverse_dual(spec: &SpectralFunction, grid: &Grid) -> Vec<Complex64> {
    let n = grid.n_points;
    let h = grid.step();
    let m = n / 2;
    let x0 = grid.origin();
    let mut buf: Vec<Complex64> = spec
        .values
        .iter()
        .enumerate()
        .map(|(j, v)| {
            let turns = origin_turns(j as f64 - m as f64, x0, n, h);
            v * Complex64::from_polar(1.0, 2.0 * PI * turns)
        })
        .collect();
    FftPlanner::new().plan_fft_inverse(n).process(&mut buf);
    let scale = grid.dual_step() / (2.0 * PI);
    buf.iter()
        .enumerate()
        .map(|(k, v)| {
            v * Complex64::from_polar(scale, -2.0 * PI * ((k * m) % n) as f64 / n as f64)
        })
        .collect()
}

fn direct_forward(f: &SampledFunction, xi_grid: &[f64]) -> Vec<Complex64> {
    let h = f.grid.step();
    let support: Vec<(f64, Complex64)> = f
        .grid
        .nodes()
        .into_iter()
        .zip(f.values.iter().copied())
        .filter(|(_, v)| *v != Complex64::new(0.0, 0.0))
        .collect();
    xi_grid
        .iter()
        .map(|&xi| {
            support
                .iter()
                .map(|&(x, v)| v * Complex64::from_polar(1.0, -x * xi))
                .sum::<Complex64>()
                * h
        })
        .collect()
}

fn direct_inverse(spec: &SpectralFunction, grid: &Grid) -> Vec<Complex64> {
    let w = trapezoid_weights(&spec.xi_values, spec.uniform_step().is_some());
    grid.nodes()
        .into_iter()
        .map(|x| {
            spec.xi_values
                .iter()
                .zip(&spec.values)
                .zip(&w)
                .map(|((&xi, &v), &w)| v * w * Complex64::from_polar(1.0, x * xi))
                .sum::<Complex64>()
                / (2.0 * PI)
        })
        .collect()
}

/// Equal weights for uniform sets, end-halved trapezoid weights otherwise.
fn trapezoid_weights(xs: &[f64], uniform: bool) -> Vec<f64> {
    let n = xs.len();
    if n == 1 {
        return vec![1.0];
    }
    if uniform {
        let d = (xs[n - 1] - xs[0]) / (n - 1) as f64;
        return vec![d; n];
    }
    (0..n)
        .map(|i| {
            let left = if i > 0 { xs[i] - xs[i - 1] } else { 0.0 };
            let right = if i + 1 < n { xs[i + 1] - xs[i] } else { 0.0 };
            0.5 * (left + right)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::l2_norm;

    fn gaussian(grid: Grid) -> SampledFunction {
        SampledFunction::from_real_fn(grid, "gaussian", |x| (-0.5 * x * x).exp()).unwrap()
    }

    fn indicator(grid: Grid) -> SampledFunction {
        SampledFunction::from_real_fn(grid, "indicator", |x| {
            if x.abs() < 1.0 {
                1.0
            } else if x.abs() == 1.0 {
                0.5
            } else {
                0.0
            }
        })
        .unwrap()
    }

    #[test]
    fn indicator_transform_is_sinc() {
        let f = indicator(Grid::default());
        let xi: Vec<f64> = (0..41).map(|j| -10.0 + 0.5 * j as f64).collect();
        let spec = fourier_transform(&f, &xi).unwrap();
        for (x, v) in xi.iter().zip(&spec.values) {
            let exact = if *x == 0.0 { 2.0 } else { 2.0 * x.sin() / x };
            // trapezoid error at the jumps is h²ξ²/6-sized
            assert!((v.re - exact).abs() < 1e-4, "{x}: {v} vs {exact}");
            assert!(v.im.abs() < 1e-10);
        }
        assert!((spec.values[20].re - 2.0).abs() < 1e-12);
    }

    #[test]
    fn zero_maps_to_zero() {
        let f = SampledFunction::zeros(Grid::default(), "0");
        let spec = fourier_transform(&f, &[-1.0, 0.3, 2.0]).unwrap();
        assert!(spec.values.iter().all(|v| v.norm() == 0.0));
        let back = inverse_fourier_transform(&fourier_transform_dual(&f), Grid::default()).unwrap();
        assert_eq!(back.max_abs(), 0.0);
    }

    #[test]
    fn gaussian_transform_matches_closed_form() {
        let f = gaussian(Grid::default());
        let spec = fourier_transform_dual(&f);
        for (xi, v) in spec.xi_values.iter().zip(&spec.values) {
            let exact = (2.0 * PI).sqrt() * (-0.5 * xi * xi).exp();
            assert!((v - exact).norm() < 1e-12, "{xi}");
        }
    }

    #[test]
    fn three_routes_agree() {
        let grid = Grid::symmetric(12.0, 1024, true).unwrap();
        let f = SampledFunction::from_fn(grid, "chirped", |x| {
            Complex64::from_polar((-x * x / 3.0).exp(), 0.7 * x)
        })
        .unwrap();
        let dual = grid.dual_frequencies();
        let a = fourier_transform(&f, &dual).unwrap();
        let b = fourier_transform_direct(&f, &dual).unwrap();
        let uniform: Vec<f64> = (0..300).map(|j| -7.3 + 0.047 * j as f64).collect();
        let c = fourier_transform(&f, &uniform).unwrap();
        let d = fourier_transform_direct(&f, &uniform).unwrap();
        let err = |p: &SpectralFunction, q: &SpectralFunction| {
            p.values.iter().zip(&q.values).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
        };
        assert!(err(&a, &b) < 1e-11, "{}", err(&a, &b));
        assert!(err(&c, &d) < 1e-11, "{}", err(&c, &d));
    }

    #[test]
    fn dual_round_trip_exact() {
        let grid = Grid::symmetric(10.0, 256, true).unwrap();
        let f = SampledFunction::from_fn(grid, "w", |x| Complex64::new(x.cos(), x) * (-x * x).exp()).unwrap();
        let back = inverse_fourier_transform(&fourier_transform_dual(&f), grid).unwrap();
        assert!(back.max_relative_diff(&f) < 1e-13);
        let spec = fourier_transform_dual(&f);
        let direct = inverse_fourier_transform_direct(&spec, grid).unwrap();
        assert!(direct.max_relative_diff(&f) < 1e-12);
    }

    #[test]
    fn gaussian_round_trip_default_grid() {
        let f = gaussian(Grid::default());
        let exact = SpectralFunction::new(
            f.grid.dual_frequencies(),
            f.grid
                .dual_frequencies()
                .iter()
                .map(|xi| Complex64::new((2.0 * PI).sqrt() * (-0.5 * xi * xi).exp(), 0.0))
                .collect(),
        )
        .unwrap();
        let back = inverse_fourier_transform(&exact, f.grid).unwrap();
        let err = back
            .values
            .iter()
            .zip(&f.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(err < 1e-6, "{err}");
    }

    #[test]
    fn sinc_inverts_to_indicator_away_from_jumps() {
        let grid = Grid::symmetric(64.0, 1 << 16, false).unwrap();
        let xi = grid.dual_frequencies();
        let values = xi
            .iter()
            .map(|&x| Complex64::new(if x == 0.0 { 2.0 } else { 2.0 * x.sin() / x }, 0.0))
            .collect();
        let back = inverse_fourier_transform(&SpectralFunction::new(xi, values).unwrap(), grid).unwrap();
        let ind = indicator(grid);
        let err = grid
            .nodes()
            .iter()
            .enumerate()
            .filter(|(_, x)| (x.abs() - 1.0).abs() > 0.5 && x.abs() < 8.0)
            .map(|(k, _)| (back.values[k] - ind.values[k]).norm())
            .fold(0.0, f64::max);
        assert!(err < 1e-3, "{err}");
    }

    #[test]
    fn inverse_rejects_aliasing_grid() {
        let spec = SpectralFunction::new(vec![0.0, 1.0, 2.0], vec![Complex64::new(1.0, 0.0); 3]).unwrap();
        let grid = Grid::symmetric(10.0, 64, false).unwrap();
        assert!(matches!(
            inverse_fourier_transform(&spec, grid),
            Err(LabError::InvalidArgument(_))
        ));
    }

    #[test]
    fn real_input_gives_conjugate_symmetric_output() {
        let grid = Grid::symmetric(16.0, 512, true).unwrap();
        let f = SampledFunction::from_real_fn(grid, "r", |x| (-(x - 0.4).powi(2)).exp() * (1.0 + x)).unwrap();
        let xi: Vec<f64> = (0..21).map(|j| -5.0 + 0.5 * j as f64).collect();
        let s = fourier_transform(&f, &xi).unwrap();
        for j in 0..21 {
            assert!((s.values[j] - s.values[20 - j].conj()).norm() < 1e-12);
        }
        let _ = l2_norm(&f);
    }
}
