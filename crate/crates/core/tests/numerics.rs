use harmonic_lab::numerics::quadrature::adaptive_simpson;
use harmonic_lab::numerics::*;
use harmonic_lab::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn gaussian_mix(grid: Grid, a: f64, b: f64, k: f64) -> SampledFunction {
    SampledFunction::from_fn(grid, "mix", move |x| {
        let env = (-a * (x - b) * (x - b)).exp();
        Complex64::new(env * (1.0 + 0.5 * (k * x).cos()), 0.3 * env * x)
    })
    .unwrap()
}

#[test]
fn oracle_agreement_random_frequencies() {
    let grid = Grid::symmetric(32.0, 1 << 12, false).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (a, b, k) = (0.7, 0.4, 1.3);
    let f = gaussian_mix(grid, a, b, k);
    let mut xi: Vec<f64> = (0..20).map(|_| rng.gen_range(-3.0..3.0)).collect();
    xi.sort_by(f64::total_cmp);
    let spec = fourier_transform(&f, &xi).unwrap();
    for (x, v) in xi.iter().zip(&spec.values) {
        let part = |im: bool| {
            adaptive_simpson(
                |t| {
                    let env = (-a * (t - b) * (t - b)).exp();
                    let val = Complex64::new(env * (1.0 + 0.5 * (k * t).cos()), 0.3 * env * t)
                        * Complex64::from_polar(1.0, -t * x);
                    if im {
                        val.im
                    } else {
                        val.re
                    }
                },
                -12.0,
                12.0,
                1e-12,
                1e-15,
            )
            .unwrap()
        };
        let exact = Complex64::new(part(false), part(true));
        assert!((v - exact).norm() <= 1e-6 * exact.norm(), "ξ = {x}");
    }
}

#[test]
fn plancherel_on_dual_grid() {
    let grid = Grid::default();
    for i in 0..5 {
        let f = gaussian_mix(grid, 0.3 + 0.2 * i as f64, 0.5 * i as f64, i as f64);
        let spec = fourier_transform_dual(&f);
        let lhs = l2_norm(&f).powi(2);
        let rhs = spectral_l2_norm(&spec).powi(2) / (2.0 * std::f64::consts::PI);
        assert!((lhs - rhs).abs() <= 1e-12 * lhs);
    }
}

#[test]
fn csv_and_json_roundtrip() {
    let grid = Grid::symmetric(4.0, 64, true).unwrap();
    let f = gaussian_mix(grid, 1.0, 0.0, 0.0);
    let (xs, vs) = io::parse_csv(&io::sampled_to_csv(&f)).unwrap();
    assert_eq!(xs, grid.nodes());
    assert_eq!(vs, f.values);
    let json = serde_json::to_string(&f).unwrap();
    let back: SampledFunction = serde_json::from_str(&json).unwrap();
    assert_eq!(back, f);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn transform_is_linear(a in -2.0f64..2.0, b in -2.0f64..2.0, s in 0.3f64..2.0) {
        let grid = Grid::symmetric(16.0, 512, false).unwrap();
        let f = gaussian_mix(grid, s, 0.3, 1.0);
        let g = gaussian_mix(grid, 1.0 / s, -0.5, 2.0);
        let comb = SampledFunction::new(
            grid,
            f.values.iter().zip(&g.values).map(|(x, y)| x * a + y * b).collect(),
            "comb",
        ).unwrap();
        let xi: Vec<f64> = (0..17).map(|k| -4.0 + 0.5 * k as f64).collect();
        let (ff, gg, cc) = (
            fourier_transform(&f, &xi).unwrap(),
            fourier_transform(&g, &xi).unwrap(),
            fourier_transform(&comb, &xi).unwrap(),
        );
        for k in 0..xi.len() {
            let expect = ff.values[k] * a + gg.values[k] * b;
            prop_assert!((cc.values[k] - expect).norm() <= 1e-12 * (1.0 + expect.norm()));
        }
    }

    #[test]
    fn real_input_conjugate_symmetric(a in 0.2f64..3.0, b in -1.0f64..1.0, xi in 0.0f64..6.0) {
        let grid = Grid::symmetric(16.0, 1024, false).unwrap();
        let f = SampledFunction::from_real_fn(grid, "r", |x| (-a * (x - b).powi(2)).exp()).unwrap();
        let s = fourier_transform_direct(&f, &[-xi, xi]).unwrap();
        prop_assert!((s.values[0] - s.values[1].conj()).norm() < 1e-12);
    }

    #[test]
    fn l2_homogeneous(c_re in -3.0f64..3.0, c_im in -3.0f64..3.0) {
        let grid = Grid::symmetric(8.0, 256, true).unwrap();
        let f = gaussian_mix(grid, 1.0, 0.2, 0.7);
        let c = Complex64::new(c_re, c_im);
        prop_assert!((l2_norm(&f.scaled(c)) - c.norm() * l2_norm(&f)).abs() < 1e-12 * (1.0 + c.norm()));
    }
}
