use proptest::prelude::*;
use sincbinom::binomial::{binom_gamma, binom_int_k, binom_sinc_finite, binom_sinc_series, BinomialArgs};
use sincbinom::special::sinc;
use sincbinom::{Complex, EvalOptions};

fn disc(radius: f64) -> impl Strategy<Value = Complex> {
    (0.0..radius, 0.0..std::f64::consts::TAU).prop_map(|(r, t)| Complex::from_polar(r, t))
}

fn series_w() -> impl Strategy<Value = Complex> {
    (-0.5f64..5.0, -5.0f64..5.0).prop_map(|(re, im)| Complex::new(re, im))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn finite_sum_matches_gamma_ratio(m in 0u32..=12, z in disc(20.0)) {
        let f = binom_sinc_finite(m, z);
        let g = binom_gamma(Complex::new(m as f64, 0.0), z).unwrap();
        prop_assert!((f - g).norm() <= 1e-9 * (1.0 + g.norm()), "m={m} z={z}: {f} vs {g}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn series_matches_gamma_ratio(w in series_w(), z in disc(10.0)) {
        let opts = EvalOptions::default().with_tol(1e-8);
        let (e, _) = binom_sinc_series(BinomialArgs::new(w, z), &opts).unwrap();
        let g = binom_gamma(w, z).unwrap();
        prop_assert!(
            (e.value - g).norm() <= 10.0 * opts.target(g.norm()),
            "w={w} z={z}: {} vs {g}", e.value
        );
    }

    #[test]
    fn tail_estimate_bounds_the_remainder(w in series_w(), z in disc(10.0)) {
        let opts = EvalOptions::default().with_tol(1e-8);
        let (_, d) = binom_sinc_series(BinomialArgs::new(w, z), &opts).unwrap();
        let g = binom_gamma(w, z).unwrap();
        let remainder = (d.partial_sum - g).norm();
        // rounding in the gamma oracle sets a floor under the remainder
        prop_assert!(
            remainder <= 10.0 * d.tail_estimate + 1e-12 * (1.0 + g.norm()),
            "w={w} z={z}: remainder {remainder:e} vs estimate {:e}", d.tail_estimate
        );
    }

    #[test]
    fn series_sifts_the_lattice(w in series_w(), n in 0i64..40) {
        let (e, _) = binom_sinc_series(BinomialArgs::new(w, Complex::new(n as f64, 0.0)), &EvalOptions::default()).unwrap();
        let exact = binom_int_k(w, n).unwrap();
        prop_assert!((e.value - exact).norm() <= 1e-12 * (1.0 + exact.norm()));
        prop_assert_eq!(e.terms_used, 1);
    }

    #[test]
    fn series_is_absolutely_convergent(w in (-0.9f64..5.0, -5.0f64..5.0), z in disc(10.0)) {
        let w = Complex::new(w.0, w.1);
        // sums of |C(w, k) sinc(z - k)| over dyadic blocks [2^j, 2^{j+1})
        let mut coef = Complex::new(1.0, 0.0);
        let mut blocks = [0.0f64; 16];
        let mut total = 0.0;
        for k in 0..(1usize << 16) {
            let t = (coef * sinc(z - k as f64)).norm();
            prop_assert!(t.is_finite());
            total += t;
            if k > 0 {
                blocks[k.ilog2() as usize] += t;
            }
            coef *= (w - k as f64) / (k as f64 + 1.0);
        }
        prop_assert!(total.is_finite());
        // blocks shrink like 2^{-j (Re w + 1)}
        let ratio = blocks[15] / blocks[14];
        let expected = 2f64.powf(-(w.re + 1.0));
        prop_assert!(ratio < 1.0, "w={w} z={z}: block ratio {ratio}");
        prop_assert!((ratio - expected).abs() < 0.05, "w={w} z={z}: {ratio} vs {expected}");
    }
}
