use std::sync::Arc;

use proptest::prelude::*;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sincbinom::binomial::binom_gamma;
use sincbinom::quadrature::{
    binom_kernel_integral, corollary_sum, sinc_project, theorem3_evaluate, Kernel, QuadratureSpec, TabulatedSpectrum,
};
use sincbinom::special::sinc;
use sincbinom::{Complex, EvalOptions};

fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn plancherel_bridge_rational_square(a in -5.0f64..5.0, ar in 0.3f64..3.0, ai in -0.5f64..0.5) {
        let p = sinc_project(&Kernel::RationalSquare(c(ar, ai)), a, &QuadratureSpec::default()).unwrap();
        let r = p.residual.unwrap();
        prop_assert!(r <= 1e-6, "a={a} alpha={ar}+{ai}i residual {r:e}");
    }

    #[test]
    fn plancherel_bridge_sinc_shift(a in -5.0f64..5.0, b in -3.0f64..3.0) {
        let p = sinc_project(&Kernel::SincShift(c(b, 0.0)), a, &QuadratureSpec::default()).unwrap();
        let r = p.residual.unwrap();
        prop_assert!(r <= 1e-6, "a={a} b={b} residual {r:e}");
    }

    #[test]
    fn lattice_sum_sifts_integer_shifts(wr in -0.5f64..4.0, wi in -2.0f64..2.0, n in 0u32..20) {
        let w = c(wr, wi);
        let shift = c(n as f64, 0.0);
        let e = corollary_sum(w, |x| sinc(c(x, 0.0) - shift), 0.5, &EvalOptions::default()).unwrap();
        let exact = binom_gamma(w, shift).unwrap();
        prop_assert!((e.value - exact).norm() <= 1e-10 * (1.0 + exact.norm()));
    }
}

#[test]
fn coefficient_series_agrees_with_line_quadrature() {
    let spec = QuadratureSpec::default();
    let opts = EvalOptions::default().with_tol(1e-9);
    let lorentz = Kernel::RationalSquare(c(1.0, 0.0));
    let table = TabulatedSpectrum::sample(|xi| lorentz.spectrum(xi), 4097).unwrap();
    let kernels = [
        Kernel::RationalSimple(c(1.0, 1.0)),
        Kernel::RationalSimple(c(2.0, 0.0)),
        Kernel::RationalSquare(c(1.0, 0.0)),
        Kernel::RationalSquare(c(0.5, 0.3)),
        Kernel::Sech(c(1.0, 0.0)),
        Kernel::SincShift(c(0.3, 0.0)),
        Kernel::Tabulated(Arc::new(table)),
    ];
    for w in [c(0.5, 0.0), c(1.0, 0.0), c(2.0, 0.0), c(1.0, 1.0)] {
        for k in &kernels {
            let series = theorem3_evaluate(w, k, &opts, &spec).unwrap();
            // the tabulated kernel has no spatial form; compare with the function it samples
            let spatial = if matches!(k, Kernel::Tabulated(_)) { &lorentz } else { k };
            let line = binom_kernel_integral(w, spatial, &spec).unwrap();
            let d = (series.value - line.value).norm();
            assert!(d <= 1e-5, "w={w} kernel={}: {} vs {} ({d:e})", k.name(), series.value, line.value);
        }
    }
}

#[test]
fn line_error_estimates_are_honest() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let spec = QuadratureSpec::default();
    let trials = 100;
    let mut honest = 0;
    for _ in 0..trials {
        let w = c(rng.random_range(-0.4..3.0), rng.random_range(-1.0..1.0));
        let a = rng.random_range(-4.0..4.0);
        let e = binom_kernel_integral(w, &Kernel::SincShift(c(a, 0.0)), &spec).unwrap();
        let exact = binom_gamma(w, c(a, 0.0)).unwrap();
        if (e.value - exact).norm() <= e.abs_error_estimate {
            honest += 1;
        }
    }
    assert!(honest * 100 >= 95 * trials, "{honest} of {trials} estimates bound the error");
}

#[test]
fn series_error_estimates_are_honest() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let spec = QuadratureSpec::default();
    let opts = EvalOptions::default().with_tol(1e-8);
    let trials = 100;
    let mut honest = 0;
    for _ in 0..trials {
        let w = c(rng.random_range(-0.5..3.0), rng.random_range(-1.5..1.5));
        let a = c(rng.random_range(-4.0..4.0), 0.0);
        let e = theorem3_evaluate(w, &Kernel::SincShift(a), &opts, &spec).unwrap();
        let exact = binom_gamma(w, a).unwrap();
        if (e.value - exact).norm() <= e.abs_error_estimate {
            honest += 1;
        }
    }
    assert!(honest * 100 >= 95 * trials, "{honest} of {trials} estimates bound the error");
}
