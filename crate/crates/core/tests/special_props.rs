use std::f64::consts::PI;

use proptest::prelude::*;
use sincbinom::numeric::sin_pi;
use sincbinom::special::{beta_gamma, beta_series, gamma, reciprocal_gamma_weierstrass, si, sinc};
use sincbinom::Complex;

fn off_integers(min_gap: f64, radius: f64) -> impl Strategy<Value = Complex> {
    (-radius..radius, -radius..radius)
        .prop_filter("too close to an integer", move |(re, im)| {
            let z = Complex::new(*re, *im);
            (z - Complex::new(re.round(), 0.0)).norm() >= min_gap
        })
        .prop_map(|(re, im)| Complex::new(re, im))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn reflection(z in off_integers(1e-2, 10.0)) {
        let lhs = (gamma(z).unwrap() * gamma(1.0 - z).unwrap()).inv();
        let rhs = sin_pi(z) / PI;
        prop_assert!((lhs - rhs).norm() <= 1e-10 * (1.0 + rhs.norm()), "z = {z}: {lhs} vs {rhs}");
    }

    #[test]
    fn recurrence(z in off_integers(1e-2, 10.0)) {
        let a = gamma(z + 1.0).unwrap();
        let b = z * gamma(z).unwrap();
        prop_assert!((a - b).norm() <= 1e-11 * a.norm(), "z = {z}");
    }

    #[test]
    fn sinc_is_even(re in -30.0f64..30.0, im in -5.0f64..5.0) {
        let z = Complex::new(re, im);
        prop_assert_eq!(sinc(z), sinc(-z));
    }

    #[test]
    fn si_is_odd(re in -30.0f64..30.0, im in -5.0f64..5.0) {
        let z = Complex::new(re, im);
        let (a, b) = (si(z), si(-z));
        prop_assert!((a + b).norm() <= 1e-14 * (1.0 + a.norm()), "z = {z}: {a} vs {b}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn weierstrass_product_matches(z in off_integers(5e-2, 4.4).prop_filter("|z| <= 4.4", |z| z.norm() <= 4.4)) {
        let v = reciprocal_gamma_weierstrass(z, 100_000).unwrap() * gamma(z).unwrap();
        prop_assert!((v - 1.0).norm() <= 1e-4, "z = {z}: {v}");
    }

    // the missing factors contribute exp(z^2 Σ_{k>n} 1/(2k^2)) to leading order,
    // which is 1.25e-4 at |z| = 5 with n = 1e5
    #[test]
    fn weierstrass_truncation_error_is_quadratic(z in off_integers(5e-2, 5.0).prop_filter("|z| <= 5", |z| z.norm() <= 5.0)) {
        let n = 100_000usize;
        let v = reciprocal_gamma_weierstrass(z, n).unwrap() * gamma(z).unwrap();
        let predicted = (z * z / (2.0 * (n as f64 + 0.5))).exp();
        prop_assert!((v / predicted - 1.0).norm() <= 1e-7, "z = {z}: {v} vs {predicted}");
    }

    #[test]
    fn beta_symmetry_and_series(pr in 0.2f64..4.0, pi in -2.0f64..2.0, qr in 0.2f64..4.0, qi in -2.0f64..2.0) {
        let p = Complex::new(pr, pi);
        let q = Complex::new(qr, qi);
        let a = beta_gamma(p, q).unwrap();
        let b = beta_gamma(q, p).unwrap();
        prop_assert!((a - b).norm() <= 1e-12 * a.norm());
        let s = beta_series(p, q, 1e-12, 2_000_000).unwrap();
        prop_assert!((s.value - a).norm() <= 1e-8 * (1.0 + a.norm()), "p={p} q={q}: {} vs {a}", s.value);
    }
}

#[test]
fn sinc_vanishes_on_nonzero_integers() {
    for n in (-50..=50).filter(|&n| n != 0) {
        assert_eq!(sinc(Complex::new(n as f64, 0.0)), Complex::new(0.0, 0.0));
    }
    assert_eq!(sinc(Complex::new(0.0, 0.0)), Complex::new(1.0, 0.0));
}
