//! Gamma function family on the complex plane.
//!
//! `gamma` uses a Lanczos rational approximation (g = 607/128, 15 terms)
//! on `Re(z) >= 1/2` and the reflection formula elsewhere. `log_gamma` uses
//! the Stirling series after shifting the argument to `Re(z) >= 15`, which
//! keeps the imaginary part on the continuous principal branch.
//! `reciprocal_gamma_weierstrass` is the slowly converging product form,
//! kept as an independent oracle.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numeric::{is_finite, near_integer, sin_pi};
use crate::Complex;

/// Euler–Mascheroni constant, 20 digits.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_61;

/// Distance to a nonpositive integer below which an argument is a pole.
pub const POLE_TOL: f64 = 1e-14;

const LANCZOS_G: f64 = 607.0 / 128.0;

const LANCZOS_COEF: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_92,
    -59.597_960_355_475_49,
    14.136_097_974_741_747,
    -0.491_913_816_097_620_2,
    0.339_946_499_848_118_9e-4,
    0.465_236_289_270_485_8e-4,
    -0.983_744_753_048_795_6e-4,
    0.158_088_703_224_912_5e-3,
    -0.210_264_441_724_104_9e-3,
    0.217_439_618_115_212_6e-3,
    -0.164_318_106_536_763_9e-3,
    0.844_182_239_838_527_4e-4,
    -0.261_908_384_015_814_1e-4,
    0.368_991_826_595_316_2e-5,
];

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_7;

// B_2n / (2n (2n - 1)), n = 1..8
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

const STIRLING_MIN_RE: f64 = 15.0;

pub(crate) fn is_pole(z: Complex) -> bool {
    matches!(near_integer(z, POLE_TOL), Some(n) if n <= 0)
}

/// `Γ(z)`.
pub fn gamma(z: Complex) -> Result<Complex> {
    if is_pole(z) {
        return Err(Error::Pole(z));
    }
    let v = if z.re < 0.5 {
        let denom = sin_pi(z) * lanczos(Complex::new(1.0, 0.0) - z);
        Complex::new(PI, 0.0) / denom
    } else {
        lanczos(z)
    };
    if is_finite(v) {
        Ok(v)
    } else {
        Err(Error::Overflow("gamma"))
    }
}

fn lanczos(z: Complex) -> Complex {
    let zm1 = z - 1.0;
    let series = LANCZOS_COEF[1..]
        .iter()
        .enumerate()
        .fold(Complex::new(LANCZOS_COEF[0], 0.0), |acc, (i, &c)| {
            acc + c / (zm1 + (i + 1) as f64)
        });
    let t = zm1 + LANCZOS_G + 0.5;
    ((zm1 + 0.5) * t.ln() - t + LN_SQRT_2PI).exp() * series
}

/// `ln Γ(z)` on the branch that is real on the positive axis and continuous
/// off the negative real axis, so that `log_gamma(z + 1) = log_gamma(z) + Log(z)`.
pub fn log_gamma(z: Complex) -> Result<Complex> {
    if is_pole(z) {
        return Err(Error::Pole(z));
    }
    let mut shift = Complex::new(0.0, 0.0);
    let mut x = z;
    while x.re < STIRLING_MIN_RE {
        shift += x.ln();
        x += 1.0;
    }
    Ok(stirling(x) - shift)
}

fn stirling(z: Complex) -> Complex {
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut corr = Complex::new(0.0, 0.0);
    let mut pow = inv;
    for &c in &STIRLING {
        corr += pow * c;
        pow *= inv2;
    }
    (z - 0.5) * z.ln() - z + LN_SQRT_2PI + corr
}

/// Partial Weierstrass product `z e^{γz} ∏_{k=1}^{n} (1 + z/k) e^{-z/k}`,
/// converging to `1/Γ(z)` for every `z`.
pub fn reciprocal_gamma_weierstrass(z: Complex, n_factors: usize) -> Result<Complex> {
    if n_factors == 0 {
        return Err(Error::Input("n_factors must be at least 1".into()));
    }
    let mut prod = z * (z * EULER_GAMMA).exp();
    for k in 1..=n_factors {
        let r = z / k as f64;
        prod *= (r + 1.0) * (-r).exp();
    }
    if is_finite(prod) {
        Ok(prod)
    } else {
        Err(Error::Overflow("reciprocal_gamma_weierstrass"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn rel(a: Complex, b: Complex) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn factorial_and_half_integer_values() {
        assert!(rel(gamma(c(5.0, 0.0)).unwrap(), c(24.0, 0.0)) < 1e-14);
        assert!(rel(gamma(c(0.5, 0.0)).unwrap(), c(PI.sqrt(), 0.0)) < 1e-14);
        assert!(rel(gamma(c(-0.5, 0.0)).unwrap(), c(-2.0 * PI.sqrt(), 0.0)) < 1e-14);
    }

    // reference values from an arbitrary-precision evaluation
    #[test]
    fn complex_reference_values() {
        let cases = [
            (c(1.0, 1.0), c(0.498_015_668_118_356_04, -0.154_949_828_301_810_69)),
            (c(0.3, 7.0), c(2.848_757_995_501_135_1e-5, 7.728_963_574_508_429_7e-7)),
            (c(-3.7, 2.0), c(-8.155_640_604_091_106_5e-4, 8.828_174_903_475_449_3e-4)),
            (c(20.0, -30.0), c(-1_453_876_687.553_481, -1_163_777_777.803_157_3)),
            (c(49.5, 0.0), c(8.667_601_843_135_272e61, 0.0)),
            (c(-49.5, 0.3), c(1.918_112_421_245_523e-64, 4.572_637_399_176_517_4e-64)),
        ];
        for (z, expect) in cases {
            let g = gamma(z).unwrap();
            assert!(rel(g, expect) < 1e-12, "gamma({z}) = {g}, rel {}", rel(g, expect));
            let lg = log_gamma(z).unwrap().exp();
            assert!(rel(lg, expect) < 1e-12, "exp(log_gamma({z})) = {lg}");
        }
    }

    #[test]
    fn log_gamma_branch() {
        assert_eq!(log_gamma(c(1.0, 0.0)).unwrap().im, 0.0);
        assert!(log_gamma(c(1.0, 0.0)).unwrap().re.abs() < 1e-15);
        let v = log_gamma(c(-3.7, 2.0)).unwrap();
        assert!((v - c(-6.723_869_692_494_068_6, -10.249_753_986_292_474)).norm() < 1e-12);
        let v = log_gamma(c(20.0, -30.0)).unwrap();
        assert!((v - c(21.345_074_493_863_445, -96.714_347_689_536_18)).norm() < 1e-12);
        let v = log_gamma(c(0.001, 0.001)).unwrap();
        assert!((v - c(6.560_604_473_837_552_6, -0.785_973_734_929_653_4)).norm() < 1e-12);
    }

    #[test]
    fn log_gamma_large_factorial() {
        // ln(100!) summed term by term
        let oracle: f64 = (1..=100).map(|k| (k as f64).ln()).sum();
        let v = log_gamma(c(101.0, 0.0)).unwrap();
        assert!((v.re - oracle).abs() < 1e-11);
        assert!((v.re - 363.739_375_555_563_5).abs() < 1e-10);
        assert_eq!(v.im, 0.0);
    }

    #[test]
    fn poles_are_rejected() {
        for n in [0.0, -1.0, -7.0] {
            assert!(matches!(gamma(c(n, 0.0)), Err(Error::Pole(_))));
            assert!(matches!(log_gamma(c(n, 0.0)), Err(Error::Pole(_))));
        }
        assert!(matches!(gamma(c(-2.0 + 5e-15, 0.0)), Err(Error::Pole(_))));
        assert!(gamma(c(-2.0 + 1e-9, 0.0)).is_ok());
    }

    #[test]
    fn overflow_is_signalled() {
        assert!(matches!(gamma(c(180.0, 0.0)), Err(Error::Overflow(_))));
        assert!(log_gamma(c(180.0, 0.0)).is_ok());
    }

    #[test]
    fn reflection_at_one_plus_i() {
        let z = c(1.0, 1.0);
        let lhs = gamma(z).unwrap() * gamma(c(1.0, 0.0) - z).unwrap() * sin_pi(z) / PI;
        assert!((lhs - 1.0).norm() < 1e-13);
    }

    #[test]
    fn weierstrass_examples() {
        assert_eq!(reciprocal_gamma_weierstrass(c(0.0, 0.0), 5).unwrap(), c(0.0, 0.0));
        let one = reciprocal_gamma_weierstrass(c(1.0, 0.0), 1_000_000).unwrap();
        assert!((one - 1.0).norm() < 1e-6);
        let pole = reciprocal_gamma_weierstrass(c(-1.0, 0.0), 10_000).unwrap();
        assert!(pole.norm() < 1e-3);
        assert!(reciprocal_gamma_weierstrass(c(1.0, 0.0), 0).is_err());
    }
}
