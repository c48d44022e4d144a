use std::f64::consts::{FRAC_PI_2, PI};

use crate::numeric::sin_pi;
use crate::quadrature::gauss_kronrod::adaptive_unit_interval;
use crate::Complex;

/// Normalized cardinal sine, `sin(πz)/(πz)` with `sinc(0) = 1`.
pub fn sinc(z: Complex) -> Complex {
    if z.re == 0.0 && z.im == 0.0 {
        return Complex::new(1.0, 0.0);
    }
    if z.norm() < 1e-4 {
        let u = z * PI;
        let u2 = u * u;
        return Complex::new(1.0, 0.0) - u2 / 6.0 + u2 * u2 / 120.0;
    }
    sin_pi(z) / (z * PI)
}

/// Indicator of `|x| < 1/2`; zero on the boundary.
pub fn rect(x: f64) -> f64 {
    if x.abs() < 0.5 {
        1.0
    } else {
        0.0
    }
}

const SERIES_RADIUS: f64 = 8.0;

/// Sine integral `Si(z) = ∫_0^z sin(t)/t dt` along the segment `[0, z]`.
pub fn si(z: Complex) -> Complex {
    if z.norm() <= SERIES_RADIUS {
        return si_series(z);
    }
    if z.im == 0.0 {
        let x = z.re;
        let v = FRAC_PI_2 + si_minus_half_pi(x.abs());
        return Complex::new(v.copysign(x), 0.0);
    }
    si_segment(z)
}

/// `Si(x) - π/2` for `x > 8`, free of the cancellation in the difference.
pub(crate) fn si_minus_half_pi(x: f64) -> f64 {
    debug_assert!(x > SERIES_RADIUS);
    // continued fraction for E1(ix), modified Lentz
    let tiny = 1e-300;
    let mut b = Complex::new(1.0, x);
    let mut c = Complex::new(1.0 / tiny, 0.0);
    let mut d = b.inv();
    let mut h = d;
    for i in 2..200 {
        let a = -((i - 1) as f64).powi(2);
        b += 2.0;
        d = (d * a + b).inv();
        c = b + c.inv() * a;
        let del = c * d;
        h *= del;
        if (del - 1.0).norm() < 1e-16 {
            break;
        }
    }
    (Complex::new(x.cos(), -x.sin()) * h).im
}

fn si_series(z: Complex) -> Complex {
    let z2 = z * z;
    // term_n = (-1)^n z^(2n+1) / (2n+1)!
    let mut term = z;
    let mut sum = z;
    for n in 1..200 {
        let m = (2 * n) as f64;
        term = -term * z2 / (m * (m + 1.0));
        let contrib = term / (m + 1.0);
        sum += contrib;
        if contrib.norm() <= 1e-17 * sum.norm() {
            break;
        }
    }
    sum
}

fn si_segment(z: Complex) -> Complex {
    // ∫_0^1 sin(s z) / s ds
    let panels = (z.norm() / 2.0).ceil() as usize;
    let f = |s: f64| {
        if s == 0.0 {
            z
        } else {
            (z * s).sin() / s
        }
    };
    adaptive_unit_interval(&f, panels.max(1), 1e-15)
}
