//! Small numerical building blocks shared by the special functions, the
//! series engine and the quadrature routines.

use std::f64::consts::PI;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::Complex;

/// `sin(πx)` with exact zeros at the integers.
pub fn sin_pi_real(x: f64) -> f64 {
    if !x.is_finite() {
        return f64::NAN;
    }
    // reduce to r in [-1, 1], sin(πx) = ±sin(πr)
    let r = x % 2.0;
    let r = if r > 1.0 {
        r - 2.0
    } else if r < -1.0 {
        r + 2.0
    } else {
        r
    };
    if r == 0.0 || r.abs() == 1.0 {
        return 0.0;
    }
    let a = r.abs();
    let s = if a <= 0.25 {
        (PI * a).sin()
    } else if a <= 0.75 {
        (PI * (0.5 - a)).cos()
    } else {
        (PI * (1.0 - a)).sin()
    };
    s.copysign(r)
}

/// `cos(πx)` with exact zeros at the half-integers.
pub fn cos_pi_real(x: f64) -> f64 {
    if !x.is_finite() {
        return f64::NAN;
    }
    let a = (x % 2.0).abs();
    let a = if a > 1.0 { 2.0 - a } else { a };
    if a == 0.5 {
        return 0.0;
    }
    if a <= 0.25 {
        (PI * a).cos()
    } else if a <= 0.75 {
        (PI * (0.5 - a)).sin()
    } else {
        -(PI * (1.0 - a)).cos()
    }
}

/// `sin(πz)` for complex `z`.
pub fn sin_pi(z: Complex) -> Complex {
    if z.im == 0.0 {
        return Complex::new(sin_pi_real(z.re), 0.0);
    }
    let y = PI * z.im;
    Complex::new(sin_pi_real(z.re) * y.cosh(), cos_pi_real(z.re) * y.sinh())
}

/// `cos(πz)` for complex `z`.
pub fn cos_pi(z: Complex) -> Complex {
    if z.im == 0.0 {
        return Complex::new(cos_pi_real(z.re), 0.0);
    }
    let y = PI * z.im;
    Complex::new(cos_pi_real(z.re) * y.cosh(), -sin_pi_real(z.re) * y.sinh())
}

/// `e^z - 1` without cancellation for small `|z|`.
pub fn exp_m1(z: Complex) -> Complex {
    let half_sin = (0.5 * z.im).sin();
    Complex::new(
        z.re.exp_m1() * z.im.cos() - 2.0 * half_sin * half_sin,
        z.re.exp() * z.im.sin(),
    )
}

/// Principal power `base^exponent = exp(exponent · Log(base))`.
pub fn principal_pow(base: Complex, exponent: Complex) -> Complex {
    if base == Complex::new(0.0, 0.0) {
        return if exponent.re > 0.0 {
            Complex::new(0.0, 0.0)
        } else {
            Complex::new(f64::NAN, f64::NAN)
        };
    }
    (exponent * base.ln()).exp()
}

/// Nearest integer to `z` if `z` lies within `tol` of it.
pub fn near_integer(z: Complex, tol: f64) -> Option<i64> {
    let n = z.re.round();
    if (z.re - n).abs() <= tol && z.im.abs() <= tol && n.abs() < 9.0e15 {
        Some(n as i64)
    } else {
        None
    }
}

/// Exact integer test: zero imaginary part and integral real part.
pub fn exact_integer(z: Complex) -> Option<i64> {
    if z.im == 0.0 && z.re.fract() == 0.0 && z.re.abs() < 9.0e15 {
        Some(z.re as i64)
    } else {
        None
    }
}

pub fn is_finite(z: Complex) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Neumaier-compensated accumulator for complex sums.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: Complex,
    carry: Complex,
    abs_sum: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: Complex) {
        self.sum.re = neumaier_step(self.sum.re, x.re, &mut self.carry.re);
        self.sum.im = neumaier_step(self.sum.im, x.im, &mut self.carry.im);
        self.abs_sum += x.norm();
    }

    pub fn value(&self) -> Complex {
        self.sum + self.carry
    }

    /// Sum of the moduli of everything added so far.
    pub fn abs_sum(&self) -> f64 {
        self.abs_sum
    }
}

/// Unevaluated sum `hi + lo` of two doubles, about 106 significant bits.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl DoubleDouble {
    pub fn new(x: f64) -> Self {
        DoubleDouble { hi: x, lo: 0.0 }
    }

    /// `a - b` carried exactly.
    pub fn diff(a: f64, b: f64) -> Self {
        let (hi, lo) = two_sum(a, -b);
        DoubleDouble { hi, lo }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

impl Add for DoubleDouble {
    type Output = Self;

    fn add(self, o: Self) -> Self {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        DoubleDouble { hi, lo }
    }
}

impl Neg for DoubleDouble {
    type Output = Self;

    fn neg(self) -> Self {
        DoubleDouble {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for DoubleDouble {
    type Output = Self;

    fn sub(self, o: Self) -> Self {
        self + -o
    }
}

impl Mul for DoubleDouble {
    type Output = Self;

    fn mul(self, o: Self) -> Self {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        let (hi, lo) = quick_two_sum(p, e);
        DoubleDouble { hi, lo }
    }
}

impl Div for DoubleDouble {
    type Output = Self;

    fn div(self, o: Self) -> Self {
        // two Newton-style correction steps on the quotient
        let q1 = self.hi / o.hi;
        let r = self - o * DoubleDouble::new(q1);
        let q2 = r.hi / o.hi;
        let r = r - o * DoubleDouble::new(q2);
        let q3 = r.hi / o.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        DoubleDouble { hi, lo } + DoubleDouble::new(q3)
    }
}

/// Complex number with double-double parts.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct DdComplex {
    pub re: DoubleDouble,
    pub im: DoubleDouble,
}

impl From<Complex> for DdComplex {
    fn from(z: Complex) -> Self {
        DdComplex {
            re: DoubleDouble::new(z.re),
            im: DoubleDouble::new(z.im),
        }
    }
}

impl DdComplex {
    pub fn new(re: DoubleDouble, im: DoubleDouble) -> Self {
        DdComplex { re, im }
    }

    pub fn to_complex(self) -> Complex {
        Complex::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn norm(self) -> f64 {
        self.to_complex().norm()
    }
}

impl Add for DdComplex {
    type Output = Self;

    fn add(self, o: Self) -> Self {
        DdComplex::new(self.re + o.re, self.im + o.im)
    }
}

impl Mul for DdComplex {
    type Output = Self;

    fn mul(self, o: Self) -> Self {
        DdComplex::new(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)
    }
}

impl Div for DdComplex {
    type Output = Self;

    fn div(self, o: Self) -> Self {
        // scale by a power of two first so |o|^2 cannot overflow
        let m = o.re.hi.abs().max(o.im.hi.abs());
        let s = if m > 0.0 && m.is_finite() { 2f64.powi(-m.log2().floor() as i32) } else { 1.0 };
        let s = DoubleDouble::new(s);
        let (c, d) = (o.re * s, o.im * s);
        let den = c * c + d * d;
        let re = (self.re * c + self.im * d) / den;
        let im = (self.im * c - self.re * d) / den;
        DdComplex::new(re * s, im * s)
    }
}

fn neumaier_step(sum: f64, x: f64, carry: &mut f64) -> f64 {
    let t = sum + x;
    if sum.abs() >= x.abs() {
        *carry += (sum - t) + x;
    } else {
        *carry += (x - t) + sum;
    }
    t
}
