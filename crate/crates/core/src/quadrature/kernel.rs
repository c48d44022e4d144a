use std::f64::consts::PI;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numeric::exact_integer;
use crate::quadrature::TabulatedSpectrum;
use crate::special::sinc;
use crate::Complex;

/// Integrands `f` paired with their Fourier transform
/// `f̂(ξ) = ∫ f(x) e^{-2πiξx} dx` on `[-1/2, 1/2]`.
#[derive(Debug, Clone, PartialEq)]
pub enum Kernel {
    /// `1/(x + α)`, for `Im(α) > 0` or `α` a positive integer.
    RationalSimple(Complex),
    /// `1/(x² + α²)`, for `Re(α) > 0`.
    RationalSquare(Complex),
    /// `sech(πx/α)`, for `Re(α) > 0`.
    Sech(Complex),
    /// `sinc(x - a)`.
    SincShift(Complex),
    /// Sampled `f̂` only; there is no spatial form.
    Tabulated(Arc<TabulatedSpectrum>),
}

impl Kernel {
    pub fn name(&self) -> &'static str {
        match self {
            Kernel::RationalSimple(_) => "rational-simple",
            Kernel::RationalSquare(_) => "rational-square",
            Kernel::Sech(_) => "sech",
            Kernel::SincShift(_) => "sinc-shift",
            Kernel::Tabulated(_) => "tabulated",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Kernel::RationalSimple(a) => {
                let positive_integer = matches!(exact_integer(*a), Some(n) if n >= 1);
                if !(a.im > 0.0 || positive_integer) {
                    return Err(Error::domain(format!(
                        "rational-simple kernel needs Im(alpha) > 0 or alpha a positive integer, got {a}"
                    )));
                }
            }
            Kernel::RationalSquare(a) | Kernel::Sech(a) => {
                if !(a.re > 0.0) {
                    return Err(Error::domain(format!("{} kernel needs Re(alpha) > 0, got {a}", self.name())));
                }
            }
            Kernel::SincShift(a) => {
                if !(a.re.is_finite() && a.im.is_finite()) {
                    return Err(Error::domain("sinc-shift needs a finite shift"));
                }
            }
            Kernel::Tabulated(_) => {}
        }
        Ok(())
    }

    /// `f(x)`, when the kernel has a spatial form.
    pub fn spatial(&self, x: f64) -> Option<Complex> {
        let x = Complex::new(x, 0.0);
        match self {
            Kernel::RationalSimple(a) => Some((x + a).inv()),
            Kernel::RationalSquare(a) => Some((x * x + a * a).inv()),
            Kernel::Sech(a) => {
                let u = x * PI / a;
                // sech u = 2e^{-u}/(1 + e^{-2u}) for Re u >= 0, stable for large |u|
                let u = if u.re < 0.0 { -u } else { u };
                let e = (-u).exp();
                Some(e * 2.0 / (e * e + 1.0))
            }
            Kernel::SincShift(a) => Some(sinc(x - a)),
            Kernel::Tabulated(_) => None,
        }
    }

    pub fn has_spatial_form(&self) -> bool {
        !matches!(self, Kernel::Tabulated(_))
    }

    /// `f̂(ξ)` for `|ξ| <= 1/2`.
    pub fn spectrum(&self, xi: f64) -> Complex {
        match self {
            Kernel::RationalSimple(a) => {
                let phase = (Complex::new(0.0, 2.0 * PI * xi) * a).exp();
                if a.im == 0.0 {
                    // principal value transform for a real pole
                    Complex::new(0.0, -PI * xi.signum()) * phase
                } else if xi > 0.0 {
                    Complex::new(0.0, -2.0 * PI) * phase
                } else {
                    Complex::new(0.0, 0.0)
                }
            }
            Kernel::RationalSquare(a) => (-a * (2.0 * PI * xi.abs())).exp() * PI / a,
            Kernel::Sech(a) => {
                let u = a * (PI * xi);
                let u = if u.re < 0.0 { -u } else { u };
                let e = (-u).exp();
                a * e * 2.0 / (e * e + 1.0)
            }
            Kernel::SincShift(a) => (Complex::new(0.0, -2.0 * PI * xi) * a).exp(),
            Kernel::Tabulated(t) => t.eval(xi),
        }
    }

    /// Points in `(-1/2, 1/2)` where `f̂` has a jump or a kink.
    pub(crate) fn breakpoints(&self) -> &'static [f64] {
        match self {
            Kernel::RationalSimple(_) | Kernel::RationalSquare(_) => &[0.0],
            _ => &[],
        }
    }

    /// `∫_{-1/2}^{1/2} f̂(ξ) e^{2πiξk} dξ` in closed form where one is known.
    pub fn coefficient_closed_form(&self, k: i64) -> Option<Complex> {
        let kf = k as f64;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        match self {
            Kernel::RationalSimple(a) => {
                let phase = (Complex::new(0.0, PI) * a).exp();
                Some((Complex::new(1.0, 0.0) - phase * sign) / (a + kf))
            }
            Kernel::RationalSquare(a) => {
                let damp = (-a * PI).exp();
                Some((Complex::new(1.0, 0.0) - damp * sign) / (a * a + kf * kf))
            }
            Kernel::SincShift(a) => Some(sinc(Complex::new(kf, 0.0) - a)),
            Kernel::Sech(_) | Kernel::Tabulated(_) => None,
        }
    }
}
