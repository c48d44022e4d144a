//! Adaptive quadrature on finite intervals and on the real line, Fourier
//! spectra of the built-in kernels, and the integral-to-series evaluators.

pub(crate) mod gauss_kronrod;
mod kernel;
mod line;
mod spectral;
mod tabulated;

pub use kernel::Kernel;
pub use line::integrate_line;
pub use spectral::{
    binom_kernel_integral, corollary_sum, fourier_coefficient, sinc_project, spectral_moment, theorem3_evaluate,
    SincProjection,
};
pub use tabulated::TabulatedSpectrum;

use crate::error::{Error, Result};
use crate::{Complex, Evaluation};

/// Controls for [`integrate_finite`] and [`integrate_line`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    /// Absolute error target summed over panels.
    pub panel_tol: f64,
    pub max_panels: usize,
    /// Half-width of the directly integrated core around `center`.
    pub truncation_radius: f64,
    /// Oscillation period of the integrand; enables tail acceleration.
    pub oscillation_period: Option<f64>,
    /// `d` in an envelope bound `|f(x)| <= C |x|^-d`, used for the truncation
    /// tail bound when no period is declared.
    pub decay_exponent: Option<f64>,
    pub center: f64,
    /// Overall error target deciding `converged` for line integrals.
    pub tol: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            panel_tol: 1e-10,
            max_panels: 1 << 16,
            truncation_radius: 8.0,
            oscillation_period: None,
            decay_exponent: None,
            center: 0.0,
            tol: 1e-8,
        }
    }
}

impl QuadratureSpec {
    pub fn with_period(mut self, period: f64) -> Self {
        self.oscillation_period = Some(period);
        self
    }

    pub fn with_decay(mut self, exponent: f64) -> Self {
        self.decay_exponent = Some(exponent);
        self
    }

    pub fn with_radius(mut self, radius: f64) -> Self {
        self.truncation_radius = radius;
        self
    }

    pub fn with_center(mut self, center: f64) -> Self {
        self.center = center;
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.panel_tol > 0.0) || !(self.tol > 0.0) {
            return Err(Error::Input("quadrature tolerances must be positive".into()));
        }
        if !(self.truncation_radius > 0.0) || !self.truncation_radius.is_finite() {
            return Err(Error::Input("truncation radius must be positive".into()));
        }
        if self.max_panels == 0 {
            return Err(Error::Input("max_panels must be at least 1".into()));
        }
        if let Some(p) = self.oscillation_period {
            if !(p > 0.0) || !p.is_finite() {
                return Err(Error::Input("oscillation period must be positive".into()));
            }
        }
        if !self.center.is_finite() {
            return Err(Error::Input("center must be finite".into()));
        }
        Ok(())
    }
}

/// `∫_a^b f` by adaptive Gauss–Kronrod bisection. When a period is declared
/// the interval starts out cut into half-period panels.
pub fn integrate_finite<F>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<Evaluation>
where
    F: Fn(f64) -> Complex,
{
    spec.validate()?;
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::Input(format!("integration bounds must satisfy a < b, got [{a}, {b}]")));
    }
    let initial = match spec.oscillation_period {
        Some(p) => ((b - a) / (0.5 * p)).ceil().max(1.0) as usize,
        None => 1,
    };
    integrate_pieces(&f, &[a, b], initial, spec)
}

/// Integrates over consecutive pieces `[points[i], points[i+1]]`, each
/// starting from `per_piece` panels, sharing one panel budget.
pub(crate) fn integrate_pieces<F>(f: &F, points: &[f64], per_piece: usize, spec: &QuadratureSpec) -> Result<Evaluation>
where
    F: Fn(f64) -> Complex + ?Sized,
{
    let pieces = points.len().saturating_sub(1).max(1);
    let share = (spec.max_panels / pieces).max(1);
    let tol = spec.panel_tol / pieces as f64;
    let mut value = Complex::new(0.0, 0.0);
    let mut error = 0.0;
    let mut panels = 0;
    let mut converged = true;
    for w in points.windows(2) {
        let r = gauss_kronrod::adaptive(f, w[0], w[1], per_piece.min(share), tol, 0.0, share);
        if !crate::numeric::is_finite(r.value) {
            return Err(Error::Input(format!("integrand is not finite on [{}, {}]", w[0], w[1])));
        }
        value += r.value;
        error += r.error;
        panels += r.panels;
        if !r.converged {
            if r.panels >= share {
                return Err(Error::NoConvergence {
                    best: Box::new(Evaluation {
                        value,
                        abs_error_estimate: error,
                        terms_used: panels,
                        converged: false,
                    }),
                });
            }
            converged = false;
        }
    }
    Ok(Evaluation {
        value,
        abs_error_estimate: error,
        terms_used: panels,
        converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::{rect, si, sinc};
    use std::f64::consts::PI;

    fn real(f: impl Fn(f64) -> f64) -> impl Fn(f64) -> Complex {
        move |x| Complex::new(f(x), 0.0)
    }

    #[test]
    fn finite_examples() {
        let spec = QuadratureSpec::default();
        let one = integrate_finite(real(|_| 1.0), 0.0, 1.0, &spec).unwrap();
        assert!((one.value.re - 1.0).abs() < 1e-15);
        let s = integrate_finite(real(|t: f64| if t == 0.0 { 1.0 } else { t.sin() / t }), 0.0, PI, &spec).unwrap();
        assert!((s.value - si(Complex::new(PI, 0.0))).norm() < 1e-12);
        let r = integrate_finite(real(rect), -0.5, 0.5, &spec).unwrap();
        assert!((r.value.re - 1.0).abs() < 1e-14);
        let e = integrate_finite(real(|x: f64| (-2.0 * PI * x.abs()).exp()), -0.5, 0.5, &spec).unwrap();
        assert!((e.value.re - (1.0 - (-PI).exp()) / PI).abs() < 1e-11);
        assert!(e.abs_error_estimate <= spec.panel_tol);
    }

    #[test]
    fn bad_bounds_are_rejected() {
        let spec = QuadratureSpec::default();
        assert!(integrate_finite(real(|_| 1.0), 1.0, 1.0, &spec).is_err());
        assert!(integrate_finite(real(|_| 1.0), 2.0, 1.0, &spec).is_err());
    }

    #[test]
    fn panel_budget_gives_no_convergence() {
        let spec = QuadratureSpec {
            max_panels: 4,
            panel_tol: 1e-14,
            ..QuadratureSpec::default()
        };
        let r = integrate_finite(real(|x: f64| x.powf(-0.9)), 0.0, 1.0, &spec);
        assert!(matches!(r, Err(Error::NoConvergence { .. })));
        let r = integrate_finite(real(|x: f64| 1.0 / x), -1.0, 1.0, &spec);
        assert!(matches!(r, Err(Error::Input(_))));
    }

    #[test]
    fn line_sinc_integrates_to_one() {
        let spec = QuadratureSpec::default().with_period(2.0);
        let r = integrate_line(|x| sinc(Complex::new(x, 0.0)), &spec).unwrap();
        assert!((r.value - 1.0).norm() < 1e-9, "{}", r.value);
        assert!(r.converged);
        assert!(r.abs_error_estimate >= (r.value - 1.0).norm());
    }

    #[test]
    fn line_fourier_pair_of_lorentzian() {
        // ∫ e^{-2πiξx}/(x²+1) dx = π e^{-2π|ξ|}
        for xi in [0.0f64, 0.2, 0.45] {
            let spec = QuadratureSpec::default().with_period(if xi == 0.0 { 2.0 } else { 1.0 / xi });
            let r = integrate_line(
                |x| Complex::new(0.0, -2.0 * PI * xi * x).exp() / (x * x + 1.0),
                &spec,
            )
            .unwrap();
            let exact = PI * (-2.0 * PI * xi).exp();
            assert!((r.value.re - exact).abs() < 1e-9 && r.value.im.abs() < 1e-9, "xi {xi}: {}", r.value);
        }
    }

    #[test]
    fn truncated_line_uses_decay_bound() {
        let spec = QuadratureSpec::default().with_decay(2.0).with_radius(200.0).with_tol(1e-2);
        let r = integrate_line(real(|x: f64| 1.0 / (x * x + 1.0)), &spec).unwrap();
        assert!((r.value.re - PI).abs() <= r.abs_error_estimate);
        assert!(r.abs_error_estimate < 0.05);
    }

    #[test]
    fn slow_decay_without_period_is_divergent() {
        let spec = QuadratureSpec::default().with_decay(0.5);
        let r = integrate_line(real(|x: f64| 1.0 / (x.abs() + 1.0).sqrt()), &spec);
        assert!(matches!(r, Err(Error::DivergentTail(_))));
        let spec = QuadratureSpec::default();
        assert!(matches!(integrate_line(real(|_| 1.0), &spec), Err(Error::DivergentTail(_))));
    }

    #[test]
    fn growing_tail_is_divergent() {
        let spec = QuadratureSpec::default().with_period(2.0);
        let r = integrate_line(real(|x: f64| x * (PI * x).sin()), &spec);
        assert!(matches!(r, Err(Error::DivergentTail(_))));
    }
}
