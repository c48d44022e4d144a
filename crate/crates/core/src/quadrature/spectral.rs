//! Integrals `∫ C(w, x) f(x) dx` through the Fourier transform of `f`.
//!
//! When `f̂` is known on `[-1/2, 1/2]`, pairing `f` with the sinc translates
//! gives `∫ f(x) sinc(x - a) dx = ∫_{-1/2}^{1/2} f̂(ξ) e^{2πiξa} dξ`, and the
//! sinc series for `C(w, x)` turns the integral into
//! `Σ_k C(w, k) ∫_{-1/2}^{1/2} f̂(ξ) e^{2πiξk} dξ`.

use crate::binomial::binom_gamma;
use crate::error::{Error, Result};
use crate::numeric::exact_integer;
use crate::quadrature::{integrate_line, integrate_pieces, Kernel, QuadratureSpec};
use crate::series::{sum_power_law, PowerLawSeries};
use crate::special::sinc;
use crate::{Complex, EvalOptions, Evaluation};

use std::f64::consts::PI;

/// `∫_{-1/2}^{1/2} f̂(ξ) e^{2πiξa} dξ` by quadrature, split at the kinks of
/// `f̂` and starting from about one panel per half oscillation.
pub fn spectral_moment(kernel: &Kernel, a: f64, spec: &QuadratureSpec) -> Result<Evaluation> {
    kernel.validate()?;
    spec.validate()?;
    let mut points = vec![-0.5];
    points.extend_from_slice(kernel.breakpoints());
    points.push(0.5);
    let pieces = (points.len() - 1) as f64;
    let per_piece = ((2.0 * a.abs() / pieces).ceil() as usize).max(1);
    let f = |xi: f64| kernel.spectrum(xi) * Complex::new(0.0, 2.0 * PI * xi * a).exp();
    integrate_pieces(&f, &points, per_piece, spec)
}

/// `∫_{-1/2}^{1/2} f̂(ξ) e^{2πiξk} dξ`, always by quadrature.
pub fn fourier_coefficient(kernel: &Kernel, k: u64, spec: &QuadratureSpec) -> Result<Complex> {
    Ok(spectral_moment(kernel, k as f64, spec)?.value)
}

/// Both sides of `∫ f(x) sinc(x - a) dx = ∫_{-1/2}^{1/2} f̂(ξ) e^{2πiξa} dξ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SincProjection {
    pub spectral: Evaluation,
    /// Line integral of `f(x) sinc(x - a)`; absent for tabulated kernels and
    /// for a real pole of the rational kernel, where it is singular.
    pub spatial: Option<Evaluation>,
    /// `|spectral - spatial|`.
    pub residual: Option<f64>,
}

impl SincProjection {
    pub fn value(&self) -> Complex {
        self.spectral.value
    }
}

pub fn sinc_project(kernel: &Kernel, a: f64, spec: &QuadratureSpec) -> Result<SincProjection> {
    let spectral = spectral_moment(kernel, a, spec)?;
    let singular = matches!(kernel, Kernel::RationalSimple(alpha) if alpha.im == 0.0);
    let spatial = if kernel.has_spatial_form() && !singular {
        let line_spec = QuadratureSpec {
            oscillation_period: spec.oscillation_period.or(Some(2.0)),
            ..*spec
        };
        let f = |x: f64| kernel.spatial(x).unwrap_or_default() * sinc(Complex::new(x - a, 0.0));
        Some(integrate_line(f, &line_spec)?)
    } else {
        None
    };
    let residual = spatial.map(|s| (s.value - spectral.value).norm());
    Ok(SincProjection {
        spectral,
        spatial,
        residual,
    })
}

fn check_w(w: Complex) -> Result<()> {
    if !(w.re > -1.0) {
        return Err(Error::domain(format!("needs Re(w) > -1, got w = {w}")));
    }
    Ok(())
}

fn finite_len(w: Complex) -> Option<usize> {
    match exact_integer(w) {
        Some(m) if m >= 0 => Some(m as usize + 1),
        _ => None,
    }
}

fn series_config(w: Complex) -> PowerLawSeries {
    PowerLawSeries {
        tail_exponent: w + 1.0,
        first_block: ((4.0 * w.norm()).ceil() as usize).next_power_of_two().max(64),
        finite_len: finite_len(w),
    }
}

/// `Σ_k C(w, k) c_k` with `c_k` the Fourier coefficients of the kernel's
/// spectrum; equals `∫ C(w, x) f(x) dx`. Closed-form coefficients are used
/// where the kernel has them, quadrature otherwise.
pub fn theorem3_evaluate(w: Complex, kernel: &Kernel, opts: &EvalOptions, spec: &QuadratureSpec) -> Result<Evaluation> {
    check_w(w)?;
    kernel.validate()?;
    opts.validate()?;
    spec.validate()?;
    let mut failure: Option<Error> = None;
    let mut quad_error = 0.0;
    let mut coef = Complex::new(1.0, 0.0);
    let summary = sum_power_law(
        |k| {
            let kf = k as f64;
            let b = coef;
            coef *= (w - kf) / (kf + 1.0);
            if failure.is_some() {
                return Complex::new(0.0, 0.0);
            }
            let c = match kernel.coefficient_closed_form(k as i64) {
                Some(c) => c,
                None => match spectral_moment(kernel, kf, spec) {
                    Ok(e) => {
                        quad_error += b.norm() * e.abs_error_estimate;
                        e.value
                    }
                    Err(e) => {
                        failure = Some(e);
                        Complex::new(0.0, 0.0)
                    }
                },
            };
            b * c
        },
        &series_config(w),
        opts,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    let error = summary.error_estimate + quad_error;
    Evaluation {
        value: summary.value,
        abs_error_estimate: error,
        terms_used: summary.terms_used,
        converged: summary.converged && error <= opts.target(summary.value.norm()),
    }
    .into_result()
}

/// `Σ_k C(w, k) g(k)` for `g` bandlimited to `[-bandwidth, bandwidth]`,
/// `bandwidth <= 1/2`; equals `∫ C(w, x) g(x) dx`.
pub fn corollary_sum<G>(w: Complex, g: G, bandwidth: f64, opts: &EvalOptions) -> Result<Evaluation>
where
    G: Fn(f64) -> Complex,
{
    check_w(w)?;
    opts.validate()?;
    if !(bandwidth > 0.0 && bandwidth <= 0.5) {
        return Err(Error::domain(format!("bandwidth must lie in (0, 1/2], got {bandwidth}")));
    }
    let mut coef = Complex::new(1.0, 0.0);
    let summary = sum_power_law(
        |k| {
            let kf = k as f64;
            let b = coef;
            coef *= (w - kf) / (kf + 1.0);
            if b == Complex::new(0.0, 0.0) {
                return b;
            }
            b * g(kf)
        },
        &series_config(w),
        opts,
    );
    Evaluation {
        value: summary.value,
        abs_error_estimate: summary.error_estimate,
        terms_used: summary.terms_used,
        converged: summary.converged,
    }
    .into_result()
}

/// `∫ C(w, x) f(x) dx` by direct quadrature over the line, with tail
/// acceleration on the period-2 oscillation of `C(w, x)`.
pub fn binom_kernel_integral(w: Complex, kernel: &Kernel, spec: &QuadratureSpec) -> Result<Evaluation> {
    check_w(w)?;
    kernel.validate()?;
    if !kernel.has_spatial_form() {
        return Err(Error::domain("tabulated kernels have no spatial form to integrate"));
    }
    let line_spec = QuadratureSpec {
        oscillation_period: spec.oscillation_period.or(Some(2.0)),
        ..*spec
    };
    let f = |x: f64| {
        let b = binom_gamma(w, Complex::new(x, 0.0)).unwrap_or(Complex::new(f64::NAN, f64::NAN));
        b * kernel.spatial(x).unwrap_or_default()
    };
    integrate_line(f, &line_spec)
}
