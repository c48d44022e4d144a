//! The generalized binomial coefficient `C(w, z)` and the series built on it.
//!
//! Three routes evaluate `C(w, z)`:
//!
//! * the gamma ratio `Γ(w+1) / (Γ(z+1) Γ(w-z+1))`, through `log_gamma`;
//! * the finite sinc sum `Σ_{k=0}^{m} C(m, k) sinc(z - k)` for integer `m >= 0`;
//! * the infinite sinc series `Σ_k C(w, k) sinc(z - k)` for `Re(w) > -1`.
//!
//! Both sinc routes factor `sin(πz)/π` out of the sum, since
//! `sinc(z - k) = (-1)^k sin(πz) / (π (z - k))`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{exact_integer, is_finite, near_integer, principal_pow, sin_pi, CompensatedSum, DdComplex, DoubleDouble};
use crate::series::{sum_power_law, PowerLawSeries};
use crate::special::gamma::{gamma, log_gamma, POLE_TOL};
use crate::{Complex, EvalOptions, Evaluation, Method};

/// Distance to a nonpositive integer at which a denominator gamma counts as
/// sitting on its pole.
pub const ZERO_BY_POLE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinomialArgs {
    pub w: Complex,
    pub z: Complex,
}

impl BinomialArgs {
    pub fn new(w: Complex, z: Complex) -> Self {
        BinomialArgs { w, z }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesDiagnostics {
    pub terms_used: usize,
    pub last_term_modulus: f64,
    /// `2 |a_K| K / (Re(w) + 1)`: bound on the remainder of `partial_sum`.
    pub tail_estimate: f64,
    /// `k (|a_k| / |a_{k+1}| - 1)` at the last term pair; NaN when undefined.
    pub empirical_raabe_limit: f64,
    /// Plain truncated sum before extrapolation.
    #[serde(with = "crate::json::complex")]
    pub partial_sum: Complex,
}

impl SeriesDiagnostics {
    fn exact(terms_used: usize, value: Complex) -> Self {
        SeriesDiagnostics {
            terms_used,
            last_term_modulus: 0.0,
            tail_estimate: 0.0,
            empirical_raabe_limit: f64::NAN,
            partial_sum: value,
        }
    }
}

fn one() -> Complex {
    Complex::new(1.0, 0.0)
}

fn zero() -> Complex {
    Complex::new(0.0, 0.0)
}

/// `w (w-1) ... (w-k+1) / k!`; 1 for `k = 0` and 0 for `k < 0`.
pub fn binom_int_k(w: Complex, k: i64) -> Result<Complex> {
    if k < 0 {
        return Ok(zero());
    }
    let mut acc = one();
    for j in 0..k {
        acc *= (w - j as f64) / (j + 1) as f64;
        if !is_finite(acc) {
            return Err(Error::Overflow("binom_int_k"));
        }
        if acc == zero() {
            break;
        }
    }
    Ok(acc)
}

fn is_negative_integer(w: Complex) -> bool {
    matches!(near_integer(w, POLE_TOL), Some(n) if n <= -1)
}

fn on_nonpositive_integer(z: Complex) -> bool {
    matches!(near_integer(z, ZERO_BY_POLE_TOL), Some(n) if n <= 0)
}

/// `C(w, z) = Γ(w+1) / (Γ(z+1) Γ(w-z+1))`, zero where a denominator gamma
/// has a pole and the numerator does not.
pub fn binom_gamma(w: Complex, z: Complex) -> Result<Complex> {
    if is_negative_integer(w) {
        return Err(Error::domain(format!("gamma ratio needs w off the negative integers, got w = {w}")));
    }
    if on_nonpositive_integer(z + 1.0) || on_nonpositive_integer(w - z + 1.0) {
        return Ok(zero());
    }
    if let Some(n) = exact_integer(z) {
        if (0..=64).contains(&n) {
            return binom_int_k(w, n);
        }
    }
    // direct gamma values carry less rounding than exp of a log difference
    if let (Ok(a), Ok(b), Ok(c)) = (gamma(w + 1.0), gamma(z + 1.0), gamma(w - z + 1.0)) {
        let d = b * c;
        let v = a / d;
        if is_finite(d) && d != zero() && is_finite(v) && v != zero() {
            return Ok(v);
        }
    }
    let v = (log_gamma(w + 1.0)? - log_gamma(z + 1.0)? - log_gamma(w - z + 1.0)?).exp();
    if is_finite(v) {
        Ok(v)
    } else {
        Err(Error::Overflow("binom_gamma"))
    }
}

/// `Σ_{k=0}^{m} C(m, k) sinc(z - k)`.
///
/// The alternating sum `Σ C(m,k) (-1)^k / (z - k)` cancels heavily once
/// `|z|` exceeds `m`, so it is accumulated in double-double arithmetic.
pub fn binom_sinc_finite(m: u32, z: Complex) -> Complex {
    if let Some(n) = exact_integer(z) {
        if (0..=m as i64).contains(&n) {
            return binom_int_k(Complex::new(m as f64, 0.0), n).unwrap_or(Complex::new(f64::NAN, 0.0));
        }
        return zero();
    }
    let mut re = DoubleDouble::new(0.0);
    let mut im = DoubleDouble::new(0.0);
    let b = DoubleDouble::new(z.im);
    let mut coef = 1.0f64;
    for k in 0..=m {
        // (z - k)^{-1} with the subtraction carried exactly
        let a = DoubleDouble::diff(z.re, k as f64);
        let d = a * a + b * b;
        let c = DoubleDouble::new(if k % 2 == 0 { coef } else { -coef });
        re = re + a * c / d;
        im = im - b * c / d;
        coef = coef * (m - k) as f64 / (k + 1) as f64;
    }
    let sum = Complex::new(re.to_f64(), im.to_f64());
    sin_pi(z) / PI * sum
}

fn first_block(w: Complex, z: Complex) -> usize {
    let scale = 4.0 * (w.norm() + z.norm());
    (scale.ceil() as usize).next_power_of_two().max(64)
}

/// `Σ_k C(w, k) sinc(z - k)` for `Re(w) > -1`, with the remainder of the
/// partial sums extrapolated on its `K^{-(w+1)}, K^{-(w+2)}, ...` expansion.
pub fn binom_sinc_series(args: BinomialArgs, opts: &EvalOptions) -> Result<(Evaluation, SeriesDiagnostics)> {
    opts.validate()?;
    let BinomialArgs { w, z } = args;
    if !(w.re > -1.0) {
        return Err(Error::domain(format!("sinc series needs Re(w) > -1, got w = {w}")));
    }
    if let Some(n) = exact_integer(z) {
        // sinc sifts the integer lattice
        let v = binom_int_k(w, n)?;
        return Ok((Evaluation::exact(v, 1), SeriesDiagnostics::exact(1, v)));
    }
    if let Some(m) = exact_integer(w) {
        if (0..=u32::MAX as i64).contains(&m) {
            let v = binom_sinc_finite(m as u32, z);
            let used = m as usize + 1;
            return Ok((Evaluation::exact(v, used), SeriesDiagnostics::exact(used, v)));
        }
    }

    let scale = sin_pi(z) / PI;
    let s = scale.norm();
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::Overflow("binom_sinc_series"));
    }
    // tolerances in units of the factored-out sum
    let inner = EvalOptions {
        abs_tol: opts.abs_tol / s,
        ..*opts
    };
    let cfg = PowerLawSeries {
        tail_exponent: w + 1.0,
        first_block: first_block(w, z),
        finite_len: None,
    };
    // Off the real axis the terms can exceed the sum by many orders of
    // magnitude, so they are carried in double-double.
    let mut coef = DdComplex::from(one());
    let zim = DoubleDouble::new(z.im);
    let wim = DoubleDouble::new(-w.im);
    let summary = sum_power_law(
        |k| {
            let kf = k as f64;
            // C(w, k) (-1)^k / (z - k)
            let t = coef / DdComplex::new(DoubleDouble::diff(z.re, kf), zim);
            let k1 = DoubleDouble::new(kf + 1.0);
            coef = coef * DdComplex::new(DoubleDouble::diff(kf, w.re) / k1, wim / k1);
            t
        },
        &cfg,
        &inner,
    );

    let last = summary.last_term.norm();
    let prev = summary.prev_term.norm();
    let k = summary.terms_used as f64;
    let raabe = if last > 0.0 && prev > 0.0 {
        (k - 1.0) * (prev / last - 1.0)
    } else {
        f64::NAN
    };
    let diagnostics = SeriesDiagnostics {
        terms_used: summary.terms_used,
        last_term_modulus: s * last,
        tail_estimate: s * summary.raw_tail_estimate,
        empirical_raabe_limit: raabe,
        partial_sum: scale * summary.partial_sum,
    };
    let value = scale * summary.value;
    let error = s * summary.error_estimate;
    let eval = Evaluation {
        value,
        abs_error_estimate: error,
        terms_used: summary.terms_used,
        converged: summary.converged && error <= opts.target(value.norm()),
    }
    .into_result()?;
    Ok((eval, diagnostics))
}

/// Dispatches to the route selected in `opts.method`.
pub fn binom_eval(args: BinomialArgs, opts: &EvalOptions) -> Result<Evaluation> {
    binom_eval_routed(args, opts).map(|r| r.0)
}

/// Like [`binom_eval`], also returning the route actually taken (never
/// `Auto`).
pub fn binom_eval_routed(args: BinomialArgs, opts: &EvalOptions) -> Result<(Evaluation, Method)> {
    opts.validate()?;
    let BinomialArgs { w, z } = args;
    match opts.method {
        Method::GammaRatio => gamma_route(w, z).map(|e| (e, Method::GammaRatio)),
        Method::FiniteSincSum => match exact_integer(w) {
            Some(m) if (0..=u32::MAX as i64).contains(&m) => {
                let v = binom_sinc_finite(m as u32, z);
                let err = 8.0 * f64::EPSILON * v.norm().max(f64::MIN_POSITIVE);
                let e = Evaluation {
                    value: v,
                    abs_error_estimate: err,
                    terms_used: m as usize + 1,
                    converged: true,
                };
                Ok((e, Method::FiniteSincSum))
            }
            _ => Err(Error::domain(format!("finite sinc sum needs w a nonnegative integer, got w = {w}"))),
        },
        Method::InfiniteSincSeries => binom_sinc_series(args, opts).map(|r| (r.0, Method::InfiniteSincSeries)),
        Method::Auto => match gamma_route(w, z) {
            Ok(e) => Ok((e, Method::GammaRatio)),
            Err(Error::Overflow(_)) | Err(Error::Domain(_)) if w.re > -1.0 => {
                let tol = opts.abs_tol.min(opts.rel_tol);
                if w.re < -0.9 && tol < 1e-6 {
                    return Err(Error::NoConvergence {
                        best: Box::new(Evaluation {
                            value: Complex::new(f64::NAN, f64::NAN),
                            abs_error_estimate: f64::INFINITY,
                            terms_used: 0,
                            converged: false,
                        }),
                    });
                }
                binom_sinc_series(args, opts).map(|r| (r.0, Method::InfiniteSincSeries))
            }
            Err(e) => Err(e),
        },
    }
}

fn gamma_route(w: Complex, z: Complex) -> Result<Evaluation> {
    let v = binom_gamma(w, z)?;
    // rounding in exp of a log-gamma difference grows with the size of the logs
    let size = 1.0 + (w.norm() + z.norm() + 2.0).ln() * (w.norm() + z.norm() + 2.0);
    Ok(Evaluation {
        value: v,
        abs_error_estimate: 8.0 * f64::EPSILON * size * v.norm(),
        terms_used: 1,
        converged: true,
    })
}

/// Partial sums of `Σ_k C(w, k) z^k`, converging to `(1+z)^w` (principal
/// branch) or to 0 at `z = -1`.
pub fn binom_theorem_sum(w: Complex, z: Complex, opts: &EvalOptions) -> Result<Evaluation> {
    opts.validate()?;
    if let Some(m) = exact_integer(w) {
        if m >= 0 {
            let m = m as usize;
            if m + 1 > opts.max_terms {
                return Err(Error::NoConvergence {
                    best: Box::new(Evaluation {
                        value: Complex::new(f64::NAN, f64::NAN),
                        abs_error_estimate: f64::INFINITY,
                        terms_used: 0,
                        converged: false,
                    }),
                });
            }
            let mut acc = CompensatedSum::new();
            let mut t = one();
            for k in 0..=m {
                acc.add(t);
                t *= z * ((m - k) as f64) / (k + 1) as f64;
            }
            return Ok(Evaluation {
                value: acc.value(),
                abs_error_estimate: 4.0 * f64::EPSILON * acc.abs_sum(),
                terms_used: m + 1,
                converged: true,
            });
        }
    }
    let r = z.norm();
    if (z + 1.0).norm() <= ZERO_BY_POLE_TOL {
        if !(w.re > 0.0) {
            return Err(Error::domain(format!("binomial series at z = -1 needs Re(w) > 0, got w = {w}")));
        }
        return alternating_unit_sum(w, opts);
    }
    if (r - 1.0).abs() <= ZERO_BY_POLE_TOL {
        if !(w.re > -1.0) {
            return Err(Error::domain(format!("binomial series on |z| = 1 needs Re(w) > -1, got w = {w}")));
        }
        return unit_circle_sum(w, z, opts);
    }
    if r > 1.0 {
        return Err(Error::domain(format!(
            "binomial series diverges for |z| > 1 unless w is a nonnegative integer (z = {z}, w = {w})"
        )));
    }
    geometric_sum(w, z, opts)
}

fn geometric_sum(w: Complex, z: Complex, opts: &EvalOptions) -> Result<Evaluation> {
    let r = z.norm();
    let mut acc = CompensatedSum::new();
    let mut t = one();
    let mut k = 0usize;
    loop {
        acc.add(t);
        let kf = k as f64;
        let next = t * z * (w - kf) / (kf + 1.0);
        k += 1;
        // ratios |t_{j+1}/t_j| for j > k stay below q once k > |w|
        let q = ((w - (kf + 1.0)).norm() / (kf + 2.0)).max(1.0) * r;
        if kf + 1.0 > w.norm() && q < 1.0 {
            let bound = next.norm() / (1.0 - q) + 4.0 * f64::EPSILON * acc.abs_sum();
            if bound <= opts.target(acc.value().norm()) {
                return Ok(Evaluation {
                    value: acc.value(),
                    abs_error_estimate: bound,
                    terms_used: k,
                    converged: true,
                });
            }
        }
        if k >= opts.max_terms {
            return Err(no_convergence(acc.value(), next.norm() / (1.0 - r), k));
        }
        t = next;
    }
}

/// `|z| = 1`, `z != -1`: the terms behave like `c k^{-w-1} (-z)^k` and the
/// ratio of consecutive terms is `ρ_k = -z (1 - (w+1)/(k+1))`. Adding
/// `t_{K+1} / (1 - ρ_{K+1})` for the remainder leaves an error of order
/// `|t_K| |w+1| / (K |1+z|^2)`, which is the reported estimate (doubled).
fn unit_circle_sum(w: Complex, z: Complex, opts: &EvalOptions) -> Result<Evaluation> {
    let gap = (one() + z).norm_sqr();
    let mut acc = CompensatedSum::new();
    let mut t = one();
    let mut k = 0usize;
    loop {
        acc.add(t);
        let kf = k as f64;
        let next = t * z * (w - kf) / (kf + 1.0);
        k += 1;
        let rho = z * (w - (kf + 1.0)) / (kf + 2.0);
        let corrected = acc.value() + next / (one() - rho);
        let err = 2.0 * next.norm() * ((w + 1.0).norm() + 1.0) / ((kf + 1.0) * gap)
            + 4.0 * f64::EPSILON * acc.abs_sum();
        if kf > 2.0 * w.norm() && err <= opts.target(corrected.norm()) {
            return Ok(Evaluation {
                value: corrected,
                abs_error_estimate: err,
                terms_used: k,
                converged: true,
            });
        }
        if k >= opts.max_terms {
            return Err(no_convergence(corrected, err, k));
        }
        t = next;
    }
}

/// `Σ C(w, k) (-1)^k`: partial sums equal `(-1)^K C(w-1, K)` and decay like
/// `K^{-w}`.
fn alternating_unit_sum(w: Complex, opts: &EvalOptions) -> Result<Evaluation> {
    let cfg = PowerLawSeries {
        tail_exponent: w,
        first_block: first_block(w, one()),
        finite_len: None,
    };
    let mut coef = one();
    let s = sum_power_law(
        |k| {
            let kf = k as f64;
            let t = coef;
            coef *= (Complex::new(kf, 0.0) - w) / (kf + 1.0);
            t
        },
        &cfg,
        opts,
    );
    Evaluation {
        value: s.value,
        abs_error_estimate: s.error_estimate,
        terms_used: s.terms_used,
        converged: s.converged,
    }
    .into_result()
}

fn no_convergence(value: Complex, error: f64, terms: usize) -> Error {
    Error::NoConvergence {
        best: Box::new(Evaluation {
            value,
            abs_error_estimate: error,
            terms_used: terms,
            converged: false,
        }),
    }
}

/// `(1 + e^{-2πiξ})^w rect(ξ)`, the Fourier transform of `x ↦ C(w, x)`.
pub fn binom_fourier_transform(w: Complex, xi: f64) -> Result<Complex> {
    if !(w.re > 0.0) && w != zero() {
        return Err(Error::domain(format!("closed-form transform needs Re(w) > 0 or w = 0, got w = {w}")));
    }
    if !(xi.abs() < 0.5) {
        return Ok(zero());
    }
    if w == zero() {
        return Ok(one());
    }
    // 1 + e^{-2πiξ} = 2 cos(πξ) e^{-iπξ}, with argument -πξ in (-π/2, π/2)
    let log = Complex::new((2.0 * (PI * xi).cos()).ln(), -PI * xi);
    Ok((w * log).exp())
}

/// `(1 + z)^w` on the principal branch.
pub fn principal_binomial_power(w: Complex, z: Complex) -> Complex {
    principal_pow(one() + z, w)
}

/// Raabe quantity `k (a_k / a_{k+1} - 1)` at `k = k_max` for
/// `a_k = |C(w, k) sinc(z - k)|`, from the exact term ratio.
pub fn raabe_rate(w: Complex, z: Complex, k_max: u64) -> Result<f64> {
    if !(w.re > -1.0) {
        return Err(Error::domain(format!("Raabe rate needs Re(w) > -1, got w = {w}")));
    }
    if k_max < 64 {
        return Err(Error::domain(format!("Raabe rate needs k_max >= 64, got {k_max}")));
    }
    let k = k_max as f64;
    if let Some(n) = exact_integer(z) {
        if n >= 0 && n as f64 <= k + 1.0 {
            return Err(Error::domain(format!("z = {n} makes a sinc factor vanish")));
        }
    }
    if (w - k).norm() == 0.0 {
        return Err(Error::domain("C(w, k+1) vanishes at k_max"));
    }
    // |C(w,k)/C(w,k+1)| = (k+1)/|w-k|, |sinc(z-k)/sinc(z-k-1)| = |z-k-1|/|z-k|
    let ratio = (k + 1.0) / (w - k).norm() * (z - (k + 1.0)).norm() / (z - k).norm();
    Ok(k * (ratio - 1.0))
}
