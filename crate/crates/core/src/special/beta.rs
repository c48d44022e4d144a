use crate::error::{Error, Result};
use crate::numeric::near_integer;
use crate::series::{sum_power_law, PowerLawSeries};
use crate::special::gamma::{gamma, is_pole, log_gamma};
use crate::{Complex, EvalOptions, Evaluation};

/// `B(p, q) = Γ(p)Γ(q)/Γ(p+q)` through log-gamma differences.
pub fn beta_gamma(p: Complex, q: Complex) -> Result<Complex> {
    if is_pole(p) {
        return Err(Error::Pole(p));
    }
    if is_pole(q) {
        return Err(Error::Pole(q));
    }
    let s = p + q;
    if is_pole(s) {
        return Ok(Complex::new(0.0, 0.0));
    }
    // direct gamma values are more accurate while they stay in range
    if let (Ok(a), Ok(b), Ok(c)) = (gamma(p), gamma(q), gamma(s)) {
        let v = a * b / c;
        if v.re.is_finite() && v.im.is_finite() && v != Complex::new(0.0, 0.0) {
            return Ok(v);
        }
    }
    let v = (log_gamma(p)? + log_gamma(q)? - log_gamma(s)?).exp();
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow("beta_gamma"))
    }
}

/// `B(p, q) = Σ_k C(p-1, k) (-1)^k / (q + k)` for `Re(p) > 0`.
///
/// The terms decay like `k^(-Re(p)-1)`; partial sums are extrapolated on
/// that power law. For `p - 1` a nonnegative integer the sum is finite.
pub fn beta_series(p: Complex, q: Complex, tol: f64, max_terms: usize) -> Result<Evaluation> {
    if !(p.re > 0.0) {
        return Err(Error::domain(format!("beta_series needs Re(p) > 0, got p = {p}")));
    }
    if is_pole(q) {
        return Err(Error::domain(format!("beta_series needs q off the nonpositive integers, got q = {q}")));
    }
    let opts = EvalOptions::default().with_tol(tol).with_max_terms(max_terms);
    opts.validate()?;
    let finite_len = match near_integer(p - 1.0, 0.0) {
        Some(m) if m >= 0 => Some(m as usize + 1),
        _ => None,
    };
    let cfg = PowerLawSeries {
        tail_exponent: p,
        first_block: 64,
        finite_len,
    };
    let mut coef = Complex::new(1.0, 0.0);
    let s = sum_power_law(
        |k| {
            let t = coef / (q + k as f64);
            // C(p-1, k+1)(-1)^(k+1) = C(p-1, k)(-1)^k (k+1-p)/(k+1)
            coef *= (Complex::new(k as f64 + 1.0, 0.0) - p) / (k as f64 + 1.0);
            t
        },
        &cfg,
        &opts,
    );
    Evaluation {
        value: s.value,
        abs_error_estimate: s.error_estimate,
        terms_used: s.terms_used,
        converged: s.converged,
    }
    .into_result()
}
