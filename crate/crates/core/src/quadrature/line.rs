//! Integration over the whole real line.
//!
//! With a declared oscillation period the line is cut into half-period
//! panels: a core of panels within the truncation radius is integrated
//! directly and each tail is summed as the sequence of its panel integrals,
//! accelerated with the Levin u-transform. Without a period the integrand is
//! truncated at the radius and a power-law tail bound is added to the error.

use crate::error::{Error, Result};
use crate::numeric::CompensatedSum;
use crate::quadrature::gauss_kronrod::adaptive;
use crate::quadrature::QuadratureSpec;
use crate::{Complex, Evaluation};

const TAIL_PANELS: usize = 40;
const LEVIN_STARTS: [usize; 4] = [0, 2, 4, 8];
const LEVIN_MAX_ORDER: usize = 12;
const ESTIMATE_SAFETY: f64 = 4.0;

pub fn integrate_line<F>(f: F, spec: &QuadratureSpec) -> Result<Evaluation>
where
    F: Fn(f64) -> Complex,
{
    spec.validate()?;
    match spec.oscillation_period {
        Some(period) => accelerated(&f, period, spec),
        None => truncated(&f, spec),
    }
}

fn accelerated<F: Fn(f64) -> Complex>(f: &F, period: f64, spec: &QuadratureSpec) -> Result<Evaluation> {
    let h = 0.5 * period;
    let core_panels = (spec.truncation_radius / h).ceil().max(1.0) as usize;
    let reach = core_panels as f64 * h;
    let (lo, hi) = (spec.center - reach, spec.center + reach);

    let core = adaptive(f, lo, hi, 2 * core_panels, spec.panel_tol, 0.0, spec.max_panels);
    let mut panels = core.panels;
    if !core.converged && core.panels >= spec.max_panels {
        return Err(no_convergence(core.value, core.error, panels));
    }

    let beta = core_panels as f64 + 1.0;
    let mut total = core.value;
    let mut error = core.error;
    for dir in [1.0, -1.0] {
        let start = if dir > 0.0 { hi } else { lo };
        let mut terms = Vec::with_capacity(TAIL_PANELS);
        let mut quad_err = 0.0;
        for j in 0..TAIL_PANELS {
            let x0 = start + dir * h * j as f64;
            let x1 = start + dir * h * (j + 1) as f64;
            let (a, b, sign) = if dir > 0.0 { (x0, x1, 1.0) } else { (x1, x0, 1.0) };
            let budget = spec.max_panels.saturating_sub(panels).max(1);
            let p = adaptive(f, a, b, 1, 1e-3 * spec.panel_tol, 0.0, budget);
            panels += p.panels;
            quad_err += p.error;
            terms.push(p.value * sign);
        }
        if panels >= spec.max_panels {
            return Err(no_convergence(total, f64::INFINITY, panels));
        }
        check_tail_decay(&terms)?;
        let tail = levin_tail(&terms, beta);
        total += tail.value;
        error += tail.error + quad_err;
    }

    Ok(Evaluation {
        value: total,
        abs_error_estimate: error,
        terms_used: panels,
        converged: error <= spec.tol,
    })
}

fn check_tail_decay(terms: &[Complex]) -> Result<()> {
    let head = terms[..8].iter().map(|t| t.norm()).fold(0.0, f64::max);
    let end = terms[terms.len() - 8..].iter().map(|t| t.norm()).fold(0.0, f64::max);
    if end > head && end > 1e-300 {
        return Err(Error::DivergentTail(format!(
            "panel integrals grow from {head:e} to {end:e} along the tail"
        )));
    }
    Ok(())
}

struct Tail {
    value: Complex,
    error: f64,
}

/// Sum of the panel sequence `terms` using the best Levin u-transform over a
/// small set of starting indices and orders.
fn levin_tail(terms: &[Complex], beta: f64) -> Tail {
    let mut partial = Vec::with_capacity(terms.len());
    let mut acc = CompensatedSum::new();
    for &t in terms {
        acc.add(t);
        partial.push(acc.value());
    }
    let scale = acc.abs_sum();
    if scale == 0.0 {
        return Tail {
            value: Complex::new(0.0, 0.0),
            error: 0.0,
        };
    }

    // (diff to previous order, value) of the best order for each start
    let mut candidates: Vec<(f64, Complex)> = Vec::new();
    for &n0 in &LEVIN_STARTS {
        let mut best: Option<(f64, Complex)> = None;
        let mut prev: Option<Complex> = None;
        for k in 2..=LEVIN_MAX_ORDER {
            if n0 + k >= terms.len() {
                break;
            }
            let Some(t) = levin_u(&partial, terms, n0, k, beta) else {
                prev = None;
                continue;
            };
            if let Some(p) = prev {
                let d = (t - p).norm();
                if best.is_none_or(|(bd, _)| d < bd) {
                    best = Some((d, t));
                }
            }
            prev = Some(t);
        }
        if let Some(b) = best {
            candidates.push(b);
        }
    }
    candidates.sort_by(|a, b| a.0.total_cmp(&b.0));
    match candidates.as_slice() {
        [] => {
            // no usable transform: plain partial sum with the last panel as error
            let last = terms[terms.len() - 1].norm();
            Tail {
                value: partial[partial.len() - 1],
                error: last * terms.len() as f64,
            }
        }
        [(d, v)] => Tail {
            value: *v,
            error: ESTIMATE_SAFETY * d,
        },
        [(d, v), (_, w), ..] => Tail {
            value: *v,
            error: ESTIMATE_SAFETY * d.max((v - w).norm()),
        },
    }
}

/// Levin u-transform `T_k^{(n0)}` of the partial sums.
fn levin_u(partial: &[Complex], terms: &[Complex], n0: usize, k: usize, beta: f64) -> Option<Complex> {
    let mut num = Complex::new(0.0, 0.0);
    let mut den = Complex::new(0.0, 0.0);
    let last = (n0 + k) as f64 + beta;
    let mut binom = 1.0;
    for j in 0..=k {
        let n = n0 + j;
        let a = terms[n];
        if a.norm() == 0.0 {
            return None;
        }
        let omega = a * (n as f64 + beta);
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let c = sign * binom * ((n as f64 + beta) / last).powi(k as i32 - 1);
        num += partial[n] * c / omega;
        den += Complex::new(c, 0.0) / omega;
        binom *= (k - j) as f64 / (j + 1) as f64;
    }
    let t = num / den;
    (t.re.is_finite() && t.im.is_finite()).then_some(t)
}

fn truncated<F: Fn(f64) -> Complex>(f: &F, spec: &QuadratureSpec) -> Result<Evaluation> {
    let decay = spec.decay_exponent.ok_or_else(|| {
        Error::DivergentTail("no oscillation period and no decay exponent declared".into())
    })?;
    if decay <= 1.0 {
        return Err(Error::DivergentTail(format!(
            "envelope |x|^-{decay} is not integrable; declare an oscillation period"
        )));
    }
    let r = spec.truncation_radius;
    let (lo, hi) = (spec.center - r, spec.center + r);
    let initial = (2.0 * r).ceil().max(1.0) as usize;
    let core = adaptive(f, lo, hi, initial, spec.panel_tol, 0.0, spec.max_panels);
    if !core.converged && core.panels >= spec.max_panels {
        return Err(no_convergence(core.value, core.error, core.panels));
    }

    let mut tail = 0.0;
    for dir in [1.0, -1.0] {
        // envelope constant from samples just inside the radius and twice as far out
        let near = envelope(f, spec.center, dir, r);
        let far = envelope(f, spec.center, dir, 2.0 * r);
        let c_near = near * r.powf(decay);
        let c_far = far * (2.0 * r).powf(decay);
        if c_far > 4.0 * c_near && c_far > 1e-300 {
            return Err(Error::DivergentTail(format!(
                "|f| does not decay like |x|^-{decay} (envelope constant {c_near:e} -> {c_far:e})"
            )));
        }
        tail += c_near.max(c_far) * r.powf(1.0 - decay) / (decay - 1.0);
    }
    let error = core.error + tail;
    Ok(Evaluation {
        value: core.value,
        abs_error_estimate: error,
        terms_used: core.panels,
        converged: error <= spec.tol,
    })
}

fn envelope<F: Fn(f64) -> Complex>(f: &F, center: f64, dir: f64, radius: f64) -> f64 {
    (0..16)
        .map(|i| {
            let x = center + dir * (radius - 1.0 + (i as f64 + 0.5) / 16.0);
            f(x).norm()
        })
        .fold(0.0, f64::max)
}

fn no_convergence(value: Complex, error: f64, panels: usize) -> Error {
    Error::NoConvergence {
        best: Box::new(Evaluation {
            value,
            abs_error_estimate: error,
            terms_used: panels,
            converged: false,
        }),
    }
}
