//! Summation of slowly convergent series whose terms behave like
//! `k^(-p-1) · (smooth + (-1)^k · smooth)` for large `k`.
//!
//! Partial sums are recorded at `K0, 2K0, 4K0, ...` (all even, so an
//! alternating component pairs up) and extrapolated with a Richardson table
//! built on the known exponent ladder `p, p+1, p+2, ...` of the remainder
//! `S_K - S`. Terms are accumulated in double-double, so cancellation in
//! the sum only costs accuracy through the terms themselves.

use crate::numeric::DdComplex;
use crate::{Complex, EvalOptions};

const MAX_COLUMNS: usize = 8;

#[derive(Debug, Clone, Copy)]
pub(crate) struct PowerLawSeries {
    /// `p` in `S_K - S ~ K^(-p)`.
    pub tail_exponent: Complex,
    /// First checkpoint; rounded up to an even number.
    pub first_block: usize,
    /// Number of possibly nonzero terms when the series terminates.
    pub finite_len: Option<usize>,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct SeriesSummary {
    pub value: Complex,
    pub error_estimate: f64,
    pub terms_used: usize,
    pub converged: bool,
    /// Plain partial sum over the terms used.
    pub partial_sum: Complex,
    pub last_term: Complex,
    pub prev_term: Complex,
    /// `2 |a_K| K / Re(p)`: remainder bound for `partial_sum`.
    pub raw_tail_estimate: f64,
}

/// A series term and the relative accuracy it is computed to.
pub(crate) trait SeriesTerm: Copy {
    const ROUNDOFF: f64;
    fn dd(self) -> DdComplex;
}

impl SeriesTerm for Complex {
    const ROUNDOFF: f64 = 4.0 * f64::EPSILON;
    fn dd(self) -> DdComplex {
        self.into()
    }
}

impl SeriesTerm for DdComplex {
    // leaves room for error growing along a million-step recurrence
    const ROUNDOFF: f64 = 1e-26;
    fn dd(self) -> DdComplex {
        self
    }
}

#[derive(Default)]
struct Accumulator {
    sum: DdComplex,
    abs_sum: f64,
}

impl Accumulator {
    fn add(&mut self, t: DdComplex) {
        self.sum = self.sum + t;
        self.abs_sum += t.norm();
    }

    fn value(&self) -> Complex {
        self.sum.to_complex()
    }

    fn floor<T: SeriesTerm>(&self) -> f64 {
        T::ROUNDOFF * self.abs_sum + f64::EPSILON * self.value().norm()
    }
}

pub(crate) fn sum_power_law<F, T>(mut term: F, cfg: &PowerLawSeries, opts: &EvalOptions) -> SeriesSummary
where
    F: FnMut(usize) -> T,
    T: SeriesTerm,
{
    let mut acc = Accumulator::default();
    let mut last = Complex::new(0.0, 0.0);
    let mut prev = Complex::new(0.0, 0.0);

    if let Some(n) = cfg.finite_len {
        if n <= opts.max_terms {
            for k in 0..n {
                prev = last;
                let t = term(k).dd();
                last = t.to_complex();
                acc.add(t);
            }
            let value = acc.value();
            return SeriesSummary {
                value,
                error_estimate: acc.floor::<T>(),
                terms_used: n,
                converged: true,
                partial_sum: value,
                last_term: last,
                prev_term: prev,
                raw_tail_estimate: 0.0,
            };
        }
    }

    let p = cfg.tail_exponent;
    let mut block = cfg.first_block.max(2).min(opts.max_terms);
    block += block % 2;
    let block = block.min(opts.max_terms);

    let mut sums: Vec<Complex> = Vec::new();
    let mut best: Option<Complex> = None;
    let mut err = f64::INFINITY;
    let mut k = 0usize;
    let mut checkpoint = block;

    loop {
        while k < checkpoint {
            prev = last;
            let t = term(k).dd();
            last = t.to_complex();
            acc.add(t);
            k += 1;
        }
        sums.push(acc.value());
        let estimate = richardson_diagonal(&sums, p);
        if let Some(b) = best {
            err = (estimate - b).norm();
        }
        best = Some(estimate);
        let floor = acc.floor::<T>();
        let target = opts.target(estimate.norm());
        if sums.len() >= 3 && err + floor <= target {
            break;
        }
        match checkpoint.checked_mul(2) {
            Some(next) if next <= opts.max_terms => checkpoint = next,
            _ => break,
        }
    }

    let value = best.unwrap_or(acc.value());
    let floor = acc.floor::<T>();
    let error_estimate = err + floor;
    let raw_tail_estimate = if p.re > 0.0 {
        2.0 * last.norm() * k as f64 / p.re
    } else {
        f64::INFINITY
    };
    SeriesSummary {
        value,
        error_estimate,
        terms_used: k,
        converged: sums.len() >= 3 && error_estimate <= opts.target(value.norm()),
        partial_sum: acc.value(),
        last_term: last,
        prev_term: prev,
        raw_tail_estimate,
    }
}

/// Most extrapolated entry built from the latest partial sums.
fn richardson_diagonal(sums: &[Complex], p: Complex) -> Complex {
    let n = sums.len();
    let cols = (n - 1).min(MAX_COLUMNS);
    let mut row: Vec<Complex> = sums[n - 1 - cols..].to_vec();
    for j in 0..cols {
        let factor = (p + j as f64).scale(std::f64::consts::LN_2).exp();
        let denom = factor - 1.0;
        row = row
            .windows(2)
            .map(|w| (factor * w[1] - w[0]) / denom)
            .collect();
    }
    row[0]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zeta_like(s: f64) -> impl FnMut(usize) -> Complex {
        move |k| Complex::new(1.0 / (k as f64 + 1.0).powf(s), 0.0)
    }

    #[test]
    fn accelerates_zeta_two() {
        let opts = EvalOptions::default().with_tol(1e-12);
        let cfg = PowerLawSeries {
            tail_exponent: Complex::new(1.0, 0.0),
            first_block: 32,
            finite_len: None,
        };
        let s = sum_power_law(zeta_like(2.0), &cfg, &opts);
        let exact = std::f64::consts::PI.powi(2) / 6.0;
        assert!(s.converged);
        assert!((s.value.re - exact).abs() < 1e-11, "{}", s.value.re - exact);
        assert!(s.terms_used < 10_000);
    }

    #[test]
    fn alternating_component_pairs_up() {
        // sum (-1)^k / (k+1)^2 + 1/(k+1)^3 = pi^2/12 + zeta(3)
        let opts = EvalOptions::default().with_tol(1e-11);
        let cfg = PowerLawSeries {
            tail_exponent: Complex::new(1.0, 0.0),
            first_block: 32,
            finite_len: None,
        };
        let s = sum_power_law(
            |k| {
                let x = k as f64 + 1.0;
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                Complex::new(sign / (x * x) + 1.0 / (x * x * x), 0.0)
            },
            &cfg,
            &opts,
        );
        let exact = std::f64::consts::PI.powi(2) / 12.0 + 1.202_056_903_159_594_2;
        assert!((s.value.re - exact).abs() < 1e-10);
    }

    #[test]
    fn finite_series_is_summed_exactly() {
        let cfg = PowerLawSeries {
            tail_exponent: Complex::new(1.0, 0.0),
            first_block: 32,
            finite_len: Some(4),
        };
        let s = sum_power_law(|k| Complex::new(k as f64, 0.0), &cfg, &EvalOptions::default());
        assert_eq!(s.value, Complex::new(6.0, 0.0));
        assert_eq!(s.terms_used, 4);
        assert!(s.converged);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let opts = EvalOptions::default().with_tol(1e-14).with_max_terms(100);
        let cfg = PowerLawSeries {
            tail_exponent: Complex::new(0.1, 0.0),
            first_block: 32,
            finite_len: None,
        };
        // the exponent ladder is deliberately wrong here
        let s = sum_power_law(|k| Complex::new(1.0 / (k as f64 + 1.0).sqrt().powi(3), 0.0), &cfg, &opts);
        assert!(!s.converged);
        assert!(s.terms_used <= 100);
    }
}
