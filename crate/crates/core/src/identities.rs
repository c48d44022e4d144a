//! Executable checks of identities satisfied by `C(w, z)`.
//!
//! Each verifier computes both sides independently and returns an
//! [`IdentityReport`]. Identities that only involve series and gamma values
//! are held to a tighter tolerance than those with an infinite-range
//! quadrature on one side.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::binomial::binom_gamma;
use crate::error::{Error, Result};
use crate::numeric::{cos_pi, exact_integer, exp_m1, near_integer, principal_pow, sin_pi};
use crate::quadrature::{binom_kernel_integral, corollary_sum, theorem3_evaluate, Kernel, QuadratureSpec};
use crate::series::{sum_power_law, PowerLawSeries};
use crate::special::{beta_gamma, log_gamma, si, si_minus_half_pi, sinc};
use crate::{Complex, EvalOptions, Evaluation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum IdentityId {
    Antiderivative,
    CotIdentity,
    TripleProduct,
    RationalSimpleIntegral,
    RationalSquareIntegral,
    SechIntegral,
    SincRepresentation,
}

impl IdentityId {
    pub const ALL: [IdentityId; 7] = [
        IdentityId::Antiderivative,
        IdentityId::CotIdentity,
        IdentityId::TripleProduct,
        IdentityId::RationalSimpleIntegral,
        IdentityId::RationalSquareIntegral,
        IdentityId::SechIntegral,
        IdentityId::SincRepresentation,
    ];

    /// Command-line name.
    pub fn name(self) -> &'static str {
        match self {
            IdentityId::Antiderivative => "antiderivative",
            IdentityId::CotIdentity => "cot",
            IdentityId::TripleProduct => "triple-product",
            IdentityId::RationalSimpleIntegral => "rational-simple",
            IdentityId::RationalSquareIntegral => "rational-square",
            IdentityId::SechIntegral => "sech",
            IdentityId::SincRepresentation => "sinc-representation",
        }
    }

    /// Whether one side needs an infinite-range quadrature.
    pub fn uses_quadrature(self) -> bool {
        matches!(
            self,
            IdentityId::RationalSimpleIntegral
                | IdentityId::RationalSquareIntegral
                | IdentityId::SechIntegral
        )
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IdentityId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = IdentityId::ALL.iter().map(|id| id.name()).collect();
                Error::Input(format!("unknown identity {s:?}; expected one of {}", names.join(", ")))
            })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    pub identity_id: IdentityId,
    #[serde(with = "crate::json::complex")]
    pub lhs: Complex,
    #[serde(with = "crate::json::complex")]
    pub rhs: Complex,
    pub abs_residual: f64,
    pub rel_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub diagnostics: String,
}

impl IdentityReport {
    pub fn new(identity_id: IdentityId, lhs: Complex, rhs: Complex, tolerance: f64, diagnostics: String) -> Self {
        let abs_residual = (lhs - rhs).norm();
        let rel_residual = if rhs.norm() > 0.0 {
            abs_residual / rhs.norm()
        } else if abs_residual == 0.0 {
            0.0
        } else {
            f64::MAX
        };
        IdentityReport {
            identity_id,
            lhs,
            rhs,
            abs_residual,
            rel_residual,
            tolerance,
            pass: abs_residual <= tolerance || rel_residual <= tolerance,
            diagnostics,
        }
    }

    /// A failed check whose computation did not complete.
    fn failed(identity_id: IdentityId, tolerance: f64, diagnostics: String) -> Self {
        IdentityReport {
            identity_id,
            lhs: Complex::new(0.0, 0.0),
            rhs: Complex::new(0.0, 0.0),
            abs_residual: f64::MAX,
            rel_residual: f64::MAX,
            tolerance,
            pass: false,
            diagnostics,
        }
    }
}

/// Pass thresholds for the two kinds of identity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceLadder {
    pub series: f64,
    pub quadrature: f64,
}

impl Default for ToleranceLadder {
    fn default() -> Self {
        ToleranceLadder {
            series: 1e-6,
            quadrature: 1e-4,
        }
    }
}

impl ToleranceLadder {
    pub fn for_identity(&self, id: IdentityId) -> f64 {
        if id.uses_quadrature() {
            self.quadrature
        } else {
            self.series
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityConfig {
    pub eval: EvalOptions,
    pub quadrature: QuadratureSpec,
    pub ladder: ToleranceLadder,
}

impl Default for IdentityConfig {
    fn default() -> Self {
        IdentityConfig {
            eval: EvalOptions::default(),
            quadrature: QuadratureSpec::default().with_tol(1e-6),
            ladder: ToleranceLadder::default(),
        }
    }
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

/// `Σ_k C(w, k) g(k)` for a `g` decaying at least like `1/k`.
fn binomial_weighted_sum<G>(w: Complex, mut g: G, opts: &EvalOptions) -> Result<Evaluation>
where
    G: FnMut(usize) -> Complex,
{
    let cfg = PowerLawSeries {
        tail_exponent: w + 1.0,
        first_block: ((4.0 * w.norm()).ceil() as usize).next_power_of_two().max(64),
        finite_len: finite_len(w),
    };
    let mut coef = Complex::new(1.0, 0.0);
    let s = sum_power_law(
        |k| {
            let kf = k as f64;
            let b = coef;
            coef *= (w - kf) / (kf + 1.0);
            if b == Complex::new(0.0, 0.0) {
                b
            } else {
                b * g(k)
            }
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

/// `Si(u) + π/2`, without cancellation for large negative real `u`.
fn si_shifted(u: Complex) -> Complex {
    if u.im == 0.0 && u.re < -8.0 {
        return Complex::new(-si_minus_half_pi(-u.re), 0.0);
    }
    si(u) + FRAC_PI_2
}

/// `F(z) = (1/π) Σ_k C(w, k) Si(πz - πk)`, an antiderivative of `C(w, z)`.
///
/// The terms tend to `-C(w, k)/2`, so the series is summed recentred as
/// `(1/π) Σ_k C(w, k) [Si(πz - πk) + π/2] - 2^{w-1}`, using
/// `Σ_k C(w, k) = 2^w`.
pub fn binom_antiderivative(w: Complex, z: Complex, opts: &EvalOptions) -> Result<Evaluation> {
    check_w(w)?;
    opts.validate()?;
    let inner = EvalOptions {
        abs_tol: opts.abs_tol * PI,
        ..*opts
    };
    let s = binomial_weighted_sum(w, |k| si_shifted((z - k as f64) * PI), &inner)?;
    let half_mass = principal_pow(Complex::new(2.0, 0.0), w - 1.0);
    Ok(Evaluation {
        value: s.value / PI - half_mass,
        abs_error_estimate: s.abs_error_estimate / PI,
        terms_used: s.terms_used,
        converged: s.converged,
    })
}

/// `(F(z + h) - F(z - h)) / (2h)` with the difference taken term by term, so
/// the large common part of the two values never has to cancel.
pub fn antiderivative_difference(w: Complex, z: Complex, h: f64, opts: &EvalOptions) -> Result<Evaluation> {
    check_w(w)?;
    opts.validate()?;
    let scale = 2.0 * h * PI;
    let inner = EvalOptions {
        abs_tol: opts.abs_tol * scale,
        ..*opts
    };
    let s = binomial_weighted_sum(
        w,
        |k| {
            let u = (z - k as f64) * PI;
            si_shifted(u + h * PI) - si_shifted(u - h * PI)
        },
        &inner,
    )?;
    Ok(Evaluation {
        value: s.value / scale,
        abs_error_estimate: s.abs_error_estimate / scale,
        terms_used: s.terms_used,
        converged: s.converged,
    })
}

const DIFFERENCE_STEP: f64 = 1e-5;

pub fn verify_antiderivative(w: Complex, z: Complex, cfg: &IdentityConfig) -> Result<IdentityReport> {
    check_w(w)?;
    let d = antiderivative_difference(w, z, DIFFERENCE_STEP, &cfg.eval)?;
    let rhs = binom_gamma(w, z)?;
    let experimental = if z.im != 0.0 { " (complex z: experimental)" } else { "" };
    Ok(IdentityReport::new(
        IdentityId::Antiderivative,
        d.value,
        rhs,
        cfg.ladder.series,
        format!(
            "w={w} z={z} h={DIFFERENCE_STEP:e} terms={} series_error={:e}{experimental}",
            d.terms_used, d.abs_error_estimate
        ),
    ))
}

/// `Σ_k C(w, k) cos(πz - πk)/(πz - πk) = C(w, z) cot(πz)`.
pub fn verify_cot_identity(w: Complex, z: Complex, cfg: &IdentityConfig) -> Result<IdentityReport> {
    check_w(w)?;
    if near_integer(z, 0.0).is_some() {
        return Err(Error::domain(format!("cot identity needs z off the integers, got z = {z}")));
    }
    let lhs = binomial_weighted_sum(
        w,
        |k| {
            let u = z - k as f64;
            cos_pi(u) / (u * PI)
        },
        &cfg.eval,
    )?;
    let rhs = binom_gamma(w, z)? * cos_pi(z) / sin_pi(z);
    Ok(IdentityReport::new(
        IdentityId::CotIdentity,
        lhs.value,
        rhs,
        cfg.ladder.series,
        format!(
            "w={w} z={z} terms={} series_error={:e}",
            lhs.terms_used, lhs.abs_error_estimate
        ),
    ))
}

/// `Σ_k C(w, k) C(k, z) C(z, k) = C(w, z)`, every factor from gamma ratios.
pub fn verify_triple_product(w: Complex, z: Complex, cfg: &IdentityConfig) -> Result<IdentityReport> {
    check_w(w)?;
    if matches!(near_integer(z, 0.0), Some(n) if n <= -1) {
        return Err(Error::domain(format!("C(z, k) needs z off the negative integers, got z = {z}")));
    }
    let mut failure = None;
    let lhs = binomial_weighted_sum(
        w,
        |k| {
            let kc = Complex::new(k as f64, 0.0);
            match (binom_gamma(kc, z), binom_gamma(z, kc)) {
                (Ok(a), Ok(b)) => a * b,
                (Err(e), _) | (_, Err(e)) => {
                    failure.get_or_insert(e);
                    Complex::new(0.0, 0.0)
                }
            }
        },
        &cfg.eval,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    let lhs = lhs?;
    let rhs = binom_gamma(w, z)?;
    Ok(IdentityReport::new(
        IdentityId::TripleProduct,
        lhs.value,
        rhs,
        cfg.ladder.series,
        format!(
            "w={w} z={z} terms={} series_error={:e}",
            lhs.terms_used, lhs.abs_error_estimate
        ),
    ))
}

/// `∫ C(w, x)/(x + α) dx = Σ_k C(w, k)/(k + α) - e^{iπα} B(w + 1, α)`.
pub fn verify_rational_simple(w: Complex, alpha: Complex, cfg: &IdentityConfig) -> Result<IdentityReport> {
    check_w(w)?;
    let kernel = Kernel::RationalSimple(alpha);
    kernel.validate()?;
    let lhs = binom_kernel_integral(w, &kernel, &cfg.quadrature)?;
    let series = binomial_weighted_sum(w, |k| (alpha + k as f64).inv(), &cfg.eval)?;
    let beta = beta_gamma(w + 1.0, alpha)?;
    let rhs = series.value - (Complex::new(0.0, PI) * alpha).exp() * beta;
    Ok(IdentityReport::new(
        IdentityId::RationalSimpleIntegral,
        lhs.value,
        rhs,
        cfg.ladder.quadrature,
        format!(
            "w={w} alpha={alpha} quadrature_error={:e} panels={} series_terms={}",
            lhs.abs_error_estimate, lhs.terms_used, series.terms_used
        ),
    ))
}

/// `∫ C(w, x)/(x² + α²) dx = Σ_k C(w, k)/(k² + α²)
///  - π/(α (e^{2πα} - 1)) [C(w, iα) + C(w, -iα)]`.
pub fn verify_rational_square(w: Complex, alpha: Complex, cfg: &IdentityConfig) -> Result<IdentityReport> {
    check_w(w)?;
    let kernel = Kernel::RationalSquare(alpha);
    kernel.validate()?;
    let lhs = binom_kernel_integral(w, &kernel, &cfg.quadrature)?;
    let series = binomial_weighted_sum(w, |k| (alpha * alpha + (k * k) as f64).inv(), &cfg.eval)?;
    let ia = Complex::new(0.0, 1.0) * alpha;
    let pair = binom_gamma(w, ia)? + binom_gamma(w, -ia)?;
    let denom = alpha * exp_m1(alpha * (2.0 * PI));
    let correction = if denom.re.is_finite() && denom.im.is_finite() {
        pair * PI / denom
    } else {
        Complex::new(0.0, 0.0)
    };
    let rhs = series.value - correction;
    // the intermediate form before the correction terms are summed in closed form
    let intermediate = theorem3_evaluate(w, &kernel, &cfg.eval, &cfg.quadrature)?;
    Ok(IdentityReport::new(
        IdentityId::RationalSquareIntegral,
        lhs.value,
        rhs,
        cfg.ladder.quadrature,
        format!(
            "w={w} alpha={alpha} quadrature_error={:e} panels={} intermediate={} intermediate_vs_rhs={:e} intermediate_vs_lhs={:e}",
            lhs.abs_error_estimate,
            lhs.terms_used,
            intermediate.value,
            (intermediate.value - rhs).norm(),
            (intermediate.value - lhs.value).norm()
        ),
    ))
}

/// `α 2^{iα} Γ(iα/2 + 1/2) / (√π Γ(iα/2 + 1))`.
pub fn sech_closed_form(alpha: Complex) -> Result<Complex> {
    let half = Complex::new(0.0, 0.5) * alpha;
    let log = Complex::new(0.0, 1.0) * alpha * 2f64.ln() + log_gamma(half + 0.5)? - log_gamma(half + 1.0)?;
    Ok(alpha * log.exp() / PI.sqrt())
}

/// `∫ C(iα, x) sech(πx/α) dx` against its closed form. The integral is
/// evaluated as a series of Fourier coefficients and cross-checked by direct
/// quadrature.
pub fn verify_sech_integral(alpha: Complex, cfg: &IdentityConfig) -> Result<IdentityReport> {
    let w = Complex::new(0.0, 1.0) * alpha;
    if !(alpha.re > 0.0) || !(alpha.im < 1.0) {
        return Err(Error::domain(format!(
            "sech integral needs Re(alpha) > 0 and Im(alpha) < 1, got alpha = {alpha}"
        )));
    }
    let kernel = Kernel::Sech(alpha);
    // each coefficient is a quadrature, so only ask for what the ladder can see
    let floor = 1e-3 * cfg.ladder.quadrature;
    let opts = EvalOptions {
        abs_tol: cfg.eval.abs_tol.max(floor),
        rel_tol: cfg.eval.rel_tol.max(floor),
        ..cfg.eval
    };
    let lhs = theorem3_evaluate(w, &kernel, &opts, &cfg.quadrature)?;
    let line = binom_kernel_integral(w, &kernel, &cfg.quadrature)?;
    let rhs = sech_closed_form(alpha)?;
    Ok(IdentityReport::new(
        IdentityId::SechIntegral,
        lhs.value,
        rhs,
        cfg.ladder.quadrature,
        format!(
            "alpha={alpha} series_terms={} quadrature={} quadrature_residual={:e} quadrature_error={:e}",
            lhs.terms_used,
            line.value,
            (line.value - rhs).norm(),
            line.abs_error_estimate
        ),
    ))
}

/// `∫ C(w, x) sinc(x - z) dx = C(w, z)`. The left side is the lattice sum
/// `Σ_k C(w, k) sinc(k - z)`; the line quadrature of the integral is
/// reported alongside. For large `|Im w|` the integrand is large where the
/// result is small, so the quadrature only serves as a loose cross-check.
pub fn verify_sinc_representation(w: Complex, z: Complex, cfg: &IdentityConfig) -> Result<IdentityReport> {
    check_w(w)?;
    let rhs = binom_gamma(w, z)?;
    let series = corollary_sum(w, |x| sinc(Complex::new(x, 0.0) - z), 0.5, &cfg.eval)?;
    let line = binom_kernel_integral(w, &Kernel::SincShift(z), &cfg.quadrature)?;
    Ok(IdentityReport::new(
        IdentityId::SincRepresentation,
        series.value,
        rhs,
        cfg.ladder.series,
        format!(
            "w={w} z={z} series_terms={} series_error={:e} quadrature={} quadrature_residual={:e} quadrature_error={:e}",
            series.terms_used,
            series.abs_error_estimate,
            line.value,
            (line.value - rhs).norm(),
            line.abs_error_estimate
        ),
    ))
}

/// Random arguments for one battery sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub identity: IdentityId,
    pub index: usize,
    pub w: Complex,
    pub z: Complex,
}

fn sample_seed(seed: u64, id: IdentityId, index: usize) -> u64 {
    // splitmix64 finalizer over the three inputs
    let mut x = seed ^ ((id as u64) << 56) ^ (index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

fn uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    rng.random_range(lo..hi)
}

fn off_integers(rng: &mut ChaCha8Rng, lo: f64, hi: f64, gap: f64) -> f64 {
    loop {
        let x = uniform(rng, lo, hi);
        if (x - x.round()).abs() >= gap {
            return x;
        }
    }
}

/// Draws arguments from the hypotheses of each identity. For the integral
/// identities `z` carries the kernel parameter `α`.
pub fn draw_sample(seed: u64, identity: IdentityId, index: usize) -> Sample {
    let mut rng = ChaCha8Rng::seed_from_u64(sample_seed(seed, identity, index));
    let w = |rng: &mut ChaCha8Rng, lo: f64, hi: f64, im: f64| Complex::new(uniform(rng, lo, hi), uniform(rng, -im, im));
    let (w, z) = match identity {
        IdentityId::Antiderivative => (w(&mut rng, 0.0, 4.0, 1.5), Complex::new(uniform(&mut rng, -3.0, 6.0), 0.0)),
        IdentityId::CotIdentity => {
            let w = w(&mut rng, -0.5, 3.0, 1.5);
            let z = Complex::new(off_integers(&mut rng, -3.0, 6.0, 0.05), uniform(&mut rng, -1.0, 1.0));
            (w, z)
        }
        IdentityId::TripleProduct => {
            let w = w(&mut rng, -0.5, 3.0, 1.5);
            let z = Complex::new(uniform(&mut rng, -0.9, 6.0), uniform(&mut rng, -1.0, 1.0));
            (w, z)
        }
        IdentityId::RationalSimpleIntegral => {
            let w = w(&mut rng, -0.5, 3.0, 1.5);
            let alpha = if rng.random_range(0..5) == 0 {
                Complex::new(rng.random_range(1..=4) as f64, 0.0)
            } else {
                Complex::new(uniform(&mut rng, -3.0, 3.0), uniform(&mut rng, 0.2, 3.0))
            };
            (w, alpha)
        }
        IdentityId::RationalSquareIntegral => {
            let w = w(&mut rng, -0.5, 3.0, 1.5);
            let alpha = Complex::new(uniform(&mut rng, 0.2, 3.0), uniform(&mut rng, -1.0, 1.0));
            (w, alpha)
        }
        IdentityId::SechIntegral => {
            let alpha = Complex::new(uniform(&mut rng, 0.5, 2.5), uniform(&mut rng, -1.0, 0.6));
            (Complex::new(0.0, 1.0) * alpha, alpha)
        }
        IdentityId::SincRepresentation => {
            let w = w(&mut rng, -0.5, 3.0, 1.5);
            let z = Complex::new(uniform(&mut rng, -3.0, 6.0), uniform(&mut rng, -1.0, 1.0));
            (w, z)
        }
    };
    Sample {
        identity,
        index,
        w,
        z,
    }
}

/// Runs the verifier for one sample; errors become failing reports.
pub fn run_sample(sample: &Sample, cfg: &IdentityConfig) -> IdentityReport {
    let Sample { identity, w, z, .. } = *sample;
    let result = match identity {
        IdentityId::Antiderivative => verify_antiderivative(w, z, cfg),
        IdentityId::CotIdentity => verify_cot_identity(w, z, cfg),
        IdentityId::TripleProduct => verify_triple_product(w, z, cfg),
        IdentityId::RationalSimpleIntegral => verify_rational_simple(w, z, cfg),
        IdentityId::RationalSquareIntegral => verify_rational_square(w, z, cfg),
        IdentityId::SechIntegral => verify_sech_integral(z, cfg),
        IdentityId::SincRepresentation => verify_sinc_representation(w, z, cfg),
    };
    result.unwrap_or_else(|e| {
        IdentityReport::failed(
            identity,
            cfg.ladder.for_identity(identity),
            format!("w={w} arg={z} error: {e}"),
        )
    })
}

/// `sample_count` seeded samples for every identity, sorted by identity and
/// sample index. `threads = None` uses the global rayon pool.
pub fn run_identity_battery(
    sample_count: usize,
    seed: u64,
    cfg: &IdentityConfig,
    threads: Option<usize>,
) -> Result<Vec<IdentityReport>> {
    if sample_count == 0 {
        return Err(Error::domain("battery needs at least one sample"));
    }
    cfg.eval.validate()?;
    cfg.quadrature.validate()?;
    let samples: Vec<Sample> = IdentityId::ALL
        .iter()
        .flat_map(|&id| (0..sample_count).map(move |i| draw_sample(seed, id, i)))
        .collect();
    let run = || -> Vec<IdentityReport> { samples.par_iter().map(|s| run_sample(s, cfg)).collect() };
    // par_iter().collect() keeps input order, which is already (identity, index)
    let reports = match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::Input(format!("cannot build thread pool: {e}")))?
            .install(run),
        None => run(),
    };
    Ok(reports)
}
