use std::path::PathBuf;
use std::sync::Arc;

use serde::Serialize;
use sincbinom::binomial::{binom_eval_routed, BinomialArgs};
use sincbinom::identities::{self, IdentityConfig, IdentityId, IdentityReport};
use sincbinom::json::ComplexJson;
use sincbinom::quadrature::{binom_kernel_integral, theorem3_evaluate, Kernel, QuadratureSpec, TabulatedSpectrum};
use sincbinom::{Complex, EvalOptions, Evaluation, Method};

use crate::output::{float, sink, write_csv, write_json};
use crate::{Failure, Format, KernelArgs};

pub struct Context {
    pub opts: EvalOptions,
    pub out: Option<PathBuf>,
    pub seed: u64,
}

const MAX_TABLE_ROWS: usize = 10_000_000;

#[derive(Serialize)]
struct EvalOutput {
    value: ComplexJson,
    abs_error_estimate: f64,
    terms_used: usize,
    method: &'static str,
    converged: bool,
}

pub fn eval(ctx: &Context, format: Format, w: Complex, z: Complex, method: &str) -> Result<(), Failure> {
    let method: Method = method.parse()?;
    let opts = ctx.opts.with_method(method);
    let (e, route) = binom_eval_routed(BinomialArgs::new(w, z), &opts)?;
    let mut sink = sink(ctx.out.as_deref())?;
    match format {
        Format::Json => write_json(
            &mut *sink,
            &EvalOutput {
                value: e.value.into(),
                abs_error_estimate: e.abs_error_estimate,
                terms_used: e.terms_used,
                method: route.name(),
                converged: e.converged,
            },
        )?,
        Format::Csv => write_csv(
            &mut *sink,
            &["re", "im", "abs_error_estimate", "terms_used", "method"],
            &[vec![
                float(e.value.re),
                float(e.value.im),
                float(e.abs_error_estimate),
                e.terms_used.to_string(),
                route.name().to_string(),
            ]],
        )?,
    }
    Ok(())
}

#[derive(Serialize)]
struct TableRow {
    x: f64,
    value: ComplexJson,
    abs_err: f64,
}

/// Inclusive grid; points within 1e-9 of an integer are snapped onto it so
/// the lattice values come out exactly.
fn grid(x_min: f64, x_max: f64, step: f64) -> Result<Vec<f64>, Failure> {
    if !(x_min.is_finite() && x_max.is_finite() && x_min < x_max) {
        return Err(Failure::Usage(format!("grid needs x_min < x_max, got [{x_min}, {x_max}]")));
    }
    if !(step > 0.0 && step.is_finite()) {
        return Err(Failure::Usage(format!("grid step must be positive, got {step}")));
    }
    let n = ((x_max - x_min) / step + 1e-9).floor();
    if n >= MAX_TABLE_ROWS as f64 {
        return Err(Failure::Usage(format!("grid would have more than {MAX_TABLE_ROWS} rows")));
    }
    Ok((0..=n as usize)
        .map(|i| {
            let x = x_min + i as f64 * step;
            if (x - x.round()).abs() < 1e-9 {
                x.round()
            } else {
                x
            }
        })
        .collect())
}

pub fn table(ctx: &Context, format: Format, w: Complex, x_min: f64, x_max: f64, step: f64) -> Result<(), Failure> {
    let xs = grid(x_min, x_max, step)?;
    let mut rows = Vec::with_capacity(xs.len());
    for x in xs {
        let e = sincbinom::binomial::binom_eval(BinomialArgs::new(w, Complex::new(x, 0.0)), &ctx.opts)?;
        rows.push(TableRow {
            x,
            value: e.value.into(),
            abs_err: e.abs_error_estimate,
        });
    }
    let mut sink = sink(ctx.out.as_deref())?;
    match format {
        Format::Json => write_json(&mut *sink, &rows)?,
        Format::Csv => {
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|r| vec![float(r.x), float(r.value.re), float(r.value.im), float(r.abs_err)])
                .collect();
            write_csv(&mut *sink, &["x", "re", "im", "abs_err"], &cells)?
        }
    }
    Ok(())
}

fn build_kernel(args: &KernelArgs) -> Result<Kernel, Failure> {
    let need = |v: Option<Complex>, flag: &str| {
        v.ok_or_else(|| Failure::Usage(format!("kernel {} needs --{flag}", args.kernel)))
    };
    let kernel = match args.kernel.as_str() {
        "rational-simple" => Kernel::RationalSimple(need(args.alpha, "alpha")?),
        "rational-square" => Kernel::RationalSquare(need(args.alpha, "alpha")?),
        "sech" => Kernel::Sech(need(args.alpha, "alpha")?),
        "sinc-shift" => Kernel::SincShift(need(args.a, "a")?),
        "tabulated" => {
            let path = args
                .spectrum
                .as_ref()
                .ok_or_else(|| Failure::Usage("kernel tabulated needs --spectrum".into()))?;
            Kernel::Tabulated(Arc::new(TabulatedSpectrum::from_path(path)?))
        }
        other => {
            return Err(Failure::Usage(format!(
                "unknown kernel {other:?}; expected rational-simple, rational-square, sech, sinc-shift or tabulated"
            )))
        }
    };
    kernel.validate()?;
    Ok(kernel)
}

#[derive(Serialize)]
struct IntegrateOutput {
    kernel: &'static str,
    w: ComplexJson,
    series: Evaluation,
    quadrature: Option<Evaluation>,
    residual: Option<f64>,
}

pub fn integrate(ctx: &Context, format: Format, w: Complex, args: &KernelArgs, quad_tol: f64) -> Result<(), Failure> {
    if !(quad_tol > 0.0) {
        return Err(Failure::Usage(format!("--quad-tol must be positive, got {quad_tol}")));
    }
    let kernel = build_kernel(args)?;
    let spec = QuadratureSpec::default().with_tol(quad_tol);
    let series = theorem3_evaluate(w, &kernel, &ctx.opts, &spec)?;
    let quadrature = if kernel.has_spatial_form() {
        Some(binom_kernel_integral(w, &kernel, &spec)?)
    } else {
        None
    };
    let residual = quadrature.map(|q| (q.value - series.value).norm());
    let result = IntegrateOutput {
        kernel: kernel.name(),
        w: w.into(),
        series,
        quadrature,
        residual,
    };
    let mut sink = sink(ctx.out.as_deref())?;
    match format {
        Format::Json => write_json(&mut *sink, &result)?,
        Format::Csv => {
            let row = |route: &str, e: &Evaluation| {
                vec![
                    route.to_string(),
                    float(e.value.re),
                    float(e.value.im),
                    float(e.abs_error_estimate),
                    e.terms_used.to_string(),
                    e.converged.to_string(),
                ]
            };
            let mut rows = vec![row("series", &result.series)];
            if let Some(q) = &result.quadrature {
                rows.push(row("quadrature", q));
            }
            write_csv(
                &mut *sink,
                &["route", "re", "im", "abs_error_estimate", "terms_used", "converged"],
                &rows,
            )?
        }
    }
    if let Some(q) = quadrature {
        if !q.converged {
            return Err(Failure::NoConvergence(format!(
                "quadrature error estimate {:e} exceeds --quad-tol {quad_tol:e}",
                q.abs_error_estimate
            )));
        }
    }
    Ok(())
}

fn write_reports(ctx: &Context, format: Format, reports: &[IdentityReport], single: bool) -> Result<(), Failure> {
    let mut sink = sink(ctx.out.as_deref())?;
    match format {
        Format::Json if single => write_json(&mut *sink, &reports[0])?,
        Format::Json => write_json(&mut *sink, reports)?,
        Format::Csv => {
            // diagnostics are free text and stay out of the numeric CSV
            let rows: Vec<Vec<String>> = reports
                .iter()
                .map(|r| {
                    vec![
                        r.identity_id.name().to_string(),
                        float(r.lhs.re),
                        float(r.lhs.im),
                        float(r.rhs.re),
                        float(r.rhs.im),
                        float(r.abs_residual),
                        float(r.rel_residual),
                        float(r.tolerance),
                        r.pass.to_string(),
                    ]
                })
                .collect();
            write_csv(
                &mut *sink,
                &[
                    "identity_id",
                    "lhs_re",
                    "lhs_im",
                    "rhs_re",
                    "rhs_im",
                    "abs_residual",
                    "rel_residual",
                    "tolerance",
                    "pass",
                ],
                &rows,
            )?
        }
    }
    let failed = reports.iter().filter(|r| !r.pass).count();
    if failed > 0 {
        return Err(Failure::Checks(format!("{failed} of {} identity checks failed", reports.len())));
    }
    Ok(())
}

fn identity_config(ctx: &Context) -> IdentityConfig {
    IdentityConfig {
        eval: ctx.opts,
        ..IdentityConfig::default()
    }
}

pub fn verify(
    ctx: &Context,
    format: Format,
    identity: &str,
    w: Option<Complex>,
    z: Option<Complex>,
    alpha: Option<Complex>,
) -> Result<(), Failure> {
    let id: IdentityId = identity.parse()?;
    let need = |v: Option<Complex>, flag: &str| {
        v.ok_or_else(|| Failure::Usage(format!("identity {id} needs --{flag}")))
    };
    let cfg = identity_config(ctx);
    let report = match id {
        IdentityId::Antiderivative => identities::verify_antiderivative(need(w, "w")?, need(z, "z")?, &cfg),
        IdentityId::CotIdentity => identities::verify_cot_identity(need(w, "w")?, need(z, "z")?, &cfg),
        IdentityId::TripleProduct => identities::verify_triple_product(need(w, "w")?, need(z, "z")?, &cfg),
        IdentityId::SincRepresentation => {
            identities::verify_sinc_representation(need(w, "w")?, need(z, "z")?, &cfg)
        }
        IdentityId::RationalSimpleIntegral => {
            identities::verify_rational_simple(need(w, "w")?, need(alpha, "alpha")?, &cfg)
        }
        IdentityId::RationalSquareIntegral => {
            identities::verify_rational_square(need(w, "w")?, need(alpha, "alpha")?, &cfg)
        }
        IdentityId::SechIntegral => identities::verify_sech_integral(need(alpha, "alpha")?, &cfg),
    }?;
    write_reports(ctx, format, &[report], true)
}

pub fn battery(ctx: &Context, format: Format, samples: usize, threads: Option<usize>) -> Result<(), Failure> {
    if threads == Some(0) {
        return Err(Failure::Usage("--threads must be at least 1".into()));
    }
    let reports = identities::run_identity_battery(samples, ctx.seed, &identity_config(ctx), threads)?;
    let failed = reports.iter().filter(|r| !r.pass).count();
    eprintln!("{} checks, {failed} failed", reports.len());
    write_reports(ctx, format, &reports, false)
}
