use std::fmt::Write as _;

use mahler_core::catalog::{SDL_TABLE, VALUE_TABLE};
use mahler_core::decimal::format_decimal;
use mahler_core::literal::{parse_real_list, parse_tuple, parse_value};
use mahler_core::oracle::{
    compare_histogram, mahler_cm, mahler_quadrature, ramble_quadrature, run_validation,
    simulate_walk, triangle_geometry, Histogram, ValidationOptions,
};
use mahler_core::ramble::{
    classify, density, density_curve_csv, ramble_integral, sample_density_curve, Regime,
    StepLengths,
};
use mahler_core::series::{
    coefficient_batch, estimate_c, mahler_e1, mahler_e2, s_d_partial, CoefficientDocument,
    CoefficientTuple, EstimateDocument, MahlerEstimate, Method, SeriesConfig,
};
use mahler_core::special::bloch_wigner;
use mahler_core::{ComplexValue, PrecisionContext};
use rug::Float;
use serde::Serialize;

use crate::error::CliError;
use crate::{Command, Common, Format, MethodArg, TableArg};

pub struct Output {
    pub body: String,
    /// Set by `validate` when a check fails.
    pub failed: bool,
}

impl Output {
    fn ok(body: String) -> Self {
        Output {
            body,
            failed: false,
        }
    }
}

fn json<T: Serialize>(value: &T) -> Result<String, CliError> {
    Ok(serde_json::to_string(value)? + "\n")
}

fn real_value(text: &str, ctx: PrecisionContext) -> Result<Float, CliError> {
    let z = parse_value(text, ctx)?;
    if !z.is_real() {
        return Err(CliError::Usage(format!("`{text}` must be real")));
    }
    Ok(ctx.float(&z.re))
}

fn parse_steps(text: &str, ctx: PrecisionContext) -> Result<StepLengths, CliError> {
    let v = parse_real_list(text, ctx)?;
    let [r0, r1, r2]: [Float; 3] = v.try_into().map_err(|_| {
        CliError::Usage(format!("--steps needs exactly three lengths, got `{text}`"))
    })?;
    Ok(StepLengths::new(r0, r1, r2)?)
}

fn tuple(text: &str, ctx: PrecisionContext) -> Result<CoefficientTuple, CliError> {
    Ok(parse_tuple(text, ctx)?)
}

fn shown(x: &Float, digits: Option<usize>, fallback: usize) -> String {
    format_decimal(x, digits.unwrap_or(fallback))
}

pub fn run(command: &Command, common: &Common) -> Result<Output, CliError> {
    let ctx = PrecisionContext::new(common.bits)?;
    match command {
        Command::Mahler {
            d,
            method,
            n,
            l,
            grid,
            a_d,
        } => mahler(common, ctx, d, *method, *n, *l, *grid, *a_d),
        Command::Density {
            steps,
            a,
            points,
            exclusion,
            samples,
            bin_width,
            seed,
            periods,
        } => {
            let steps = parse_steps(steps, ctx)?;
            if let Some(samples) = samples {
                return histogram(common, &steps, *samples, *bin_width, *exclusion, *seed);
            }
            match a {
                Some(a) => point_density(common, ctx, &steps, &real_value(a, ctx)?, *periods),
                None => curve(common, ctx, &steps, *points, *exclusion),
            }
        }
        Command::Coeffs { d, n } => coeffs(common, ctx, d, *n),
        Command::Sdl { d, l, n } => sdl(common, ctx, d, *l, *n),
        Command::EstimateC { d, l, n, reference } => {
            constant(common, ctx, d, *l, *n, reference.as_deref())
        }
        Command::Validate {
            n,
            grid,
            periods,
            samples,
            seed,
        } => validate(
            common,
            &ValidationOptions {
                precision: ctx,
                n: *n,
                grid: *grid,
                periods: *periods,
                samples: *samples,
                seed: *seed,
            },
        ),
        Command::Table { which, n } => match which {
            TableArg::Values => values_table(common, ctx, *n),
            TableArg::Sdl => sdl_table(common, ctx, *n),
        },
    }
}

#[allow(clippy::too_many_arguments)]
fn mahler(
    common: &Common,
    ctx: PrecisionContext,
    d: &str,
    method: MethodArg,
    n: usize,
    l: u32,
    grid: usize,
    a_d: f64,
) -> Result<Output, CliError> {
    let d = tuple(d, ctx)?;
    let cfg = SeriesConfig {
        max_k: n,
        l,
        precision: ctx,
        a_d,
    };
    let est = match method {
        MethodArg::E1 => mahler_e1(&d, &cfg)?,
        MethodArg::E2 => mahler_e2(&d, l, &cfg)?,
        MethodArg::Cm => MahlerEstimate {
            value: mahler_cm(&d, ctx)?,
            method: Method::CassaigneMaillot,
            n_used: 0,
            l: None,
            bits: ctx.bits(),
            bound: None,
            rounding_error: None,
        },
        MethodArg::Quad => MahlerEstimate {
            value: Float::with_val(53, mahler_quadrature(&d, grid)?),
            method: Method::Quadrature,
            n_used: grid,
            l: None,
            bits: 53,
            bound: None,
            rounding_error: None,
        },
    };
    let mut doc: EstimateDocument = est.document();
    if let Some(k) = common.digits {
        doc.value = format_decimal(&est.value, k);
    }
    let body = match common.format.unwrap_or(Format::Json) {
        Format::Json => json(&doc)?,
        Format::Csv => format!(
            "method,N,l,bits,value,bound\n{},{},{},{},{},{}\n",
            doc.method.tag(),
            doc.n,
            doc.l.map(|l| l.to_string()).unwrap_or_default(),
            doc.bits,
            doc.value,
            doc.bound.clone().unwrap_or_default()
        ),
        Format::Text => {
            let mut s = format!(
                "m = {}\nmethod {}, N = {}",
                doc.value,
                doc.method.tag(),
                doc.n
            );
            if let Some(l) = doc.l {
                let _ = write!(s, ", l = {l}");
            }
            let _ = writeln!(s, ", {} bits", doc.bits);
            if let Some(b) = &doc.bound {
                let _ = writeln!(s, "bound {b} (A_D = {})", doc.a_d.unwrap_or(1.0));
            }
            s
        }
    };
    Ok(Output::ok(body))
}

fn regime_tag(r: Regime) -> &'static str {
    match r {
        Regime::OutsideSupport => "outside_support",
        Regime::DeltaDominates => "delta_dominates",
        Regime::ProductDominates => "product_dominates",
        Regime::Divergent => "divergent",
        Regime::Boundary => "boundary",
    }
}

#[derive(Serialize)]
struct PointDocument {
    a: String,
    bits: u32,
    density: String,
    integral: String,
    quadrature: Option<f64>,
    regime: &'static str,
}

fn point_density(
    common: &Common,
    ctx: PrecisionContext,
    steps: &StepLengths,
    a: &Float,
    periods: Option<usize>,
) -> Result<Output, CliError> {
    let p3 = density(a, steps, ctx)?;
    let integral = ramble_integral(a, steps, ctx)?;
    let regime = classify(a, steps, ctx)?.regime;
    let quadrature = match periods {
        Some(p) => Some(ramble_quadrature(a.to_f64(), steps, p)?.value),
        None => None,
    };
    let digits = ctx.decimal_digits();
    let doc = PointDocument {
        a: shown(a, common.digits, digits),
        bits: ctx.bits(),
        density: shown(&p3, common.digits, digits),
        integral: shown(&integral, common.digits, digits),
        quadrature,
        regime: regime_tag(regime),
    };
    let body = match common.format.unwrap_or(Format::Json) {
        Format::Json => json(&doc)?,
        Format::Csv => format!(
            "a,p3,integral,regime\n{},{},{},{}\n",
            doc.a, doc.density, doc.integral, doc.regime
        ),
        Format::Text => {
            let mut s = format!(
                "p3({}) = {}\nI = {} ({})\n",
                doc.a, doc.density, doc.integral, doc.regime
            );
            if let Some(q) = quadrature {
                let _ = writeln!(s, "oscillatory quadrature I = {q}");
            }
            s
        }
    };
    Ok(Output::ok(body))
}

#[derive(Serialize)]
struct CurveDocument {
    a: Vec<String>,
    bits: u32,
    p3: Vec<String>,
}

fn curve(
    common: &Common,
    ctx: PrecisionContext,
    steps: &StepLengths,
    points: usize,
    exclusion: f64,
) -> Result<Output, CliError> {
    if !(exclusion.is_finite() && exclusion > 0.0) {
        return Err(CliError::Usage("--exclusion must be positive".to_string()));
    }
    let rows = sample_density_curve(steps, points, &ctx.float(exclusion), ctx)?;
    let digits = common.digits.unwrap_or(17);
    let body = match common.format.unwrap_or(Format::Csv) {
        Format::Csv | Format::Text => density_curve_csv(&rows, digits),
        Format::Json => json(&CurveDocument {
            a: rows
                .iter()
                .map(|(a, _)| format_decimal(a, digits))
                .collect(),
            bits: ctx.bits(),
            p3: rows
                .iter()
                .map(|(_, p)| format_decimal(p, digits))
                .collect(),
        })?,
    };
    Ok(Output::ok(body))
}

#[derive(Serialize)]
struct HistogramDocument<'a> {
    closed_form: &'a [f64],
    histogram: &'a Histogram,
}

fn histogram(
    common: &Common,
    steps: &StepLengths,
    samples: u64,
    bin_width: f64,
    exclusion: f64,
    seed: u64,
) -> Result<Output, CliError> {
    if !(bin_width.is_finite() && bin_width > 0.0) {
        return Err(CliError::Usage("--bin-width must be positive".to_string()));
    }
    let [r0, r1, r2] = steps.to_f64();
    let span = r0 + r1 + r2 - (r0 - r1 - r2).max(0.0);
    let bins = ((span / bin_width).round() as usize).max(1);
    let hist = simulate_walk(steps, samples, bins, seed)?;
    let cmp = compare_histogram(&hist, steps, exclusion, PrecisionContext::new(64)?)?;
    let body = match common.format.unwrap_or(Format::Csv) {
        Format::Csv | Format::Text => hist.to_csv(&cmp.closed_form),
        Format::Json => json(&HistogramDocument {
            closed_form: &cmp.closed_form,
            histogram: &hist,
        })?,
    };
    Ok(Output::ok(body))
}

fn coeffs(common: &Common, ctx: PrecisionContext, d: &str, n: usize) -> Result<Output, CliError> {
    let d = tuple(d, ctx)?;
    let a = coefficient_batch(&d, n, ctx);
    let body = match common.format.unwrap_or(Format::Json) {
        Format::Json => {
            let mut doc = CoefficientDocument::new(&d, &a, ctx);
            if let Some(k) = common.digits {
                doc.a = a.iter().map(|x| format_decimal(x, k)).collect();
            }
            json(&doc)?
        }
        Format::Csv | Format::Text => {
            let mut s = String::from("k,a\n");
            for (k, x) in a.iter().enumerate() {
                let _ = writeln!(s, "{k},{}", shown(x, common.digits, ctx.decimal_digits()));
            }
            s
        }
    };
    Ok(Output::ok(body))
}

#[derive(Serialize)]
struct SdlDocument {
    #[serde(rename = "N")]
    n: usize,
    bits: u32,
    d: Vec<String>,
    l: u32,
    value: String,
}

fn sdl(
    common: &Common,
    ctx: PrecisionContext,
    d: &str,
    l: u32,
    n: usize,
) -> Result<Output, CliError> {
    let t = tuple(d, ctx)?;
    let cfg = SeriesConfig {
        max_k: n,
        l,
        precision: ctx,
        ..SeriesConfig::default()
    };
    let value = s_d_partial(&t, l, &cfg)?;
    let doc = SdlDocument {
        n,
        bits: ctx.bits(),
        d: t.w().iter().map(ComplexValue::to_string).collect(),
        l,
        value: shown(&value, common.digits, ctx.decimal_digits()),
    };
    let body = match common.format.unwrap_or(Format::Json) {
        Format::Json => json(&doc)?,
        Format::Csv => format!("d,l,N,value\n\"{d}\",{l},{n},{}\n", doc.value),
        Format::Text => format!("S_D({l}) = {} (N = {n})\n", doc.value),
    };
    Ok(Output::ok(body))
}

#[derive(Serialize)]
struct ConstantDocument {
    #[serde(rename = "C")]
    c: String,
    #[serde(rename = "N")]
    n: usize,
    bits: u32,
    l: u32,
    reference: String,
}

fn constant(
    common: &Common,
    ctx: PrecisionContext,
    d: &str,
    l: u32,
    n: usize,
    reference: Option<&str>,
) -> Result<Output, CliError> {
    let t = tuple(d, ctx)?;
    let reference = match reference {
        Some(r) => real_value(r, ctx)?,
        None if t.n() == 2 => mahler_cm(&t, ctx)?,
        None => {
            return Err(CliError::Usage(
                "--reference is required unless the form has three terms".to_string(),
            ))
        }
    };
    let cfg = SeriesConfig {
        max_k: n,
        l,
        precision: ctx,
        ..SeriesConfig::default()
    };
    let c = estimate_c(&t, l, &reference, n, &cfg)?;
    let doc = ConstantDocument {
        c: shown(&c, common.digits, 12),
        n,
        bits: ctx.bits(),
        l,
        reference: shown(&reference, common.digits, ctx.decimal_digits()),
    };
    let body = match common.format.unwrap_or(Format::Json) {
        Format::Json => json(&doc)?,
        Format::Csv => format!("C,N,l,reference\n{},{n},{l},{}\n", doc.c, doc.reference),
        Format::Text => format!("C = {} (N ≤ {n}, l = {l})\n", doc.c),
    };
    Ok(Output::ok(body))
}

fn validate(common: &Common, opts: &ValidationOptions) -> Result<Output, CliError> {
    let report = run_validation(opts)?;
    let body = match common.format.unwrap_or(Format::Json) {
        Format::Json => json(&report)?,
        Format::Csv => {
            let mut s = String::from("name,lhs,rhs,tolerance,pass\n");
            for c in &report.checks {
                let _ = writeln!(
                    s,
                    "\"{}\",{},{},{},{}",
                    c.name, c.lhs, c.rhs, c.tolerance, c.pass
                );
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for c in &report.checks {
                let tag = if c.pass { "PASS" } else { "FAIL" };
                let _ = writeln!(
                    s,
                    "{tag} {}: {} vs {} (tol {})",
                    c.name, c.lhs, c.rhs, c.tolerance
                );
            }
            s
        }
    };
    Ok(Output {
        body,
        failed: !report.passed,
    })
}

#[derive(Serialize)]
struct ValuesRow {
    #[serde(rename = "C")]
    c: String,
    #[serde(rename = "D")]
    d: &'static str,
    alpha: Option<&'static str>,
    dilog: Option<String>,
    log_r0: Option<String>,
    m: String,
}

fn values_table(common: &Common, ctx: PrecisionContext, n: usize) -> Result<Output, CliError> {
    let cfg = SeriesConfig {
        max_k: n,
        precision: ctx,
        ..SeriesConfig::default()
    };
    let places = common.digits.unwrap_or(4);
    let fixed = |x: &Float| format!("{:.*}", places, x.to_f64());
    let mut rows = Vec::new();
    for row in &VALUE_TABLE {
        let d = tuple(row.literal, ctx)?;
        let m = mahler_e2(&d, 1, &cfg)?.value;
        let cm = mahler_cm(&d, ctx)?;
        let r = d.sorted_moduli();
        let geometry = triangle_geometry(&r[0], &r[1], &r[2], ctx);
        let (log_r0, dilog) = match &geometry.angles {
            None => (Some(fixed(&ctx.float(r[0].ln_ref()))), None),
            Some(g) => {
                let alpha = ComplexValue::polar(&ctx.float(&r[2] / &r[1]), &g[0]);
                (None, Some(fixed(&bloch_wigner(&alpha, ctx)?)))
            }
        };
        let c = estimate_c(&d, 1, &cm, n, &cfg)?;
        rows.push(ValuesRow {
            c: format!("{:.3}", c.to_f64()),
            d: row.label,
            alpha: row.alpha,
            dilog,
            log_r0,
            m: fixed(&m),
        });
    }
    let body = match common.format.unwrap_or(Format::Text) {
        Format::Json => json(&rows)?,
        Format::Csv => {
            let mut s = String::from("D,m,log_r0,alpha,dilog,C\n");
            for r in &rows {
                let _ = writeln!(
                    s,
                    "\"{}\",{},{},{},{},{}",
                    r.d,
                    r.m,
                    r.log_r0.as_deref().unwrap_or(""),
                    r.alpha.unwrap_or(""),
                    r.dilog.as_deref().unwrap_or(""),
                    r.c
                );
            }
            s
        }
        Format::Text => {
            let mut s = format!(
                "{:<14} {:<10} {:<10} {:<10} {:<10} {}\n",
                "D", "m", "log r0", "alpha", "D(alpha)", "C"
            );
            for r in &rows {
                let _ = writeln!(
                    s,
                    "{:<14} {:<10} {:<10} {:<10} {:<10} {}",
                    r.d,
                    r.m,
                    r.log_r0.as_deref().unwrap_or("-"),
                    r.alpha.unwrap_or("-"),
                    r.dilog.as_deref().unwrap_or("-"),
                    r.c
                );
            }
            s
        }
    };
    Ok(Output::ok(body))
}

#[derive(Serialize)]
struct SdlRowDocument {
    #[serde(rename = "D")]
    d: &'static str,
    l: u32,
    value: String,
}

fn sdl_table(common: &Common, ctx: PrecisionContext, n: usize) -> Result<Output, CliError> {
    let places = common.digits.unwrap_or(4);
    let mut rows = Vec::new();
    for row in &SDL_TABLE {
        let d = tuple(row.literal, ctx)?;
        let cfg = SeriesConfig {
            max_k: n,
            l: row.l,
            precision: ctx,
            ..SeriesConfig::default()
        };
        let v = s_d_partial(&d, row.l, &cfg)?;
        rows.push(SdlRowDocument {
            d: row.label,
            l: row.l,
            value: format!("{:.*}", places, v.to_f64()),
        });
    }
    let body = match common.format.unwrap_or(Format::Text) {
        Format::Json => json(&rows)?,
        Format::Csv => {
            let mut s = String::from("D,l,S_D(l)\n");
            for r in &rows {
                let _ = writeln!(s, "\"{}\",{},{}", r.d, r.l, r.value);
            }
            s
        }
        Format::Text => {
            let mut s = format!("{:<10} {:<3} {}\n", "D", "l", "S_D(l)");
            for r in &rows {
                let _ = writeln!(s, "{:<10} {:<3} {}", r.d, r.l, r.value);
            }
            s
        }
    };
    Ok(Output::ok(body))
}
