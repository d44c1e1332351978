//! Oracle-agreement suite behind `mahler validate`.

use rug::Float;
use serde::{Deserialize, Serialize};

use super::walk::{compare_histogram, simulate_walk};
use super::{mahler_cm, mahler_quadrature, ramble_quadrature, total_probability, OracleError};
use crate::catalog::{DENSITY_ENDPOINTS, ONES_MAHLER, REFERENCE_WALKS, VALUE_TABLE};
use crate::literal::parse_tuple;
use crate::ramble::{density, StepLengths};
use crate::series::{mahler_e2, SeriesConfig};
use crate::special::PrecisionContext;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub lhs: f64,
    pub name: String,
    pub pass: bool,
    pub rhs: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn new(name: impl Into<String>, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        Check {
            lhs,
            name: name.into(),
            pass: (lhs - rhs).abs() <= tolerance,
            rhs,
            tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
    pub passed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationOptions {
    pub precision: PrecisionContext,
    /// Series truncation depth.
    pub n: usize,
    pub grid: usize,
    pub periods: usize,
    pub samples: u64,
    pub seed: u64,
}

impl Default for ValidationOptions {
    fn default() -> Self {
        ValidationOptions {
            precision: PrecisionContext::default(),
            n: 200,
            grid: 2048,
            periods: 2000,
            samples: 4_000_000,
            seed: 1,
        }
    }
}

fn steps(r: [f64; 3]) -> Result<StepLengths, OracleError> {
    Ok(StepLengths::from_f64(128, r[0], r[1], r[2])?)
}

pub fn run_validation(opts: &ValidationOptions) -> Result<ValidationReport, OracleError> {
    let ctx = opts.precision;
    let cfg = SeriesConfig {
        max_k: opts.n,
        precision: ctx,
        ..SeriesConfig::default()
    };
    let mut checks = Vec::new();
    for row in &VALUE_TABLE {
        let d = parse_tuple(row.literal, ctx).map_err(|e| OracleError::Domain(e.to_string()))?;
        let cm = mahler_cm(&d, ctx)?.to_f64();
        let e2 = mahler_e2(&d, 1, &cfg)?.value.to_f64();
        let quad = mahler_quadrature(&d, opts.grid)?;
        let expected = if row.literal == "1,1,1" {
            ONES_MAHLER
        } else {
            row.m
        };
        checks.push(Check::new(
            format!("cm vs table {}", row.label),
            cm,
            expected,
            5e-4,
        ));
        checks.push(Check::new(
            format!("e2 vs cm {}", row.label),
            e2,
            cm,
            row.c / (opts.n as f64).sqrt(),
        ));
        checks.push(Check::new(
            format!("quad vs cm {}", row.label),
            quad,
            cm,
            1e-3,
        ));
    }

    let hp = PrecisionContext::new(128)?;
    for p in &DENSITY_ENDPOINTS {
        let s = steps(p.steps)?;
        let v = density(&Float::with_val(128, p.a), &s, hp)?.to_f64();
        checks.push(Check::new(
            format!("density {:?} at a = {}", p.steps, p.a),
            v,
            p.value,
            p.tolerance,
        ));
    }

    for (a, r) in [
        (1.5, [1.0, 1.0, 1.0]),
        (3.5, [4.0, 2.0, 1.0]),
        (7.0, [3.0, 2.0, 1.0]),
    ] {
        let s = steps(r)?;
        let quad = ramble_quadrature(a, &s, opts.periods)?.value;
        let closed = crate::ramble::ramble_integral(&Float::with_val(128, a), &s, hp)?.to_f64();
        checks.push(Check::new(
            format!("oscillatory I {r:?} at a = {a}"),
            quad,
            closed,
            1e-4,
        ));
    }

    let lp = PrecisionContext::new(64)?;
    for r in REFERENCE_WALKS {
        let s = steps(r)?;
        checks.push(Check::new(
            format!("total probability {r:?}"),
            total_probability(&s, lp)?,
            1.0,
            1e-6,
        ));
        let bins = ((r[0] + r[1] + r[2] - (r[0] - r[1] - r[2]).max(0.0)) / 0.05).round() as usize;
        let hist = simulate_walk(&s, opts.samples, bins, opts.seed)?;
        let cmp = compare_histogram(&hist, &s, 0.1, lp)?;
        checks.push(Check::new(
            format!("monte carlo {r:?} max bin deviation"),
            cmp.max_deviation,
            0.0,
            1e-2,
        ));
    }

    let passed = checks.iter().all(|c| c.pass);
    Ok(ValidationReport { checks, passed })
}
