//! Truncation bounds, parametric in the unspecified constant `A_D`.
//!
//! ```text
//! E1:      |S|·(2π)^{1/4}·A_D·c² / (3 N^{3/4})
//! E2, l=1: |S|·3·2^{1/4}·A_D·c² / (√π √N)
//! E2, l≥2: |S|·3√2·c²·A_D·A(D,l) / (2√N),  A(D,l) = 6√2 (1 − d²/c²)^{−(l−1)/2}
//! ```

use rug::ops::Pow;
use rug::Float;

use super::{CoefficientTuple, SeriesError};
use crate::ramble::singularity_sets;
use crate::special::PrecisionContext;

fn check(n_trunc: usize, a_d: f64) -> Result<(), SeriesError> {
    if n_trunc == 0 {
        return Err(SeriesError::InvalidArgument(
            "truncation depth must be at least 1".to_string(),
        ));
    }
    if !(a_d.is_finite() && a_d > 0.0) {
        return Err(SeriesError::InvalidArgument(
            "A_D must be positive".to_string(),
        ));
    }
    Ok(())
}

fn singular_count(d: &CoefficientTuple, ctx: PrecisionContext) -> Result<u32, SeriesError> {
    let steps = d.steps()?;
    Ok(singularity_sets(&steps, ctx).s.len() as u32)
}

pub fn bound_e1(
    d: &CoefficientTuple,
    n_trunc: usize,
    a_d: f64,
    ctx: PrecisionContext,
) -> Result<Float, SeriesError> {
    check(n_trunc, a_d)?;
    let prec = ctx.working().bits();
    let s = singular_count(d, ctx)?;
    let root = Float::with_val(prec, ctx.working().pi() * 2u32)
        .sqrt()
        .sqrt();
    let n = Float::with_val(prec, n_trunc);
    let n34 = Float::with_val(prec, (&n).pow(3u32)).sqrt().sqrt();
    let value = root * s * a_d * d.c_sq() / (n34 * 3u32);
    Ok(ctx.float(&value))
}

/// `A(D,l) = 6√2 (1 − d²/c²)^{−(l−1)/2}`; undefined when `d = c`.
pub fn a_constant(
    d: &CoefficientTuple,
    l: u32,
    ctx: PrecisionContext,
) -> Result<Float, SeriesError> {
    let prec = ctx.working().bits();
    let d_sq = Float::with_val(prec, d.d().square_ref());
    let ratio = Float::with_val(prec, &d_sq / d.c_sq());
    let gap: Float = 1 - ratio;
    if gap <= 0 {
        return Err(SeriesError::UndefinedBound(
            "A(D,l) needs d(D) < c(D)".to_string(),
        ));
    }
    let exponent = -(Float::with_val(prec, l) - 1u32) / 2u32;
    let value = Float::with_val(prec, 72u32).sqrt() * gap.pow(&exponent);
    Ok(ctx.float(&value))
}

pub fn bound_e2(
    d: &CoefficientTuple,
    n_trunc: usize,
    l: u32,
    a_d: f64,
    ctx: PrecisionContext,
) -> Result<Float, SeriesError> {
    check(n_trunc, a_d)?;
    if l == 0 {
        return Err(SeriesError::UndefinedBound(
            "no bound is given for l = 0".to_string(),
        ));
    }
    let prec = ctx.working().bits();
    let s = singular_count(d, ctx)?;
    let sqrt_n = Float::with_val(prec, n_trunc).sqrt();
    let value = if l == 1 {
        let fourth_root_2 = Float::with_val(prec, 2u32).sqrt().sqrt();
        let sqrt_pi = ctx.working().pi().sqrt();
        fourth_root_2 * 3u32 * s * a_d * d.c_sq() / (sqrt_pi * sqrt_n)
    } else {
        let a = a_constant(d, l, ctx.working())?;
        Float::with_val(prec, 18u32).sqrt() * d.c_sq() * s * a_d * a / (sqrt_n * 2u32)
    };
    Ok(ctx.float(&value))
}
