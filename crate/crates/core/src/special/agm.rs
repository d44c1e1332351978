//! Arithmetic–geometric mean and the complete elliptic integral of the
//! first kind, `K(k) = π / (2·agm(1, √(1−k²)))`.

use rug::Float;

use super::{PrecisionContext, SpecialError};

const MAX_ITERATIONS: usize = 4096;

/// Arithmetic–geometric mean of two positive reals.
pub fn agm(x: &Float, y: &Float, ctx: PrecisionContext) -> Result<Float, SpecialError> {
    if !(x.is_finite() && y.is_finite() && *x > 0 && *y > 0) {
        return Err(SpecialError::domain(
            "agm",
            "both arguments must be positive",
        ));
    }
    let work = ctx.working();
    let mut a = work.float(x);
    let mut g = work.float(y);
    let tol = ctx.stop_threshold();
    for _ in 0..MAX_ITERATIONS {
        let gap = Float::with_val(work.bits(), &a - &g).abs();
        if gap <= Float::with_val(work.bits(), &tol * &a) {
            break;
        }
        let mean = Float::with_val(work.bits(), &a + &g) / 2u32;
        g = Float::with_val(work.bits(), &a * &g).sqrt();
        a = mean;
    }
    Ok(ctx.float(&a))
}

/// `K(k)` for `0 ≤ k < 1`.
pub fn elliptic_k(k: &Float, ctx: PrecisionContext) -> Result<Float, SpecialError> {
    if !k.is_finite() || *k < 0 {
        return Err(SpecialError::domain(
            "elliptic_k",
            "modulus must be in [0, 1)",
        ));
    }
    if *k >= 1 {
        return Err(SpecialError::domain(
            "elliptic_k",
            "K diverges at modulus 1 and is complex beyond",
        ));
    }
    let work = ctx.working();
    // (1−k)(1+k) keeps the complementary modulus accurate near k = 1
    let one_minus = Float::with_val(work.bits(), 1 - k);
    let one_plus = Float::with_val(work.bits(), 1 + k);
    let kc = (one_minus * one_plus).sqrt();
    elliptic_k_complementary(&kc, ctx)
}

/// `K` as a function of the complementary modulus `k' = √(1−k²)`, `0 < k' ≤ 1`.
///
/// Callers that can form `k'` without cancellation (the ramble closed form
/// near its singular points) should use this entry point directly.
pub fn elliptic_k_complementary(kc: &Float, ctx: PrecisionContext) -> Result<Float, SpecialError> {
    if !kc.is_finite() || *kc <= 0 || *kc > 1 {
        return Err(SpecialError::domain(
            "elliptic_k",
            "complementary modulus must be in (0, 1]",
        ));
    }
    let work = ctx.working();
    let m = agm(&work.float(1), kc, work)?;
    let k = work.pi() / (m * 2u32);
    Ok(ctx.float(&k))
}
