//! Complex dilogarithm and the Bloch–Wigner function.
//!
//! `Li2` is reduced to the region `|z| ≤ 1, Re z ≤ 1/2` by the inversion
//! `Li2(z) + Li2(1/z) = −π²/6 − ½ log²(−z)` and the reflection
//! `Li2(z) + Li2(1−z) = π²/6 − log z · log(1−z)`. There
//! `u = −log(1−z)` satisfies `|u| < 1.3`, and the Bernoulli expansion
//! `Li2(z) = Σ B_n u^{n+1}/(n+1)!` converges geometrically with ratio
//! `(|u|/2π)²`.

use rug::{Float, Integer, Rational};

use super::{ComplexValue, PrecisionContext, SpecialError};

/// `B_2, B_4, …, B_{2·count}` via the integer tangent-number recurrence.
pub fn bernoulli_even(count: usize) -> Vec<Rational> {
    if count == 0 {
        return Vec::new();
    }
    // tangent[k-1] = T_k
    let mut tangent: Vec<Integer> = vec![Integer::new(); count];
    tangent[0] = Integer::from(1);
    for k in 1..count {
        tangent[k] = Integer::from(&tangent[k - 1] * k as u32);
    }
    for k in 1..count {
        for j in k..count {
            let lhs = Integer::from(&tangent[j - 1] * (j - k) as u32);
            let rhs = Integer::from(&tangent[j] * (j - k + 2) as u32);
            tangent[j] = lhs + rhs;
        }
    }
    tangent
        .into_iter()
        .enumerate()
        .map(|(idx, t)| {
            let k = idx as u32 + 1;
            let four_k = Integer::from(1) << (2 * k);
            let den = Integer::from(&four_k - 1u32) * four_k;
            let mut b = Rational::from((t * (2 * k), den));
            if k.is_multiple_of(2) {
                b = -b;
            }
            b
        })
        .collect()
}

fn check_branch_cut(
    op: &'static str,
    z: &ComplexValue,
    ctx: PrecisionContext,
) -> Result<(), SpecialError> {
    if !z.is_finite() {
        return Err(SpecialError::domain(op, "argument is not finite"));
    }
    let prec = ctx.working().bits();
    let tol = ctx.half_tolerance();
    let distance = if z.re >= 1 {
        Float::with_val(prec, z.im.abs_ref())
    } else {
        let dx = Float::with_val(prec, &z.re - 1u32);
        dx.hypot(&z.im)
    };
    if distance <= tol {
        return Err(SpecialError::domain(
            op,
            "argument lies on the branch cut [1, ∞)",
        ));
    }
    Ok(())
}

/// Principal branch of `Li2(z)` on `ℂ \ [1, ∞)`.
pub fn dilog(z: &ComplexValue, ctx: PrecisionContext) -> Result<ComplexValue, SpecialError> {
    check_branch_cut("dilog", z, ctx)?;
    let work = ctx.working();
    let value = dilog_reduced(&z.with_prec(work.bits()), work);
    Ok(value.with_prec(ctx.bits()))
}

/// Bloch–Wigner `D(z) = Im Li2(z) + arg(1−z)·log|z|`.
pub fn bloch_wigner(z: &ComplexValue, ctx: PrecisionContext) -> Result<Float, SpecialError> {
    check_branch_cut("bloch_wigner", z, ctx)?;
    if z.is_zero() {
        return Err(SpecialError::domain("bloch_wigner", "argument is zero"));
    }
    let work = ctx.working();
    let z = z.with_prec(work.bits());
    let li2 = dilog_reduced(&z, work);
    let one = ComplexValue::real(work.float(1));
    let arg = one.sub(&z).arg();
    let value = li2.im + arg * z.abs().ln();
    Ok(ctx.float(&value))
}

fn pi_squared_over_6(ctx: PrecisionContext) -> Float {
    ctx.pi().square() / 6u32
}

fn dilog_reduced(z: &ComplexValue, ctx: PrecisionContext) -> ComplexValue {
    let prec = ctx.bits();
    if z.is_zero() {
        return ComplexValue::real(ctx.zero());
    }
    if z.norm_sqr() > 1 {
        // Li2(z) = −π²/6 − ½ log²(−z) − Li2(1/z)
        let inner = dilog_reduced(&z.recip(), ctx);
        let log_neg = z.neg().ln();
        let half_sq = log_neg.square().scale(&ctx.float(0.5));
        let mut out = inner.add(&half_sq).neg();
        out.re -= pi_squared_over_6(ctx);
        return out;
    }
    if Float::with_val(prec, &z.re * 2u32) > 1 {
        // Li2(z) = π²/6 − log z · log(1−z) − Li2(1−z)
        let one = ComplexValue::real(ctx.float(1));
        let w = one.sub(z);
        let inner = bernoulli_series(&w, ctx);
        let prod = z.ln().mul(&w.ln());
        let mut out = prod.add(&inner).neg();
        out.re += pi_squared_over_6(ctx);
        return out;
    }
    bernoulli_series(z, ctx)
}

/// `Li2(z) = u − u²/4 + Σ_k B_{2k} u^{2k+1}/(2k+1)!`, `u = −log(1−z)`.
fn bernoulli_series(z: &ComplexValue, ctx: PrecisionContext) -> ComplexValue {
    let prec = ctx.bits();
    let one = ComplexValue::real(ctx.float(1));
    let u = one.sub(z).ln().neg();
    let u_abs = u.abs().to_f64();
    if u_abs == 0.0 {
        return ComplexValue::real(ctx.zero());
    }
    let ratio_bits = 2.0 * (2.0 * std::f64::consts::PI / u_abs).log2();
    let terms = ((prec as f64 + 8.0) / ratio_bits).ceil() as usize + 2;
    let bernoulli = bernoulli_even(terms);

    let u2 = u.square();
    let mut sum = u.sub(&u2.scale(&ctx.float(0.25)));
    let mut power = u.clone();
    let mut factorial = Integer::from(1);
    let threshold = ctx.stop_threshold();
    for (idx, b) in bernoulli.iter().enumerate() {
        let k = idx as u32 + 1;
        power = power.mul(&u2);
        factorial *= (2 * k) * (2 * k + 1);
        let coefficient = Float::with_val(prec, b) / &factorial;
        let term = power.scale(&coefficient);
        let small = term.abs() < threshold;
        sum = sum.add(&term);
        if small {
            break;
        }
    }
    sum
}
