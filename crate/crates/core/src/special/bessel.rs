//! Bessel `J0` of real argument.
//!
//! Below the asymptotic threshold the power series is summed with
//! `⌈1.45|t|⌉` extra bits, enough to absorb its `e^{|t|}` term growth. Above
//! it the Hankel expansion is truncated once terms fall under the stopping
//! threshold; its smallest term is about `e^{-2|t|}`, which fixes the
//! threshold at roughly `bits·ln2/2` (never below 20).

use std::f64::consts::{FRAC_PI_4, LN_2, PI};

use rug::Float;

use super::PrecisionContext;

/// Argument at which the f64 kernel switches from series to Hankel form.
const F64_SPLIT: f64 = 14.0;

fn asymptotic_threshold(bits: u32) -> f64 {
    ((bits as f64 + 16.0) * LN_2 / 2.0 + 4.0).max(20.0)
}

/// `J0(t)` at the context's precision.
pub fn bessel_j0(t: &Float, ctx: PrecisionContext) -> Float {
    let x = Float::with_val(ctx.working().bits(), t.abs_ref());
    if x.is_zero() {
        return ctx.float(1);
    }
    let value = if x.to_f64() >= asymptotic_threshold(ctx.bits()) {
        hankel(&x, ctx)
    } else {
        power_series(&x, ctx)
    };
    ctx.float(&value)
}

fn power_series(x: &Float, ctx: PrecisionContext) -> Float {
    let guard = (1.45 * x.to_f64()).ceil() as u32 + PrecisionContext::GUARD_BITS;
    let prec = ctx.bits() + guard;
    let q = -Float::with_val(prec, x.square_ref()) / 4u32;
    let threshold = ctx.stop_threshold();
    let peak = x.to_f64() / 2.0;
    let mut term = Float::with_val(prec, 1);
    let mut sum = Float::with_val(prec, 1);
    let mut k: u32 = 0;
    loop {
        k += 1;
        term *= &q;
        term /= k * k;
        sum += &term;
        if (k as f64) > peak && term.clone().abs() < threshold {
            break;
        }
    }
    sum
}

fn hankel(x: &Float, ctx: PrecisionContext) -> Float {
    let prec = ctx.working().bits();
    let threshold = ctx.stop_threshold();
    let mut p = Float::with_val(prec, 1);
    let mut q = Float::new(prec);
    let mut mu = Float::with_val(prec, 1);
    let eight_x = Float::with_val(prec, x * 8u32);
    let mut m: u32 = 0;
    loop {
        m += 1;
        let odd = 2 * m - 1;
        mu *= odd * odd;
        mu /= &eight_x;
        mu /= m;
        // P collects even m with sign (−1)^{m/2}, Q odd m with sign (−1)^{(m−1)/2}
        let negative = (m % 4) == 2 || (m % 4) == 3;
        let target = if m.is_multiple_of(2) { &mut p } else { &mut q };
        if negative {
            *target -= &mu;
        } else {
            *target += &mu;
        }
        if mu < threshold {
            break;
        }
    }
    let pi = ctx.working().pi();
    let chi = Float::with_val(prec, x - Float::with_val(prec, &pi / 4u32));
    let (sin, cos) = chi.sin_cos(Float::new(prec));
    let amplitude = (Float::with_val(prec, 2u32) / (pi * x)).sqrt();
    amplitude * (p * cos + q * sin)
}

/// Fast double-precision `J0`, absolute error around `1e-11`.
pub fn bessel_j0_f64(t: f64) -> f64 {
    let x = t.abs();
    if x < F64_SPLIT {
        let q = -0.25 * x * x;
        let mut term = 1.0;
        let mut sum = 1.0;
        let mut k = 0.0;
        loop {
            k += 1.0;
            term *= q / (k * k);
            sum += term;
            if k > 0.5 * x && term.abs() < 1e-18 {
                break;
            }
        }
        return sum;
    }
    let mut p = 1.0;
    let mut q = 0.0;
    let mut mu: f64 = 1.0;
    let mut m = 0u32;
    loop {
        m += 1;
        let odd = (2 * m - 1) as f64;
        let next = mu * odd * odd / (8.0 * x * m as f64);
        if next > mu || next < 1e-17 {
            break;
        }
        mu = next;
        let sign = if m % 4 == 2 || m % 4 == 3 { -1.0 } else { 1.0 };
        if m.is_multiple_of(2) {
            p += sign * mu;
        } else {
            q += sign * mu;
        }
    }
    let chi = x - FRAC_PI_4;
    (2.0 / (PI * x)).sqrt() * (p * chi.cos() + q * chi.sin())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ctx(bits: u32) -> PrecisionContext {
        PrecisionContext::new(bits).unwrap()
    }

    #[test]
    fn j0_at_zero() {
        assert_eq!(bessel_j0(&Float::with_val(128, 0), ctx(128)), 1);
        assert_eq!(bessel_j0_f64(0.0), 1.0);
    }

    #[test]
    fn matches_mpfr_across_regimes() {
        for bits in [64u32, 128, 512] {
            let p = ctx(bits);
            let threshold = asymptotic_threshold(bits);
            let ts = [
                0.5,
                2.4,
                10.0,
                19.9,
                20.1,
                50.0,
                threshold - 0.5,
                threshold + 0.5,
                300.0,
                1234.5,
                -3.0,
            ];
            for t in ts {
                let x = Float::with_val(bits, t);
                let ours = bessel_j0(&x, p);
                let mpfr = Float::with_val(bits, x.j0_ref());
                let diff = Float::with_val(bits, &ours - &mpfr).abs();
                let tol = Float::with_val(bits, Float::i_exp(1, 6 - bits as i32));
                assert!(diff < tol, "bits {bits}, t {t}: diff {}", diff.to_f64());
            }
        }
    }

    #[test]
    fn f64_kernel_matches_mpfr() {
        let mut t = 0.0;
        while t < 400.0 {
            let mpfr = Float::with_val(128, t).j0().to_f64();
            assert!((bessel_j0_f64(t) - mpfr).abs() < 5e-11, "t = {t}");
            t += 0.137;
        }
    }

    /// First zero of the power series found by bisection, independently of the
    /// production kernel's stopping logic.
    #[test]
    fn first_zero() {
        let bits = 128;
        let p = ctx(bits);
        let prec = bits + 64;
        let series = |x: &Float| {
            let q = -Float::with_val(prec, x.square_ref()) / 4u32;
            let mut term = Float::with_val(prec, 1);
            let mut sum = Float::with_val(prec, 1);
            for k in 1u32..200 {
                term *= &q;
                term /= k * k;
                sum += &term;
            }
            sum
        };
        let mut lo = Float::with_val(prec, 2);
        let mut hi = Float::with_val(prec, 3);
        for _ in 0..(prec + 4) {
            let mid = Float::with_val(prec, &lo + &hi) / 2u32;
            if series(&mid) > 0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        assert!((lo.to_f64() - 2.404_825_557_695_773).abs() < 1e-15);
        let value = bessel_j0(&Float::with_val(bits, &lo), p);
        assert!(value.abs() < Float::with_val(bits, Float::i_exp(1, -(bits as i32) / 2)));
    }

    #[test]
    fn satisfies_bessel_equation() {
        // J0'' + J0'/t + J0 = 0 with central differences at spacing 2^{-bits/4};
        // truncation and rounding both contribute O(2^{-bits/2})
        for bits in [128u32, 256] {
            let p = ctx(bits);
            let h = Float::with_val(bits, Float::i_exp(1, -(bits as i32) / 4));
            let tol = Float::with_val(bits, Float::i_exp(1, 3 - (bits as i32) / 2));
            for t in [0.7, 1.9, 3.3, 8.0, 15.5, 27.0] {
                let t = Float::with_val(bits, t);
                let f = |x: Float| bessel_j0(&x, p);
                let plus = f(Float::with_val(bits, &t + &h));
                let minus = f(Float::with_val(bits, &t - &h));
                let mid = f(t.clone());
                let h2 = Float::with_val(bits, h.square_ref());
                let second =
                    Float::with_val(bits, &plus + &minus) - Float::with_val(bits, &mid * 2u32);
                let second = second / h2;
                let first =
                    Float::with_val(bits, &plus - &minus) / Float::with_val(bits, &h * 2u32);
                let residual = second + first / &t + mid;
                assert!(
                    residual.clone().abs() < tol,
                    "bits {bits}, t {t}: {}",
                    residual.to_f64()
                );
            }
        }
    }

    proptest! {
        #[test]
        fn bounded_by_one(t in -500.0f64..500.0) {
            prop_assert!(bessel_j0_f64(t).abs() <= 1.0);
            let v = bessel_j0(&Float::with_val(64, t), ctx(64));
            prop_assert!(v.to_f64().abs() <= 1.0);
        }
    }
}
