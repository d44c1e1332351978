use rug::{Float, Integer, Rational};

use super::{
    bound_e1, bound_e2, CoefficientTuple, Coefficients, ErrorBound, MahlerEstimate, Method,
    SeriesConfig, SeriesError,
};
use crate::special::{harmonic, PrecisionContext};

/// Rounding estimates above this abort with `PrecisionExhausted`.
const ROUNDING_LIMIT: f64 = 9.5367431640625e-7; // 2^-20

/// Outer partial sums after `j = 0…N` terms and their accumulated
/// rounding estimate.
#[derive(Debug, Clone)]
pub struct SeriesTrace {
    pub sums: Vec<Float>,
    pub rounding: Vec<f64>,
}

/// `Σ_{j≤N} w_j Σ_k coef(j,k) (−1)^k b_k` with `coef = C(j,k)` (no shift)
/// or `C(j+l+k−1,k)·C(j,k)` and the matching weights `1/j` or
/// `(2j+l)/(j(j+l))`.
fn outer_sums(coeffs: &Coefficients, n: usize, shift: Option<u32>) -> SeriesTrace {
    let prec = coeffs.ctx.working().bits();
    let eps = 2f64.powi(-(prec as i32));
    let b = &coeffs.normalized;
    let mut sums = Vec::with_capacity(n + 1);
    let mut rounding = Vec::with_capacity(n + 1);
    let mut total = Float::new(prec);
    let mut err = 0.0f64;
    sums.push(total.clone());
    rounding.push(err);
    for j in 1..=n {
        let ju = j as u32;
        let mut inner = Float::new(prec);
        let mut largest = Float::new(prec);
        for k in 0..=ju {
            let mut coef = Integer::from(Integer::binomial_u(ju, k));
            if let Some(l) = shift {
                coef *= Integer::from(Integer::binomial_u(ju + l + k - 1, k));
            }
            let term = Float::with_val(prec, &coef) * &b[k as usize];
            if term > largest {
                largest = term.clone();
            }
            if k % 2 == 0 {
                inner += &term;
            } else {
                inner -= &term;
            }
        }
        let weight = match shift {
            None => Rational::from((1, ju)),
            Some(l) => Rational::from((2 * ju + l, ju * (ju + l))),
        };
        let weight = Float::with_val(prec, &weight);
        err += weight.to_f64() * largest.to_f64() * (j as f64 + 1.0) * eps;
        total += inner * weight;
        sums.push(total.clone());
        rounding.push(err);
    }
    SeriesTrace { sums, rounding }
}

fn check_rounding(err: f64) -> Result<(), SeriesError> {
    if !(err <= ROUNDING_LIMIT) {
        return Err(SeriesError::PrecisionExhausted(err));
    }
    Ok(())
}

impl Coefficients {
    /// `E1(N)` for `N = 0…n`.
    pub fn e1_trace(&self, n: usize) -> SeriesTrace {
        let mut trace = outer_sums(self, n.min(self.max_k()), None);
        for s in trace.sums.iter_mut() {
            *s = Float::with_val(
                s.prec(),
                &self.log_c - Float::with_val(s.prec(), &*s / 2u32),
            );
        }
        trace
    }

    /// `S_D(l)` partial sums for `N = 0…n`.
    pub fn s_d_trace(&self, l: u32, n: usize) -> SeriesTrace {
        outer_sums(self, n.min(self.max_k()), Some(l))
    }

    /// `E2(N) = log c − ½H_l − ½S_D(l)` for `N = 0…n`.
    pub fn e2_trace(&self, l: u32, n: usize) -> SeriesTrace {
        let mut trace = self.s_d_trace(l, n);
        let prec = self.log_c.prec();
        let half_h = Float::with_val(prec, &harmonic(l)) / 2u32;
        let base = Float::with_val(prec, &self.log_c - &half_h);
        for s in trace.sums.iter_mut() {
            *s = Float::with_val(prec, &base - Float::with_val(prec, &*s / 2u32));
        }
        trace
    }
}

fn check_e2(d: &CoefficientTuple, l: u32) -> Result<(), SeriesError> {
    if l >= 2 && d.is_multiple_of_ones() {
        return Err(SeriesError::Validity(format!(
            "l = {l} requires D to differ from r(1,…,1); only l ∈ {{0, 1}} holds for every D"
        )));
    }
    Ok(())
}

pub fn mahler_e1(d: &CoefficientTuple, cfg: &SeriesConfig) -> Result<MahlerEstimate, SeriesError> {
    let ctx = cfg.precision;
    let n = cfg.max_k;
    let coeffs = Coefficients::compute(d, n, ctx);
    let trace = coeffs.e1_trace(n);
    let err = trace.rounding[n];
    check_rounding(err)?;
    let bound = bound_e1(d, n, cfg.a_d, ctx).ok().map(|value| ErrorBound {
        value,
        a_d: cfg.a_d,
    });
    Ok(MahlerEstimate {
        value: ctx.float(&trace.sums[n]),
        method: Method::E1,
        n_used: n,
        l: None,
        bits: ctx.bits(),
        bound,
        rounding_error: Some(err),
    })
}

/// `S_D(l)` truncated at `j = cfg.max_k`.
pub fn s_d_partial(d: &CoefficientTuple, l: u32, cfg: &SeriesConfig) -> Result<Float, SeriesError> {
    let ctx = cfg.precision;
    let coeffs = Coefficients::compute(d, cfg.max_k, ctx);
    let trace = coeffs.s_d_trace(l, cfg.max_k);
    check_rounding(trace.rounding[cfg.max_k])?;
    Ok(ctx.float(&trace.sums[cfg.max_k]))
}

pub fn mahler_e2(
    d: &CoefficientTuple,
    l: u32,
    cfg: &SeriesConfig,
) -> Result<MahlerEstimate, SeriesError> {
    check_e2(d, l)?;
    let ctx = cfg.precision;
    let n = cfg.max_k;
    let coeffs = Coefficients::compute(d, n, ctx);
    let trace = coeffs.e2_trace(l, n);
    let err = trace.rounding[n];
    check_rounding(err)?;
    let bound = bound_e2(d, n, l, cfg.a_d, ctx)
        .ok()
        .map(|value| ErrorBound {
            value,
            a_d: cfg.a_d,
        });
    Ok(MahlerEstimate {
        value: ctx.float(&trace.sums[n]),
        method: Method::E2,
        n_used: n,
        l: Some(l),
        bits: ctx.bits(),
        bound,
        rounding_error: Some(err),
    })
}

/// `|reference − E2(N)|·√N` for `N = 1…n_max`, from one coefficient batch.
pub fn e2_residual_profile(
    d: &CoefficientTuple,
    l: u32,
    reference: &Float,
    n_max: usize,
    ctx: PrecisionContext,
) -> Result<Vec<Float>, SeriesError> {
    check_e2(d, l)?;
    let coeffs = Coefficients::compute(d, n_max, ctx);
    let trace = coeffs.e2_trace(l, n_max);
    check_rounding(trace.rounding[n_max])?;
    let prec = ctx.bits();
    Ok((1..=n_max)
        .map(|n| {
            let diff = Float::with_val(prec, reference - &trace.sums[n]).abs();
            diff * Float::with_val(prec, n).sqrt()
        })
        .collect())
}

/// Experimental constant `C = max_{N ≤ n_max} |m − E2(N)|·√N`.
pub fn estimate_c(
    d: &CoefficientTuple,
    l: u32,
    reference: &Float,
    n_max: usize,
    cfg: &SeriesConfig,
) -> Result<Float, SeriesError> {
    if n_max < 10 {
        return Err(SeriesError::InvalidArgument(
            "n_max must be at least 10".to_string(),
        ));
    }
    let profile = e2_residual_profile(d, l, reference, n_max, cfg.precision)?;
    Ok(profile
        .into_iter()
        .fold(cfg.precision.zero(), |acc, x| if x > acc { x } else { acc }))
}
