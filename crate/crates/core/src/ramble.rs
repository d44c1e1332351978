//! Closed form of the three-step ramble integral
//! `I(a) = ∫₀^∞ t J0(at) J0(r0 t) J0(r1 t) J0(r2 t) dt` and the walk
//! density `p3(a) = a·I(a)`.
//!
//! With `P = a·r0·r1·r2` and
//! `Δ² = (σ−a)(a+r1+r2−r0)(a+r0+r2−r1)(a+r0+r1−r2)/16`, `σ = r0+r1+r2`:
//!
//! ```text
//! I(a) = K(√P/Δ) / (π²Δ)    when Δ² > P
//! I(a) = K(Δ/√P) / (π²√P)   when Δ² < P
//! ```
//!
//! and `I(a) = 0` when one of `{a, r0, r1, r2}` exceeds the sum of the
//! other three. The branch selector factors as
//!
//! ```text
//! Δ² − P = −(a+σ)(a+r0−r1−r2)(a−r0+r1−r2)(a−r0−r1+r2)/16
//! ```
//!
//! whose positive roots are the singular set `S`. The complementary modulus
//! `k'` is formed from this product rather than from `1−k²`, so it keeps
//! full relative accuracy next to `S` where `K` blows up like `log(4/k')`.

use std::cmp::Ordering;

use rayon::prelude::*;
use rug::Float;
use thiserror::Error;

use crate::decimal::format_decimal;
use crate::special::{elliptic_k_complementary, PrecisionContext, SpecialError};

#[derive(Debug, Error)]
pub enum RambleError {
    #[error("step lengths must be finite and strictly positive")]
    InvalidSteps,
    #[error("{0}")]
    Domain(String),
    #[error("ramble integral diverges at a = {}: singular point b = {}", format_decimal(.a, 12), format_decimal(.b, 12))]
    Divergent { a: Float, b: Float },
    #[error("log-coefficient estimate did not stabilise: {0}")]
    Estimation(String),
    #[error(transparent)]
    Special(#[from] SpecialError),
}

fn cmp_float(x: &Float, y: &Float) -> Ordering {
    x.partial_cmp(y).unwrap_or(Ordering::Equal)
}

/// Walk step lengths, stored in descending order `r0 ≥ r1 ≥ r2 > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct StepLengths {
    r: [Float; 3],
}

impl StepLengths {
    pub fn new(r0: Float, r1: Float, r2: Float) -> Result<Self, RambleError> {
        let mut r = [r0, r1, r2];
        if r.iter().any(|x| !x.is_finite() || *x <= 0) {
            return Err(RambleError::InvalidSteps);
        }
        r.sort_by(|x, y| cmp_float(y, x));
        Ok(StepLengths { r })
    }

    pub fn from_f64(prec: u32, r0: f64, r1: f64, r2: f64) -> Result<Self, RambleError> {
        StepLengths::new(
            Float::with_val(prec, r0),
            Float::with_val(prec, r1),
            Float::with_val(prec, r2),
        )
    }

    pub fn r0(&self) -> &Float {
        &self.r[0]
    }

    pub fn r1(&self) -> &Float {
        &self.r[1]
    }

    pub fn r2(&self) -> &Float {
        &self.r[2]
    }

    pub fn as_array(&self) -> &[Float; 3] {
        &self.r
    }

    pub fn to_f64(&self) -> [f64; 3] {
        [self.r[0].to_f64(), self.r[1].to_f64(), self.r[2].to_f64()]
    }

    /// `λ·(r0, r1, r2)` for `λ > 0`.
    pub fn scaled(&self, lambda: &Float) -> Result<Self, RambleError> {
        let prec = self.r[0].prec().max(lambda.prec());
        let [r0, r1, r2] = &self.r;
        StepLengths::new(
            Float::with_val(prec, r0 * lambda),
            Float::with_val(prec, r1 * lambda),
            Float::with_val(prec, r2 * lambda),
        )
    }

    pub fn sum(&self, prec: u32) -> Float {
        let [r0, r1, r2] = &self.r;
        Float::with_val(prec, r0 + r1) + r2
    }

    /// Support `[max(0, r0−r1−r2), r0+r1+r2]` of the terminal distance.
    pub fn support(&self, prec: u32) -> (Float, Float) {
        let [r0, r1, r2] = &self.r;
        let low = Float::with_val(prec, r0 - r1) - r2;
        let low = if low > 0 { low } else { Float::new(prec) };
        (low, self.sum(prec))
    }
}

/// Divergence points `S` and non-differentiability points `S*`, both
/// ascending and free of duplicates.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularitySets {
    pub s: Vec<Float>,
    pub s_star: Vec<Float>,
}

fn candidates(steps: &StepLengths, prec: u32) -> [Float; 3] {
    let [r0, r1, r2] = steps.as_array();
    [
        Float::with_val(prec, r0 + r1) - r2,
        Float::with_val(prec, r0 - r1) + r2,
        Float::with_val(prec, r1 + r2) - r0,
    ]
}

fn sorted_unique(mut v: Vec<Float>) -> Vec<Float> {
    v.sort_by(cmp_float);
    v.dedup();
    v
}

pub fn singularity_sets(steps: &StepLengths, ctx: PrecisionContext) -> SingularitySets {
    let prec = ctx.bits();
    let s: Vec<Float> = candidates(steps, prec)
        .into_iter()
        .filter(|c| *c > 0)
        .collect();
    let s = sorted_unique(s);
    let [r0, r1, r2] = steps.as_array();
    let gap = Float::with_val(prec, r0 - r1) - r2;
    let mut s_star = s.clone();
    s_star.push(steps.sum(prec));
    if gap < 0 {
        s_star.push(Float::new(prec));
    } else {
        s_star.push(gap);
    }
    SingularitySets {
        s,
        s_star: sorted_unique(s_star),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    OutsideSupport,
    DeltaDominates,
    ProductDominates,
    Divergent,
    Boundary,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegimeClassification {
    pub regime: Regime,
    pub delta_squared: Float,
    /// `a·r0·r1·r2`.
    pub product: Float,
    /// The element of `S` hit when `regime` is `Divergent`.
    pub singularity: Option<Float>,
}

/// Everything at the doubled working precision.
struct Branch {
    regime: Regime,
    delta_squared: Float,
    product: Float,
    /// `Δ² − P`
    gap: Float,
    singularity: Option<Float>,
}

fn singularity_tolerance(a: &Float, ctx: PrecisionContext) -> Float {
    let scale = if *a > 1 { a.clone() } else { ctx.float(1) };
    ctx.half_tolerance() * scale
}

fn check_argument(a: &Float) -> Result<(), RambleError> {
    if !a.is_finite() || *a <= 0 {
        return Err(RambleError::Domain(
            "a must be finite and positive".to_string(),
        ));
    }
    Ok(())
}

fn branch(a: &Float, steps: &StepLengths, ctx: PrecisionContext) -> Branch {
    let wp = 2 * ctx.bits() + 64;
    let a = Float::with_val(wp, a);
    let [r0, r1, r2] = steps.as_array();
    let r0 = Float::with_val(wp, r0);
    let r1 = Float::with_val(wp, r1);
    let r2 = Float::with_val(wp, r2);
    let sigma = Float::with_val(wp, &r0 + &r1) + &r2;

    let f1 = Float::with_val(wp, &sigma - &a);
    let f2 = Float::with_val(wp, &a + &r1) + &r2 - &r0;
    let f3 = Float::with_val(wp, &a + &r0) + &r2 - &r1;
    let f4 = Float::with_val(wp, &a + &r0) + &r1 - &r2;
    let outside = f1 < 0 || f2 < 0 || f3 < 0 || f4 < 0;
    let delta_squared = Float::with_val(wp, &f1 * &f2) * &f3 * &f4 / 16u32;
    let product = Float::with_val(wp, &a * &r0) * &r1 * &r2;

    let g1 = Float::with_val(wp, &a + &sigma);
    let g2 = Float::with_val(wp, &a + &r0) - &r1 - &r2;
    let g3 = Float::with_val(wp, &a - &r0) + &r1 - &r2;
    let g4 = Float::with_val(wp, &a - &r0) - &r1 + &r2;
    let gap = -(Float::with_val(wp, &g1 * &g2) * &g3 * &g4) / 16u32;

    let mut branch = Branch {
        regime: Regime::Boundary,
        delta_squared,
        product,
        gap,
        singularity: None,
    };
    if outside {
        branch.regime = Regime::OutsideSupport;
        return branch;
    }
    let tol = singularity_tolerance(&a, ctx);
    let sets = singularity_sets(steps, ctx.widened(wp - ctx.bits()));
    for b in &sets.s {
        if Float::with_val(wp, &a - b).abs() <= tol {
            branch.regime = Regime::Divergent;
            branch.singularity = Some(ctx.float(b));
            return branch;
        }
    }
    branch.regime = match branch.gap.cmp0() {
        Some(Ordering::Greater) => Regime::DeltaDominates,
        Some(Ordering::Less) => Regime::ProductDominates,
        _ => Regime::Boundary,
    };
    branch
}

/// `Δ²` for the given `a`; negative outside the support.
pub fn delta_squared(a: &Float, steps: &StepLengths, ctx: PrecisionContext) -> Float {
    ctx.float(&branch(a, steps, ctx).delta_squared)
}

pub fn classify(
    a: &Float,
    steps: &StepLengths,
    ctx: PrecisionContext,
) -> Result<RegimeClassification, RambleError> {
    check_argument(a)?;
    let b = branch(a, steps, ctx);
    Ok(RegimeClassification {
        regime: b.regime,
        delta_squared: ctx.float(&b.delta_squared),
        product: ctx.float(&b.product),
        singularity: b.singularity,
    })
}

pub fn ramble_integral(
    a: &Float,
    steps: &StepLengths,
    ctx: PrecisionContext,
) -> Result<Float, RambleError> {
    check_argument(a)?;
    let b = branch(a, steps, ctx);
    let wp = b.gap.prec();
    let work = ctx.widened(wp - ctx.bits());
    let one = work.float(1);
    let pi_sq = work.pi().square();
    let value = match b.regime {
        Regime::OutsideSupport => return Ok(ctx.zero()),
        Regime::Divergent => {
            return Err(RambleError::Divergent {
                a: ctx.float(a),
                b: b.singularity.unwrap_or_else(|| ctx.float(a)),
            })
        }
        Regime::Boundary => {
            return Err(RambleError::Divergent {
                a: ctx.float(a),
                b: ctx.float(a),
            })
        }
        Regime::DeltaDominates => {
            // k'² = (Δ² − P)/Δ²
            let delta = b.delta_squared.clone().sqrt();
            let kc = Float::with_val(wp, &b.gap / &b.delta_squared).sqrt();
            let kc = if kc > one { one } else { kc };
            let k = elliptic_k_complementary(&kc, ctx.working())?;
            k / (delta * pi_sq)
        }
        Regime::ProductDominates => {
            // k'² = (P − Δ²)/P
            let kc = (-Float::with_val(wp, &b.gap / &b.product)).sqrt();
            let kc = if kc > one { one } else { kc };
            let k = elliptic_k_complementary(&kc, ctx.working())?;
            k / (b.product.sqrt() * pi_sq)
        }
    };
    Ok(ctx.float(&value))
}

/// `p3(a) = a·I(a)`.
pub fn density(
    a: &Float,
    steps: &StepLengths,
    ctx: PrecisionContext,
) -> Result<Float, RambleError> {
    let i = ramble_integral(a, steps, ctx)?;
    Ok(ctx.float(&(i * a)))
}

/// How many of the three candidates `r0+r1−r2`, `r0−r1+r2`, `r1+r2−r0`
/// coincide with `b`.
pub fn singularity_multiplicity(b: &Float, steps: &StepLengths, ctx: PrecisionContext) -> usize {
    let tol = singularity_tolerance(b, ctx);
    candidates(steps, ctx.working().bits())
        .iter()
        .filter(|c| Float::with_val(c.prec(), *c - b).abs() <= tol)
        .count()
}

/// `μ(b)/(2π²√(b·r0·r1·r2))`, the coefficient of `−log|a−b|` in `I(a)`
/// near `b ∈ S`, where `μ(b)` is the root multiplicity of `Δ² − P` at `b`.
pub fn log_coefficient_formula(b: &Float, steps: &StepLengths, ctx: PrecisionContext) -> Float {
    let work = ctx.working();
    let mu = singularity_multiplicity(b, steps, ctx) as u32;
    let [r0, r1, r2] = steps.as_array();
    let p = work.float(b) * r0 * r1 * r2;
    let value = work.float(mu) / (work.pi().square() * 2u32 * p.sqrt());
    ctx.float(&value)
}

/// Slope estimate of `I(b±ε) ≈ −α log ε + β` by differencing the symmetric
/// sums `I(b+ε) + I(b−ε)` at consecutive offsets. Returns the finest
/// estimate once the last two agree to 1%.
pub fn log_singularity_coefficient(
    b: &Float,
    steps: &StepLengths,
    offsets: &[Float],
    ctx: PrecisionContext,
) -> Result<Float, RambleError> {
    let sets = singularity_sets(steps, ctx);
    let tol = singularity_tolerance(b, ctx);
    let b = sets
        .s
        .iter()
        .find(|s| Float::with_val(ctx.bits(), *s - b).abs() <= tol)
        .ok_or_else(|| RambleError::Domain(format!("b = {} is not in S", format_decimal(b, 12))))?
        .clone();
    if offsets.len() < 3 {
        return Err(RambleError::Domain(
            "need at least three offsets".to_string(),
        ));
    }
    let clearance = sets
        .s_star
        .iter()
        .filter(|x| **x != b)
        .map(|x| Float::with_val(ctx.bits(), x - &b).abs())
        .min_by(cmp_float)
        .unwrap_or_else(|| ctx.float(f64::INFINITY));
    for (i, eps) in offsets.iter().enumerate() {
        if *eps <= 0 || *eps >= clearance {
            return Err(RambleError::Domain(
                "offsets must lie strictly between 0 and the distance to the nearest other point of S*".to_string(),
            ));
        }
        if i > 0 && *eps >= offsets[i - 1] {
            return Err(RambleError::Domain(
                "offsets must be strictly decreasing".to_string(),
            ));
        }
    }

    let symmetric = |eps: &Float| -> Result<Float, RambleError> {
        let above = ramble_integral(&Float::with_val(ctx.bits(), &b + eps), steps, ctx)?;
        let below = ramble_integral(&Float::with_val(ctx.bits(), &b - eps), steps, ctx)?;
        Ok(above + below)
    };
    let mut estimates = Vec::with_capacity(offsets.len() - 1);
    let mut prev = symmetric(&offsets[0])?;
    for pair in offsets.windows(2) {
        let next = symmetric(&pair[1])?;
        let dlog = Float::with_val(ctx.bits(), pair[1].ln_ref())
            - Float::with_val(ctx.bits(), pair[0].ln_ref());
        let slope = -Float::with_val(ctx.bits(), &next - &prev) / (dlog * 2u32);
        estimates.push(slope);
        prev = next;
    }
    let last = &estimates[estimates.len() - 1];
    let before = &estimates[estimates.len() - 2];
    let spread = Float::with_val(ctx.bits(), last - before).abs();
    if !last.is_finite() || *last <= 0 || spread > Float::with_val(ctx.bits(), last * 0.01) {
        return Err(RambleError::Estimation(format!(
            "last two slopes {} and {}",
            format_decimal(before, 8),
            format_decimal(last, 8)
        )));
    }
    Ok(last.clone())
}

/// `(a, p3(a))` rows, strictly increasing in `a`.
///
/// Each open interval between consecutive points of `S*` gets
/// `points_per_interval` uniformly spaced interior points, dropping those
/// within `exclusion_radius` of `S`. The finite endpoints of the support
/// (`r0+r1+r2`, and `r0−r1−r2` when positive) are included.
pub fn sample_density_curve(
    steps: &StepLengths,
    points_per_interval: usize,
    exclusion_radius: &Float,
    ctx: PrecisionContext,
) -> Result<Vec<(Float, Float)>, RambleError> {
    if !exclusion_radius.is_finite() || *exclusion_radius <= 0 {
        return Err(RambleError::Domain(
            "exclusion radius must be positive".to_string(),
        ));
    }
    let prec = ctx.bits();
    let sets = singularity_sets(steps, ctx);
    let near_s = |a: &Float| {
        sets.s
            .iter()
            .any(|b| Float::with_val(prec, a - b).abs() <= *exclusion_radius)
    };
    let mut grid: Vec<Float> = Vec::new();
    for (idx, pair) in sets.s_star.windows(2).enumerate() {
        let (lo, hi) = (&pair[0], &pair[1]);
        if idx == 0 && *lo > 0 && !sets.s.contains(lo) {
            grid.push(lo.clone());
        }
        let width = Float::with_val(prec, hi - lo);
        let steps_count = points_per_interval as u32 + 1;
        for i in 1..steps_count {
            let a = Float::with_val(prec, &width * i) / steps_count + lo;
            if !near_s(&a) {
                grid.push(a);
            }
        }
        if !sets.s.contains(hi) {
            grid.push(hi.clone());
        }
    }
    grid.into_par_iter()
        .map(|a| density(&a, steps, ctx).map(|p| (a, p)))
        .collect()
}

/// CSV with header `a,p3`.
pub fn density_curve_csv(rows: &[(Float, Float)], digits: usize) -> String {
    let mut out = String::from("a,p3\n");
    for (a, p) in rows {
        out.push_str(&format_decimal(a, digits));
        out.push(',');
        out.push_str(&format_decimal(p, digits));
        out.push('\n');
    }
    out
}
