//! Mahler measure of the linear form `P_D = W_0 Z_0 + ⋯ + W_n Z_n` through
//! the moment series
//!
//! ```text
//! E1: m = log c − ½ Σ_j (1/j) Σ_k C(j,k) (−1)^k a_k / c^{2k}
//! E2: m = log c − ½ H_l − ½ S_D(l)
//! S_D(l) = Σ_j (2j+l)/(j(j+l)) Σ_k C(j+l+k−1,k) C(j,k) (−1)^k a_k / c^{2k}
//! ```
//!
//! where `a_k = Σ_{l_0+⋯+l_n=k} (k; l_0,…,l_n)² |W_0|^{2l_0}⋯|W_n|^{2l_n}
//! = E|P_D|^{2k}` and `c² = (n+1)Σ|W_m|²`.

mod bounds;
mod coefficients;
mod sums;

use rug::Float;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::decimal::format_decimal;
use crate::ramble::{RambleError, StepLengths};
use crate::special::{ComplexValue, PrecisionContext, SpecialError};

pub use bounds::{a_constant, bound_e1, bound_e2};
pub use coefficients::{coefficient_a, coefficient_batch, Coefficients};
pub use sums::{e2_residual_profile, estimate_c, mahler_e1, mahler_e2, s_d_partial, SeriesTrace};

#[derive(Debug, Error)]
pub enum SeriesError {
    #[error("invalid coefficient tuple: {0}")]
    InvalidTuple(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("series not valid here: {0}")]
    Validity(String),
    #[error("error bound undefined: {0}")]
    UndefinedBound(String),
    #[error("working precision exhausted (estimated rounding error {0:e}); raise the bit count")]
    PrecisionExhausted(f64),
    #[error(transparent)]
    Ramble(#[from] RambleError),
    #[error(transparent)]
    Special(#[from] SpecialError),
}

/// Coefficients `W_0…W_n` of the linear form with cached norms.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientTuple {
    w: Vec<ComplexValue>,
    moduli: Vec<Float>,
    moduli_sq: Vec<Float>,
    c: Float,
    c_sq: Float,
    d: Float,
}

impl CoefficientTuple {
    pub fn new(w: Vec<ComplexValue>, ctx: PrecisionContext) -> Result<Self, SeriesError> {
        if w.len() < 3 {
            return Err(SeriesError::InvalidTuple(
                "need at least three coefficients (n ≥ 2)".to_string(),
            ));
        }
        if w.iter().any(|z| !z.is_finite()) {
            return Err(SeriesError::InvalidTuple(
                "coefficients must be finite".to_string(),
            ));
        }
        if w.iter().all(ComplexValue::is_zero) {
            return Err(SeriesError::InvalidTuple(
                "all coefficients are zero".to_string(),
            ));
        }
        let prec = ctx.working().bits();
        let w: Vec<ComplexValue> = w.iter().map(|z| z.with_prec(prec)).collect();
        let moduli_sq: Vec<Float> = w.iter().map(ComplexValue::norm_sqr).collect();
        let moduli: Vec<Float> = w.iter().map(ComplexValue::abs).collect();
        let sum_sq = moduli_sq.iter().fold(Float::new(prec), |acc, x| acc + x);
        let c_sq = sum_sq * w.len() as u32;
        let c = Float::with_val(prec, c_sq.sqrt_ref());
        let d = moduli.iter().fold(Float::new(prec), |acc, x| acc + x);
        Ok(CoefficientTuple {
            w,
            moduli,
            moduli_sq,
            c,
            c_sq,
            d,
        })
    }

    pub fn from_reals(values: &[f64], ctx: PrecisionContext) -> Result<Self, SeriesError> {
        let prec = ctx.working().bits();
        let w = values
            .iter()
            .map(|&v| ComplexValue::from_f64(prec, v, 0.0))
            .collect();
        CoefficientTuple::new(w, ctx)
    }

    pub fn from_floats(values: &[Float], ctx: PrecisionContext) -> Result<Self, SeriesError> {
        let w = values
            .iter()
            .map(|v| ComplexValue::real(v.clone()))
            .collect();
        CoefficientTuple::new(w, ctx)
    }

    /// The `n` of `P_D`, one less than the number of coefficients.
    pub fn n(&self) -> usize {
        self.w.len() - 1
    }

    pub fn w(&self) -> &[ComplexValue] {
        &self.w
    }

    pub fn moduli(&self) -> &[Float] {
        &self.moduli
    }

    pub fn moduli_sq(&self) -> &[Float] {
        &self.moduli_sq
    }

    /// `c(D) = √((n+1)Σ|W_m|²)`.
    pub fn c(&self) -> &Float {
        &self.c
    }

    pub fn c_sq(&self) -> &Float {
        &self.c_sq
    }

    /// `d(D) = Σ|W_m|`.
    pub fn d(&self) -> &Float {
        &self.d
    }

    pub fn all_moduli_equal(&self) -> bool {
        self.moduli_sq.iter().all(|m| *m == self.moduli_sq[0])
    }

    /// `D = r(1,…,1)` for some complex `r ≠ 0`.
    pub fn is_multiple_of_ones(&self) -> bool {
        self.w.iter().all(|z| *z == self.w[0])
    }

    /// `λ·D` for real `λ > 0`.
    pub fn scaled(&self, lambda: &Float, ctx: PrecisionContext) -> Result<Self, SeriesError> {
        if !lambda.is_finite() || *lambda <= 0 {
            return Err(SeriesError::InvalidArgument(
                "scale must be positive".to_string(),
            ));
        }
        let w = self.w.iter().map(|z| z.scale(lambda)).collect();
        CoefficientTuple::new(w, ctx)
    }

    /// Moduli as walk step lengths; only for `n = 2` with no zero coefficient.
    pub fn steps(&self) -> Result<StepLengths, SeriesError> {
        if self.n() != 2 {
            return Err(SeriesError::InvalidArgument(
                "step lengths need exactly three coefficients".to_string(),
            ));
        }
        let [r0, r1, r2] = [0, 1, 2].map(|i| self.moduli[i].clone());
        Ok(StepLengths::new(r0, r1, r2)?)
    }

    /// Moduli sorted descending, zeros included.
    pub fn sorted_moduli(&self) -> Vec<Float> {
        let mut m = self.moduli.clone();
        m.sort_by(|x, y| y.partial_cmp(x).unwrap_or(std::cmp::Ordering::Equal));
        m
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesConfig {
    /// Truncation depth `N`.
    pub max_k: usize,
    /// Shift `l` of the second series.
    pub l: u32,
    pub precision: PrecisionContext,
    /// Bounding constant `A_D` used by the attached error bounds.
    pub a_d: f64,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        SeriesConfig {
            max_k: 200,
            l: 1,
            precision: PrecisionContext::default(),
            a_d: 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    E1,
    E2,
    #[serde(rename = "cm")]
    CassaigneMaillot,
    #[serde(rename = "quad")]
    Quadrature,
}

impl Method {
    pub fn tag(&self) -> &'static str {
        match self {
            Method::E1 => "e1",
            Method::E2 => "e2",
            Method::CassaigneMaillot => "cm",
            Method::Quadrature => "quad",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorBound {
    pub value: Float,
    pub a_d: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MahlerEstimate {
    pub value: Float,
    pub method: Method,
    /// Truncation depth for the series, grid size for quadrature, 0 for closed forms.
    pub n_used: usize,
    pub l: Option<u32>,
    pub bits: u32,
    pub bound: Option<ErrorBound>,
    /// Estimated absolute rounding error of the alternating inner sums.
    pub rounding_error: Option<f64>,
}

/// JSON shape of a [`MahlerEstimate`]. Fields are declared in sorted key
/// order so that generic JSON values re-serialize to the same bytes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateDocument {
    #[serde(rename = "N")]
    pub n: usize,
    pub a_d: Option<f64>,
    pub bits: u32,
    pub bound: Option<String>,
    pub l: Option<u32>,
    pub method: Method,
    pub rounding_error: Option<f64>,
    pub value: String,
}

impl MahlerEstimate {
    pub fn document(&self) -> EstimateDocument {
        let digits = PrecisionContext::new(self.bits)
            .map(|c| c.decimal_digits())
            .unwrap_or(17);
        EstimateDocument {
            n: self.n_used,
            a_d: self.bound.as_ref().map(|b| b.a_d),
            bits: self.bits,
            bound: self.bound.as_ref().map(|b| format_decimal(&b.value, 20)),
            l: self.l,
            method: self.method,
            rounding_error: self.rounding_error,
            value: format_decimal(&self.value, digits),
        }
    }
}

/// JSON shape of a coefficient array `a(n,0…N,D)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientDocument {
    #[serde(rename = "N")]
    pub n_max: usize,
    pub a: Vec<String>,
    pub bits: u32,
    pub d: Vec<String>,
}

impl CoefficientDocument {
    pub fn new(d: &CoefficientTuple, a: &[Float], ctx: PrecisionContext) -> Self {
        let digits = ctx.decimal_digits();
        CoefficientDocument {
            n_max: a.len().saturating_sub(1),
            a: a.iter().map(|x| format_decimal(x, digits)).collect(),
            bits: ctx.bits(),
            d: d.w().iter().map(|z| z.to_string()).collect(),
        }
    }
}
