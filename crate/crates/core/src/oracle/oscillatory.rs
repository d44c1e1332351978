//! Direct evaluation of `I(a) = ∫₀^∞ t J0(at) J0(r0 t) J0(r1 t) J0(r2 t) dt`.
//!
//! The integrand decays like `1/t` with a mixture of beat frequencies
//! `|a ± r0 ± r1 ± r2|`, so the partial integrals oscillate rather than
//! settle. Windows of length `2π/(a + r0 + r1 + r2)` are integrated one at
//! a time and the partial integrals over the last quarter are averaged.

use rug::Float;
use serde::Serialize;

use super::quadrature::gauss_kronrod;
use super::OracleError;
use crate::ramble::{classify, RambleError, Regime, StepLengths};
use crate::special::{bessel_j0_f64, PrecisionContext};

/// Largest allowed gap between the averages at `periods` and `7·periods/8`.
const STABILITY: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OscillatoryEstimate {
    pub value: f64,
    /// Same average taken at `7·periods/8` windows.
    pub previous: f64,
}

fn tail_average(partials: &[f64], upto: usize) -> f64 {
    let count = upto.div_ceil(4).max(1);
    let slice = &partials[upto - count..upto];
    slice.iter().sum::<f64>() / count as f64
}

pub fn ramble_quadrature(
    a: f64,
    steps: &StepLengths,
    periods: usize,
) -> Result<OscillatoryEstimate, OracleError> {
    if !(a.is_finite() && a > 0.0) {
        return Err(OracleError::Domain(format!("a must be positive, got {a}")));
    }
    if periods < 8 {
        return Err(OracleError::Domain("need at least 8 periods".to_string()));
    }
    let ctx = PrecisionContext::new(128)?;
    let split = classify(&Float::with_val(128, a), steps, ctx)?;
    if split.regime == Regime::Divergent {
        let b = split.singularity.unwrap_or_else(|| Float::with_val(128, a));
        return Err(RambleError::Divergent {
            a: Float::with_val(128, a),
            b,
        }
        .into());
    }
    let [r0, r1, r2] = steps.to_f64();
    let f = |t: f64| {
        t * bessel_j0_f64(a * t)
            * bessel_j0_f64(r0 * t)
            * bessel_j0_f64(r1 * t)
            * bessel_j0_f64(r2 * t)
    };
    let width = std::f64::consts::TAU / (a + r0 + r1 + r2);
    let mut partials = Vec::with_capacity(periods);
    let mut total = 0.0;
    for i in 0..periods {
        let left = i as f64 * width;
        total += gauss_kronrod(&f, left, left + width, 1e-13, 6);
        partials.push(total);
    }
    let value = tail_average(&partials, periods);
    let previous = tail_average(&partials, periods * 7 / 8);
    if !value.is_finite() || (value - previous).abs() >= STABILITY {
        return Err(OracleError::Estimation(format!(
            "window averages {previous} and {value} differ by more than {STABILITY}"
        )));
    }
    Ok(OscillatoryEstimate { value, previous })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ramble::ramble_integral;

    fn steps(r: [f64; 3]) -> StepLengths {
        StepLengths::from_f64(128, r[0], r[1], r[2]).unwrap()
    }

    fn closed(a: f64, s: &StepLengths) -> f64 {
        let c = PrecisionContext::new(128).unwrap();
        ramble_integral(&Float::with_val(128, a), s, c)
            .unwrap()
            .to_f64()
    }

    #[test]
    fn outside_support_is_zero() {
        let est = ramble_quadrature(7.0, &steps([3.0, 2.0, 1.0]), 2000).unwrap();
        assert!(est.value.abs() < 1e-4, "{est:?}");
    }

    #[test]
    fn matches_closed_form() {
        for (a, r) in [
            (1.5, [1.0, 1.0, 1.0]),
            (3.5, [4.0, 2.0, 1.0]),
            (0.4, [3.0, 2.0, 1.0]),
            (9.0, [5.0, 4.0, 3.0]),
        ] {
            let s = steps(r);
            let est = ramble_quadrature(a, &s, 2000).unwrap();
            let exact = closed(a, &s);
            assert!(
                (est.value - exact).abs() < 1e-4,
                "a = {a}: {} vs {exact}",
                est.value
            );
            assert!((est.value - est.previous).abs() < 1e-4);
        }
    }

    #[test]
    fn singular_point_is_divergent() {
        let err = ramble_quadrature(3.0, &steps([4.0, 2.0, 1.0]), 2000).unwrap_err();
        assert!(matches!(
            err,
            OracleError::Ramble(RambleError::Divergent { .. })
        ));
        assert!(ramble_quadrature(-1.0, &steps([1.0, 1.0, 1.0]), 2000).is_err());
    }
}
