use std::fmt;

use rug::float::Constant;
use rug::Float;

/// Complex number with MPFR components.
///
/// Only the handful of operations the dilogarithm and the coefficient
/// parser need are provided. All results take the precision of `self`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexValue {
    pub re: Float,
    pub im: Float,
}

impl ComplexValue {
    pub fn new(re: Float, im: Float) -> Self {
        ComplexValue { re, im }
    }

    pub fn real(re: Float) -> Self {
        let im = Float::new(re.prec());
        ComplexValue { re, im }
    }

    pub fn from_f64(prec: u32, re: f64, im: f64) -> Self {
        ComplexValue {
            re: Float::with_val(prec, re),
            im: Float::with_val(prec, im),
        }
    }

    pub fn i(prec: u32) -> Self {
        ComplexValue::from_f64(prec, 0.0, 1.0)
    }

    /// `r·e^{iθ}`.
    pub fn polar(r: &Float, theta: &Float) -> Self {
        let prec = r.prec().max(theta.prec());
        let (s, c) = Float::with_val(prec, theta).sin_cos(Float::new(prec));
        ComplexValue {
            re: c * r,
            im: s * r,
        }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        ComplexValue {
            re: Float::with_val(prec, &self.re),
            im: Float::with_val(prec, &self.im),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        ComplexValue {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        ComplexValue {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let prec = self.prec();
        ComplexValue {
            re: Float::with_val(prec, &self.re + &other.re),
            im: Float::with_val(prec, &self.im + &other.im),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let prec = self.prec();
        ComplexValue {
            re: Float::with_val(prec, &self.re - &other.re),
            im: Float::with_val(prec, &self.im - &other.im),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let prec = self.prec();
        let rr = Float::with_val(prec, &self.re * &other.re);
        let ii = Float::with_val(prec, &self.im * &other.im);
        let ri = Float::with_val(prec, &self.re * &other.im);
        let ir = Float::with_val(prec, &self.im * &other.re);
        ComplexValue {
            re: rr - ii,
            im: ri + ir,
        }
    }

    pub fn scale(&self, factor: &Float) -> Self {
        let prec = self.prec();
        ComplexValue {
            re: Float::with_val(prec, &self.re * factor),
            im: Float::with_val(prec, &self.im * factor),
        }
    }

    pub fn recip(&self) -> Self {
        let prec = self.prec();
        let norm = self.norm_sqr();
        ComplexValue {
            re: Float::with_val(prec, &self.re / &norm),
            im: -Float::with_val(prec, &self.im / &norm),
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.recip())
    }

    /// `|z|²`.
    pub fn norm_sqr(&self) -> Float {
        let prec = self.prec();
        let re2 = Float::with_val(prec, self.re.square_ref());
        let im2 = Float::with_val(prec, self.im.square_ref());
        re2 + im2
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.re.hypot_ref(&self.im))
    }

    /// Principal argument in `(-π, π]`.
    pub fn arg(&self) -> Float {
        if self.is_zero() {
            return Float::new(self.prec());
        }
        let mut im = self.im.clone();
        // `-0` would flip the argument of a negative real to -π
        if im.is_zero() {
            im = Float::new(self.prec());
        }
        Float::with_val(self.prec(), im.atan2_ref(&self.re))
    }

    /// Principal logarithm. Undefined (non-finite) at zero.
    pub fn ln(&self) -> Self {
        ComplexValue {
            re: self.abs().ln(),
            im: self.arg(),
        }
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    pub fn pi(prec: u32) -> Float {
        Float::with_val(prec, Constant::Pi)
    }
}

impl fmt::Display for ComplexValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(17);
        let re = self.re.to_string_radix(10, Some(digits));
        if self.im.is_zero() {
            return write!(f, "{re}");
        }
        let im = self.im.clone().abs().to_string_radix(10, Some(digits));
        let sign = if self.im.is_sign_negative() { '-' } else { '+' };
        write!(f, "{re}{sign}{im}i")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let a = ComplexValue::from_f64(64, 1.0, 2.0);
        let b = ComplexValue::from_f64(64, 3.0, -1.0);
        assert_eq!(a.mul(&b), ComplexValue::from_f64(64, 5.0, 5.0));
        assert_eq!(a.add(&b), ComplexValue::from_f64(64, 4.0, 1.0));
        let q = a.mul(&b).div(&b);
        assert!((q.re.to_f64() - 1.0).abs() < 1e-18);
        assert!((q.im.to_f64() - 2.0).abs() < 1e-18);
    }

    #[test]
    fn argument_of_negative_real_is_pi() {
        let z = ComplexValue::new(Float::with_val(64, -2.0), -Float::new(64));
        let pi = std::f64::consts::PI;
        assert_eq!(z.arg().to_f64(), pi);
        let l = z.ln();
        assert!((l.re.to_f64() - 2f64.ln()).abs() < 1e-18);
    }
}
