use rug::float::Constant;
use rug::{Assign, Float};

use super::SpecialError;

/// Binary precision shared by a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrecisionContext {
    bits: u32,
}

impl PrecisionContext {
    pub const MIN_BITS: u32 = 64;
    pub const DEFAULT_BITS: u32 = 512;
    /// Extra bits carried by internal iterations.
    pub const GUARD_BITS: u32 = 32;

    pub fn new(bits: u32) -> Result<Self, SpecialError> {
        if bits < Self::MIN_BITS {
            return Err(SpecialError::Precision(bits));
        }
        Ok(PrecisionContext { bits })
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Same context widened by `extra` bits (no minimum check needed).
    pub fn widened(&self, extra: u32) -> Self {
        PrecisionContext {
            bits: self.bits + extra,
        }
    }

    /// Working context used inside iterative kernels.
    pub fn working(&self) -> Self {
        self.widened(Self::GUARD_BITS)
    }

    pub fn float<T>(&self, value: T) -> Float
    where
        Float: Assign<T>,
    {
        Float::with_val(self.bits, value)
    }

    pub fn zero(&self) -> Float {
        Float::new(self.bits)
    }

    pub fn pi(&self) -> Float {
        Float::with_val(self.bits, Constant::Pi)
    }

    /// `2^-bits`.
    pub fn epsilon(&self) -> Float {
        Float::with_val(self.bits, Float::i_exp(1, -(self.bits as i32)))
    }

    /// `2^-(bits+8)`: the series stopping threshold.
    pub fn stop_threshold(&self) -> Float {
        Float::with_val(self.bits, Float::i_exp(1, -(self.bits as i32) - 8))
    }

    /// `2^-(bits/2)`: membership tolerance for singular points and branch cuts.
    pub fn half_tolerance(&self) -> Float {
        Float::with_val(self.bits, Float::i_exp(1, -((self.bits / 2) as i32)))
    }

    /// Number of significant decimal digits carried by this precision.
    pub fn decimal_digits(&self) -> usize {
        (self.bits as f64 * 0.301).ceil() as usize
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        PrecisionContext {
            bits: Self::DEFAULT_BITS,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_low_precision() {
        assert_eq!(PrecisionContext::new(63), Err(SpecialError::Precision(63)));
        assert_eq!(PrecisionContext::new(64).unwrap().bits(), 64);
        assert_eq!(PrecisionContext::default().bits(), 512);
    }

    #[test]
    fn thresholds() {
        let ctx = PrecisionContext::new(64).unwrap();
        assert_eq!(ctx.epsilon().to_f64(), 2f64.powi(-64));
        assert_eq!(ctx.stop_threshold().to_f64(), 2f64.powi(-72));
        assert_eq!(ctx.half_tolerance().to_f64(), 2f64.powi(-32));
        assert_eq!(PrecisionContext::default().decimal_digits(), 155);
    }
}
