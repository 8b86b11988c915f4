//! Exponent-carrying values for overflow-safe products.
//!
//! The closed-form fields pair exponentially large and exponentially
//! small factors, e.g. `I_1(R/a) * K_1(r/a)` with `R/a` in the hundreds.
//! A [`ScaledValue`] keeps the two parts separate as
//! `value = mantissa * exp(exp_shift)` so exponents combine additively
//! and cancel analytically before anything is materialized as `f64`.

use crate::error::{Error, Result};
use std::ops::{Add, Mul, Neg, Sub};

const MANTISSA_LO: f64 = 1e-2;
const MANTISSA_HI: f64 = 1e2;

/// A real number stored as `mantissa * exp(exp_shift)`.
///
/// After normalization the mantissa of a nonzero value lies in
/// `[1e-2, 1e2]`; zero is canonically `(0, 0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledValue {
    mantissa: f64,
    exp_shift: f64,
}

impl ScaledValue {
    pub const ZERO: ScaledValue = ScaledValue {
        mantissa: 0.0,
        exp_shift: 0.0,
    };
    pub const ONE: ScaledValue = ScaledValue {
        mantissa: 1.0,
        exp_shift: 0.0,
    };

    /// Build from mantissa and shift, normalizing the mantissa range.
    pub fn new(mantissa: f64, exp_shift: f64) -> ScaledValue {
        ScaledValue {
            mantissa,
            exp_shift,
        }
        .normalized()
    }

    pub fn from_f64(value: f64) -> ScaledValue {
        ScaledValue::new(value, 0.0)
    }

    fn normalized(self) -> ScaledValue {
        if self.mantissa == 0.0 {
            return ScaledValue::ZERO;
        }
        let a = self.mantissa.abs();
        if (MANTISSA_LO..=MANTISSA_HI).contains(&a) {
            return self;
        }
        let k = a.ln();
        ScaledValue {
            mantissa: self.mantissa / k.exp(),
            exp_shift: self.exp_shift + k,
        }
    }

    pub fn mantissa(&self) -> f64 {
        self.mantissa
    }

    pub fn exp_shift(&self) -> f64 {
        self.exp_shift
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa == 0.0
    }

    /// Collapse to a plain `f64`. Out-of-range magnitudes saturate to
    /// `+-inf` or flush to zero exactly as `mantissa * exp(shift)` would.
    pub fn value(&self) -> f64 {
        if self.mantissa == 0.0 {
            return 0.0;
        }
        self.mantissa * self.exp_shift.exp()
    }

    /// Like [`value`](Self::value) but reports overflow instead of
    /// returning infinity.
    pub fn try_value(&self) -> Result<f64> {
        let v = self.value();
        if v.is_infinite() {
            return Err(Error::Overflow(format!(
                "scaled value {:.6e} * exp({:.3}) exceeds f64 range",
                self.mantissa, self.exp_shift
            )));
        }
        Ok(v)
    }

    /// ln|value|; `-inf` for zero.
    pub fn ln_abs(&self) -> f64 {
        self.mantissa.abs().ln() + self.exp_shift
    }

    pub fn abs(self) -> ScaledValue {
        ScaledValue {
            mantissa: self.mantissa.abs(),
            exp_shift: self.exp_shift,
        }
    }

    pub fn recip(self) -> ScaledValue {
        ScaledValue::new(1.0 / self.mantissa, -self.exp_shift)
    }
}

impl Mul for ScaledValue {
    type Output = ScaledValue;
    fn mul(self, rhs: ScaledValue) -> ScaledValue {
        ScaledValue::new(self.mantissa * rhs.mantissa, self.exp_shift + rhs.exp_shift)
    }
}

impl Mul<f64> for ScaledValue {
    type Output = ScaledValue;
    fn mul(self, rhs: f64) -> ScaledValue {
        ScaledValue::new(self.mantissa * rhs, self.exp_shift)
    }
}

impl Add for ScaledValue {
    type Output = ScaledValue;
    fn add(self, rhs: ScaledValue) -> ScaledValue {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        // Align on the larger shift; the smaller contribution may flush
        // to zero, which is the correct limit.
        let (big, small) = if self.exp_shift >= rhs.exp_shift {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let folded = small.mantissa * (small.exp_shift - big.exp_shift).exp();
        ScaledValue::new(big.mantissa + folded, big.exp_shift)
    }
}

impl Sub for ScaledValue {
    type Output = ScaledValue;
    fn sub(self, rhs: ScaledValue) -> ScaledValue {
        self + (-rhs)
    }
}

impl Neg for ScaledValue {
    type Output = ScaledValue;
    fn neg(self) -> ScaledValue {
        ScaledValue {
            mantissa: -self.mantissa,
            exp_shift: self.exp_shift,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_range() {
        let v = ScaledValue::new(12345.678, 0.0);
        assert!(v.mantissa().abs() >= 1e-2 && v.mantissa().abs() <= 1e2);
        assert!((v.value() - 12345.678).abs() / 12345.678 < 1e-14);

        let z = ScaledValue::from_f64(0.0);
        assert!(z.is_zero());
        assert_eq!(z.exp_shift(), 0.0);
    }

    #[test]
    fn exponents_cancel_in_products() {
        // e^{+600} * e^{-600} = 1, far outside plain f64 range per factor
        let big = ScaledValue::new(2.5, 600.0);
        let small = ScaledValue::new(0.4, -600.0);
        let p = big * small;
        assert!((p.value() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn addition_aligns_shifts() {
        let a = ScaledValue::new(1.0, 10.0);
        let b = ScaledValue::new(1.0, 9.0);
        let expect = 10.0f64.exp() + 9.0f64.exp();
        assert!((a + b).value() / expect - 1.0 < 1e-14);
        // adding something exponentially negligible is a no-op
        let tiny = ScaledValue::new(1.0, -800.0);
        let s = a + tiny;
        assert!((s.value() / a.value() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn overflow_is_reported_not_silent() {
        let huge = ScaledValue::new(1.0, 1000.0);
        assert!(huge.value().is_infinite());
        assert!(matches!(huge.try_value(), Err(Error::Overflow(_))));
        // but it still participates in arithmetic
        let tamed = huge * ScaledValue::new(1.0, -1000.0);
        assert!((tamed.value() - 1.0).abs() < 1e-14);
    }
}
