//! Conversion of exact ratios to floating point.
//!
//! Bell numbers leave the `f64` range near index 220, so ratios are never
//! formed by converting numerator and denominator separately. The quotient is
//! taken in integer arithmetic with enough guard bits (`GUARD_BITS`, well over
//! 30 decimal digits) and only then rescaled.

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

const GUARD_BITS: i64 = 128;

/// `num / den` rounded to `f64`. Division by zero gives `NaN`.
pub fn ratio_to_f64(num: &BigInt, den: &BigInt) -> f64 {
    if den.is_zero() {
        return f64::NAN;
    }
    let negative = (num.sign() == Sign::Minus) != (den.sign() == Sign::Minus);
    let magnitude = unsigned_ratio_to_f64(num.magnitude(), den.magnitude());
    if negative {
        -magnitude
    } else {
        magnitude
    }
}

pub fn unsigned_ratio_to_f64(num: &BigUint, den: &BigUint) -> f64 {
    if den.is_zero() {
        return f64::NAN;
    }
    if num.is_zero() {
        return 0.0;
    }
    let shift = den.bits() as i64 - num.bits() as i64 + GUARD_BITS;
    let quotient = if shift >= 0 {
        (num << shift as u64) / den
    } else {
        num / (den << (-shift) as u64)
    };
    let mantissa = quotient.to_f64().unwrap_or(f64::INFINITY);
    let exponent = (-shift).clamp(i32::MIN as i64, i32::MAX as i64) as i32;
    libm::scalbn(mantissa, exponent)
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    ratio_to_f64(r.numer(), r.denom())
}
