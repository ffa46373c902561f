//! Coefficient field.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Reduced arbitrary-precision fraction with positive denominator.
pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `c^n` for a non-negative exponent, with `0^0 = 1`.
pub fn pow(c: &Rational, n: u64) -> Rational {
    if n == 0 {
        return Rational::one();
    }
    if c.is_zero() {
        return Rational::zero();
    }
    num_traits::pow(c.clone(), n as usize)
}

pub fn is_integer(c: &Rational) -> bool {
    c.denom().is_one()
}

pub fn is_nonnegative_integer(c: &Rational) -> bool {
    is_integer(c) && !c.is_negative()
}
