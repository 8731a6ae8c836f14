//! The scalar type. `Rational` is an arbitrary precision fraction kept in
//! lowest terms with a positive denominator; it prints as `p/q`, or `p` when
//! the denominator is 1, and parses the same forms back.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num / den`, reduced. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

pub fn ints(values: &[i64]) -> alloc::vec::Vec<Rational> {
    values.iter().map(|&v| int(v)).collect()
}

/// Integer power with a signed exponent. Panics on `0^negative`.
pub fn powi(base: &Rational, exp: i64) -> Rational {
    let mut acc = one();
    for _ in 0..exp.unsigned_abs() {
        acc *= base;
    }
    if exp < 0 {
        acc.recip()
    } else {
        acc
    }
}

pub fn is_negative(r: &Rational) -> bool {
    r.is_negative()
}

pub fn is_positive(r: &Rational) -> bool {
    r.is_positive()
}

/// Binomial coefficient as an exact integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn display_and_parse() {
        assert_eq!(ratio(6, -4).to_string(), "-3/2");
        assert_eq!(int(7).to_string(), "7");
        let parsed: Rational = "-3/2".parse().unwrap();
        assert_eq!(parsed, ratio(-3, 2));
        let parsed: Rational = "10/4".parse().unwrap();
        assert_eq!(parsed, ratio(5, 2));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(10, 3), BigInt::from(120));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(binomial(37, 12), BigInt::from(1_852_482_996u64));
    }

    #[test]
    fn signed_powers() {
        assert_eq!(powi(&ratio(2, 3), 3), ratio(8, 27));
        assert_eq!(powi(&ratio(2, 3), -2), ratio(9, 4));
        assert_eq!(powi(&int(5), 0), int(1));
    }
}
