//! Exact arithmetic helpers shared by the counting and verification code.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

pub fn int(v: impl Into<BigInt>) -> Rational {
    Rational::from_integer(v.into())
}

pub fn frac(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Rational {
    Rational::new(p.into(), q.into())
}

pub fn from_u128(v: u128) -> Rational {
    int(BigInt::from(v))
}

/// `base^exp` with `0^0 = 1`.
pub fn pow(base: &Rational, exp: usize) -> Rational {
    // a reduced fraction stays reduced under powers
    Rational::new_raw(
        num_traits::pow(base.numer().clone(), exp),
        num_traits::pow(base.denom().clone(), exp),
    )
}

/// `b^b` as an exact integer, with `0^0 = 1`.
pub fn self_power(b: usize) -> BigUint {
    num_traits::pow(BigUint::from(b), b)
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

pub fn factorial_u128(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Exact binomial coefficient in `u128`; panics on overflow.
pub fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) after the multiplication
        acc = acc
            .checked_mul(n - i)
            .expect("binomial coefficient overflows u128")
            / (i + 1);
    }
    acc
}

pub fn binomial_big(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Fall back to scaling when numerator or denominator overflow f64.
        let shift = r.denom().bits().max(r.numer().magnitude().bits()) as i64 - 1000;
        if shift <= 0 {
            return f64::NAN;
        }
        let n = r.numer() >> shift as usize;
        let d = r.denom() >> shift as usize;
        n.to_f64().unwrap_or(f64::NAN) / d.to_f64().unwrap_or(f64::NAN)
    })
}

/// Decimal expansion with `digits` places after the point, rounded half away
/// from zero.
pub fn to_decimal(r: &Rational, digits: usize) -> String {
    let neg = r.is_negative();
    let abs = r.abs();
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = abs.numer() * &scale;
    let (q, rem) = scaled.div_rem(abs.denom());
    let q = if rem * 2 >= *abs.denom() { q + 1 } else { q };
    let (int_part, frac_part) = q.div_rem(&scale);
    let mut s = String::new();
    if neg && !(int_part.is_zero() && frac_part.is_zero()) {
        s.push('-');
    }
    s.push_str(&int_part.to_string());
    if digits > 0 {
        let f = frac_part.to_string();
        s.push('.');
        for _ in f.len()..digits {
            s.push('0');
        }
        s.push_str(&f);
    }
    s
}

/// `"p/q"` form (`"p"` for integers).
pub fn to_fraction(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(4, 5), 0);
        assert_eq!(binomial(280, 7), 24_822_676_183_800);
        assert_eq!(binomial_big(64, 32).to_string(), "1832624140942590534");
    }

    #[test]
    fn decimals() {
        assert_eq!(to_decimal(&frac(1, 128), 10), "0.0078125000");
        assert_eq!(to_decimal(&frac(2, 3), 3), "0.667");
        assert_eq!(to_decimal(&frac(-1, 3), 2), "-0.33");
        assert_eq!(to_decimal(&int(7), 0), "7");
        assert_eq!(to_fraction(&frac(81, 400)), "81/400");
        assert_eq!(to_fraction(&int(4)), "4");
    }

    #[test]
    fn zero_to_zero_is_one() {
        assert_eq!(self_power(0), BigUint::one());
        assert_eq!(pow(&int(0), 0), int(1));
    }
}
