//! Exact rational scalars.
//!
//! Everything numeric in this crate goes through [`Rational`], an
//! arbitrary-precision fraction kept in lowest terms with a positive
//! denominator. There is no floating point anywhere in the core.

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// `num / den`, reduced. Panics on a zero denominator.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// The value as `i64` if it is an integer that fits.
pub fn to_i64(r: &Rational) -> Option<i64> {
    if is_integer(r) {
        r.numer().to_i64()
    } else {
        None
    }
}

pub fn to_i128(r: &Rational) -> Option<i128> {
    if is_integer(r) {
        r.numer().to_i128()
    } else {
        None
    }
}

/// Greatest integer not exceeding `r`.
pub fn floor(r: &Rational) -> BigInt {
    r.numer().div_floor(r.denom())
}

/// gcd on possibly negative arguments, via absolute values; gcd(0, 0) = 0.
pub fn gcd(a: i64, b: i64) -> i64 {
    a.abs().gcd(&b.abs())
}

/// Representative of `a mod m` in `[0, m)`. `m` must be positive.
pub fn modulo(a: i64, m: i64) -> i64 {
    a.rem_euclid(m)
}

/// Inverse of `a` modulo `m`, if it exists. For `m = 1` the inverse is 0.
pub fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    if m == 1 {
        return Some(0);
    }
    let e = modulo(a, m).extended_gcd(&m);
    (e.gcd == 1).then(|| modulo(e.x, m))
}

/// Parse `p`, `-p` or `p/q` into a reduced rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((p, q)) => (p.trim().parse::<BigInt>().ok()?, q.trim().parse::<BigInt>().ok()?),
        None => (text.parse::<BigInt>().ok()?, BigInt::one()),
    };
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_and_sign() {
        let r = frac(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!(int(5).to_string(), "5");
    }

    #[test]
    fn floor_rounds_down() {
        assert_eq!(floor(&frac(7, 2)), BigInt::from(3));
        assert_eq!(floor(&frac(-7, 2)), BigInt::from(-4));
        assert_eq!(floor(&int(-3)), BigInt::from(-3));
    }

    #[test]
    fn gcd_of_negatives() {
        assert_eq!(gcd(-1, 1), 1);
        assert_eq!(gcd(0, 9), 9);
        assert_eq!(gcd(-6, 12), 6);
    }

    #[test]
    fn inverses() {
        assert_eq!(mod_inverse(3, 2), Some(1));
        assert_eq!(mod_inverse(-1, 3), Some(2));
        assert_eq!(mod_inverse(2, 4), None);
        assert_eq!(mod_inverse(-2, 1), Some(0));
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_rational("-1/2"), Some(frac(-1, 2)));
        assert_eq!(parse_rational(" 4 "), Some(int(4)));
        assert_eq!(parse_rational("2/-4"), Some(frac(-1, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }
}
