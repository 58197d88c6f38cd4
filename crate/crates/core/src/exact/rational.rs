use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use super::ExactError;

/// Arbitrary-precision rational scalar. Always reduced with a positive denominator.
pub type Rational = BigRational;

/// `n/d` as a [`Rational`]. Panics on `d == 0`.
pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<Rational, ExactError> {
    let s = s.trim();
    let bad = || ExactError::Parse(s.to_string());
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

/// Canonical `"p/q"` (or `"p"` for integers) text form.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        if x.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// `x^e` for any integer exponent. Panics when `x = 0` and `e < 0`.
pub fn rpow(x: &Rational, e: i64) -> Rational {
    if e == 0 {
        return Rational::one();
    }
    let base = if e < 0 { x.recip() } else { x.clone() };
    Pow::pow(&base, e.unsigned_abs())
}

/// Finite q-Pochhammer `(x; q)_n` in exact arithmetic.
pub fn qpoch(x: &Rational, base: &Rational, n: usize) -> Rational {
    let mut r = Rational::one();
    let mut f = x.clone();
    for _ in 0..n {
        r *= Rational::one() - &f;
        f *= base;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        let x = parse_rational("-6/4").unwrap();
        assert_eq!(x, q(-3, 2));
        assert_eq!(format_rational(&x), "-3/2");
        assert_eq!(format_rational(&int(7)), "7");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("0.5").is_err());
    }

    #[test]
    fn powers_and_pochhammer() {
        assert_eq!(rpow(&q(2, 3), -2), q(9, 4));
        assert_eq!(qpoch(&q(1, 2), &q(1, 3), 0), int(1));
        let b = q(1, 3);
        assert_eq!(qpoch(&b, &b, 2), (int(1) - &b) * (int(1) - &b * &b));
    }
}
