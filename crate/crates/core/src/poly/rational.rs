//! Helpers around [`BigRational`], the coefficient field for everything in the crate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Always `num/den`, including integers (`"3/1"`) and zero (`"0/1"`).
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts `"n"`, `"n/d"` and surrounding whitespace; the result is reduced.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(Rational::new(n, d))
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `x (x+1) ... (x+n-1)`, the empty product being 1.
pub fn rising(x: &Rational, n: u32) -> Rational {
    let mut acc = Rational::one();
    let mut term = x.clone();
    for _ in 0..n {
        acc *= &term;
        term += Rational::one();
    }
    acc
}

pub fn pow(r: &Rational, e: u32) -> Rational {
    num_traits::pow(r.clone(), e as usize)
}

/// True for 0, −2, −4, ...
pub fn is_nonpositive_even_integer(r: &Rational) -> bool {
    r.is_integer() && !r.is_positive() && (r.numer() % 2u32).is_zero()
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    use num_integer::Integer;
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("-4/2").unwrap(), int(-2));
        assert_eq!(format_rational(&parse_rational("3").unwrap()), "3/1");
        assert_eq!(format_rational(&parse_rational(" 6/-4 ").unwrap()), "-3/2");
        assert_eq!(format_rational(&Rational::zero()), "0/1");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn wide_operands_reduce() {
        let big: BigInt = BigInt::from(1u8) << 300usize;
        let a = Rational::new(big.clone() + 1, big.clone());
        let b = Rational::new(big.clone() - 1, big.clone());
        assert_eq!(a + b, int(2));
    }

    #[test]
    fn rising_products() {
        assert_eq!(rising(&int(3), 0), int(1));
        assert_eq!(rising(&int(3), 3), int(60));
        assert_eq!(rising(&rat(1, 2), 2), rat(3, 4));
    }

    #[test]
    fn even_nonpositive() {
        assert!(is_nonpositive_even_integer(&int(0)));
        assert!(is_nonpositive_even_integer(&int(-4)));
        assert!(!is_nonpositive_even_integer(&int(-3)));
        assert!(!is_nonpositive_even_integer(&int(2)));
        assert!(!is_nonpositive_even_integer(&rat(-1, 2)));
    }
}
