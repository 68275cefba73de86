//! Exact rational scalars and their text representation.
//!
//! All combinatorial decisions in this crate are made on `Rat` values;
//! floating point appears only in angle and norm reporting. Coordinates
//! are written as plain decimal strings whenever the denominator is of
//! the form 2^a 5^b, and as `"num/den"` otherwise, so that files round
//! trip without loss.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Exact rational scalar used throughout the crate.
pub type Rat = num_rational::BigRational;

/// Shorthand for a small integer rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Shorthand for `n/d`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Sign of an exact quantity. `Neg`/`Zero`/`Pos` in the usual order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ExactSign {
    Neg,
    Zero,
    Pos,
}

/// Exact sign of a rational.
pub fn sign_of(x: &Rat) -> ExactSign {
    if x.is_zero() {
        ExactSign::Zero
    } else if x.is_positive() {
        ExactSign::Pos
    } else {
        ExactSign::Neg
    }
}

/// Parses a coordinate token: an optional sign followed by either a
/// decimal literal (`"2"`, `"-0.25"`, `"1.5e-3"`) or a fraction
/// (`"-9/16"`). Decimal input is read exactly, never through a float.
pub fn parse_rat(s: &str) -> Result<Rat, Error> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty numeric token".into()));
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad fraction numerator in {s:?}")))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad fraction denominator in {s:?}")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rat::new(n, d));
    }
    parse_decimal(s)
}

fn parse_decimal(s: &str) -> Result<Rat, Error> {
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => {
            let exp: i64 = e
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in {s:?}")))?;
            (m, exp)
        }
        None => (s, 0),
    };
    let (sign, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(Error::Parse(format!("no digits in {s:?}")));
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit()) || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(format!("invalid decimal literal {s:?}")));
    }
    let joined = format!("{int_part}{frac_part}");
    let mut value: BigInt = if joined.is_empty() {
        BigInt::zero()
    } else {
        joined
            .parse()
            .map_err(|_| Error::Parse(format!("invalid decimal literal {s:?}")))?
    };
    if sign < 0 {
        value = -value;
    }
    let shift = exp - frac_part.len() as i64;
    let ten = BigInt::from(10);
    let scale = ten.pow(shift.unsigned_abs() as u32);
    Ok(if shift >= 0 {
        Rat::from_integer(value * scale)
    } else {
        Rat::new(value, scale)
    })
}

/// Formats a rational canonically: finite decimal expansion when the
/// reduced denominator has only 2 and 5 as prime factors, `num/den`
/// otherwise. Integers print without a decimal point.
pub fn format_rat(x: &Rat) -> String {
    let num = x.numer();
    let den = x.denom();
    if den.is_one() {
        return num.to_string();
    }
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    let mut d = den.clone();
    let mut twos = 0u32;
    let mut fives = 0u32;
    while (&d % &two).is_zero() {
        d /= &two;
        twos += 1;
    }
    while (&d % &five).is_zero() {
        d /= &five;
        fives += 1;
    }
    if !d.is_one() {
        return format!("{num}/{den}");
    }
    let k = twos.max(fives);
    let scale = two.pow(k - twos) * five.pow(k - fives);
    let scaled = num * &scale; // value = scaled / 10^k
    let negative = scaled.sign() == Sign::Minus;
    let digits = scaled.magnitude().to_string();
    let k = k as usize;
    let (int_digits, frac_digits) = if digits.len() > k {
        let (i, f) = digits.split_at(digits.len() - k);
        (i.to_string(), f.to_string())
    } else {
        ("0".to_string(), format!("{:0>width$}", digits, width = k))
    };
    let frac_digits = frac_digits.trim_end_matches('0');
    let sign = if negative { "-" } else { "" };
    if frac_digits.is_empty() {
        format!("{sign}{int_digits}")
    } else {
        format!("{sign}{int_digits}.{frac_digits}")
    }
}

/// Lossy conversion for reporting. Exact values stay rational.
pub fn to_f64(x: &Rat) -> f64 {
    x.to_f64().expect("rational magnitude out of f64 range")
}

/// Encloses `sqrt(x)` (x >= 0) in an interval of width `10^-digits`.
pub fn sqrt_interval(x: &Rat, digits: u32) -> (Rat, Rat) {
    assert!(!x.is_negative(), "sqrt of negative rational");
    let scale = BigInt::from(10).pow(digits);
    let scale_sq = &scale * &scale;
    // floor(sqrt(num * 10^2k / den)) / 10^k
    let scaled = (x.numer() * scale_sq).div_floor(x.denom());
    let root = scaled.sqrt();
    let lo = Rat::new(root.clone(), scale.clone());
    let hi = Rat::new(root + BigInt::one(), scale);
    (lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(parse_rat("0.1").unwrap(), ratio(1, 10));
        assert_eq!(parse_rat("-2.5").unwrap(), ratio(-5, 2));
        assert_eq!(parse_rat("3").unwrap(), rat(3));
        assert_eq!(parse_rat("1.5e-3").unwrap(), ratio(3, 2000));
        assert_eq!(parse_rat("-9/16").unwrap(), ratio(-9, 16));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("abc").is_err());
    }

    #[test]
    fn formats_canonically() {
        assert_eq!(format_rat(&ratio(1, 10)), "0.1");
        assert_eq!(format_rat(&ratio(-9, 16)), "-0.5625");
        assert_eq!(format_rat(&rat(42)), "42");
        assert_eq!(format_rat(&ratio(1, 3)), "1/3");
        assert_eq!(format_rat(&ratio(-5, 2)), "-2.5");
        assert_eq!(format_rat(&ratio(0, 7)), "0");
    }

    #[test]
    fn format_parse_round_trip() {
        for n in -40i64..40 {
            for d in 1i64..25 {
                let x = ratio(n, d);
                assert_eq!(parse_rat(&format_rat(&x)).unwrap(), x);
            }
        }
    }

    #[test]
    fn sqrt_interval_brackets() {
        let x = ratio(15, 1);
        let (lo, hi) = sqrt_interval(&x, 20);
        assert!(&lo * &lo <= x && x <= &hi * &hi);
        assert!(&hi - &lo <= ratio(1, 10_000_000_000_000_000));
    }
}
