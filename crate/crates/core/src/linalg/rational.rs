use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Zero};

use super::LinalgError;

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// How literals that look like floating-point numbers (exponent notation,
/// `inf`, `nan`) are treated. Plain decimals such as `0.25` are always exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NumberPolicy {
    #[default]
    Exact,
    /// Parse as `f64` and take its exact binary expansion.
    ConvertFloats,
}

/// Parses an integer, a decimal (`-1.25`) or a fraction (`3/4`).
pub fn parse_rational(text: &str, policy: NumberPolicy) -> Result<Rational, LinalgError> {
    let s = text.trim();
    let bad = || LinalgError::BadNumber(text.to_owned());
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = parse_integer(num.trim()).ok_or_else(bad)?;
        let den = parse_integer(den.trim()).ok_or_else(bad)?;
        if den.is_zero() {
            return Err(LinalgError::ZeroDenominator(text.to_owned()));
        }
        return Ok(Rational::new(num, den));
    }
    if let Some(value) = parse_decimal(s) {
        return Ok(value);
    }
    let lower = s.to_ascii_lowercase();
    let looks_float = lower.contains('e') || lower.contains("inf") || lower.contains("nan");
    if !looks_float {
        return Err(bad());
    }
    match policy {
        NumberPolicy::Exact => Err(LinalgError::FloatRejected(text.to_owned())),
        NumberPolicy::ConvertFloats => {
            let f: f64 = s.parse().map_err(|_| bad())?;
            Rational::from_float(f).ok_or_else(bad)
        }
    }
}

fn parse_integer(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigInt::from_str_radix(s.strip_prefix('+').unwrap_or(s), 10).ok()
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (negative, body) = match s.as_bytes().first()? {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    let all_digits = |p: &str| p.bytes().all(|b| b.is_ascii_digit());
    if !all_digits(int_part) || !all_digits(frac_part) {
        return None;
    }
    let mut digits = String::with_capacity(int_part.len() + frac_part.len());
    digits.push_str(int_part);
    digits.push_str(frac_part);
    let mut numer = BigInt::from_str_radix(&digits, 10).ok()?;
    if negative {
        numer = -numer;
    }
    let denom = num_traits::pow(BigInt::from(10), frac_part.len());
    Some(Rational::new(numer, denom))
}
