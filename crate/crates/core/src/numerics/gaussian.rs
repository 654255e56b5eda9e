//! Exact elements of Q(i).

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::{Error, Result};

/// A Gaussian rational `re + im·i` with arbitrary-precision parts.
///
/// Both parts are kept in lowest terms with positive denominators (this is
/// what [`BigRational`] normalizes to on construction).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_integers(re: i64, im: i64) -> Self {
        GaussianRational {
            re: BigRational::from_integer(re.into()),
            im: BigRational::from_integer(im.into()),
        }
    }

    /// `(re_num/re_den) + (im_num/im_den)·i`. Panics on a zero denominator.
    pub fn from_fractions(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        GaussianRational {
            re: BigRational::new(re_num.into(), re_den.into()),
            im: BigRational::new(im_num.into(), im_den.into()),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_integers(1, 0)
    }

    pub fn i() -> Self {
        Self::from_integers(0, 1)
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -self.im.clone() }
    }

    /// `|z|²`, which is rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(GaussianRational { re: &self.re / &n, im: -(&self.im / &n) })
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(ratio_to_f64(&self.re), ratio_to_f64(&self.im))
    }

    /// Largest denominator of the two parts.
    pub fn max_denominator(&self) -> BigInt {
        std::cmp::max(self.re.denom().clone(), self.im.denom().clone())
    }
}

fn ratio_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Fallback for parts that overflow the direct conversion.
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re.clone(), im: -self.im.clone() }
    }
}

impl fmt::Display for GaussianRational {
    /// Canonical text: `a`, `b i`, `a+b i` or `a-b i`, with `i`/`-i` for unit
    /// imaginary parts. Each part is `p` or `p/q`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imag = |v: &BigRational, f: &mut fmt::Formatter<'_>| {
            if v.is_one() {
                write!(f, "i")
            } else if *v == -BigRational::one() {
                write!(f, "-i")
            } else {
                write!(f, "{} i", v)
            }
        };
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            imag(&self.im, f)
        } else {
            write!(f, "{}", self.re)?;
            if self.im.is_positive() {
                write!(f, "+")?;
            }
            imag(&self.im, f)
        }
    }
}

/// Parses a real part: `p`, `p/q`, or a decimal with optional exponent, exactly.
fn parse_real(s: &str) -> std::result::Result<BigRational, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty number".into());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|e| e.to_string())?;
        let d = BigInt::from_str(d.trim()).map_err(|e| e.to_string())?;
        if d.is_zero() {
            return Err("zero denominator".into());
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(p) => (&s[..p], s[p + 1..].parse::<i64>().map_err(|e| e.to_string())?),
        None => (s, 0),
    };
    let (sign, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err("no digits".into());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(format!("unexpected character in `{}`", s));
    }
    let all: String = format!("{}{}", int_part, frac_part);
    let mut value = BigRational::from_integer(BigInt::from_str(&all).map_err(|e| e.to_string())?);
    let shift = exp - frac_part.len() as i64;
    let ten = BigRational::from_integer(10.into());
    let scale = num_traits::pow(ten, shift.unsigned_abs() as usize);
    if shift >= 0 {
        value *= scale;
    } else {
        value /= scale;
    }
    Ok(value * BigRational::from_integer(sign.into()))
}

/// Position of the `+`/`-` separating real and imaginary parts, skipping a
/// leading sign and exponent signs.
fn split_point(s: &str) -> Option<usize> {
    let bytes = s.as_bytes();
    (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'))
}

impl FromStr for GaussianRational {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let err = |reason: String| Error::Parse { text: text.to_string(), reason };
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(err("empty".into()));
        }
        let Some(body) = s.strip_suffix('i') else {
            return Ok(GaussianRational { re: parse_real(&s).map_err(err)?, im: BigRational::zero() });
        };
        let (re_text, im_text) = match split_point(body) {
            Some(p) => (&body[..p], &body[p..]),
            None => ("", body),
        };
        let im = match im_text {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            t => parse_real(t.strip_prefix('+').unwrap_or(t)).map_err(err)?,
        };
        let re = if re_text.is_empty() { BigRational::zero() } else { parse_real(re_text).map_err(err)? };
        Ok(GaussianRational { re, im })
    }
}

impl Serialize for GaussianRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GaussianRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    #[test]
    fn parses_textual_forms() {
        assert_eq!(q("1/2+3/4 i"), GaussianRational::from_fractions(1, 2, 3, 4));
        assert_eq!(q("1/2 - 3/4i"), GaussianRational::from_fractions(1, 2, -3, 4));
        assert_eq!(q("i"), GaussianRational::i());
        assert_eq!(q("-i"), GaussianRational::from_integers(0, -1));
        assert_eq!(q("2i"), GaussianRational::from_integers(0, 2));
        assert_eq!(q("0.5"), GaussianRational::from_fractions(1, 2, 0, 1));
        assert_eq!(q("-1.25e-1"), GaussianRational::from_fractions(-1, 8, 0, 1));
        assert_eq!(q("1e2+2.5e-1 i"), GaussianRational::from_fractions(100, 1, 1, 4));
        assert_eq!(q("4/-6"), GaussianRational::from_fractions(-2, 3, 0, 1));
    }

    #[test]
    fn rejects_garbage() {
        assert!("".parse::<GaussianRational>().is_err());
        assert!("1/0".parse::<GaussianRational>().is_err());
        assert!("abc".parse::<GaussianRational>().is_err());
        assert!("1..2".parse::<GaussianRational>().is_err());
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(GaussianRational::from_fractions(2, 4, -3, 4).to_string(), "1/2-3/4 i");
        assert_eq!(GaussianRational::i().to_string(), "i");
        assert_eq!(GaussianRational::from_integers(3, 0).to_string(), "3");
        assert_eq!(GaussianRational::zero().to_string(), "0");
        assert_eq!(GaussianRational::from_integers(1, -1).to_string(), "1-i");
    }

    #[test]
    fn field_inverse() {
        let z = GaussianRational::from_fractions(3, 2, -5, 7);
        assert_eq!(&z * &z.inv().unwrap(), GaussianRational::one());
        assert!(GaussianRational::zero().inv().is_none());
    }
}
