//! Coefficient fields for series and Grunsky tables.
//!
//! Two fields are supported: exact Gaussian rationals (`Complex<BigRational>`)
//! for identity checks with zero residual, and `Complex64` for sampled
//! functions such as rotations by irrational angles.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type ExactComplex = Complex<BigRational>;

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// True when arithmetic in this field is exact.
    const EXACT: bool;

    fn from_ratio(num: i64, den: i64) -> Self;

    fn from_rational(r: &BigRational) -> Self;

    /// Converts a `Complex64`. Exact fields take the binary value verbatim.
    fn from_complex64(c: Complex64) -> Self;

    fn conj(&self) -> Self;

    /// `|self|^2`, as an element of the same field with zero imaginary part.
    fn norm_sqr(&self) -> Self;

    fn to_complex64(&self) -> Complex64;

    /// Real part as `f64`.
    fn re_f64(&self) -> f64 {
        self.to_complex64().re
    }

    fn modulus(&self) -> f64 {
        self.to_complex64().norm()
    }

    /// Human-readable value; exact fields print fractions.
    fn render(&self) -> String;

    /// Equality for exact fields; relative closeness otherwise.
    fn close_to(&self, other: &Self, rel_tol: f64) -> bool {
        if Self::EXACT {
            return self == other;
        }
        let (a, b) = (self.to_complex64(), other.to_complex64());
        (a - b).norm() <= rel_tol * 1f64.max(a.norm()).max(b.norm())
    }

    fn scale(&self, num: i64, den: i64) -> Self {
        Self::from_ratio(num, den) * self.clone()
    }
}

impl Scalar for ExactComplex {
    const EXACT: bool = true;

    fn from_ratio(num: i64, den: i64) -> Self {
        Complex::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    fn from_rational(r: &BigRational) -> Self {
        Complex::new(r.clone(), BigRational::zero())
    }

    fn from_complex64(c: Complex64) -> Self {
        let conv = |v: f64| BigRational::from_float(v).expect("finite float");
        Complex::new(conv(c.re), conv(c.im))
    }

    fn conj(&self) -> Self {
        Complex::conj(self)
    }

    fn norm_sqr(&self) -> Self {
        Complex::new(Complex::norm_sqr(self), BigRational::zero())
    }

    fn to_complex64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    fn render(&self) -> String {
        render_exact(self)
    }
}

impl Scalar for Complex64 {
    const EXACT: bool = false;

    fn from_ratio(num: i64, den: i64) -> Self {
        Complex64::new(num as f64 / den as f64, 0.0)
    }

    fn from_rational(r: &BigRational) -> Self {
        Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0)
    }

    fn from_complex64(c: Complex64) -> Self {
        c
    }

    fn conj(&self) -> Self {
        Complex::conj(self)
    }

    fn norm_sqr(&self) -> Self {
        Complex64::new(Complex::norm_sqr(self), 0.0)
    }

    fn to_complex64(&self) -> Complex64 {
        *self
    }

    fn render(&self) -> String {
        if self.im == 0.0 {
            format!("{}", self.re)
        } else {
            format!("{}{:+}i", self.re, self.im)
        }
    }
}

pub fn render_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn render_exact(c: &ExactComplex) -> String {
    if c.im.is_zero() {
        return render_rational(&c.re);
    }
    let im = if c.im.abs().is_one() {
        String::new()
    } else {
        render_rational(&c.im.abs())
    };
    let sign = if c.im.is_negative() { "-" } else { "+" };
    if c.re.is_zero() {
        let lead = if c.im.is_negative() { "-" } else { "" };
        format!("{lead}{im}i")
    } else {
        format!("{}{sign}{im}i", render_rational(&c.re))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse `{0}` as a rational number")]
pub struct ParseRationalError(pub String);

/// Parses `p/q`, an integer, or a finite decimal (with optional exponent)
/// into an exact rational.
pub fn parse_rational(text: &str) -> Result<BigRational, ParseRationalError> {
    let s = text.trim();
    let err = || ParseRationalError(text.to_string());
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| err())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().map_err(|_| err())?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(err());
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut numer = BigInt::from_str(&all_digits).map_err(|_| err())?;
    if negative {
        numer = -numer;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let value = if scale >= 0 {
        BigRational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("3/4").unwrap(), q(3, 4));
        assert_eq!(parse_rational("-2").unwrap(), q(-2, 1));
        assert_eq!(parse_rational("1.5").unwrap(), q(3, 2));
        assert_eq!(parse_rational("-0.125").unwrap(), q(-1, 8));
        assert_eq!(parse_rational(".5").unwrap(), q(1, 2));
        assert_eq!(parse_rational("2.5e-1").unwrap(), q(1, 4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn renders_gaussian_rationals() {
        let c = |re: BigRational, im: BigRational| ExactComplex::new(re, im);
        assert_eq!(c(q(0, 1), q(0, 1)).render(), "0");
        assert_eq!(c(q(1, 3), q(0, 1)).render(), "1/3");
        assert_eq!(c(q(0, 1), q(-1, 1)).render(), "-i");
        assert_eq!(c(q(2, 1), q(3, 4)).render(), "2+3/4i");
    }

    #[test]
    fn exact_norm_is_exact() {
        let z = ExactComplex::new(q(1, 3), q(1, 2));
        assert_eq!(Scalar::norm_sqr(&z), ExactComplex::from_ratio(13, 36));
    }
}
