//! Named test functions with closed-form Taylor coefficients, plus
//! user-supplied coefficient lists.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_rational::BigRational;
use thiserror::Error;

use crate::scalar::{parse_rational, render_rational, Scalar};
use crate::series::Series1;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FunctionError {
    #[error("unknown function `{0}` (expected koebe, koebe-rot:THETA, identity, z-over-1-minus-z, z-over-1-minus-z2)")]
    Unknown(String),
    #[error("cannot parse rotation angle `{0}`")]
    BadAngle(String),
    #[error("rotation by {0} is not exact in rational arithmetic; use floating mode")]
    NotExact(String),
    #[error(transparent)]
    BadCoefficient(#[from] crate::scalar::ParseRationalError),
}

/// A rotation angle, remembered both as radians and, when it is a multiple
/// of pi/2, as a count of quarter turns.
#[derive(Debug, Clone, PartialEq)]
pub struct Angle {
    text: String,
    radians: f64,
    quarter_turns: Option<i64>,
}

impl Angle {
    pub fn radians(&self) -> f64 {
        self.radians
    }

    pub fn quarter_turns(&self) -> Option<i64> {
        self.quarter_turns
    }

    /// `e^{i k theta}` in the field `S`.
    fn unit_power<S: Scalar>(&self, k: i64) -> Result<S, FunctionError> {
        if let Some(q) = self.quarter_turns {
            let c = match (q * k).rem_euclid(4) {
                0 => Complex64::new(1.0, 0.0),
                1 => Complex64::new(0.0, 1.0),
                2 => Complex64::new(-1.0, 0.0),
                _ => Complex64::new(0.0, -1.0),
            };
            return Ok(S::from_complex64(c));
        }
        if S::EXACT {
            return Err(FunctionError::NotExact(self.text.clone()));
        }
        Ok(S::from_complex64(Complex64::from_polar(1.0, k as f64 * self.radians)))
    }
}

impl FromStr for Angle {
    type Err = FunctionError;

    /// Accepts plain radians (`0.5`) or rational multiples of pi
    /// (`pi`, `-pi/2`, `3pi/4`, `3*pi/4`).
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let bad = || FunctionError::BadAngle(text.to_string());
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let lower = s.to_ascii_lowercase();
        if let Some(pos) = lower.find("pi") {
            let (head, tail) = (&lower[..pos], &lower[pos + 2..]);
            let head = head.strip_suffix('*').unwrap_or(head);
            let num: i64 = match head {
                "" | "+" => 1,
                "-" => -1,
                h => h.parse().map_err(|_| bad())?,
            };
            let den: i64 = match tail {
                "" => 1,
                t => t.strip_prefix('/').ok_or_else(bad)?.parse().map_err(|_| bad())?,
            };
            if den <= 0 {
                return Err(bad());
            }
            let quarter_turns = ((2 * num) % den == 0).then(|| (2 * num / den).rem_euclid(4));
            return Ok(Angle {
                text: text.to_string(),
                radians: num as f64 * PI / den as f64,
                quarter_turns,
            });
        }
        let radians: f64 = lower.parse().map_err(|_| bad())?;
        if !radians.is_finite() {
            return Err(bad());
        }
        Ok(Angle {
            text: text.to_string(),
            radians,
            quarter_turns: (radians == 0.0).then_some(0),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum TestFunction {
    /// `z / (1 - z)^2`, `a_n = n`.
    Koebe,
    /// `e^{-i theta} k(e^{i theta} z)`, `a_n = n e^{i (n-1) theta}`.
    KoebeRotated(Angle),
    /// `f(z) = z`.
    Identity,
    /// `z / (1 - z)`, `a_n = 1`.
    ZOverOneMinusZ,
    /// `z / (1 - z^2)`, `a_n = 1` for odd `n`, else 0.
    ZOverOneMinusZSquared,
    /// `z + a_2 z^2 + a_3 z^3 + ...` from an explicit list; omitted terms are 0.
    Coefficients(Vec<BigRational>),
}

impl TestFunction {
    /// The functions with closed-form Grunsky tables used by reports.
    pub fn builtin_suite() -> Vec<TestFunction> {
        vec![
            TestFunction::Koebe,
            TestFunction::KoebeRotated("pi".parse().expect("valid angle")),
            TestFunction::Identity,
            TestFunction::ZOverOneMinusZ,
            TestFunction::ZOverOneMinusZSquared,
        ]
    }

    /// Parses a comma-separated list `a_2, a_3, ...`.
    pub fn from_coefficient_list(list: &str) -> Result<Self, FunctionError> {
        let coeffs = list
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(parse_rational)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TestFunction::Coefficients(coeffs))
    }

    /// Taylor coefficient `a_n`, `n >= 2`.
    pub fn coefficient<S: Scalar>(&self, n: usize) -> Result<S, FunctionError> {
        let ni = n as i64;
        Ok(match self {
            TestFunction::Koebe => S::from_ratio(ni, 1),
            TestFunction::KoebeRotated(angle) => angle.unit_power::<S>(ni - 1)? * S::from_ratio(ni, 1),
            TestFunction::Identity => S::zero(),
            TestFunction::ZOverOneMinusZ => S::one(),
            TestFunction::ZOverOneMinusZSquared => {
                if n % 2 == 1 {
                    S::one()
                } else {
                    S::zero()
                }
            }
            TestFunction::Coefficients(list) => list
                .get(n - 2)
                .map(S::from_rational)
                .unwrap_or_else(S::zero),
        })
    }

    /// The normalized series truncated at `order`.
    pub fn series<S: Scalar>(&self, order: usize) -> Result<Series1<S>, FunctionError> {
        let tail = (2..=order)
            .map(|n| self.coefficient::<S>(n))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Series1::normalized(&tail, order))
    }
}

impl FromStr for TestFunction {
    type Err = FunctionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "koebe" => Ok(TestFunction::Koebe),
            "identity" => Ok(TestFunction::Identity),
            "z-over-1-minus-z" => Ok(TestFunction::ZOverOneMinusZ),
            "z-over-1-minus-z2" => Ok(TestFunction::ZOverOneMinusZSquared),
            other => match other.strip_prefix("koebe-rot:") {
                Some(angle) => Ok(TestFunction::KoebeRotated(angle.parse()?)),
                None => Err(FunctionError::Unknown(other.to_string())),
            },
        }
    }
}

impl fmt::Display for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TestFunction::Koebe => write!(f, "koebe"),
            TestFunction::KoebeRotated(a) => write!(f, "koebe-rot:{}", a.text),
            TestFunction::Identity => write!(f, "identity"),
            TestFunction::ZOverOneMinusZ => write!(f, "z-over-1-minus-z"),
            TestFunction::ZOverOneMinusZSquared => write!(f, "z-over-1-minus-z2"),
            TestFunction::Coefficients(c) => {
                let list: Vec<String> = c.iter().map(render_rational).collect();
                write!(f, "coeffs:{}", list.join(","))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ExactComplex;

    #[test]
    fn parses_names_and_angles() {
        assert_eq!("koebe".parse::<TestFunction>().unwrap(), TestFunction::Koebe);
        let TestFunction::KoebeRotated(a) = "koebe-rot:pi".parse().unwrap() else {
            panic!("expected rotation");
        };
        assert_eq!(a.quarter_turns(), Some(2));
        let a: Angle = "-pi/2".parse().unwrap();
        assert_eq!(a.quarter_turns(), Some(3));
        let a: Angle = "3*pi/4".parse().unwrap();
        assert_eq!(a.quarter_turns(), None);
        assert!((a.radians() - 0.75 * PI).abs() < 1e-15);
        let a: Angle = "0.5".parse().unwrap();
        assert_eq!(a.quarter_turns(), None);
        assert!("koebe-rot:foo".parse::<TestFunction>().is_err());
        assert!("nope".parse::<TestFunction>().is_err());
    }

    #[test]
    fn rotated_koebe_by_pi_alternates() {
        let f = "koebe-rot:pi".parse::<TestFunction>().unwrap();
        let c: Vec<ExactComplex> = (2..=5).map(|n| f.coefficient(n).unwrap()).collect();
        let expect: Vec<ExactComplex> = [-2, 3, -4, 5].iter().map(|&v| ExactComplex::from_ratio(v, 1)).collect();
        assert_eq!(c, expect);
    }

    #[test]
    fn irrational_rotation_needs_floating_mode() {
        let f = "koebe-rot:0.3".parse::<TestFunction>().unwrap();
        assert!(matches!(
            f.series::<ExactComplex>(5),
            Err(FunctionError::NotExact(_))
        ));
        assert!(f.series::<Complex64>(5).is_ok());
    }

    #[test]
    fn coefficient_lists() {
        let f = TestFunction::from_coefficient_list("2, 3/2, 0.25").unwrap();
        let s = f.series::<ExactComplex>(6).unwrap();
        assert_eq!(s.get(3).unwrap(), &ExactComplex::from_ratio(3, 2));
        assert_eq!(s.get(4).unwrap(), &ExactComplex::from_ratio(1, 4));
        assert_eq!(s.get(6).unwrap(), &ExactComplex::from_ratio(0, 1));
        assert_eq!(f.to_string(), "coeffs:2,3/2,1/4");
    }
}
