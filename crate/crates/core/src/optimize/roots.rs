//! Real-root isolation for polynomials with rational coefficients by
//! Sturm sequences and bisection.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::scalar::render_rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("the zero polynomial has no isolated roots")]
    ZeroPolynomial,
    #[error("polynomial is not square-free (gcd with its derivative has degree {gcd_degree})")]
    NotSquareFree { gcd_degree: usize },
    #[error("empty search interval")]
    EmptyInterval,
}

/// Isolating intervals are refined below this width.
pub fn isolation_width() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10u64.pow(12)))
}

/// Dense polynomial, coefficients in ascending degree, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<BigRational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    /// `5x^8 - 5x^6 + 4x^4 - 4x^2 + 1`, the squared stationarity condition
    /// of `F1` on `y = 0`.
    pub fn f1_bottom_stationarity() -> Self {
        Self::from_ints(&[1, 0, -4, 0, 4, 0, -5, 0, 5])
    }

    /// `12x^4 - 11x^2 + 2`, the squared stationarity condition of `F2` on the
    /// curved edge (after dividing by `x`).
    pub fn f2_arc_stationarity() -> Self {
        Self::from_ints(&[2, 0, -11, 0, 12])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer(k.into()))
                .collect(),
        )
    }

    /// Remainder of division by a nonzero `d`.
    pub fn rem(&self, d: &Polynomial) -> Polynomial {
        let lead = d.leading().expect("division by zero polynomial");
        let mut r = self.coeffs.clone();
        while r.len() >= d.coeffs.len() && !r.is_empty() {
            let shift = r.len() - d.coeffs.len();
            let q = r.last().expect("nonempty") / lead;
            for (k, c) in d.coeffs.iter().enumerate() {
                r[shift + k] -= &q * c;
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        Polynomial::new(r)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        match a.leading().cloned() {
            Some(l) => Polynomial::new(a.coeffs.iter().map(|c| c / &l).collect()),
            None => a,
        }
    }

    /// Sturm chain `p, p', -rem(p, p'), ...`.
    pub fn sturm_sequence(&self) -> Vec<Polynomial> {
        let mut seq = vec![self.clone()];
        let mut next = self.derivative();
        while !next.is_zero() {
            let prev = seq.last().expect("nonempty").clone();
            seq.push(next.clone());
            next = -prev.rem(&next);
        }
        seq
    }
}

impl std::ops::Neg for Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            let show_coeff = k == 0 || !mag.is_one();
            if show_coeff {
                f.write_str(&render_rational(&mag))?;
            }
            match k {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

/// An interval containing exactly one root. `lo == hi` when a bisection
/// point hit the root exactly; `sign_change` is then false.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: BigRational,
    pub hi: BigRational,
    pub sign_change: bool,
}

impl RootInterval {
    pub fn midpoint(&self) -> f64 {
        ((&self.lo + &self.hi) / BigRational::from_integer(2.into()))
            .to_f64()
            .unwrap_or(f64::NAN)
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn summary(&self) -> RootSummary {
        RootSummary {
            lo: self.lo.to_f64().unwrap_or(f64::NAN),
            hi: self.hi.to_f64().unwrap_or(f64::NAN),
            midpoint: self.midpoint(),
            exact: self.is_exact(),
        }
    }
}

/// Floating view of a [`RootInterval`] for reports.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RootSummary {
    pub lo: f64,
    pub hi: f64,
    pub midpoint: f64,
    pub exact: bool,
}

fn sign_variations(seq: &[Polynomial], x: &BigRational) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for p in seq {
        let v = p.eval(x);
        let s = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Distinct roots in the open interval `(lo, hi)`.
fn count_open(p: &Polynomial, seq: &[Polynomial], lo: &BigRational, hi: &BigRational) -> usize {
    let n = sign_variations(seq, lo) - sign_variations(seq, hi);
    if p.eval(hi).is_zero() {
        n - 1
    } else {
        n
    }
}

/// Isolates every real root of `p` in the open interval `(a, b)`, sorted
/// ascending.
pub fn isolate_roots(p: &Polynomial, a: &BigRational, b: &BigRational) -> Result<Vec<RootInterval>, RootError> {
    if p.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    if a >= b {
        return Err(RootError::EmptyInterval);
    }
    let g = p.gcd(&p.derivative());
    if g.degree() > 0 {
        return Err(RootError::NotSquareFree { gcd_degree: g.degree() });
    }
    let seq = p.sturm_sequence();
    let two = BigRational::from_integer(2.into());
    let mut out = Vec::new();
    let mut stack = vec![(a.clone(), b.clone())];
    while let Some((lo, hi)) = stack.pop() {
        match count_open(p, &seq, &lo, &hi) {
            0 => {}
            1 if !p.eval(&lo).is_zero() && !p.eval(&hi).is_zero() => out.push(refine(p, lo, hi)),
            _ => {
                let mid = (&lo + &hi) / &two;
                if p.eval(&mid).is_zero() {
                    out.push(RootInterval {
                        lo: mid.clone(),
                        hi: mid.clone(),
                        sign_change: false,
                    });
                }
                stack.push((mid.clone(), hi));
                stack.push((lo, mid));
            }
        }
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    Ok(out)
}

/// Bisects an interval holding one simple root with nonzero endpoint values.
fn refine(p: &Polynomial, mut lo: BigRational, mut hi: BigRational) -> RootInterval {
    let two = BigRational::from_integer(2.into());
    let target = isolation_width();
    let lo_positive = p.eval(&lo).is_positive();
    while &hi - &lo >= target {
        let mid = (&lo + &hi) / &two;
        let v = p.eval(&mid);
        if v.is_zero() {
            return RootInterval {
                lo: mid.clone(),
                hi: mid,
                sign_change: false,
            };
        }
        if v.is_positive() == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    RootInterval {
        lo,
        hi,
        sign_change: true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn sqrt_two() {
        let p = Polynomial::from_ints(&[-2, 0, 1]);
        let r = isolate_roots(&p, &q(0, 1), &q(2, 1)).unwrap();
        assert_eq!(r.len(), 1);
        assert!(r[0].sign_change);
        assert!((r[0].midpoint() - 2f64.sqrt()).abs() < 1e-12);
        assert!(r[0].width() < isolation_width());
    }

    #[test]
    fn no_real_roots() {
        let p = Polynomial::from_ints(&[1, 0, 1]);
        assert!(isolate_roots(&p, &q(-2, 1), &q(2, 1)).unwrap().is_empty());
    }

    #[test]
    fn degree_eight_boundary_polynomial() {
        let p = Polynomial::f1_bottom_stationarity();
        let r = isolate_roots(&p, &q(0, 1), &q(1, 1)).unwrap();
        assert_eq!(r.len(), 2);
        assert!((r[0].midpoint() - 0.572624862916603).abs() < 1e-11);
        assert!((r[1].midpoint() - 0.918107379133660).abs() < 1e-11);
        for root in &r {
            assert!(p.eval(&root.lo).is_positive() != p.eval(&root.hi).is_positive());
        }
    }

    #[test]
    fn exact_midpoint_root() {
        // roots 1/2 and sqrt(2/3); 1/2 is the first bisection point of (0, 1)
        let p = Polynomial::f2_arc_stationarity();
        let r = isolate_roots(&p, &q(0, 1), &q(1, 1)).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r[0].is_exact() && !r[0].sign_change);
        assert_eq!(r[0].lo, q(1, 2));
        assert!((r[1].midpoint() - (2.0f64 / 3.0).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn repeated_roots_are_rejected() {
        let p = Polynomial::from_ints(&[1, -2, 1]);
        assert_eq!(
            isolate_roots(&p, &q(0, 1), &q(2, 1)),
            Err(RootError::NotSquareFree { gcd_degree: 1 })
        );
        assert_eq!(
            isolate_roots(&Polynomial::new(vec![]), &q(0, 1), &q(1, 1)),
            Err(RootError::ZeroPolynomial)
        );
    }

    #[test]
    fn endpoints_are_excluded() {
        let p = Polynomial::from_ints(&[0, -1, 0, 1]); // x^3 - x
        let r = isolate_roots(&p, &q(-1, 1), &q(1, 1)).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].lo, q(0, 1));
    }

    #[test]
    fn display() {
        assert_eq!(
            Polynomial::f1_bottom_stationarity().to_string(),
            "5x^8 - 5x^6 + 4x^4 - 4x^2 + 1"
        );
    }
}
