//! Outward-rounded interval arithmetic over `f64`.
//!
//! Every operation returns an interval that contains the exact real result
//! of its operands. Rounding is emulated with error-free transformations
//! (`two_sum` for addition, fused multiply-add for products, square roots
//! and reciprocals): the exact rounding error of the nearest-rounded result
//! tells us which side is off, and only that side is moved one ulp outward.
//! Results that are exactly representable therefore stay tight.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum IntervalError {
    /// The operand lies entirely outside the domain of the operation.
    #[error("interval lies entirely outside the operation's domain")]
    EmptyDomain,
    #[error("reciprocal requires a strictly positive interval")]
    NotPositive,
}

/// A closed real interval `[lo, hi]` with `lo <= hi`.
#[derive(Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo, self.hi)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

// Error-free transformations. Each returns the nearest-rounded result and
// the sign of (exact - rounded).

fn two_sum(a: f64, b: f64) -> (f64, Ordering) {
    let s = a + b;
    if !s.is_finite() {
        return (s, Ordering::Equal);
    }
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err.partial_cmp(&0.0).unwrap_or(Ordering::Equal))
}

fn two_prod(a: f64, b: f64) -> (f64, Ordering) {
    let p = a * b;
    if a == 0.0 || b == 0.0 || !p.is_finite() {
        return (p, Ordering::Equal);
    }
    let err = a.mul_add(b, -p);
    (p, err.partial_cmp(&0.0).unwrap_or(Ordering::Equal))
}

fn round_down(v: f64, err: Ordering) -> f64 {
    if v == f64::INFINITY {
        return f64::MAX;
    }
    match err {
        Ordering::Less => v.next_down(),
        _ => v,
    }
}

fn round_up(v: f64, err: Ordering) -> f64 {
    if v == f64::NEG_INFINITY {
        return f64::MIN;
    }
    match err {
        Ordering::Greater => v.next_up(),
        _ => v,
    }
}

fn add_down(a: f64, b: f64) -> f64 {
    let (s, e) = two_sum(a, b);
    round_down(s, e)
}

fn add_up(a: f64, b: f64) -> f64 {
    let (s, e) = two_sum(a, b);
    round_up(s, e)
}

fn mul_bounds(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    if a == 0.0 || b == 0.0 {
        return (0.0, 0.0);
    }
    if p.abs() < f64::MIN_POSITIVE * 4.0 {
        return (p.next_down(), p.next_up());
    }
    let (p, e) = two_prod(a, b);
    (round_down(p, e), round_up(p, e))
}

fn sqrt_bounds(x: f64) -> (f64, f64) {
    if x <= 0.0 {
        return (0.0, 0.0);
    }
    let r = x.sqrt();
    if x == f64::INFINITY {
        return (f64::MAX, f64::INFINITY);
    }
    if x < f64::MIN_POSITIVE * 4.0 {
        return (r.next_down().max(0.0), r.next_up());
    }
    // sign of r*r - x: positive means r overshoots sqrt(x)
    let e = r.mul_add(r, -x);
    match e.partial_cmp(&0.0) {
        Some(Ordering::Greater) => (r.next_down(), r),
        Some(Ordering::Less) => (r, r.next_up()),
        _ => (r, r),
    }
}

/// Bounds on `n / d` for `d > 0`.
fn quotient_bounds(n: f64, d: f64) -> (f64, f64) {
    let q = n / d;
    if n == 0.0 {
        return (0.0, 0.0);
    }
    if q.abs() < f64::MIN_POSITIVE * 4.0 || !q.is_finite() {
        return (q.next_down(), q.next_up());
    }
    // q*d - n > 0 means q overshoots
    let e = q.mul_add(d, -n);
    match e.partial_cmp(&0.0) {
        Some(Ordering::Greater) => (q.next_down(), q),
        Some(Ordering::Less) => (q, q.next_up()),
        _ => (q, q),
    }
}

/// Lower bound on `x^n` for `x >= 0`.
fn pow_down_nonneg(x: f64, n: u32) -> f64 {
    let mut acc = 1.0;
    for _ in 0..n {
        acc = mul_bounds(acc, x).0;
    }
    acc.max(0.0)
}

fn pow_up_nonneg(x: f64, n: u32) -> f64 {
    let mut acc = 1.0;
    for _ in 0..n {
        acc = mul_bounds(acc, x).1;
    }
    acc
}

impl Interval {
    /// Builds `[lo, hi]`.
    ///
    /// Panics when `lo > hi` or either endpoint is NaN.
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo <= hi, "invalid interval [{lo}, {hi}]");
        Self { lo, hi }
    }

    pub fn try_new(lo: f64, hi: f64) -> Option<Self> {
        (lo <= hi).then_some(Self { lo, hi })
    }

    pub fn point(x: f64) -> Self {
        Self::new(x, x)
    }

    /// Enclosure of the rational `num / den`.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let (n, d) = if den < 0 { (-num, -den) } else { (num, den) };
        // Both convert exactly for |values| < 2^53.
        let (lo, hi) = quotient_bounds(n as f64, d as f64);
        Self::new(lo, hi)
    }

    pub const ZERO: Interval = Interval { lo: 0.0, hi: 0.0 };
    pub const ONE: Interval = Interval { lo: 1.0, hi: 1.0 };

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> f64 {
        let m = 0.5 * self.lo + 0.5 * self.hi;
        m.clamp(self.lo, self.hi)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn is_subset_of(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        Interval::try_new(self.lo.max(other.lo), self.hi.min(other.hi))
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval::new(self.lo.min(other.lo), self.hi.max(other.hi))
    }

    /// Magnitude bounds `{|x| : x in self}`.
    pub fn abs(&self) -> Interval {
        if self.lo >= 0.0 {
            *self
        } else if self.hi <= 0.0 {
            -*self
        } else {
            Interval::new(0.0, (-self.lo).max(self.hi))
        }
    }

    /// `self^n`; even powers go through `|self|`.
    pub fn pow_int(&self, n: u32) -> Interval {
        if n == 0 {
            return Interval::ONE;
        }
        if n.is_multiple_of(2) {
            let a = self.abs();
            Interval::new(pow_down_nonneg(a.lo, n), pow_up_nonneg(a.hi, n))
        } else {
            let lo = if self.lo >= 0.0 {
                pow_down_nonneg(self.lo, n)
            } else {
                -pow_up_nonneg(-self.lo, n)
            };
            let hi = if self.hi >= 0.0 {
                pow_up_nonneg(self.hi, n)
            } else {
                -pow_down_nonneg(-self.hi, n)
            };
            Interval::new(lo, hi)
        }
    }

    /// `sqrt(self ∩ [0, ∞))`. The negative part of the operand is ignored.
    pub fn sqrt_clamped(&self) -> Result<Interval, IntervalError> {
        if self.hi < 0.0 {
            return Err(IntervalError::EmptyDomain);
        }
        let lo = sqrt_bounds(self.lo.max(0.0)).0;
        let hi = sqrt_bounds(self.hi).1;
        Ok(Interval::new(lo, hi))
    }

    /// `1 / self` for strictly positive intervals.
    pub fn recip_positive(&self) -> Result<Interval, IntervalError> {
        if self.lo.is_nan() || self.lo <= 0.0 {
            return Err(IntervalError::NotPositive);
        }
        let lo = quotient_bounds(1.0, self.hi).0;
        let hi = quotient_bounds(1.0, self.lo).1;
        Ok(Interval::new(lo, hi))
    }

    /// Splits at the midpoint.
    pub fn bisect(&self) -> (Interval, Interval) {
        let m = self.midpoint();
        (Interval::new(self.lo, m), Interval::new(m, self.hi))
    }
}

impl Add for Interval {
    type Output = Interval;

    fn add(self, rhs: Interval) -> Interval {
        Interval::new(add_down(self.lo, rhs.lo), add_up(self.hi, rhs.hi))
    }
}

impl Sub for Interval {
    type Output = Interval;

    fn sub(self, rhs: Interval) -> Interval {
        self + (-rhs)
    }
}

impl Neg for Interval {
    type Output = Interval;

    fn neg(self) -> Interval {
        Interval::new(-self.hi, -self.lo)
    }
}

impl Mul for Interval {
    type Output = Interval;

    fn mul(self, rhs: Interval) -> Interval {
        let products = [
            mul_bounds(self.lo, rhs.lo),
            mul_bounds(self.lo, rhs.hi),
            mul_bounds(self.hi, rhs.lo),
            mul_bounds(self.hi, rhs.hi),
        ];
        let lo = products.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
        let hi = products.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
        Interval::new(lo, hi)
    }
}

impl Mul<f64> for Interval {
    type Output = Interval;

    fn mul(self, rhs: f64) -> Interval {
        self * Interval::point(rhs)
    }
}

impl Add<f64> for Interval {
    type Output = Interval;

    fn add(self, rhs: f64) -> Interval {
        self + Interval::point(rhs)
    }
}

/// An axis-aligned rectangle `x × y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalBox {
    pub x: Interval,
    pub y: Interval,
}

impl IntervalBox {
    pub fn new(x: Interval, y: Interval) -> Self {
        Self { x, y }
    }

    pub fn point(x: f64, y: f64) -> Self {
        Self::new(Interval::point(x), Interval::point(y))
    }

    pub fn midpoint(&self) -> (f64, f64) {
        (self.x.midpoint(), self.y.midpoint())
    }

    pub fn max_width(&self) -> f64 {
        self.x.width().max(self.y.width())
    }

    /// Bisects the wider side; ties split `x`.
    pub fn bisect(&self) -> (IntervalBox, IntervalBox) {
        if self.x.width() >= self.y.width() {
            let (a, b) = self.x.bisect();
            (IntervalBox::new(a, self.y), IntervalBox::new(b, self.y))
        } else {
            let (a, b) = self.y.bisect();
            (IntervalBox::new(self.x, a), IntervalBox::new(self.x, b))
        }
    }

    pub fn intersect(&self, other: &IntervalBox) -> Option<IntervalBox> {
        Some(IntervalBox::new(
            self.x.intersect(&other.x)?,
            self.y.intersect(&other.y)?,
        ))
    }

    /// Lexicographic order on `(x.lo, y.lo, x.hi, y.hi)`.
    pub fn lex_cmp(&self, other: &IntervalBox) -> Ordering {
        self.x
            .lo
            .total_cmp(&other.x.lo)
            .then(self.y.lo.total_cmp(&other.y.lo))
            .then(self.x.hi.total_cmp(&other.x.hi))
            .then(self.y.hi.total_cmp(&other.y.hi))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: f64, hi: f64) -> Interval {
        Interval::new(lo, hi)
    }

    #[test]
    fn exact_sums_stay_tight() {
        assert_eq!(iv(1.0, 2.0) + iv(3.0, 4.0), iv(4.0, 6.0));
        assert_eq!(iv(0.0, 0.0) + iv(-0.25, 7.5), iv(-0.25, 7.5));
        assert_eq!(iv(-1.0, 1.0) + iv(-1.0, 1.0), iv(-2.0, 2.0));
    }

    #[test]
    fn inexact_sum_is_widened_on_the_right_side() {
        let s = Interval::point(0.1) + Interval::point(0.2);
        // 0.1 + 0.2 rounds up, so only the lower endpoint moves.
        assert_eq!(s.hi(), 0.1 + 0.2);
        assert_eq!(s.lo(), (0.1f64 + 0.2).next_down());
    }

    #[test]
    fn products() {
        assert_eq!(iv(-1.0, 2.0) * iv(3.0, 4.0), iv(-4.0, 8.0));
        assert_eq!(iv(0.0, 0.0) * iv(-3.0, 5.0), iv(0.0, 0.0));
        assert_eq!(iv(2.0, 3.0) * iv(2.0, 3.0), iv(4.0, 9.0));
    }

    #[test]
    fn sqrt_clamps_negative_part() {
        assert_eq!(iv(-0.1, 0.25).sqrt_clamped().unwrap(), iv(0.0, 0.5));
        assert_eq!(iv(0.0, 1.0).sqrt_clamped().unwrap(), iv(0.0, 1.0));
        assert_eq!(iv(4.0, 9.0).sqrt_clamped().unwrap(), iv(2.0, 3.0));
        assert_eq!(
            iv(-2.0, -1e-300).sqrt_clamped(),
            Err(IntervalError::EmptyDomain)
        );
    }

    #[test]
    fn sqrt_of_two_brackets_the_root() {
        let r = Interval::point(2.0).sqrt_clamped().unwrap();
        assert!(r.lo() < r.hi());
        assert!(r.lo() * r.lo() <= 2.0);
        assert!(r.hi().mul_add(r.hi(), -2.0) > 0.0);
    }

    #[test]
    fn integer_powers() {
        assert_eq!(iv(-1.0, 2.0).pow_int(2), iv(0.0, 4.0));
        assert_eq!(iv(-2.0, 1.0).pow_int(3), iv(-8.0, 1.0));
        assert_eq!(iv(0.3, 0.3).pow_int(0), iv(1.0, 1.0));
        assert_eq!(iv(-3.0, -2.0).pow_int(2), iv(4.0, 9.0));
        assert_eq!(iv(-3.0, -2.0).pow_int(3), iv(-27.0, -8.0));
    }

    #[test]
    fn ratio_constants() {
        let third = Interval::from_ratio(1, 3);
        assert!(third.lo() < third.hi());
        assert!(third.contains(1.0 / 3.0));
        assert_eq!(Interval::from_ratio(12, -4), Interval::point(-3.0));
    }

    #[test]
    fn reciprocal() {
        assert_eq!(iv(2.0, 4.0).recip_positive().unwrap(), iv(0.25, 0.5));
        assert_eq!(iv(0.0, 1.0).recip_positive(), Err(IntervalError::NotPositive));
        let r = iv(3.0, 3.0).recip_positive().unwrap();
        assert!(r.contains(1.0 / 3.0) && r.lo() < r.hi());
    }

    #[test]
    fn box_bisection_prefers_x_on_ties() {
        let b = IntervalBox::new(iv(0.0, 1.0), iv(0.0, 1.0));
        let (l, r) = b.bisect();
        assert_eq!(l.x, iv(0.0, 0.5));
        assert_eq!(r.x, iv(0.5, 1.0));
        let tall = IntervalBox::new(iv(0.0, 1.0), iv(0.0, 2.0));
        assert_eq!(tall.bisect().0.y, iv(0.0, 1.0));
    }
}
