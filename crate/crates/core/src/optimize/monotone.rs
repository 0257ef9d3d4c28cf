//! Sign certificates and maxima for univariate functions given by interval
//! extensions.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use thiserror::Error;

use crate::interval::Interval;

pub type Enclosure<'a> = &'a dyn Fn(Interval) -> Option<Interval>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MonotoneError {
    #[error("could not decide the sign on [{lo}, {hi}] within the budget")]
    Inconclusive { lo: f64, hi: f64 },
}

/// Near an endpoint, a function with the same sign as the derivative that
/// stays bounded away from zero there (for example `f'(x)/x` near `x = 0`).
#[derive(Clone, Copy)]
pub struct EndpointGuard<'a> {
    pub width: f64,
    pub same_sign: Enclosure<'a>,
}

#[derive(Clone, Copy)]
pub struct MonotoneConfig<'a> {
    pub budget: usize,
    pub min_width: f64,
    pub left: Option<EndpointGuard<'a>>,
    pub right: Option<EndpointGuard<'a>>,
}

impl Default for MonotoneConfig<'_> {
    fn default() -> Self {
        MonotoneConfig {
            budget: 200_000,
            min_width: 1e-13,
            left: None,
            right: None,
        }
    }
}

/// Proves `f' < 0` on `(a, b)` by subdivision.
///
/// `Ok(true)`: every piece has a negative enclosure. `Ok(false)`: a point
/// with `f' >= 0` was found. `Err`: neither within the budget.
pub fn certify_monotone_negative(f: Enclosure<'_>, a: f64, b: f64) -> Result<bool, MonotoneError> {
    certify_monotone_negative_with(f, a, b, &MonotoneConfig::default())
}

pub fn certify_monotone_negative_with(
    f: Enclosure<'_>,
    a: f64,
    b: f64,
    cfg: &MonotoneConfig<'_>,
) -> Result<bool, MonotoneError> {
    assert!(a < b, "empty interval");
    let choose = |piece: Interval| -> Enclosure<'_> {
        if let Some(g) = cfg.left {
            if piece.hi() <= a + g.width {
                return g.same_sign;
            }
        }
        if let Some(g) = cfg.right {
            if piece.lo() >= b - g.width {
                return g.same_sign;
            }
        }
        f
    };
    let mut stack = vec![Interval::new(a, b)];
    let mut used = 0;
    while let Some(piece) = stack.pop() {
        used += 1;
        if used > cfg.budget {
            return Err(MonotoneError::Inconclusive { lo: piece.lo(), hi: piece.hi() });
        }
        let g = choose(piece);
        if let Some(enc) = g(piece) {
            if enc.hi() < 0.0 {
                continue;
            }
            if enc.lo() >= 0.0 {
                return Ok(false);
            }
        }
        let mid = piece.midpoint();
        if mid > a && mid < b {
            if let Some(v) = choose(Interval::point(mid))(Interval::point(mid)) {
                if v.lo() >= 0.0 {
                    return Ok(false);
                }
            }
        }
        if piece.width() <= cfg.min_width {
            return Err(MonotoneError::Inconclusive { lo: piece.lo(), hi: piece.hi() });
        }
        let (l, r) = piece.bisect();
        stack.push(r);
        stack.push(l);
    }
    Ok(true)
}

/// Certified maximum of a univariate function on `[a, b]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Max1d {
    pub lower: f64,
    pub upper: f64,
    pub argmax: f64,
    pub pieces: usize,
}

/// Interval branch-and-bound in one variable. `derivative`, where it is
/// bounded, tightens enclosures through the mean-value form; `point_value`
/// supplies values where `enclose` has none.
pub fn interval_max_1d(
    enclose: Enclosure<'_>,
    derivative: Option<Enclosure<'_>>,
    point_value: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    tol: f64,
    budget: usize,
) -> Result<Max1d, MonotoneError> {
    let lower_at = |t: f64| enclose(Interval::point(t)).map_or(point_value(t), |e| e.lo());
    let bound = |piece: Interval| -> Option<f64> {
        let natural = enclose(piece)?;
        let c = piece.midpoint();
        let mean_value = derivative
            .and_then(|d| d(piece))
            .zip(enclose(Interval::point(c)))
            .map(|(d, fc)| fc + d * (piece + (-c)));
        Some(match mean_value.and_then(|m| m.intersect(&natural)) {
            Some(m) => m.hi(),
            None => natural.hi(),
        })
    };

    let mut best = (f64::NEG_INFINITY, a);
    for t in [a, b, 0.5 * (a + b)] {
        let v = lower_at(t);
        if v > best.0 {
            best = (v, t);
        }
    }
    let mut heap = BinaryHeap::new();
    let whole = Interval::new(a, b);
    if let Some(u) = bound(whole) {
        heap.push(Piece { upper: u, piece: whole });
    }
    let mut used = 0;
    loop {
        let Some(top) = heap.pop() else {
            return Ok(Max1d { lower: best.0, upper: best.0, argmax: best.1, pieces: used });
        };
        let upper = top.upper.max(best.0);
        if upper - best.0 <= tol {
            return Ok(Max1d { lower: best.0, upper, argmax: best.1, pieces: used });
        }
        used += 1;
        if used > budget {
            return Err(MonotoneError::Inconclusive { lo: top.piece.lo(), hi: top.piece.hi() });
        }
        let (l, r) = top.piece.bisect();
        for half in [l, r] {
            let m = half.midpoint();
            let v = lower_at(m);
            if v > best.0 {
                best = (v, m);
            }
            if let Some(u) = bound(half) {
                if u >= best.0 {
                    heap.push(Piece { upper: u, piece: half });
                }
            }
        }
    }
}

struct Piece {
    upper: f64,
    piece: Interval,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Piece {}

impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.upper
            .total_cmp(&other.upper)
            .then_with(|| other.piece.lo().total_cmp(&self.piece.lo()))
    }
}
