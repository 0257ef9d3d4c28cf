//! The two majorants of `|H_2(2)|` and `|H_3(1)|` as functions of
//! `x = |omega_{1,1}|`, `y = |omega_{1,3}|` on
//! `D1 = {0 <= x <= 1, 0 <= y <= sqrt((1 - x^2) / 3)}`.
//!
//! Both have the shape `A(x, y) * s + P(x, y)` with `s = sqrt(1 - x^2 - 3 y^2)`
//! and polynomial `A`, `P`:
//!
//! * `F1 = (4/sqrt5) x s + x^4 + 4 y^2`
//! * `F2 = (2/sqrt7 + 4xy + 2x^3) s + 4/5 - 4/5 x^2 - 12/5 y^2 + 3 x^2 y^2 + 2 y^3`
//!
//! Point values, gradients and Hessians are derived from that shape; the
//! interval extension intersects the natural extension with a mean-value
//! form wherever `s` stays away from zero.

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use serde::Serialize;
use thiserror::Error;

use crate::interval::{Interval, IntervalBox};

/// Radicands down to this value count as on the curved edge of `D1`.
pub const DOMAIN_TOLERANCE: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ObjectiveError {
    #[error("point ({x}, {y}) lies outside D1")]
    OutsideDomain { x: f64, y: f64 },
    #[error("gradient is singular on the curved edge at ({x}, {y})")]
    BoundarySingularity { x: f64, y: f64 },
    #[error("box does not meet D1")]
    EmptyDomain,
    #[error("unknown objective `{0}` (expected f1 or f2)")]
    Unknown(String),
}

/// Upper end of the `y` range of `D1`, rounded up.
pub fn y_max() -> f64 {
    Interval::from_ratio(1, 3)
        .sqrt_clamped()
        .expect("positive")
        .hi()
}

/// The bounding rectangle `[0, 1] x [0, 1/sqrt3]`.
pub fn bounding_box() -> IntervalBox {
    IntervalBox::new(Interval::new(0.0, 1.0), Interval::new(0.0, y_max()))
}

/// A point `(x, y)` of `D1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DomainPoint {
    pub x: f64,
    pub y: f64,
}

impl DomainPoint {
    /// Checks membership in `D1` (with [`DOMAIN_TOLERANCE`] on the curved edge).
    pub fn new(x: f64, y: f64) -> Result<Self, ObjectiveError> {
        let p = DomainPoint { x, y };
        if !(0.0..=1.0).contains(&x) || y < 0.0 || p.radicand().is_nan() || p.radicand() < -DOMAIN_TOLERANCE {
            return Err(ObjectiveError::OutsideDomain { x, y });
        }
        Ok(p)
    }

    /// `1 - x^2 - 3 y^2`.
    pub fn radicand(&self) -> f64 {
        1.0 - self.x * self.x - 3.0 * self.y * self.y
    }

    /// Strictly inside `D1`.
    pub fn is_interior(&self) -> bool {
        self.x > 0.0 && self.x < 1.0 && self.y > 0.0 && self.radicand() > 0.0
    }

    /// Nearest point of `D1` in the sense used for branch-and-bound
    /// incumbents: clamp `x` to `[0, 1]`, clamp `y` below the curved edge.
    /// The result satisfies `1 - x^2 - 3y^2 >= 0` in exact arithmetic.
    pub fn project(x: f64, y: f64) -> Self {
        let x = x.clamp(0.0, 1.0);
        let mut y = y.max(0.0);
        let cap = ((1.0 - x * x) / 3.0).max(0.0).sqrt();
        if y > cap {
            y = cap;
        }
        while y > 0.0 && exact_radicand(x, y).lo() < 0.0 {
            y = y.next_down();
        }
        DomainPoint { x, y: y.max(0.0) }
    }

    /// Membership decided with outward-rounded arithmetic.
    pub fn is_certainly_feasible(&self) -> bool {
        (0.0..=1.0).contains(&self.x) && self.y >= 0.0 && exact_radicand(self.x, self.y).lo() >= 0.0
    }
}

fn exact_radicand(x: f64, y: f64) -> Interval {
    radicand_interval(Interval::point(x), Interval::point(y))
}

fn radicand_interval(x: Interval, y: Interval) -> Interval {
    Interval::ONE - x.pow_int(2) - Interval::point(3.0) * y.pow_int(2)
}

/// A real constant with its rigorous enclosure.
#[derive(Debug, Clone, Copy)]
struct Constant {
    value: f64,
    enclosure: Interval,
}

impl Constant {
    fn ratio(num: i64, den: i64) -> Self {
        Constant {
            value: num as f64 / den as f64,
            enclosure: Interval::from_ratio(num, den),
        }
    }

    /// `sqrt(num / den)`.
    fn sqrt_ratio(num: i64, den: i64) -> Self {
        Constant {
            value: (num as f64 / den as f64).sqrt(),
            enclosure: Interval::from_ratio(num, den)
                .sqrt_clamped()
                .expect("nonnegative constant"),
        }
    }

    fn times(self, k: u32) -> Self {
        Constant {
            value: self.value * k as f64,
            enclosure: self.enclosure * k as f64,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Term {
    coeff: Constant,
    px: u32,
    py: u32,
}

/// Polynomial in `x, y` with constant coefficients.
#[derive(Debug, Clone, Default)]
struct BiPoly {
    terms: Vec<Term>,
}

impl BiPoly {
    fn new(terms: &[(Constant, u32, u32)]) -> Self {
        BiPoly {
            terms: terms
                .iter()
                .map(|&(coeff, px, py)| Term { coeff, px, py })
                .collect(),
        }
    }

    fn eval(&self, x: f64, y: f64) -> f64 {
        self.terms
            .iter()
            .map(|t| t.coeff.value * x.powi(t.px as i32) * y.powi(t.py as i32))
            .sum()
    }

    fn eval_interval(&self, x: Interval, y: Interval) -> Interval {
        self.terms.iter().fold(Interval::ZERO, |acc, t| {
            acc + t.coeff.enclosure * x.pow_int(t.px) * y.pow_int(t.py)
        })
    }

    fn dx(&self) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .filter(|t| t.px > 0)
                .map(|t| Term {
                    coeff: t.coeff.times(t.px),
                    px: t.px - 1,
                    py: t.py,
                })
                .collect(),
        }
    }

    fn dy(&self) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .filter(|t| t.py > 0)
                .map(|t| Term {
                    coeff: t.coeff.times(t.py),
                    px: t.px,
                    py: t.py - 1,
                })
                .collect(),
        }
    }
}

/// `A(x, y) sqrt(1 - x^2 - 3 y^2) + P(x, y)` with cached partial derivatives.
#[derive(Debug, Clone)]
struct RadicalForm {
    a: BiPoly,
    p: BiPoly,
    a_x: BiPoly,
    a_y: BiPoly,
    a_xx: BiPoly,
    a_xy: BiPoly,
    a_yy: BiPoly,
    p_x: BiPoly,
    p_y: BiPoly,
    p_xx: BiPoly,
    p_xy: BiPoly,
    p_yy: BiPoly,
}

impl RadicalForm {
    fn new(a: BiPoly, p: BiPoly) -> Self {
        let (a_x, a_y, p_x, p_y) = (a.dx(), a.dy(), p.dx(), p.dy());
        RadicalForm {
            a_xx: a_x.dx(),
            a_xy: a_x.dy(),
            a_yy: a_y.dy(),
            p_xx: p_x.dx(),
            p_xy: p_x.dy(),
            p_yy: p_y.dy(),
            a,
            p,
            a_x,
            a_y,
            p_x,
            p_y,
        }
    }

    fn value(&self, x: f64, y: f64, s: f64) -> f64 {
        self.a.eval(x, y) * s + self.p.eval(x, y)
    }

    fn gradient(&self, x: f64, y: f64, s: f64) -> (f64, f64) {
        let a = self.a.eval(x, y);
        let gx = self.a_x.eval(x, y) * s - a * x / s + self.p_x.eval(x, y);
        let gy = self.a_y.eval(x, y) * s - 3.0 * a * y / s + self.p_y.eval(x, y);
        (gx, gy)
    }

    fn hessian(&self, x: f64, y: f64, s: f64) -> [[f64; 2]; 2] {
        let a = self.a.eval(x, y);
        let (a_x, a_y) = (self.a_x.eval(x, y), self.a_y.eval(x, y));
        let s3 = s * s * s;
        let s_x = -x / s;
        let s_y = -3.0 * y / s;
        let s_xx = -(s * s + x * x) / s3;
        let s_xy = -3.0 * x * y / s3;
        let s_yy = -(3.0 * s * s + 9.0 * y * y) / s3;
        let h_xx = self.a_xx.eval(x, y) * s + 2.0 * a_x * s_x + a * s_xx + self.p_xx.eval(x, y);
        let h_xy = self.a_xy.eval(x, y) * s + a_x * s_y + a_y * s_x + a * s_xy + self.p_xy.eval(x, y);
        let h_yy = self.a_yy.eval(x, y) * s + 2.0 * a_y * s_y + a * s_yy + self.p_yy.eval(x, y);
        [[h_xx, h_xy], [h_xy, h_yy]]
    }

    /// Natural extension with the radical clamped to the feasible part.
    fn natural(&self, x: Interval, y: Interval, s: Interval) -> Interval {
        self.a.eval_interval(x, y) * s + self.p.eval_interval(x, y)
    }

    fn gradient_interval(&self, x: Interval, y: Interval, s: Interval, inv_s: Interval) -> (Interval, Interval) {
        let a = self.a.eval_interval(x, y);
        let gx = self.a_x.eval_interval(x, y) * s - a * x * inv_s + self.p_x.eval_interval(x, y);
        let gy = self.a_y.eval_interval(x, y) * s - Interval::point(3.0) * a * y * inv_s
            + self.p_y.eval_interval(x, y);
        (gx, gy)
    }
}

/// Which majorant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ObjectiveId {
    /// Majorant of `|H_2(2)|`.
    F1,
    /// Majorant of `|H_3(1)|`.
    F2,
}

impl fmt::Display for ObjectiveId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ObjectiveId::F1 => "F1",
            ObjectiveId::F2 => "F2",
        })
    }
}

impl FromStr for ObjectiveId {
    type Err = ObjectiveError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "f1" => Ok(ObjectiveId::F1),
            "f2" => Ok(ObjectiveId::F2),
            _ => Err(ObjectiveError::Unknown(s.to_string())),
        }
    }
}

fn f1_form() -> &'static RadicalForm {
    static FORM: OnceLock<RadicalForm> = OnceLock::new();
    FORM.get_or_init(|| {
        let a = BiPoly::new(&[(Constant::sqrt_ratio(16, 5), 1, 0)]);
        let p = BiPoly::new(&[(Constant::ratio(1, 1), 4, 0), (Constant::ratio(4, 1), 0, 2)]);
        RadicalForm::new(a, p)
    })
}

fn f2_form() -> &'static RadicalForm {
    static FORM: OnceLock<RadicalForm> = OnceLock::new();
    FORM.get_or_init(|| {
        let a = BiPoly::new(&[
            (Constant::sqrt_ratio(4, 7), 0, 0),
            (Constant::ratio(4, 1), 1, 1),
            (Constant::ratio(2, 1), 3, 0),
        ]);
        let p = BiPoly::new(&[
            (Constant::ratio(4, 5), 0, 0),
            (Constant::ratio(-4, 5), 2, 0),
            (Constant::ratio(-12, 5), 0, 2),
            (Constant::ratio(3, 1), 2, 2),
            (Constant::ratio(2, 1), 0, 3),
        ]);
        RadicalForm::new(a, p)
    })
}

impl ObjectiveId {
    pub const ALL: [ObjectiveId; 2] = [ObjectiveId::F1, ObjectiveId::F2];

    fn form(&self) -> &'static RadicalForm {
        match self {
            ObjectiveId::F1 => f1_form(),
            ObjectiveId::F2 => f2_form(),
        }
    }

    /// Value at a point of `D1`; on the curved edge the radical is 0.
    pub fn eval(&self, p: DomainPoint) -> Result<f64, ObjectiveError> {
        let p = DomainPoint::new(p.x, p.y)?;
        let s = p.radicand().max(0.0).sqrt();
        Ok(self.form().value(p.x, p.y, s))
    }

    /// Analytic gradient; needs `1 - x^2 - 3y^2 > 0`.
    pub fn grad(&self, p: DomainPoint) -> Result<(f64, f64), ObjectiveError> {
        let s = self.radical_for_derivatives(p)?;
        Ok(self.form().gradient(p.x, p.y, s))
    }

    /// Analytic Hessian; needs `1 - x^2 - 3y^2 > 0`.
    pub fn hessian(&self, p: DomainPoint) -> Result<[[f64; 2]; 2], ObjectiveError> {
        let s = self.radical_for_derivatives(p)?;
        Ok(self.form().hessian(p.x, p.y, s))
    }

    fn radical_for_derivatives(&self, p: DomainPoint) -> Result<f64, ObjectiveError> {
        let p = DomainPoint::new(p.x, p.y)?;
        let r = p.radicand();
        if r <= 0.0 {
            return Err(ObjectiveError::BoundarySingularity { x: p.x, y: p.y });
        }
        Ok(r.sqrt())
    }

    /// Rigorous enclosure of the value at a single feasible point.
    pub fn eval_point_interval(&self, p: DomainPoint) -> Result<Interval, ObjectiveError> {
        self.eval_interval(&IntervalBox::point(p.x, p.y))
    }

    /// Interval enclosure of `{F(p) : p in b ∩ D1}`.
    pub fn eval_interval(&self, b: &IntervalBox) -> Result<Interval, ObjectiveError> {
        let b = b
            .intersect(&bounding_box())
            .ok_or(ObjectiveError::EmptyDomain)?;
        let radicand = radicand_interval(b.x, b.y);
        let s = radicand
            .sqrt_clamped()
            .map_err(|_| ObjectiveError::EmptyDomain)?;
        let form = self.form();
        let natural = form.natural(b.x, b.y, s);
        if radicand.lo() <= 0.0 || b.max_width() == 0.0 {
            return Ok(natural);
        }
        // Mean-value form around the box midpoint; valid because the whole
        // box has a positive radicand.
        let inv_s = s.recip_positive().expect("positive radicand");
        let (gx, gy) = form.gradient_interval(b.x, b.y, s, inv_s);
        let (cx, cy) = b.midpoint();
        let (icx, icy) = (Interval::point(cx), Interval::point(cy));
        let sc = radicand_interval(icx, icy)
            .sqrt_clamped()
            .expect("midpoint is inside the box");
        let centre = form.natural(icx, icy, sc);
        let mean_value = centre + gx * (b.x - icx) + gy * (b.y - icy);
        Ok(natural.intersect(&mean_value).unwrap_or(natural))
    }

    /// Restrictions to the edges `y = 0`, `x = 0` and the curved edge.
    pub fn boundary_restrictions(&self) -> [EdgeRestriction; 3] {
        match self {
            ObjectiveId::F1 => f1_edges(),
            ObjectiveId::F2 => f2_edges(),
        }
    }

    /// The earlier published bound this objective improves on.
    pub fn old_bound(&self) -> f64 {
        let r = crate::hankel::ReferenceBounds::published();
        match self {
            ObjectiveId::F1 => r.h2_old,
            ObjectiveId::F2 => r.h3_old,
        }
    }
}

pub fn eval_f1(p: DomainPoint) -> Result<f64, ObjectiveError> {
    ObjectiveId::F1.eval(p)
}

pub fn eval_f2(p: DomainPoint) -> Result<f64, ObjectiveError> {
    ObjectiveId::F2.eval(p)
}

pub fn grad(obj: ObjectiveId, p: DomainPoint) -> Result<(f64, f64), ObjectiveError> {
    obj.grad(p)
}

pub fn eval_interval(obj: ObjectiveId, b: &IntervalBox) -> Result<Interval, ObjectiveError> {
    obj.eval_interval(b)
}

pub fn boundary_restrictions(obj: ObjectiveId) -> [EdgeRestriction; 3] {
    obj.boundary_restrictions()
}

/// One of the three pieces of the boundary of `D1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Edge {
    /// `y = 0`, parametrized by `x in [0, 1]`.
    Bottom,
    /// `x = 0`, parametrized by `y in [0, 1/sqrt3]`.
    Left,
    /// `y = sqrt((1 - x^2)/3)`, parametrized by `x in [0, 1]`.
    Arc,
}

impl Edge {
    pub const ALL: [Edge; 3] = [Edge::Bottom, Edge::Left, Edge::Arc];

    pub fn label(&self) -> &'static str {
        match self {
            Edge::Bottom => "y=0",
            Edge::Left => "x=0",
            Edge::Arc => "arc",
        }
    }

    /// Parameter range.
    pub fn range(&self) -> (f64, f64) {
        match self {
            Edge::Left => (0.0, 1.0 / 3f64.sqrt()),
            _ => (0.0, 1.0),
        }
    }

    /// Maps the parameter to a point of `D1`.
    pub fn point(&self, t: f64) -> DomainPoint {
        match self {
            Edge::Bottom => DomainPoint::project(t, 0.0),
            Edge::Left => DomainPoint::project(0.0, t),
            Edge::Arc => DomainPoint::project(t, ((1.0 - t * t) / 3.0).max(0.0).sqrt()),
        }
    }
}

pub type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
pub type IntervalFn = Arc<dyn Fn(Interval) -> Option<Interval> + Send + Sync>;

/// Closed-form restriction of an objective to one boundary piece.
#[derive(Clone)]
pub struct EdgeRestriction {
    pub edge: Edge,
    pub value: RealFn,
    pub derivative: RealFn,
    /// Enclosure of the value over a parameter interval; `None` outside
    /// the parameter range.
    pub value_enclosure: IntervalFn,
    /// Enclosure of the derivative; `None` where it is unbounded.
    pub derivative_enclosure: IntervalFn,
}

impl fmt::Debug for EdgeRestriction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EdgeRestriction").field("edge", &self.edge).finish_non_exhaustive()
    }
}

impl EdgeRestriction {
    /// A restriction that is identically `c` (for exercising the scanners).
    pub fn constant(edge: Edge, c: f64) -> Self {
        EdgeRestriction {
            edge,
            value: Arc::new(move |_| c),
            derivative: Arc::new(|_| 0.0),
            value_enclosure: Arc::new(move |_| Some(Interval::point(c))),
            derivative_enclosure: Arc::new(|_| Some(Interval::ZERO)),
        }
    }
}

fn sqrt_one_minus(k: f64, t: f64) -> f64 {
    (1.0 - k * t * t).max(0.0).sqrt()
}

fn sqrt_one_minus_interval(k: f64, t: Interval) -> Option<Interval> {
    (Interval::ONE - Interval::point(k) * t.pow_int(2)).sqrt_clamped().ok()
}

fn f1_edges() -> [EdgeRestriction; 3] {
    let c = Constant::sqrt_ratio(16, 5);
    let bottom = EdgeRestriction {
        edge: Edge::Bottom,
        value: Arc::new(move |x| c.value * x * sqrt_one_minus(1.0, x) + x.powi(4)),
        derivative: Arc::new(move |x| {
            c.value * (1.0 - 2.0 * x * x) / sqrt_one_minus(1.0, x) + 4.0 * x.powi(3)
        }),
        value_enclosure: Arc::new(move |x| {
            Some(c.enclosure * x * sqrt_one_minus_interval(1.0, x)? + x.pow_int(4))
        }),
        derivative_enclosure: Arc::new(move |x| {
            let inv = sqrt_one_minus_interval(1.0, x)?.recip_positive().ok()?;
            let num = Interval::ONE - Interval::point(2.0) * x.pow_int(2);
            Some(c.enclosure * num * inv + Interval::point(4.0) * x.pow_int(3))
        }),
    };
    let left = EdgeRestriction {
        edge: Edge::Left,
        value: Arc::new(|y| 4.0 * y * y),
        derivative: Arc::new(|y| 8.0 * y),
        value_enclosure: Arc::new(|y| Some(Interval::point(4.0) * y.pow_int(2))),
        derivative_enclosure: Arc::new(|y| Some(y * 8.0)),
    };
    let arc = EdgeRestriction {
        edge: Edge::Arc,
        value: Arc::new(|x| (3.0 * x.powi(4) - 4.0 * x * x + 4.0) / 3.0),
        derivative: Arc::new(|x| 4.0 * x.powi(3) - 8.0 * x / 3.0),
        value_enclosure: Arc::new(|x| {
            Some(x.pow_int(4) - Interval::from_ratio(4, 3) * x.pow_int(2) + Interval::from_ratio(4, 3))
        }),
        derivative_enclosure: Arc::new(|x| {
            Some(Interval::point(4.0) * x.pow_int(3) - Interval::from_ratio(8, 3) * x)
        }),
    };
    [bottom, left, arc]
}

fn f2_edges() -> [EdgeRestriction; 3] {
    let k = Constant::sqrt_ratio(4, 7);
    let m = Constant::sqrt_ratio(4, 27);
    let three_m = Constant::sqrt_ratio(4, 3);
    let bottom = EdgeRestriction {
        edge: Edge::Bottom,
        value: Arc::new(move |x| {
            (k.value + 2.0 * x.powi(3)) * sqrt_one_minus(1.0, x) + 0.8 - 0.8 * x * x
        }),
        derivative: Arc::new(move |x| {
            let s = sqrt_one_minus(1.0, x);
            6.0 * x * x * s - (k.value + 2.0 * x.powi(3)) * x / s - 1.6 * x
        }),
        value_enclosure: Arc::new(move |x| {
            let s = sqrt_one_minus_interval(1.0, x)?;
            Some(
                (k.enclosure + Interval::point(2.0) * x.pow_int(3)) * s + Interval::from_ratio(4, 5)
                    - Interval::from_ratio(4, 5) * x.pow_int(2),
            )
        }),
        derivative_enclosure: Arc::new(move |x| {
            let s = sqrt_one_minus_interval(1.0, x)?;
            let inv = s.recip_positive().ok()?;
            Some(
                Interval::point(6.0) * x.pow_int(2) * s
                    - (k.enclosure + Interval::point(2.0) * x.pow_int(3)) * x * inv
                    - Interval::from_ratio(8, 5) * x,
            )
        }),
    };
    let left = EdgeRestriction {
        edge: Edge::Left,
        value: Arc::new(move |y| {
            k.value * sqrt_one_minus(3.0, y) + 0.8 - 2.4 * y * y + 2.0 * y.powi(3)
        }),
        derivative: Arc::new(move |y| {
            -3.0 * k.value * y / sqrt_one_minus(3.0, y) - 6.0 * y * (0.8 - y)
        }),
        value_enclosure: Arc::new(move |y| {
            let s = sqrt_one_minus_interval(3.0, y)?;
            Some(
                k.enclosure * s + Interval::from_ratio(4, 5) - Interval::from_ratio(12, 5) * y.pow_int(2)
                    + Interval::point(2.0) * y.pow_int(3),
            )
        }),
        derivative_enclosure: Arc::new(move |y| {
            let inv = sqrt_one_minus_interval(3.0, y)?.recip_positive().ok()?;
            Some(
                -(Interval::point(3.0) * k.enclosure * y * inv)
                    - Interval::point(6.0) * y * (Interval::from_ratio(4, 5) - y),
            )
        }),
    };
    let arc = EdgeRestriction {
        edge: Edge::Arc,
        value: Arc::new(move |x| {
            let u = 1.0 - x * x;
            m.value * u * sqrt_one_minus(1.0, x) + x * x * u
        }),
        derivative: Arc::new(move |x| {
            -three_m.value * x * sqrt_one_minus(1.0, x) + 2.0 * x - 4.0 * x.powi(3)
        }),
        value_enclosure: Arc::new(move |x| {
            let u = Interval::ONE - x.pow_int(2);
            let s = sqrt_one_minus_interval(1.0, x)?;
            Some(m.enclosure * u * s + x.pow_int(2) * u)
        }),
        derivative_enclosure: Arc::new(move |x| {
            let s = sqrt_one_minus_interval(1.0, x)?;
            Some(-(three_m.enclosure * x * s) + x * 2.0 - Interval::point(4.0) * x.pow_int(3))
        }),
    };
    [bottom, left, arc]
}
