//! Maxima of the objectives on the three boundary pieces of `D1`.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::interval::Interval;
use crate::objective::{y_max, DomainPoint, Edge, EdgeRestriction, ObjectiveId};

use super::monotone::{certify_monotone_negative_with, interval_max_1d, EndpointGuard, MonotoneConfig};
use super::roots::{isolate_roots, Polynomial, RootInterval, RootSummary};

const SCAN_TOL: f64 = 1e-11;
const SCAN_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ScanMethod {
    ClosedForm,
    RootIsolation,
    CertifiedMonotone,
    IntervalScan,
}

impl fmt::Display for ScanMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScanMethod::ClosedForm => "closed form",
            ScanMethod::RootIsolation => "root isolation",
            ScanMethod::CertifiedMonotone => "certified monotone",
            ScanMethod::IntervalScan => "interval scan",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EdgeMax {
    pub edge: Edge,
    pub value: f64,
    /// Rigorous upper bound for the maximum on the edge.
    pub upper: f64,
    pub parameter: f64,
    pub location: DomainPoint,
    pub method: ScanMethod,
}

/// Roots of a squared stationarity condition and which of them survive
/// the sign condition of the unsquared equation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StationarityRoots {
    pub edge: Edge,
    pub polynomial: String,
    pub roots: Vec<RootSummary>,
    pub kept: Vec<f64>,
    pub discarded: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundaryReport {
    pub objective: String,
    pub edges: Vec<EdgeMax>,
    pub stationarity: Vec<StationarityRoots>,
}

impl BoundaryReport {
    pub fn edge(&self, edge: Edge) -> Option<&EdgeMax> {
        self.edges.iter().find(|e| e.edge == edge)
    }

    pub fn maximum(&self) -> Option<&EdgeMax> {
        self.edges.iter().max_by(|a, b| a.value.total_cmp(&b.value))
    }
}

fn parameter_range(edge: Edge) -> (f64, f64) {
    match edge {
        Edge::Left => (0.0, y_max()),
        _ => (0.0, 1.0),
    }
}

/// Enclosure of a floating approximation of `t` that surely contains `t`.
fn widen(lo: f64, hi: f64) -> Interval {
    Interval::new(lo.next_down(), hi.next_up())
}

fn clamp_to_range(edge: Edge, t: Interval) -> Interval {
    let (a, b) = parameter_range(edge);
    t.intersect(&Interval::new(a, b)).unwrap_or(Interval::point(t.midpoint().clamp(a, b)))
}

/// Best of a finite candidate set, which must contain every local maximum.
fn best_of_candidates(r: &EdgeRestriction, candidates: &[(f64, Interval)], method: ScanMethod) -> EdgeMax {
    let mut best: Option<EdgeMax> = None;
    let mut upper = f64::NEG_INFINITY;
    for &(t, enclosure) in candidates {
        let value = (r.value)(t);
        let hi = (r.value_enclosure)(clamp_to_range(r.edge, enclosure)).map_or(value, |e| e.hi());
        upper = upper.max(hi);
        if best.as_ref().is_none_or(|b| value > b.value) {
            best = Some(EdgeMax {
                edge: r.edge,
                value,
                upper: hi,
                parameter: t,
                location: r.edge.point(t),
                method,
            });
        }
    }
    let mut best = best.expect("at least one candidate");
    best.upper = upper;
    best
}

fn endpoint_candidates(edge: Edge) -> Vec<(f64, Interval)> {
    let (a, b) = parameter_range(edge);
    let b_exact = match edge {
        Edge::Left => 1.0 / 3f64.sqrt(),
        _ => b,
    };
    vec![(a, Interval::point(a)), (b_exact, widen(b_exact, b))]
}

/// Candidates are the endpoints and the given interior stationary points.
fn closed_form(r: &EdgeRestriction, stationary: &[f64]) -> EdgeMax {
    let mut cands = endpoint_candidates(r.edge);
    cands.extend(stationary.iter().map(|&t| (t, widen(t, t))));
    best_of_candidates(r, &cands, ScanMethod::ClosedForm)
}

/// Candidates are the endpoints and the isolated roots accepted by `keep`.
fn by_root_isolation(
    r: &EdgeRestriction,
    p: &Polynomial,
    extra: &[f64],
    keep: impl Fn(&RootInterval) -> bool,
) -> (EdgeMax, StationarityRoots) {
    let zero = BigRational::from_integer(0.into());
    let one = BigRational::one();
    let roots = isolate_roots(p, &zero, &one).expect("stationarity polynomial is square-free");
    let mut cands = endpoint_candidates(r.edge);
    cands.extend(extra.iter().map(|&t| (t, widen(t, t))));
    let (mut kept, mut discarded) = (Vec::new(), Vec::new());
    for root in &roots {
        let t = root.midpoint();
        if keep(root) {
            kept.push(t);
            let lo = root.lo.to_f64().unwrap_or(t);
            let hi = root.hi.to_f64().unwrap_or(t);
            cands.push((t, widen(lo, hi)));
        } else {
            discarded.push(t);
        }
    }
    let report = StationarityRoots {
        edge: r.edge,
        polynomial: p.to_string(),
        roots: roots.iter().map(RootInterval::summary).collect(),
        kept,
        discarded,
    };
    (best_of_candidates(r, &cands, ScanMethod::RootIsolation), report)
}

/// Certified 1-D interval maximization over the whole edge.
pub fn interval_scan(r: &EdgeRestriction) -> EdgeMax {
    let (a, b) = parameter_range(r.edge);
    let value = |t: f64| (r.value)(t.min(b));
    let m = interval_max_1d(
        r.value_enclosure.as_ref(),
        Some(r.derivative_enclosure.as_ref()),
        &value,
        a, b, SCAN_TOL, SCAN_BUDGET)
        .expect("smooth edge function");
    EdgeMax {
        edge: r.edge,
        value: (r.value)(m.argmax),
        upper: m.upper,
        parameter: m.argmax,
        location: r.edge.point(m.argmax),
        method: ScanMethod::IntervalScan,
    }
}

/// If the derivative is certified negative the maximum sits at the start of
/// the edge; otherwise falls back to [`interval_scan`].
fn by_monotonicity(r: &EdgeRestriction, cfg: &MonotoneConfig<'_>) -> EdgeMax {
    let (a, b) = parameter_range(r.edge);
    match certify_monotone_negative_with(r.derivative_enclosure.as_ref(), a, b, cfg) {
        Ok(true) => {
            let mut m = best_of_candidates(r, &[(a, Interval::point(a))], ScanMethod::CertifiedMonotone);
            m.upper = (r.value_enclosure)(Interval::point(a)).map_or(m.value, |e| e.hi());
            m
        }
        _ => interval_scan(r),
    }
}

/// Uses interval scans only; works for any restriction triple.
pub fn scan_restrictions(name: &str, restrictions: &[EdgeRestriction]) -> BoundaryReport {
    BoundaryReport {
        objective: name.to_string(),
        edges: restrictions.iter().map(interval_scan).collect(),
        stationarity: Vec::new(),
    }
}

pub fn boundary_scan(obj: ObjectiveId) -> BoundaryReport {
    match obj {
        ObjectiveId::F1 => scan_f1(),
        ObjectiveId::F2 => scan_f2(),
    }
}

fn scan_f1() -> BoundaryReport {
    let [bottom, left, arc] = ObjectiveId::F1.boundary_restrictions();
    // The unsquared condition (4/sqrt5)(1 - 2x^2)/sqrt(1 - x^2) = -4x^3 needs
    // 1 - 2x^2 < 0.
    let two = BigRational::from_integer(2.into());
    let (b, roots) = by_root_isolation(&bottom, &Polynomial::f1_bottom_stationarity(), &[], |root| {
        &two * &root.lo * &root.lo > BigRational::one()
    });
    let l = closed_form(&left, &[]);
    let a = closed_form(&arc, &[(2.0f64 / 3.0).sqrt()]);
    BoundaryReport {
        objective: ObjectiveId::F1.to_string(),
        edges: vec![b, l, a],
        stationarity: vec![roots],
    }
}

fn scan_f2() -> BoundaryReport {
    let [bottom, left, arc] = ObjectiveId::F2.boundary_restrictions();
    let k = Interval::from_ratio(4, 7).sqrt_clamped().expect("positive");
    let (four_fifths, eight_fifths) = (Interval::from_ratio(4, 5), Interval::from_ratio(8, 5));
    let sqrt_one_minus = |c: f64, t: Interval| (Interval::ONE - Interval::point(c) * t.pow_int(2)).sqrt_clamped().ok();

    // d/dx F2(x, 0) divided by x, and multiplied by sqrt(1 - x^2).
    let bottom_over_x = move |x: Interval| {
        let s = sqrt_one_minus(1.0, x)?;
        let inv = s.recip_positive().ok()?;
        Some(Interval::point(6.0) * x * s - (k + Interval::point(2.0) * x.pow_int(3)) * inv - eight_fifths)
    };
    let bottom_times_s = move |x: Interval| {
        let s = sqrt_one_minus(1.0, x)?;
        Some(
            Interval::point(6.0) * x.pow_int(2) * (Interval::ONE - x.pow_int(2))
                - (k + Interval::point(2.0) * x.pow_int(3)) * x
                - eight_fifths * x * s,
        )
    };
    let bottom_cfg = MonotoneConfig {
        left: Some(EndpointGuard { width: 0.1, same_sign: &bottom_over_x }),
        right: Some(EndpointGuard { width: 0.1, same_sign: &bottom_times_s }),
        ..MonotoneConfig::default()
    };

    // d/dy F2(0, y) divided by y, and multiplied by sqrt(1 - 3y^2).
    let left_over_y = move |y: Interval| {
        let inv = sqrt_one_minus(3.0, y)?.recip_positive().ok()?;
        Some(-(Interval::point(3.0) * k * inv) - Interval::point(6.0) * (four_fifths - y))
    };
    let left_times_s = move |y: Interval| {
        let s = sqrt_one_minus(3.0, y)?;
        Some(-(Interval::point(3.0) * k * y) - Interval::point(6.0) * y * (four_fifths - y) * s)
    };
    let left_cfg = MonotoneConfig {
        left: Some(EndpointGuard { width: 0.05, same_sign: &left_over_y }),
        right: Some(EndpointGuard { width: 0.05, same_sign: &left_times_s }),
        ..MonotoneConfig::default()
    };

    let b = by_monotonicity(&bottom, &bottom_cfg);
    let l = by_monotonicity(&left, &left_cfg);
    // (2/sqrt3) sqrt(1 - x^2) = 2 - 4x^2 needs 1 - 2x^2 >= 0; x = 0 is the
    // factor removed before squaring.
    let two = BigRational::from_integer(2.into());
    let (a, roots) = by_root_isolation(&arc, &Polynomial::f2_arc_stationarity(), &[0.0], |root| {
        BigRational::one() - &two * &root.lo * &root.lo >= BigRational::from_integer(0.into())
    });
    BoundaryReport {
        objective: ObjectiveId::F2.to_string(),
        edges: vec![b, l, a],
        stationarity: vec![roots],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f1_edges() {
        let r = boundary_scan(ObjectiveId::F1);
        let b = r.edge(Edge::Bottom).unwrap();
        assert!((b.value - 1.36143562360713).abs() < 1e-12);
        assert!((b.parameter - 0.918107379133660).abs() < 1e-11);
        assert!(b.upper >= b.value && b.upper - b.value < 1e-9);
        assert_eq!(r.stationarity[0].kept.len(), 1);
        assert_eq!(r.stationarity[0].discarded.len(), 1);
        for e in [Edge::Left, Edge::Arc] {
            let m = r.edge(e).unwrap();
            assert!((m.value - 4.0 / 3.0).abs() < 1e-12, "{m:?}");
            assert!(m.location.x.abs() < 1e-12 && (m.location.y - 1.0 / 3f64.sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn f2_edges() {
        let r = boundary_scan(ObjectiveId::F2);
        let corner = 2.0 / 7f64.sqrt() + 0.8;
        for e in [Edge::Bottom, Edge::Left] {
            let m = r.edge(e).unwrap();
            assert_eq!(m.method, ScanMethod::CertifiedMonotone);
            assert!((m.value - corner).abs() < 1e-15);
            assert_eq!((m.location.x, m.location.y), (0.0, 0.0));
        }
        let a = r.edge(Edge::Arc).unwrap();
        assert!((a.value - 7.0 / 16.0).abs() < 1e-15);
        assert_eq!(a.parameter, 0.5);
        assert_eq!(r.stationarity[0].kept, vec![0.5]);
    }

    #[test]
    fn interval_scan_agrees_with_analysis() {
        for obj in ObjectiveId::ALL {
            let fast = boundary_scan(obj);
            let slow = scan_restrictions(&obj.to_string(), &obj.boundary_restrictions());
            for (f, s) in fast.edges.iter().zip(&slow.edges) {
                assert!((f.value - s.value).abs() < 1e-9, "{obj} {f:?} {s:?}");
                assert!(s.upper >= f.value - 1e-15);
            }
        }
    }

    #[test]
    fn constant_restrictions() {
        let edges: Vec<_> = Edge::ALL.iter().map(|&e| EdgeRestriction::constant(e, 0.25)).collect();
        let r = scan_restrictions("constant", &edges);
        assert!(r.edges.iter().all(|e| e.value == 0.25 && e.upper == 0.25));
    }
}
