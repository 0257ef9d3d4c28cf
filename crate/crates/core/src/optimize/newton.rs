//! Damped Newton iteration on the gradient system, and multi-start search
//! for interior critical points.

use serde::Serialize;
use thiserror::Error;

use crate::objective::{DomainPoint, ObjectiveId};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NewtonConfig {
    pub max_iterations: usize,
    pub max_halvings: usize,
    /// Convergence threshold on the Euclidean gradient norm.
    pub residual: f64,
}

impl Default for NewtonConfig {
    fn default() -> Self {
        NewtonConfig {
            max_iterations: 200,
            max_halvings: 50,
            residual: 1e-10,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CriticalPoint {
    pub point: DomainPoint,
    pub value: f64,
    pub gradient_norm: f64,
    pub converged: bool,
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NewtonError {
    #[error("seed ({x}, {y}) is not strictly inside D1")]
    NotInterior { x: f64, y: f64 },
    #[error("Newton iteration did not converge (gradient norm {})", .0.gradient_norm)]
    DidNotConverge(CriticalPoint),
    #[error("Newton iterates left D1 near ({}, {})", .0.point.x, .0.point.y)]
    LeftDomain(CriticalPoint),
}

/// Second-order type of a critical point, from the Hessian eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CriticalKind {
    Maximum,
    Minimum,
    Saddle,
    Degenerate,
}

fn norm(g: (f64, f64)) -> f64 {
    g.0.hypot(g.1)
}

fn snapshot(obj: ObjectiveId, p: DomainPoint, g: (f64, f64), converged: bool, iterations: usize) -> CriticalPoint {
    CriticalPoint {
        point: p,
        value: obj.eval(p).unwrap_or(f64::NAN),
        gradient_norm: norm(g),
        converged,
        iterations,
    }
}

/// Refines `seed` to a zero of the gradient with default settings.
pub fn refine_critical_point(obj: ObjectiveId, seed: DomainPoint) -> Result<CriticalPoint, NewtonError> {
    refine_with(obj, seed, &NewtonConfig::default())
}

pub fn refine_with(obj: ObjectiveId, seed: DomainPoint, cfg: &NewtonConfig) -> Result<CriticalPoint, NewtonError> {
    if !seed.is_interior() {
        return Err(NewtonError::NotInterior { x: seed.x, y: seed.y });
    }
    let mut p = seed;
    let mut g = obj.grad(p).expect("interior point");
    for it in 0..cfg.max_iterations {
        if norm(g) < cfg.residual {
            return Ok(snapshot(obj, p, g, true, it));
        }
        let [[a, b], [_, d]] = obj.hessian(p).expect("interior point");
        let det = a * d - b * b;
        if det == 0.0 || !det.is_finite() {
            return Err(NewtonError::DidNotConverge(snapshot(obj, p, g, false, it)));
        }
        let dx = -(d * g.0 - b * g.1) / det;
        let dy = -(a * g.1 - b * g.0) / det;

        let mut step = 1.0;
        let mut accepted = None;
        let mut stayed_inside = false;
        for _ in 0..=cfg.max_halvings {
            let q = DomainPoint { x: p.x + step * dx, y: p.y + step * dy };
            if q.is_interior() {
                stayed_inside = true;
                if let Ok(gq) = obj.grad(q) {
                    if norm(gq) < norm(g) {
                        accepted = Some((q, gq));
                        break;
                    }
                }
            }
            step *= 0.5;
        }
        match accepted {
            Some((q, gq)) => {
                p = q;
                g = gq;
            }
            None if !stayed_inside => {
                return Err(NewtonError::LeftDomain(snapshot(obj, p, g, false, it)));
            }
            None => {
                // No decrease is possible at this precision.
                let converged = norm(g) < cfg.residual;
                let cp = snapshot(obj, p, g, converged, it);
                return if converged { Ok(cp) } else { Err(NewtonError::DidNotConverge(cp)) };
            }
        }
    }
    let converged = norm(g) < cfg.residual;
    let cp = snapshot(obj, p, g, converged, cfg.max_iterations);
    if converged {
        Ok(cp)
    } else {
        Err(NewtonError::DidNotConverge(cp))
    }
}

pub fn classify(obj: ObjectiveId, cp: &CriticalPoint) -> CriticalKind {
    let Ok([[a, b], [_, d]]) = obj.hessian(cp.point) else {
        return CriticalKind::Degenerate;
    };
    let det = a * d - b * b;
    let scale = (a.abs() + d.abs() + b.abs()).max(1.0);
    if det.abs() <= 1e-12 * scale * scale {
        CriticalKind::Degenerate
    } else if det < 0.0 {
        CriticalKind::Saddle
    } else if a < 0.0 {
        CriticalKind::Maximum
    } else {
        CriticalKind::Minimum
    }
}

/// Points closer than this to an edge of `D1` belong to the boundary analysis.
pub const INTERIOR_MARGIN: f64 = 1e-6;

fn well_inside(p: DomainPoint) -> bool {
    p.x > INTERIOR_MARGIN && p.y > INTERIOR_MARGIN && p.radicand() > INTERIOR_MARGIN
}

/// Newton from an `n x n` grid of interior seeds, keeping distinct converged
/// points away from the edges, sorted by `x`. This is numerical evidence,
/// not a uniqueness proof.
pub fn multi_start(obj: ObjectiveId, n: usize) -> Vec<CriticalPoint> {
    let mut found: Vec<CriticalPoint> = Vec::new();
    for i in 0..n {
        let x = (i as f64 + 0.5) / n as f64;
        let cap = ((1.0 - x * x) / 3.0).sqrt();
        for j in 0..n {
            let y = (j as f64 + 0.5) / n as f64 * cap;
            let seed = DomainPoint { x, y };
            let Ok(cp) = refine_critical_point(obj, seed) else {
                continue;
            };
            if !well_inside(cp.point) {
                continue;
            }
            let duplicate = found
                .iter()
                .any(|f| (f.point.x - cp.point.x).hypot(f.point.y - cp.point.y) < 1e-7);
            if !duplicate {
                found.push(cp);
            }
        }
    }
    found.sort_by(|a, b| a.point.x.total_cmp(&b.point.x).then(a.point.y.total_cmp(&b.point.y)));
    found
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f1_saddle() {
        let cp = refine_critical_point(ObjectiveId::F1, DomainPoint { x: 0.6, y: 0.4 }).unwrap();
        assert!(cp.converged && cp.gradient_norm < 1e-10);
        assert!((cp.point.x - (11.0f64 / 30.0).sqrt()).abs() < 1e-9);
        assert!((cp.point.y - (281.0f64 / 1800.0).sqrt()).abs() < 1e-9);
        assert!((cp.value - 1079.0 / 900.0).abs() < 1e-9);
        assert_eq!(classify(ObjectiveId::F1, &cp), CriticalKind::Saddle);
    }

    #[test]
    fn f2_points() {
        let top = refine_critical_point(ObjectiveId::F2, DomainPoint { x: 0.58, y: 0.21 }).unwrap();
        assert!((top.point.x - 0.583236718540266).abs() < 1e-9);
        assert!((top.point.y - 0.206438447503972).abs() < 1e-9);
        assert!((top.value - 1.678710640966218).abs() < 1e-12);
        assert_eq!(classify(ObjectiveId::F2, &top), CriticalKind::Maximum);
        let low = refine_critical_point(ObjectiveId::F2, DomainPoint { x: 0.013, y: 0.0075 }).unwrap();
        assert!((low.point.x - 0.0131374410295951).abs() < 1e-9);
        assert!((low.value - 1.55592631003211).abs() < 1e-10);
        assert_eq!(classify(ObjectiveId::F2, &low), CriticalKind::Saddle);
    }

    #[test]
    fn multi_start_counts() {
        let f1 = multi_start(ObjectiveId::F1, 50);
        assert_eq!(f1.len(), 1);
        let f2 = multi_start(ObjectiveId::F2, 50);
        assert_eq!(f2.len(), 2);
        assert!(f2[0].point.x < 0.02 && f2[1].point.x > 0.5);
    }

    #[test]
    fn boundary_seed_is_rejected() {
        assert!(matches!(
            refine_critical_point(ObjectiveId::F1, DomainPoint { x: 0.0, y: 0.2 }),
            Err(NewtonError::NotInterior { .. })
        ));
    }
}
