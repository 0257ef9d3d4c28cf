//! Best-first interval branch-and-bound over `D1`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::interval::{Interval, IntervalBox};
use crate::objective::{bounding_box, DomainPoint, ObjectiveId};

use super::newton::multi_start;

/// Environment variable selecting the number of worker threads.
pub const WORKERS_ENV: &str = "HANKEL_CERT_WORKERS";

/// Anything the branch-and-bound can maximize over `D1`.
pub trait BoundedObjective: Sync {
    fn name(&self) -> String;
    /// Enclosure of the image of `b ∩ D1`; `None` when the two do not meet.
    fn enclose(&self, b: &IntervalBox) -> Option<Interval>;
    /// A value certainly not above the true value at a feasible point.
    fn lower_value(&self, p: DomainPoint) -> Option<f64>;
    /// Extra incumbent candidates.
    fn seeds(&self) -> Vec<DomainPoint> {
        Vec::new()
    }
    fn old_bound(&self) -> Option<f64> {
        None
    }
}

impl BoundedObjective for ObjectiveId {
    fn name(&self) -> String {
        self.to_string()
    }

    fn enclose(&self, b: &IntervalBox) -> Option<Interval> {
        self.eval_interval(b).ok()
    }

    fn lower_value(&self, p: DomainPoint) -> Option<f64> {
        self.eval_point_interval(p).ok().map(|v| v.lo())
    }

    fn seeds(&self) -> Vec<DomainPoint> {
        multi_start(*self, 50).into_iter().map(|c| c.point).collect()
    }

    fn old_bound(&self) -> Option<f64> {
        Some(ObjectiveId::old_bound(self))
    }
}

/// Constant function on `D1`, for exercising the search itself.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantObjective(pub f64);

impl BoundedObjective for ConstantObjective {
    fn name(&self) -> String {
        format!("constant({})", self.0)
    }

    fn enclose(&self, b: &IntervalBox) -> Option<Interval> {
        b.intersect(&bounding_box()).map(|_| Interval::point(self.0))
    }

    fn lower_value(&self, _: DomainPoint) -> Option<f64> {
        Some(self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BnbConfig {
    pub tol: f64,
    /// Maximum number of boxes taken from the queue.
    pub budget: u64,
    pub workers: usize,
    /// Use [`BoundedObjective::seeds`] as initial incumbents.
    pub use_seeds: bool,
}

impl Default for BnbConfig {
    fn default() -> Self {
        BnbConfig {
            tol: 1e-6,
            budget: 10_000_000,
            workers: 1,
            use_seeds: true,
        }
    }
}

impl BnbConfig {
    pub fn with_tol(tol: f64) -> Self {
        BnbConfig { tol, ..Self::default() }
    }

    /// Reads the worker count from [`WORKERS_ENV`], defaulting to 1.
    pub fn workers_from_env(mut self) -> Self {
        if let Some(n) = std::env::var(WORKERS_ENV).ok().and_then(|v| v.trim().parse::<usize>().ok()) {
            self.workers = n.max(1);
        }
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertifiedBound {
    pub objective: String,
    pub lower: f64,
    pub upper: f64,
    pub tolerance: f64,
    pub boxes_processed: u64,
    pub witness: DomainPoint,
    pub old_bound: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
struct ImprovesOver {
    old_bound: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
struct Certificate<'a> {
    objective: &'a str,
    upper: f64,
    lower: f64,
    witness: [f64; 2],
    tol: f64,
    boxes: u64,
    improves_over: ImprovesOver,
}

impl CertifiedBound {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn meets_tolerance(&self) -> bool {
        self.width() <= self.tolerance
    }

    pub fn certificate(&self) -> serde_json::Value {
        serde_json::to_value(Certificate {
            objective: &self.objective,
            upper: self.upper,
            lower: self.lower,
            witness: [self.witness.x, self.witness.y],
            tol: self.tolerance,
            boxes: self.boxes_processed,
            improves_over: ImprovesOver { old_bound: self.old_bound },
        })
        .expect("certificate serializes")
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BnbError {
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
    #[error("box budget exhausted after {} boxes (enclosure [{}, {}])", .0.boxes_processed, .0.lower, .0.upper)]
    BudgetExceeded(CertifiedBound),
}

#[derive(Debug, Clone)]
struct Node {
    upper: f64,
    b: IntervalBox,
}

impl PartialEq for Node {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Node {}

impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Node {
    // Max-heap: larger upper bound first, then lexicographically smaller box.
    fn cmp(&self, other: &Self) -> Ordering {
        self.upper
            .total_cmp(&other.upper)
            .then_with(|| other.b.lex_cmp(&self.b))
    }
}

struct Incumbent {
    value: f64,
    witness: DomainPoint,
}

impl Incumbent {
    fn offer(&mut self, value: f64, p: DomainPoint) {
        if value > self.value {
            self.value = value;
            self.witness = p;
        }
    }
}

struct Child {
    node: Option<Node>,
    candidate: Option<(f64, DomainPoint)>,
}

fn expand<O: BoundedObjective + ?Sized>(obj: &O, b: IntervalBox) -> Child {
    let Some(enc) = obj.enclose(&b) else {
        return Child { node: None, candidate: None };
    };
    let (cx, cy) = b.midpoint();
    let p = DomainPoint::project(cx, cy);
    Child {
        node: Some(Node { upper: enc.hi(), b }),
        candidate: obj.lower_value(p).map(|v| (v, p)),
    }
}

/// Certified maximum of `obj` over `D1` with default settings.
pub fn branch_and_bound_max(obj: ObjectiveId, tol: f64) -> Result<CertifiedBound, BnbError> {
    maximize(&obj, &BnbConfig::with_tol(tol))
}

pub fn maximize<O: BoundedObjective + ?Sized>(obj: &O, cfg: &BnbConfig) -> Result<CertifiedBound, BnbError> {
    if cfg.tol.is_nan() || cfg.tol <= 0.0 {
        return Err(BnbError::BadTolerance(cfg.tol));
    }
    let pool = (cfg.workers > 1).then(|| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.workers)
            .build()
            .expect("thread pool")
    });

    let origin = DomainPoint::project(0.0, 0.0);
    let mut inc = Incumbent {
        value: f64::NEG_INFINITY,
        witness: origin,
    };
    if cfg.use_seeds {
        for p in obj.seeds() {
            let p = DomainPoint::project(p.x, p.y);
            if let Some(v) = obj.lower_value(p) {
                inc.offer(v, p);
            }
        }
    }

    let mut heap = BinaryHeap::new();
    let root = expand(obj, bounding_box());
    if let Some((v, p)) = root.candidate {
        inc.offer(v, p);
    }
    heap.extend(root.node);

    let mut boxes = 0u64;
    let batch = cfg.workers.max(1) * 4;
    loop {
        let top_upper = heap.peek().map_or(f64::NEG_INFINITY, |n| n.upper);
        let upper = top_upper.max(inc.value);
        let current = CertifiedBound {
            objective: obj.name(),
            lower: inc.value,
            upper,
            tolerance: cfg.tol,
            boxes_processed: boxes,
            witness: inc.witness,
            old_bound: obj.old_bound(),
        };
        if upper - inc.value <= cfg.tol {
            return Ok(CertifiedBound {
                boxes_processed: boxes.max(1),
                ..current
            });
        }
        if boxes >= cfg.budget {
            return Err(BnbError::BudgetExceeded(current));
        }

        let take = if pool.is_some() { batch } else { 1 };
        let mut work = Vec::with_capacity(take);
        while work.len() < take && boxes < cfg.budget {
            let Some(node) = heap.pop() else { break };
            boxes += 1;
            let (l, r) = node.b.bisect();
            work.push(l);
            work.push(r);
        }
        let children: Vec<Child> = match &pool {
            Some(pool) => pool.install(|| work.into_par_iter().map(|b| expand(obj, b)).collect()),
            None => work.into_iter().map(|b| expand(obj, b)).collect(),
        };
        for c in &children {
            if let Some((v, p)) = c.candidate {
                inc.offer(v, p);
            }
        }
        for c in children {
            if let Some(node) = c.node {
                // A box whose upper bound is below a feasible value cannot
                // hold the maximum.
                if node.upper >= inc.value {
                    heap.push(node);
                }
            }
        }
    }
}
