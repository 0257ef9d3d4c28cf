//! The reproduction report: identity checks, certified bounds, critical
//! points, boundary analysis, root isolation and improvement ratios.

use clap::ValueEnum;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::functions::TestFunction;
use crate::objective::ObjectiveId;
use crate::optimize::boundary::{boundary_scan, BoundaryReport};
use crate::optimize::newton::{classify, multi_start};
use crate::optimize::roots::{isolate_roots, Polynomial};
use crate::optimize::{maximize, BnbConfig, BnbError, CertifiedBound};
use crate::scalar::ExactComplex;

use super::format::{Row, Section};
use super::verify::{verify, OmegaOverrides, DEFAULT_ORDER};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportSection {
    All,
    Identities,
    Bounds,
    Critical,
    Boundary,
    Roots,
    Improvement,
}

#[derive(Debug, Clone)]
pub struct ReportConfig {
    pub section: ReportSection,
    pub objectives: Vec<ObjectiveId>,
    pub bnb: BnbConfig,
}

/// Sections plus whether every executed check passed.
pub struct Report {
    pub sections: Vec<Section>,
    pub passed: bool,
}

pub fn build_report(cfg: &ReportConfig) -> Result<Report, BnbError> {
    let wants = |s: ReportSection| cfg.section == ReportSection::All || cfg.section == s;
    let mut sections = Vec::new();
    let mut passed = true;

    if wants(ReportSection::Identities) {
        let (s, ok) = identities();
        sections.push(s);
        passed &= ok;
    }
    let need_bounds = wants(ReportSection::Bounds) || wants(ReportSection::Improvement);
    let bounds: Vec<CertifiedBound> = if need_bounds {
        cfg.objectives
            .iter()
            .map(|&o| maximize(&o, &cfg.bnb))
            .collect::<Result<_, _>>()?
    } else {
        Vec::new()
    };
    if wants(ReportSection::Bounds) {
        sections.push(bounds_section(&bounds));
    }
    if wants(ReportSection::Critical) {
        sections.push(critical_section(&cfg.objectives));
    }
    if wants(ReportSection::Boundary) {
        sections.push(boundary_section(&cfg.objectives));
    }
    if wants(ReportSection::Roots) {
        sections.push(roots_section(&cfg.objectives));
    }
    if wants(ReportSection::Improvement) {
        let (s, ok) = improvement_section(&bounds);
        sections.push(s);
        passed &= ok;
    }
    passed &= bounds.iter().all(CertifiedBound::meets_tolerance);
    Ok(Report { sections, passed })
}

fn identities() -> (Section, bool) {
    let mut rows = Vec::new();
    let mut json = Vec::new();
    let mut ok = true;
    for f in TestFunction::builtin_suite() {
        let name = f.to_string();
        match verify::<ExactComplex>(&f, DEFAULT_ORDER, &OmegaOverrides::default()) {
            Ok(r) => {
                let zero = if r.residuals_ok { "all zero" } else { "NONZERO" };
                rows.push(Row::new(format!("{name}: six residuals"), zero, "exact"));
                rows.push(Row::new(format!("{name}: H2(2)"), r.h2_coeffs.clone(), "coefficients = Grunsky"));
                rows.push(Row::new(format!("{name}: H3(1)"), r.h3_coeffs.clone(), "coefficients = Grunsky"));
                rows.push(Row::new(format!("{name}: min quadratic-form slack"), r.slack_min, "100 vectors"));
                let verdict = if r.passed() { "pass" } else { "FAIL" };
                rows.push(Row::new(format!("{name}: verdict"), verdict, ""));
                ok &= r.passed();
                json.push(r.json());
            }
            Err(e) => {
                ok = false;
                rows.push(Row::new(format!("{name}: error"), e.to_string(), ""));
                json.push(json!({ "function": name, "error": e.to_string() }));
            }
        }
    }
    let section = Section {
        key: "identities".into(),
        title: format!("Grunsky identity verification (exact, order {DEFAULT_ORDER})"),
        rows,
        json: Value::Array(json),
    };
    (section, ok)
}

fn functional(obj: ObjectiveId) -> &'static str {
    match obj {
        ObjectiveId::F1 => "|H2(2)|",
        ObjectiveId::F2 => "|H3(1)|",
    }
}

fn bounds_section(bounds: &[CertifiedBound]) -> Section {
    let mut rows = Vec::new();
    for b in bounds {
        let name = &b.objective;
        let label = match name.as_str() {
            "F1" => functional(ObjectiveId::F1),
            _ => functional(ObjectiveId::F2),
        };
        rows.push(
            Row::new(format!("{label} <= max {name}"), b.upper, "interval branch-and-bound")
                .bounds(Some(b.lower), Some(b.upper)),
        );
        rows.push(Row::new(format!("{name} witness x"), b.witness.x, ""));
        rows.push(Row::new(format!("{name} witness y"), b.witness.y, ""));
        rows.push(Row::new(format!("{name} boxes"), b.boxes_processed, ""));
        rows.push(Row::new(format!("{name} tolerance"), b.tolerance, ""));
    }
    Section {
        key: "bounds".into(),
        title: "Certified global maxima over D1".into(),
        rows,
        json: Value::Array(bounds.iter().map(CertifiedBound::certificate).collect()),
    }
}

fn critical_section(objectives: &[ObjectiveId]) -> Section {
    let mut rows = Vec::new();
    let mut json = serde_json::Map::new();
    for &obj in objectives {
        let points = multi_start(obj, 50);
        let mut list = Vec::new();
        for (k, cp) in points.iter().enumerate() {
            let kind = format!("{:?}", classify(obj, cp)).to_lowercase();
            let tag = format!("{obj} critical point {}", k + 1);
            rows.push(Row::new(format!("{tag} x"), cp.point.x, ""));
            rows.push(Row::new(format!("{tag} y"), cp.point.y, ""));
            rows.push(Row::new(format!("{tag} value"), cp.value, kind.clone()));
            list.push(json!({
                "x": cp.point.x,
                "y": cp.point.y,
                "value": cp.value,
                "gradient_norm": cp.gradient_norm,
                "kind": kind,
            }));
        }
        rows.push(Row::new(format!("{obj} distinct interior critical points"), points.len(), "50x50 multi-start"));
        json.insert(obj.to_string(), Value::Array(list));
    }
    Section {
        key: "critical_points".into(),
        title: "Interior critical points (Newton multi-start, numerical evidence)".into(),
        rows,
        json: Value::Object(json),
    }
}

fn boundary_section(objectives: &[ObjectiveId]) -> Section {
    let mut rows = Vec::new();
    let mut json = Vec::new();
    for &obj in objectives {
        let report: BoundaryReport = boundary_scan(obj);
        for e in &report.edges {
            rows.push(
                Row::new(format!("{obj} max on {}", e.edge.label()), e.value, e.method.to_string())
                    .bounds(Some(e.value), Some(e.upper)),
            );
            rows.push(Row::new(
                format!("{obj} argmax on {}", e.edge.label()),
                format!("({}, {})", super::format::sig(e.location.x), super::format::sig(e.location.y)),
                "",
            ));
        }
        json.push(serde_json::to_value(&report).expect("boundary report serializes"));
    }
    Section {
        key: "boundary".into(),
        title: "Boundary maxima".into(),
        rows,
        json: Value::Array(json),
    }
}

fn roots_section(objectives: &[ObjectiveId]) -> Section {
    let mut rows = Vec::new();
    let mut json = Vec::new();
    for &obj in objectives {
        let (p, edge, condition) = match obj {
            ObjectiveId::F1 => (Polynomial::f1_bottom_stationarity(), "y=0", "x > 1/sqrt2"),
            ObjectiveId::F2 => (Polynomial::f2_arc_stationarity(), "arc", "x <= 1/sqrt2"),
        };
        let roots = isolate_roots(&p, &BigRational::zero(), &BigRational::one()).expect("square-free");
        let report = boundary_scan(obj);
        let stat = report.stationarity.first();
        rows.push(Row::new(format!("{obj} {edge} polynomial"), p.to_string(), "roots in (0, 1)"));
        for (k, r) in roots.iter().enumerate() {
            let m = r.midpoint();
            let kept = stat.is_some_and(|s| s.kept.contains(&m));
            let status = if kept {
                format!("kept: {condition}")
            } else {
                format!("spurious: fails {condition}")
            };
            let s = r.summary();
            rows.push(Row::new(format!("{obj} root {}", k + 1), m, status).bounds(Some(s.lo), Some(s.hi)));
        }
        json.push(json!({
            "objective": obj.to_string(),
            "edge": edge,
            "polynomial": p.to_string(),
            "roots": roots.iter().map(|r| r.summary()).collect::<Vec<_>>(),
            "kept": stat.map(|s| s.kept.clone()).unwrap_or_default(),
            "discarded": stat.map(|s| s.discarded.clone()).unwrap_or_default(),
        }));
    }
    Section {
        key: "roots".into(),
        title: "Stationarity polynomials (Sturm isolation, width < 1e-12)".into(),
        rows,
        json: Value::Array(json),
    }
}

fn improvement_section(bounds: &[CertifiedBound]) -> (Section, bool) {
    let mut rows = Vec::new();
    let mut json = Vec::new();
    let mut ok = true;
    for b in bounds {
        let Some(old) = b.old_bound else { continue };
        let improves = b.upper < old;
        ok &= improves;
        rows.push(Row::new(format!("{} earlier bound", b.objective), old, ""));
        rows.push(Row::new(format!("{} certified / earlier", b.objective), b.upper / old, if improves { "improved" } else { "NOT improved" }));
        json.push(json!({
            "objective": b.objective,
            "old_bound": old,
            "upper": b.upper,
            "ratio": b.upper / old,
            "improves": improves,
        }));
    }
    let section = Section {
        key: "improvement".into(),
        title: "Improvement over the earlier bounds".into(),
        rows,
        json: Value::Array(json),
    };
    (section, ok)
}
