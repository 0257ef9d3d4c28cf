use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hankel-cert"))
        .args(args)
        .env_remove("HANKEL_CERT_WORKERS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid json")
}

#[test]
fn verify_koebe_exact_passes() {
    let o = run(&["verify", "--function", "koebe", "--order", "9", "--mode", "exact", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["passed"], true);
    assert!(v["residuals"].as_array().unwrap().iter().all(|r| r.as_f64() == Some(0.0)));
}

#[test]
fn verify_floating_suite() {
    for f in ["koebe", "koebe-rot:0.3", "identity", "z-over-1-minus-z", "z-over-1-minus-z2"] {
        let o = run(&["verify", "--function", f, "--mode", "floating"]);
        assert_eq!(o.status.code(), Some(0), "{f}: {}", stdout(&o));
    }
}

#[test]
fn corrupted_omega_fails_check() {
    let o = run(&["verify", "--coeffs", "2,3,4,5", "--omega11", "1.5"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn low_order_is_a_usage_error() {
    let o = run(&["verify", "--function", "koebe", "--order", "5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
}

#[test]
fn unknown_function_is_a_usage_error() {
    assert_eq!(run(&["verify", "--function", "bieberbach"]).status.code(), Some(2));
}

#[test]
fn maximize_certificate_keys() {
    let o = run(&["maximize", "--objective", "f1", "--tol", "1e-6"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    for key in ["objective", "upper", "lower", "witness", "tol", "boxes", "improves_over"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    let (lo, hi) = (v["lower"].as_f64().unwrap(), v["upper"].as_f64().unwrap());
    assert!(hi - lo <= 1e-6 && (1.3613..=1.3616).contains(&hi));
    assert_eq!(v["witness"].as_array().unwrap().len(), 2);
}

#[test]
fn maximize_rejects_bad_tolerance() {
    for tol in ["-1", "0", "nan"] {
        assert_eq!(run(&["maximize", "--objective", "f2", "--tol", tol]).status.code(), Some(2), "{tol}");
    }
}

#[test]
fn huge_tolerance_stops_after_one_box() {
    let v = json(&run(&["maximize", "--objective", "f2", "--tol", "1e300"]));
    assert_eq!(v["boxes"], 1);
}

#[test]
fn exhausted_budget_exits_three() {
    let o = run(&["maximize", "--objective", "f2", "--budget", "50"]);
    assert_eq!(o.status.code(), Some(3));
    let v = json(&o);
    assert!(v["upper"].as_f64().unwrap() >= v["lower"].as_f64().unwrap());
}

#[test]
fn roots_default_polynomial() {
    let v = json(&run(&["roots", "--format", "json"]));
    assert_eq!(v["count"], 2);
    let root = v["roots"][1]["midpoint"].as_f64().unwrap();
    assert!((root - 0.918107379133660).abs() < 1e-12);
}

#[test]
fn roots_without_real_roots() {
    let v = json(&run(&["roots", "--coeffs", "1,0,1", "--lo", "-5", "--hi", "5", "--format", "json"]));
    assert_eq!(v["count"], 0);
}

#[test]
fn report_csv_header_and_determinism() {
    let args = ["report", "--format", "csv", "--section", "boundary"];
    let a = run(&args);
    assert_eq!(a.status.code(), Some(0));
    let text = stdout(&a);
    assert_eq!(text.lines().next(), Some("quantity,value,lower,upper,source"));
    assert!(text.lines().skip(1).all(|l| !l.is_empty()));
    assert_eq!(text, stdout(&run(&args)));
}

#[test]
fn full_report_passes() {
    let o = run(&["report", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    for key in ["identities", "bounds", "critical_points", "boundary", "roots", "improvement"] {
        assert!(v.get(key).is_some(), "missing section {key}");
    }
    assert_eq!(v["critical_points"]["F1"].as_array().unwrap().len(), 1);
    assert_eq!(v["critical_points"]["F2"].as_array().unwrap().len(), 2);
}

#[test]
fn output_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("hankel-cert-{}.txt", std::process::id()));
    let o = run(&["roots", "-o", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert!(written.contains("root 2"));
}

#[test]
fn workers_env_gives_same_bound() {
    let serial = json(&run(&["maximize", "--objective", "f2"]));
    let o = Command::new(env!("CARGO_BIN_EXE_hankel-cert"))
        .args(["maximize", "--objective", "f2"])
        .env("HANKEL_CERT_WORKERS", "4")
        .output()
        .unwrap();
    let parallel = json(&o);
    let (a, b) = (serial["upper"].as_f64().unwrap(), parallel["upper"].as_f64().unwrap());
    assert!((a - b).abs() <= 1e-6);
}
