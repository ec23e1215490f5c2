use std::process::{Command, Output};

use serde_json::Value;

fn qe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qelliptic"))
        .args(args)
        .env_remove("QELLIPTIC_MAX_TERMS")
        .output()
        .expect("spawn")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn eval_prints_diagnostics() {
    let o = qe(&["eval", "sn", "--q", "0.05", "--u", "0.4"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("terms_used = "), "{s}");
    assert!(s.contains("est_tail = "), "{s}");
}

#[test]
fn eval_json_has_value_and_diagnostics() {
    let o = qe(&["eval", "theta-angle", "--q", "0.2", "--x", "0.5", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["terms_used"].as_u64().unwrap() > 0);
    assert!(v["est_tail"].is_number());
    // -log(k'/(1+k))/2 from theta nulls summed directly
    let q: f64 = 0.2;
    let t2: f64 = (0..30).map(|n| 2.0 * q.powf((n as f64 + 0.5).powi(2))).sum();
    let t3: f64 = 1.0 + (1..30).map(|n| 2.0 * q.powi(n * n)).sum::<f64>();
    let t4: f64 = 1.0 + (1..30).map(|n| 2.0 * (-1f64).powi(n) * q.powi(n * n)).sum::<f64>();
    let (k, kp) = ((t2 / t3).powi(2), (t4 / t3).powi(2));
    let want = -0.5 * (kp / (1.0 + k)).ln();
    assert!((v["value"]["re"].as_f64().unwrap() - want).abs() < 1e-12);
}

#[test]
fn verify_json_is_an_array_of_records() {
    let o = qe(&["verify", "--id", "A5-158", "--q", "0.3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Vec<Value> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.len(), 3);
    for r in &v {
        for key in ["id", "params", "lhs", "rhs", "abs_residual", "rel_residual", "pass"] {
            assert!(r.get(key).is_some(), "missing {key}");
        }
        assert_eq!(r["params"]["q"], 0.3);
    }
    assert!(stderr(&o).contains("passed"));
}

#[test]
fn verify_csv_header() {
    let o = qe(&["verify", "--id", "EQ7", "--format", "csv"]);
    let s = stdout(&o);
    let head = s.lines().next().unwrap();
    for col in ["id", "params", "lhs_re", "rhs_re", "abs_residual", "rel_residual", "pass"] {
        assert!(head.split(',').any(|c| c == col), "{head}");
    }
    assert_eq!(s.lines().count(), 2);
}

#[test]
fn quarantined_failures_do_not_fail_the_run() {
    let o = qe(&["verify", "--id", "EQ16*"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("QUARANTINED EQ164"));
}

#[test]
fn exit_two_on_domain_and_config_errors() {
    for args in [
        &["eval", "sn", "--q", "1.5", "--u", "0.2"][..],
        &["eval", "sn", "--u", "0.2"],
        &["eval", "nonsense"],
        &["verify", "--id", "EQ7", "--q", "0.2"],
        &["verify", "--id", "NO-SUCH-CASE"],
        &["table", "rr", "--sweep", "q=0.1:0.05"],
        &["table", "rr", "--sweep", "q"],
        &["table", "sn"],
        &["verify", "--id", "MAIN-A1", "--q", "1.2"],
    ] {
        let o = qe(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
        assert!(stderr(&o).starts_with("error:"), "{args:?}");
    }
}

#[test]
fn precondition_message_names_the_violation() {
    let o = qe(&["eval", "u0", "--a", "0.1", "--q", "0.3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("|q|"), "{}", stderr(&o));
}

#[test]
fn bad_env_max_terms_is_a_config_error() {
    let o = Command::new(env!("CARGO_BIN_EXE_qelliptic"))
        .args(["eval", "rr", "--q", "0.1"])
        .env("QELLIPTIC_MAX_TERMS", "many")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("QELLIPTIC_MAX_TERMS"));
}

#[test]
fn starved_term_budget_reports_nonconvergence() {
    let o = Command::new(env!("CARGO_BIN_EXE_qelliptic"))
        .args(["eval", "ghost-sum", "--x", "0.01"])
        .env("QELLIPTIC_MAX_TERMS", "5")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
}

#[test]
fn default_tables() {
    let o = qe(&["table", "kr", "--format", "csv"]);
    let s = stdout(&o);
    assert!(s.starts_with("r,value_re,value_im,terms_used"));
    let row1: Vec<&str> = s.lines().nth(1).unwrap().split(',').collect();
    assert!((row1[1].parse::<f64>().unwrap() - 0.5f64.sqrt()).abs() < 1e-12);
    assert_eq!(s.lines().count(), 5);

    let o = qe(&["table", "ghost-sum", "--format", "json"]);
    let v: Vec<Value> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.len(), 3);
    // g(π) by direct summation
    let g: f64 = (1..60).map(|n| 1.0 / ((n as f64 * std::f64::consts::PI).exp() - 1.0)).sum();
    assert!((v[0]["value"]["re"].as_f64().unwrap() - g).abs() < 1e-14);

    let o = qe(&["table", "rr"]);
    assert_eq!(stdout(&o).lines().count(), 4);
}

#[test]
fn explicit_sweep_range() {
    let o = qe(&["table", "alpha", "--sweep", "r=1:4:4", "--format", "json"]);
    let v: Vec<Value> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.len(), 4);
    assert!((v[0]["value"]["re"].as_f64().unwrap() - 0.5).abs() < 1e-12);
}

#[test]
fn list_matches_registry_and_output_is_deterministic() {
    let a = qe(&["list", "--format", "json"]);
    let v: Vec<Value> = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v.len(), qelliptic::harness::registry().len());
    let b = qe(&["verify", "--all", "--format", "csv"]);
    let c = qe(&["verify", "--all", "--format", "csv", "--jobs", "1"]);
    assert_eq!(stdout(&b), stdout(&c));
}

#[test]
fn exit_one_on_verification_failure() {
    let o = qe(&["verify", "--id", "EQ7", "--tol", "1e-30"]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("FAIL"));
}
