use std::process::{Command, Output};

use abtaut_core::rational::parse_rational;
use abtaut_core::{Alphabet, GradedPolynomial, TautRing};
use serde_json::Value;

fn abtaut(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_abtaut")).args(args).env_remove("ABTAUT_MAX_G").output().expect("spawn abtaut")
}

fn json(args: &[&str]) -> Value {
    let out = abtaut(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 1, "one JSON object per line");
    serde_json::from_str(&text).unwrap()
}

#[test]
fn single_values() {
    assert_eq!(json(&["constant", "--g", "2"])["payload"], "1/120");
    assert_eq!(json(&["constant", "--g", "3"])["payload"], "1/252");
    assert_eq!(json(&["zeta", "--g", "1"])["payload"], "-1/12");
    assert_eq!(json(&["bernoulli", "--n", "1"])["payload"], "-1/2");
    assert_eq!(json(&["bernoulli", "--n", "3"])["payload"], "0");
    let env = json(&["reduce", "--g", "3", "--monomial", "l1^6"]);
    assert_eq!(env["payload"], "16*l1*l2*l3");
    assert_eq!(env["status"], "info");
    assert_eq!(env["command"]["name"], "reduce");
}

#[test]
fn verify_grr_seven() {
    let out = abtaut(&["verify", "--check", "grr", "--g", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let env: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(env["status"], "pass");
    assert_eq!(env["payload"]["grr"]["results"][0]["magnitude_ok"], true);
}

#[test]
fn exit_codes() {
    assert_eq!(abtaut(&["zeta", "--g", "0"]).status.code(), Some(2));
    assert_eq!(abtaut(&["satake", "--g", "3", "--p", "4"]).status.code(), Some(2));
    assert_eq!(abtaut(&["ring", "--g", "9", "--show", "dims"]).status.code(), Some(2));
    assert_eq!(abtaut(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(abtaut(&["reduce", "--g", "2", "--monomial", "l1^^2"]).status.code(), Some(2));
    assert_eq!(abtaut(&["constant", "--g", "2", "--format", "csv"]).status.code(), Some(2));
    let err = String::from_utf8(abtaut(&["satake", "--g", "2", "--i", "5"]).stderr).unwrap();
    assert!(err.contains("--i 5"), "{err}");
}

#[test]
fn max_genus_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_abtaut"))
        .args(["ring", "--g", "3", "--show", "dims"])
        .env("ABTAUT_MAX_G", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("ABTAUT_MAX_G"));
}

#[test]
fn byte_identical_reruns() {
    for args in [
        &["verify", "--check", "all", "--g", "1", "--gmax", "4"][..],
        &["ring", "--g", "4", "--show", "pairing"],
        &["satake", "--g", "6", "--format", "csv"],
        &["satake", "--g", "4", "--p", "3", "--format", "text"],
    ] {
        let a = abtaut(args);
        let b = abtaut(args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn timing_only_on_request() {
    assert!(json(&["constant", "--g", "1"]).get("timing_ms").is_none());
    let env = json(&["constant", "--g", "1", "--timing"]);
    assert!(env["timing_ms"].is_number());
    assert_eq!(env["payload"], "1/12");
}

#[test]
fn printed_values_reparse() {
    for n in 0..=30 {
        let n_arg = n.to_string();
        let p = json(&["bernoulli", "--n", &n_arg])["payload"].as_str().unwrap().to_owned();
        assert_eq!(parse_rational(&p).unwrap(), abtaut_core::bernoulli(n));
    }
    let table = json(&["satake", "--g", "8"]);
    for row in table["payload"]["rows"].as_array().unwrap() {
        parse_rational(row["coefficient"].as_str().unwrap()).unwrap();
    }

    let ring = TautRing::build(4).unwrap();
    for expr in ["l1^10", "l1^3*l2 - 2/3*l4", "l2^2 + 7", "-l1*l2*l3*l4"] {
        let printed = json(&["reduce", "--g", "4", "--monomial", expr])["payload"].as_str().unwrap().to_owned();
        let reparsed = ring.polynomial(&printed).unwrap();
        let ours = ring.normal_form(&ring.polynomial(expr).unwrap()).unwrap();
        assert_eq!(ring.normal_form(&reparsed).unwrap(), ours, "{expr} -> {printed}");
        assert_eq!(ours.to_polynomial(&ring), reparsed);
    }

    let basis = json(&["ring", "--g", "3", "--show", "basis"]);
    let alphabet = Alphabet::chern("l", 3);
    let mut count = 0;
    for d in basis["payload"]["degrees"].as_array().unwrap() {
        for m in d["basis"].as_array().unwrap() {
            let p = GradedPolynomial::parse(&alphabet, None, m.as_str().unwrap()).unwrap();
            assert!(p.is_homogeneous_of(d["degree"].as_u64().unwrap() as u32));
            count += 1;
        }
    }
    assert_eq!(count, 8);
}

#[test]
fn satake_formats() {
    let csv = String::from_utf8(abtaut(&["satake", "--g", "3", "--format", "csv"]).stdout).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("g,i,coefficient,label,matches_thm34"));
    assert_eq!(lines.next(), Some("3,0,1,{},"));
    assert_eq!(lines.next(), Some("3,1,252,{3},true"));
    let env = json(&["satake", "--g", "4", "--i", "1"]);
    let rows = env["payload"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["matches_thm34"], false);
    assert!(env["payload"]["note"].as_str().unwrap().contains("characteristic p"));
}
