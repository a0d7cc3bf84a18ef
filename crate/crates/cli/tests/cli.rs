use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn midpoint(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_midpoint"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(args: &[&str]) -> Value {
    let out = midpoint(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn error_code(args: &[&str]) -> String {
    let out = midpoint(args);
    assert!(!out.status.success(), "{args:?} unexpectedly succeeded");
    let err: Value = serde_json::from_slice(&out.stderr).expect("stderr is JSON");
    err["error"]["code"].as_str().unwrap().to_string()
}

#[test]
fn three_adic_chain() {
    let r = report(&["synth-formula", "--coeffs", "-1/2,3/2", "--ring", "3"]);
    assert_eq!(r["command"], "synth-formula");
    assert_eq!(r["result"]["verified"], true);
    let rels: Vec<(u64, u64, String, u64)> = r["result"]["formula"]["relations"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| {
            (
                x["left"].as_u64().unwrap(),
                x["right"].as_u64().unwrap(),
                x["param"].as_str().unwrap().to_string(),
                x["result"].as_u64().unwrap(),
            )
        })
        .collect();
    let third = "1/3".to_string();
    assert_eq!(
        rels,
        vec![
            (0, 3, third.clone(), 1),
            (1, 4, third.clone(), 2),
            (2, 5, third.clone(), 3),
            (3, 6, third.clone(), 4),
            (6, 3, third, 5),
        ]
    );
    let text = r["result"]["text"].as_str().unwrap();
    assert!(text.starts_with("(∃u0)") && text.contains("x1 = u4") && text.ends_with("y = u6)"));
}

#[test]
fn dyadic_separation() {
    let r = report(&["hull-member", "--point", "1", "--set", "0;3", "--ring", "2"]);
    assert_eq!(r["result"]["member"], false);
    assert_eq!(r["result"]["rational_member"], true);
    let r = report(&["hull-member", "--point", "3/4", "--set", "0;3", "--ring", "2"]);
    assert_eq!(r["result"]["member"], true);
    assert_eq!(r["result"]["coefficients"], serde_json::json!(["3/4", "1/4"]));
}

#[test]
fn segments_are_isomorphic() {
    let r = report(&["iso-check", "--left", "0;1", "--right", "0;3", "--ring", "2", "--seed", "3"]);
    assert_eq!(r["result"]["isomorphic"], true);
    assert_eq!(r["result"]["witness_formula"], "3x");
    assert_eq!(r["result"]["homomorphism"]["failures"], serde_json::json!([]));
}

#[test]
fn square_is_not_a_triangle() {
    let r = report(&["iso-check", "--left", "0,0;1,0;1,1;0,1", "--right", "0,0;1,0;0,1", "--seed", "0"]);
    assert_eq!(r["result"]["isomorphic"], false);
    assert_eq!(r["result"]["equivalence"]["reason"]["kind"], "vertex_count_mismatch");
}

#[test]
fn affine_equivalence_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let square = dir.path().join("square.json");
    let para = dir.path().join("para.json");
    fs::write(&square, r#"[[0,0],[1,0],[1,1],[0,1]]"#).unwrap();
    fs::write(&para, r#"{"points": [["0","0"],["2","0"],["3","1"],["1","1"]]}"#).unwrap();
    let r = report(&["affine-equiv", "--left", square.to_str().unwrap(), "--right", para.to_str().unwrap()]);
    assert_eq!(r["result"]["equivalent"], true);
    assert!(r["result"]["witness"]["matrix"].is_array());
}

#[test]
fn reports_are_reproducible() {
    let args = ["probe-convexity", "--set", "0,0;1,0;0,1", "--seed", "11", "--samples", "20"];
    let a = midpoint(&args);
    let b = midpoint(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let laws = ["laws-check", "--seed", "5", "--samples", "50"];
    assert_eq!(midpoint(&laws).stdout, midpoint(&laws).stdout);
    let r: Value = serde_json::from_slice(&midpoint(&laws).stdout).unwrap();
    assert_eq!(r["result"]["violations"], serde_json::json!([]));
    assert_eq!(r["seed"], 5);
}

#[test]
fn formula_round_trip_through_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("phi.json");
    let out = midpoint(&["synth-formula", "--coeffs", "-1,2", "--out", path.to_str().unwrap()]);
    assert!(out.status.success() && out.stdout.is_empty());
    let p = path.to_str().unwrap();
    let r = report(&["verify-formula", "--formula", p, "--inputs", "0;1", "--output", "2"]);
    assert_eq!(r["result"]["verified"], true);
    assert_eq!(r["result"]["satisfied"], true);
    assert_eq!(r["result"]["witness"].as_array().unwrap().len(), 7);
    let r = report(&["verify-formula", "--formula", p, "--inputs", "0;1", "--output", "3"]);
    assert_eq!(r["result"]["satisfied"], false);
    let r = report(&["verify-formula", "--formula", p, "--coeffs", "-2,3"]);
    assert_eq!(r["result"]["verified"], false);

    let mut doc: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    doc["result"]["formula"]["relations"][1]["param"] = Value::from("1/4");
    fs::write(&path, doc.to_string()).unwrap();
    let r = report(&["verify-formula", "--formula", p]);
    assert_eq!(r["result"]["verified"], false);
}

#[test]
fn small_commands() {
    let r = report(&["eval-term", "--term", "(op x0 (op x1 x2 1/2) 1/2)", "--points", "0,0;4,0;0,4"]);
    assert_eq!(r["result"]["value"], serde_json::json!(["1", "1"]));
    assert_eq!(r["result"]["coefficients"], serde_json::json!(["1/2", "1/4", "1/4"]));

    let r = report(&["caratheodory", "--point", "1/2,1/2", "--set", "0,0;1,0;1,1;0,1"]);
    let coeffs = r["result"]["coefficients"].as_array().unwrap();
    assert!(coeffs.len() <= 3);

    let r = report(&["closure", "--set", "0;3", "--depth", "1", "--rounds", "1"]);
    let pts = r["result"]["points"].as_array().unwrap();
    assert!(pts.contains(&serde_json::json!(["1"])));
    assert_eq!(r["result"]["count"].as_u64().unwrap() as usize, pts.len());

    let r = report(&["hexagon-demo"]);
    assert_eq!(r["result"]["holds"], true);
    assert_eq!(r["result"]["midpoint_03"], serde_json::json!(["0", "0"]));
}

#[test]
fn errors_carry_codes() {
    assert_eq!(error_code(&["hull-member", "--point", "1,2", "--set", "0;3"]), "E_DIMENSION");
    assert_eq!(error_code(&["laws-check"]), "E_CONFIG");
    assert_eq!(error_code(&["synth-formula", "--coeffs", "1/2,1/3"]), "E_COEFF_SUM");
    assert_eq!(error_code(&["synth-formula", "--coeffs", "1", "--ring", "4"]), "E_RING");
    assert_eq!(error_code(&["eval-term", "--term", "(op x0 x1", "--points", "0;1"]), "E_PARSE");
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "[[0,0],").unwrap();
    assert_eq!(error_code(&["affine-equiv", "--left", bad.to_str().unwrap(), "--right", "0,0"]), "E_JSON");
    let missing = dir.path().join("missing.json");
    assert_eq!(error_code(&["closure", "--set", missing.to_str().unwrap()]), "E_IO");
}
