//! Documented invocations and their expected results.

mod common;

use common::{f, json};

const PHI: f64 = 1.618_033_988_749_895;

fn degrees(doc: &serde_json::Value) -> Vec<u64> {
    doc["results"][0]["delta"]["degrees"]["degs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d.as_u64().unwrap())
        .collect()
}

#[test]
fn degseq_fibonacci_map() {
    let (code, doc) = json(&["degseq", "A2: (y, x*y)", "--n", "12"]);
    assert_eq!(code, 0);
    assert_eq!(&degrees(&doc)[..6], &[2, 3, 5, 8, 13, 21]);
    assert!((f(&doc["results"][0]["delta"]["value"]) - PHI).abs() < 1e-3);
}

#[test]
fn degseq_linear_growth_is_unstable() {
    let (code, doc) = json(&["degseq", "A2: (x*y, y+1)", "--n", "8"]);
    assert_eq!(code, 0);
    assert_eq!(degrees(&doc), (2..=9).collect::<Vec<u64>>());
    let stab = &doc["results"][0]["delta"]["stability"];
    assert_eq!(stab["verdict"]["verdict"], "UNSTABLE");
    assert_eq!(stab["verdict"]["step"], 2);
    let ratios = doc["results"][0]["delta"]["estimate"]["ratioEstimates"].as_array().unwrap();
    assert!(f(ratios.last().unwrap()) < 1.13);
}

#[test]
fn degseq_squaring_is_stable() {
    let (code, doc) = json(&["degseq", "P2: [X^2,Y^2,Z^2]", "--n", "5"]);
    assert_eq!(code, 0);
    assert_eq!(degrees(&doc), vec![2, 4, 8, 16, 32]);
    let delta = &doc["results"][0]["delta"];
    assert_eq!(delta["stability"]["verdict"]["verdict"], "STABLE");
    assert_eq!(delta["estimate"]["exact"]["source"], "STABLE_DEGREE");
    assert_eq!(f(&delta["value"]), 2.0);
}

fn alpha_upper(doc: &serde_json::Value) -> f64 {
    f(&doc["results"][1]["alpha"]["upper"])
}

#[test]
fn alpha_fibonacci_orbit() {
    let (code, doc) = json(&["alpha", "A2: (y, x*y)", "--point", "2,3", "--n", "15"]);
    assert_eq!(code, 0);
    assert!((alpha_upper(&doc) - PHI).abs() < 0.01);
    assert_eq!(doc["results"][1]["check"]["pass"], true);
}

#[test]
fn alpha_preperiodic_point() {
    let (code, doc) = json(&["alpha", "P2: [X^2,Y^2,Z^2]", "--point", "1,1,1", "--n", "10"]);
    assert_eq!(code, 0);
    assert_eq!(alpha_upper(&doc), 1.0);
}

#[test]
fn alpha_ybar_square() {
    let (code, doc) = json(&["alpha", "A2: (y^2, x)", "--point", "2,3", "--n", "12"]);
    assert_eq!(code, 0);
    assert!((alpha_upper(&doc) - 2f64.sqrt()).abs() < 0.01);
}

#[test]
fn certify_fixed_point() {
    let (code, doc) = json(&["certify", "A2: (x^2+y, y^2)", "--point", "1/2,1", "--kind", "fixed-point"]);
    assert_eq!(code, 0);
    let cert = &doc["results"][0]["certificate"];
    assert_eq!(cert["prime"], 2);
    assert!((f(&cert["lowerBound"]) - std::f64::consts::LN_2).abs() < 1e-12);
    assert_eq!(cert["pass"], true);
}

#[test]
fn certify_fibonacci_cases() {
    for (id, point, kind) in [("1.1", "1/2,1/2", "case11"), ("3.2", "1/2,1/4", "case32")] {
        let (code, doc) = json(&["certify", "--catalog", id, "--point", point, "--kind", kind]);
        assert_eq!(code, 0, "{id}");
        let cert = &doc["results"][0]["certificate"];
        assert_eq!(cert["growthLaw"], "FIBONACCI");
        assert_eq!(cert["verifiedSteps"], 10);
        assert_eq!(doc["results"][0]["soundness"]["holds"], true);
    }
}

#[test]
fn certify_periodic_point() {
    let (code, doc) = json(&["certify", "A2: (y^2, x^2)", "--point", "1/2,1", "--period", "2"]);
    assert_eq!(code, 0);
    assert!((f(&doc["results"][0]["bound"]) - std::f64::consts::LN_2).abs() < 1e-12);
}

fn monomial(args: &[&str]) -> (i32, serde_json::Value) {
    let mut a = vec!["monomial"];
    a.extend(args);
    json(&a)
}

#[test]
fn monomial_examples() {
    let (code, doc) = monomial(&["[[0,2],[1,0]]", "--point", "2,3", "--n", "20"]);
    assert_eq!(code, 0);
    let delta = &doc["results"][0]["delta"];
    assert!(f(&delta["lo"]) <= 2f64.sqrt() && 2f64.sqrt() <= f(&delta["hi"]));
    assert!((f(&doc["results"][1]["check"]["alpha"]) - 2f64.sqrt()).abs() < 0.05);

    let (code, doc) = monomial(&["[[3,0],[0,2]]", "--point", "1,2", "--n", "20"]);
    assert_eq!(code, 0);
    assert!((f(&doc["results"][1]["check"]["alpha"]) - 2.0).abs() < 0.05);
    assert!((f(&doc["results"][0]["delta"]["hi"]) - 3.0).abs() < 1e-9);

    let (code, doc) = monomial(&["[[1,0],[0,1]]", "--point", "5,7"]);
    assert_eq!(code, 0);
    assert_eq!(f(&doc["results"][1]["check"]["alpha"]), 1.0);
    assert_eq!(doc["results"][0]["charPoly"]["text"], "l^2 - 2*l + 1");
}

#[test]
fn hcirc_identity_and_stable() {
    let (code, doc) = json(&["hcirc", "A2: (y^2, x)", "--point", "3,5,7", "--n", "8"]);
    assert_eq!(code, 0);
    assert!(f(&doc["results"][1]["identity"]["relativeDiscrepancy"]) < 1e-2);

    let (code, doc) = json(&["stable", "A2: (y^2, x)"]);
    assert_eq!(code, 0);
    assert_eq!(doc["results"][0]["summary"], "UNSTABLE(2)");
}

#[test]
fn catalog_surface() {
    let (code, doc) = json(&["catalog", "list"]);
    assert_eq!(code, 0);
    assert_eq!(doc["results"].as_array().unwrap().len(), 19);
    let (code, doc) = json(&["catalog", "verify", "1.2", "--param", "a=3"]);
    assert_eq!(code, 0);
    assert_eq!(doc["results"][0]["pass"], true);
    assert_eq!(doc["inputs"]["params"]["a"], "3");
}

#[test]
fn hcanon_squaring() {
    let (code, doc) = json(&["hcanon", "P2: [X^2,Y^2,Z^2]", "--point", "2,1,1", "--n", "6"]);
    assert_eq!(code, 0);
    assert!((f(&doc["results"][1]["plus"]["value"]) - std::f64::consts::LN_2).abs() < 1e-12);
}
