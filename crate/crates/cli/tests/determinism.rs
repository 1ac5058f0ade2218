//! Identical invocations give byte-identical output, with or without
//! `--parallel`.

mod common;

use common::{adegree, json};

#[test]
fn json_is_byte_identical() {
    let args = ["alpha", "A2: (y, x*y)", "--random", "6", "--n", "10", "--format", "json"];
    let (_, a, _) = adegree(&args);
    let (_, b, _) = adegree(&args);
    assert_eq!(a, b);
    let mut par = args.to_vec();
    par.push("--parallel");
    let (_, c, _) = adegree(&par);
    assert_eq!(a, c);
}

#[test]
fn seed_changes_points() {
    let base = ["alpha", "A2: (y^2, x)", "--random", "3", "--n", "8"];
    let (_, a) = json(&base);
    let mut other = base.to_vec();
    other.extend(["--seed", "7"]);
    let (_, b) = json(&other);
    assert_eq!(a["defaults"]["seed"], 0);
    assert_eq!(b["defaults"]["seed"], 7);
    assert_ne!(a["inputs"]["points"], b["inputs"]["points"]);
}

#[test]
fn document_layout() {
    let (_, doc) = json(&["degseq", "A2: (y, x*y)", "--n", "4"]);
    let keys: Vec<&str> = doc.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(
        keys,
        ["budgetExceeded", "command", "defaults", "inputs", "pass", "results", "schema", "version"]
    );
    assert_eq!(doc["schema"], "adegree/1");
    assert_eq!(doc["defaults"]["maxNQuadratic"], 12);
    assert_eq!(doc["defaults"]["maxNCubic"], 8);
    assert_eq!(doc["defaults"]["budgetBits"], 1 << 20);
}

#[test]
fn csv_orbit_columns() {
    let (code, out, _) = adegree(&["alpha", "A2: (y^2, x)", "--point", "2,3", "--n", "6", "--format", "csv"]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("point,n,h,h_over_delta_n,root_estimate"));
    assert_eq!(lines.count(), 7);
}
