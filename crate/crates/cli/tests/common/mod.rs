#![allow(dead_code)]

use assert_cmd::Command;
use serde_json::Value;

pub fn adegree(args: &[&str]) -> (i32, String, String) {
    let out = Command::cargo_bin("adegree")
        .unwrap()
        .env_remove("ADEGREE_BUDGET_BITS")
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

/// Runs with `--format json` and returns the exit code and document.
pub fn json(args: &[&str]) -> (i32, Value) {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let (code, out, err) = adegree(&a);
    let doc = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out}\n{err}"));
    (code, doc)
}

pub fn f(v: &Value) -> f64 {
    v.as_f64().unwrap_or_else(|| panic!("not a number: {v}"))
}
