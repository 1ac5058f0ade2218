//! Exit status: 0 pass, 1 failed check, 2 usage or parse error, 3 budget.

mod common;

use assert_cmd::Command;
use common::adegree;

#[test]
fn parse_error_reports_caret() {
    let (code, _, err) = adegree(&["degseq", "A2: (y, x*)"]);
    assert_eq!(code, 2);
    assert!(err.contains("column 10"), "{err}");
    assert!(err.contains("          ^"), "{err}");
}

#[test]
fn usage_errors() {
    assert_eq!(adegree(&["bogus"]).0, 2);
    assert_eq!(adegree(&["alpha", "A2: (y, x*y)"]).0, 2);
    assert_eq!(adegree(&["alpha", "A2: (y, x*y)", "--point", "1,2,3,4"]).0, 2);
    assert_eq!(adegree(&["monomial", "[[1,1],[1,1]]", "--point", "2,3"]).0, 2);
    assert_eq!(adegree(&["catalog", "verify", "nosuch"]).0, 2);
    assert_eq!(adegree(&["catalog", "verify", "3.4", "--param", "alpha=0"]).0, 2);
    assert_eq!(adegree(&["certify", "A2: (y, x*y)", "--point", "2,3", "--kind", "nope"]).0, 2);
}

#[test]
fn failed_check_exits_one() {
    let (code, out, _) = adegree(&["certify", "A2: (x*y, y^2)", "--point", "1/2,1"]);
    assert_eq!(code, 1);
    assert!(out.contains("not in the fixed-point neighborhood"), "{out}");
    // the first monomial outside the normal form is named
    let (code, out, _) = adegree(&["certify", "A2: (x*y+y^2, x^2)", "--point", "1/2,1"]);
    assert_eq!(code, 1);
    assert!(out.contains("no fixed-point normal form"), "{out}");
}

#[test]
fn budget_flag_and_environment() {
    let (code, out, _) = adegree(&["degseq", "A2: (y^2+x, x*y+3)", "--budget-bits", "64"]);
    assert_eq!(code, 3);
    assert!(out.contains("budget exceeded at step"), "{out}");
    let out = Command::cargo_bin("adegree")
        .unwrap()
        .env("ADEGREE_BUDGET_BITS", "64")
        .args(["degseq", "A2: (y^2+x, x*y+3)"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let out = Command::cargo_bin("adegree")
        .unwrap()
        .env("ADEGREE_BUDGET_BITS", "lots")
        .args(["degseq", "A2: (y, x)"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn passing_run_exits_zero() {
    assert_eq!(adegree(&["degseq", "A2: (y, x*y)", "--n", "6"]).0, 0);
}
