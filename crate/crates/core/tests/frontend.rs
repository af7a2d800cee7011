mod common;

use common::poly;
use poincare_core::frontend::{
    cmd_classify, cmd_cohomology, cmd_gen, cmd_split, cmd_verify, parse_poly, FrontendError, ProblemFile,
    SplitOptions, VerifyOptions, EXIT_COCYCLE, EXIT_PARSE, EXIT_TOLERANCE, EXIT_VALIDATION,
};
use poincare_core::WilliamsonType;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn render_parse_round_trip(p in poly(4, 8, 8)) {
        prop_assert_eq!(parse_poly(&p.render(), 4).unwrap(), p);
    }
}

const MIXED: &str = "format poincare/1 problem\ntype (1,1,0)@2\ng1 = -2*x2*y1\ng2 = -x1*x2\nG = x1*x2\n";

#[test]
fn split_outputs_reparse_and_reverify() {
    let doc = cmd_split(MIXED, &SplitOptions::default());
    assert!(doc.is_ok());
    assert_eq!(doc.get("G"), Some("1*x1*x2"));
    // feed the rendered outputs back as expectations
    let text = format!(
        "format poincare/1 problem\ntype (1,1,0)@2\ng1 = {}\ng2 = {}\nf1 = {}\nf2 = {}\nG = {}\n",
        doc.get("g1").unwrap(),
        doc.get("g2").unwrap(),
        doc.get("f1").unwrap(),
        doc.get("f2").unwrap(),
        doc.get("G").unwrap()
    );
    let again = cmd_split(&text, &SplitOptions::default());
    assert_eq!(again.get("expected"), Some("pass"));
}

#[test]
fn kernel_data_file() {
    let text = "format poincare/1 problem\ntype (0,0,1)@2\ng1 = x1*y1 + x2*y2\ng2 = x1*y2 - x2*y1\n";
    let doc = cmd_split(text, &SplitOptions::default());
    assert_eq!(doc.get("f1"), Some("1*x1*y1 + 1*x2*y2"));
    assert_eq!(doc.get("G"), Some("0"));
    assert_eq!(doc.get("f1.commutant"), Some("1*Q1"));
}

#[test]
fn exit_codes() {
    let parse = cmd_split("format poincare/1 problem\ntype (1,0,0)@1\ng1 = x0\n", &SplitOptions::default());
    assert_eq!(parse.exit_code(), EXIT_PARSE);
    assert!(parse.render_text().contains("error_code E_PARSE"));
    let validation = cmd_split("format poincare/1 problem\ntype (4,0,0)@3\n", &SplitOptions::default());
    assert_eq!(validation.exit_code(), EXIT_VALIDATION);
    let cocycle = cmd_split("format poincare/1 problem\ntype (0,2,0)@2\ng1 = x2\ng2 = 0\n", &SplitOptions::default());
    assert_eq!(cocycle.exit_code(), EXIT_COCYCLE);
    let mismatch = cmd_split(&MIXED.replace("G = x1*x2", "G = x1"), &SplitOptions::default());
    assert_eq!(mismatch.error.as_ref().map(FrontendError::code), Some("E_MISMATCH"));
    let coarse = VerifyOptions {
        panels: 2,
        tolerance: 1e-12,
        points: 50,
    };
    let tol = cmd_verify("format poincare/1 problem\ntype (1,0,0)@1\ng1 = x1^6\n", &coarse);
    assert_eq!(tol.exit_code(), EXIT_TOLERANCE);
    assert_eq!(tol.to_json()["error_code"], "E_TOLERANCE");
}

#[test]
fn verify_defaults_pass() {
    for (t, g) in [
        ("(1,0,0)@1", "g1 = x1^2 + 3*x1*y1"),
        ("(0,1,0)@1", "g1 = x1^2"),
        ("(0,0,1)@2", "g1 = 0\ng2 = x1^2 + x2^2"),
    ] {
        let text = format!("format poincare/1 problem\ntype {t}\n{g}\n");
        let doc = cmd_verify(&text, &VerifyOptions::default());
        assert!(doc.is_ok(), "{}", doc.render_text());
    }
}

#[test]
fn classify_rows() {
    let cases = [
        ("n 1\nq1 = x1^2+y1^2", "(1,0,0)@1"),
        ("n 1\nq1 = x1*y1", "(0,1,0)@1"),
        ("n 2\nq1 = x1*y1 + x2*y2\nq2 = x1*y2 - x2*y1", "(0,0,1)@2"),
    ];
    for (body, expected) in cases {
        let doc = cmd_classify(&format!("format poincare/1 quadratics\n{body}\n"));
        assert_eq!(doc.get("type"), Some(expected));
    }
    let bad = cmd_classify("format poincare/1 quadratics\nn 1\nq1 = x1\n");
    assert_eq!(bad.exit_code(), EXIT_VALIDATION);
}

#[test]
fn cohomology_files() {
    let coboundary = "format poincare/1 cochain\ntype (1,1,0)@2\nalpha1 = 2*y1*x2\nalpha2 = x1*x2\n";
    let doc = cmd_cohomology(coboundary);
    assert_eq!(doc.get("h"), Some("1*x1*x2"));
    assert_eq!(doc.get("reassembly"), Some("pass"));
    let kernel = "format poincare/1 cochain\ntype (1,0,0)@1\nalpha1 = x1^2 + y1^2\n";
    assert_eq!(cmd_cohomology(kernel).get("h"), Some("0"));
    let broken = "format poincare/1 cochain\ntype (1,1,0)@2\nalpha1 = x2\nalpha2 = 0\n";
    assert_eq!(cmd_cohomology(broken).exit_code(), EXIT_COCYCLE);
}

#[test]
fn deterministic_documents() {
    let t: WilliamsonType = "(1,0,1)@3".parse().unwrap();
    let a = cmd_gen(t, 5, 42).unwrap();
    assert_eq!(a, cmd_gen(t, 5, 42).unwrap());
    assert_ne!(a, cmd_gen(t, 5, 43).unwrap());
    let file = ProblemFile::parse(&a).unwrap();
    assert_eq!(file.degree, Some(5));
    let opts = SplitOptions::default();
    assert_eq!(cmd_split(&a, &opts).render_json(), cmd_split(&a, &opts).render_json());
    let v = VerifyOptions::default();
    assert_eq!(cmd_verify(&a, &v).render_text(), cmd_verify(&a, &v).render_text());
}
