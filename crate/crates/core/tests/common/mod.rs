//! CLI cases shared by the golden-file and acceptance tests.
#![allow(dead_code)]

use std::fs;
use std::path::PathBuf;
use std::process::Command;

pub const CASES: &[(&str, &[&str], i32)] = &[
    ("invariants_s3", &["invariants", "s3_curve.json"], 0),
    (
        "invariants_singular",
        &["invariants", "s3_singular.json"],
        3,
    ),
    ("invariants_no_shift", &["invariants", "no_shift.json"], 4),
    (
        "invariants_wrong_degree",
        &["invariants", "wrong_degree.json"],
        3,
    ),
    ("invariants_malformed", &["invariants", "malformed.json"], 2),
    (
        "invariants_trailing_zero",
        &["invariants", "trailing_zero.json"],
        2,
    ),
    (
        "invariants_missing_file",
        &["invariants", "missing.json"],
        2,
    ),
    ("invariants_text_x7", &["invariants", "x7_minus_1.txt"], 4),
    (
        "invariants_numeric",
        &["invariants", "--numeric", "palindromic_sextic.txt"],
        0,
    ),
    (
        "invariants_bad_tol",
        &[
            "invariants",
            "--numeric",
            "--tol=0",
            "palindromic_sextic.txt",
        ],
        2,
    ),
    ("classify_s3", &["classify", "s3_curve.json"], 0),
    ("classify_generic", &["classify", "generic.json"], 0),
    (
        "classify_g2_palindromic",
        &["classify", "--json", "g2_palindromic.json"],
        0,
    ),
    ("classify_lift_order4", &["classify", "lift_order4.json"], 0),
    ("classify_singular", &["classify", "s3_singular.json"], 3),
    (
        "isomorphic_scaled",
        &["isomorphic", "s3_curve.json", "s3_scaled.json"],
        0,
    ),
    (
        "isomorphic_distinct",
        &["isomorphic", "s3_curve.json", "other.json"],
        0,
    ),
    (
        "isomorphic_same",
        &["isomorphic", "s3_curve.json", "s3_curve.json"],
        0,
    ),
    (
        "isomorphic_not_in_locus",
        &["isomorphic", "s3_curve.json", "generic.json"],
        4,
    ),
    (
        "model_generic",
        &["model", "--genus", "3", "--u", "162,36,18"],
        0,
    ),
    (
        "model_singular",
        &["model", "--genus", "3", "--u", "162,72,18"],
        5,
    ),
    ("model_precondition", &["model", "--u", "82,20,6"], 5),
    (
        "model_g2_d8",
        &["model", "--family", "g2_D8", "--u", "-16,8"],
        0,
    ),
    (
        "model_g2_v4a",
        &["model", "--family", "g2_V4_a", "--u", "3,2"],
        0,
    ),
    (
        "model_g2_v4b",
        &["model", "--family", "g2_V4_b", "--u", "5,0"],
        0,
    ),
    (
        "model_aut16",
        &["model", "--family", "g3_aut16", "--w", "3"],
        0,
    ),
    (
        "model_aut16_missing_w",
        &["model", "--family", "g3_aut16"],
        5,
    ),
    ("model_bad_u", &["model", "--u", "1,x"], 2),
    (
        "model_unknown_family",
        &["model", "--family", "g4_magic", "--u", "1,2"],
        2,
    ),
    ("decompose_even", &["decompose", "even_quartic.json"], 0),
    ("decompose_shifted", &["decompose", "shifted_even.json"], 0),
    (
        "decompose_indecomposable",
        &["decompose", "indecomposable.json"],
        0,
    ),
    ("usage_unknown_command", &["frobnicate"], 2),
    ("usage_missing_argument", &["invariants"], 2),
];

pub fn dir(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join(name)
}

pub fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_hyperell"))
        .args(args)
        .current_dir(dir("fixtures"))
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("utf-8"),
    )
}

/// Runs every case against its golden file; returns one message per mismatch.
pub fn check_golden(update: bool) -> Vec<String> {
    let mut failures = Vec::new();
    for (name, args, code) in CASES {
        let (got_code, stdout) = run(args);
        if got_code != *code {
            failures.push(format!("{name}: exit {got_code}, expected {code}"));
        }
        let path = dir("golden").join(format!("{name}.json"));
        if update {
            fs::write(&path, &stdout).unwrap();
            continue;
        }
        match fs::read_to_string(&path) {
            Ok(expected) if expected == stdout => {}
            Ok(_) => failures.push(format!(
                "{name}: output differs from {}\n{stdout}",
                path.display()
            )),
            Err(_) => failures.push(format!("{name}: missing golden file {}", path.display())),
        }
    }
    failures
}
