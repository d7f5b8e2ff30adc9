//! Acceptance gate: every verification suite must certify at p = 5, within
//! its stated wall-clock budget, printing one line per criterion.

use std::path::PathBuf;
use std::process::Command;

const CRITERIA: [(&str, u128); 15] = [
    ("witt-oracle", 5_000),
    ("lemma-product", 10_000),
    ("ind-socle", 60_000),
    ("tower-bound", 120_000),
    ("p-plus-1", 120_000),
    ("ext-char-table", 600_000),
    ("ext-tower-table", 900_000),
    ("hom-u2", 30_000),
    ("gr-ann", 5_000),
    ("A-ext-table", 10_000),
    ("prime-filt", 60_000),
    ("h-tilde", 30_000),
    ("nonexist-replay", 1_800_000),
    ("gabber", 60_000),
    ("weight-shape", 5_000),
];

#[allow(dead_code)]
#[path = "../src/report.rs"]
mod report;
#[allow(dead_code)]
#[path = "../src/suites.rs"]
mod suites;

#[test]
fn acceptance_criteria_at_p5() {
    let mut failures = Vec::new();
    for (id, budget_ms) in CRITERIA {
        let r = suites::run_suite(id, 5, 0xDEFA17, 2).expect("known suite");
        let ok = r.status != report::Status::Failed;
        let in_budget = r.wall_ms <= budget_ms;
        println!(
            "{} {:<18} cases {}/{} in {} ms (budget {} ms)",
            if ok && in_budget { "PASS" } else { "FAIL" },
            id,
            r.cases_passed,
            r.cases_run,
            r.wall_ms,
            budget_ms
        );
        if !ok {
            failures.push(format!(
                "{id}: {}",
                r.counterexample
                    .map(|c| c.case)
                    .unwrap_or_else(|| "unknown case".into())
            ));
        } else if !in_budget {
            failures.push(format!("{id}: over budget ({} ms)", r.wall_ms));
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}

fn binary() -> PathBuf {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.pop();
    p.pop();
    p.push("target");
    p.push(if cfg!(debug_assertions) { "debug" } else { "release" });
    p.push("qmodrep");
    p
}

#[test]
fn cli_exit_codes() {
    let bin = binary();
    if !bin.exists() {
        // binary not built in this invocation; the library-level acceptance
        // already covers the criteria
        eprintln!("skipping: {} not built", bin.display());
        return;
    }
    // unknown suite → usage error 2
    let out = Command::new(&bin)
        .args(["verify", "no-such-suite"])
        .output()
        .expect("spawn");
    assert_eq!(out.status.code(), Some(2));
    // passing suite → 0
    let out = Command::new(&bin)
        .args(["verify", "gr-ann"])
        .output()
        .expect("spawn");
    assert_eq!(out.status.code(), Some(0));
    // malformed recipe → 2
    let dir = std::env::temp_dir().join("qmodrep-acceptance");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let out = Command::new(&bin)
        .args(["construct", bad.to_str().unwrap()])
        .output()
        .expect("spawn");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_are_byte_stable() {
    let a = suites::run_suite("gr-ann", 5, 7, 2).unwrap();
    let b = suites::run_suite("gr-ann", 5, 7, 2).unwrap();
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap()
    );
    let a = suites::run_suite("prime-filt", 5, 7, 2).unwrap();
    let b = suites::run_suite("prime-filt", 5, 7, 2).unwrap();
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap()
    );
}
