//! Acceptance gate: runs every criterion of the verification suite and
//! prints one pass/fail line per criterion.

use uncregion::verify::{run_all, DEFAULT_SEED};

#[test]
fn acceptance_suite() {
    let report = run_all(DEFAULT_SEED);
    for c in &report.criteria {
        println!(
            "{} {}: {} (tolerance: {})",
            c.id,
            if c.pass { "pass" } else { "FAIL" },
            c.measured,
            c.tolerance
        );
    }
    let failing: Vec<&str> = report
        .criteria
        .iter()
        .filter(|c| !c.pass)
        .map(|c| c.id.as_str())
        .collect();
    assert!(
        report.all_pass,
        "failing acceptance criteria: {failing:?}"
    );
}
