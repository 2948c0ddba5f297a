//! The verification checklist as a test target: one line per check, every
//! tolerance pinned inside the library's acceptance module.

use epv_core::acceptance::{run_all, CheckStatus};

#[test]
fn acceptance_checklist() {
    let results = run_all(true);
    let mut failed = Vec::new();
    for r in &results {
        let mark = match r.status {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Skipped => "SKIP",
        };
        println!("{mark} {} {}: {}", r.id, r.label, r.details);
        if r.status == CheckStatus::Fail {
            failed.push(format!("{} {}: {}", r.id, r.label, r.details));
        }
    }
    assert_eq!(results.len(), 8);
    assert!(
        results.iter().all(|r| r.status != CheckStatus::Skipped),
        "full run must not skip checks"
    );
    assert!(failed.is_empty(), "failed checks:\n{}", failed.join("\n"));
}
