use std::io::Write;
use verbalforge::group::cap_from_env;
use verbalforge::suite::{run_suite, Verdict};

#[test]
fn acceptance() {
    let rows = run_suite(cap_from_env());
    // Written past the test harness's capture so the table shows in every run.
    let mut err = std::io::stderr().lock();
    for r in &rows {
        let _ = writeln!(err, "{}", r);
    }
    let failed: Vec<_> = rows.iter().filter(|r| r.verdict != Verdict::Pass).map(|r| r.id).collect();
    assert!(failed.is_empty(), "criteria not passing: {:?}", failed);
}
