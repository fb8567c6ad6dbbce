//! Drive the full verification battery from code and summarize the
//! verdicts per suite, the way the `verify` subcommand does.
//!
//! Run with: cargo run --release --example verification_run

use std::collections::BTreeMap;

use rpq_virasoro::config::RunConfig;
use rpq_virasoro::report::Verdict;
use rpq_virasoro::suites::run_report;

fn main() -> rpq_virasoro::Result<()> {
    let cfg = RunConfig::from_json(
        r#"{
            "deformation": { "preset": "arik-coon" },
            "suites": ["tau-identities", "sigma-derivation", "crochet1", "crochet2",
                       "crochet3", "witt3", "virasoro-2n", "gsva", "bell"]
        }"#,
    )?;
    let report = run_report(&cfg)?;

    let mut by_suite: BTreeMap<String, (usize, usize, usize)> = BTreeMap::new();
    for r in &report.reports {
        let base = r.identity_id.split('/').next().unwrap().to_string();
        let e = by_suite.entry(base).or_default();
        match &r.verdict {
            Verdict::Pass => e.0 += 1,
            Verdict::Fail => e.1 += 1,
            Verdict::Skipped { .. } => e.2 += 1,
        }
    }
    println!("deformation: arik-coon");
    for (suite, (pass, fail, skip)) in &by_suite {
        println!("  {suite:20} pass={pass:3} fail={fail:3} skipped={skip:3}");
    }
    println!(
        "summary: {} pass, {} fail ({} must-pass), {} skipped",
        report.summary.pass,
        report.summary.fail,
        report.summary.must_pass_failures,
        report.summary.skipped
    );

    // the first recorded counterexample, if any verdict failed
    if let Some(r) = report.reports.iter().find(|r| matches!(r.verdict, Verdict::Fail)) {
        if let Some(c) = &r.counterexample {
            println!("first counterexample ({} {:?}):", r.identity_id, r.indices);
            println!("  {}: lhs = {}, rhs = {}", c.location, c.lhs, c.rhs);
        }
    }
    Ok(())
}
