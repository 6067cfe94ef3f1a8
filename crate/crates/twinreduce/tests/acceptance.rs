//! Acceptance run: one line per criterion, nonzero exit on any failure.

use std::process::ExitCode;
use std::time::Instant;

use twinreduce::random::SEED;
use twinreduce::{run_suite, Suite};

fn main() -> ExitCode {
    let mut failed = 0;
    for (i, suite) in Suite::ALL.into_iter().enumerate() {
        let start = Instant::now();
        let report = run_suite(suite, SEED);
        let elapsed = start.elapsed();
        let in_time = elapsed <= suite.budget();
        let ok = report.holds() && in_time;
        println!(
            "{} criterion {} ({}): {}/{} checks hold, {:.2}s of {}s",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            suite.name(),
            report.summary.passed,
            report.summary.total,
            elapsed.as_secs_f64(),
            suite.budget().as_secs(),
        );
        if !in_time {
            println!("    over the time budget");
        }
        for c in report.failures() {
            println!("    {}: {} {} {} ({})", c.name, c.lhs, c.relation.symbol(), c.rhs, c.note.as_deref().unwrap_or(&c.anchor));
        }
        failed += usize::from(!ok);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
