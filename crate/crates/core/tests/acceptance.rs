//! Runs every acceptance criterion, one status line each, and fails if any
//! criterion fails or exceeds its time budget.

use std::process::ExitCode;
use std::time::Duration;

use dahecke::verify::run_criterion;

const BUDGET_SECS: [u64; 10] = [60, 60, 300, 60, 300, 600, 120, 60, 60, 300];

fn main() -> ExitCode {
    let mut failed = Vec::new();
    for id in 1..=10u8 {
        let r = run_criterion(id).expect("criterion exists");
        let budget = Duration::from_secs(BUDGET_SECS[id as usize - 1]);
        let in_time = r.elapsed <= budget;
        println!("{r}");
        println!("    time: {:.2}s of {}s", r.elapsed.as_secs_f64(), budget.as_secs());
        if !in_time {
            println!("    fail: over the time budget");
        }
        if !r.passed() || !in_time {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 10 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria {failed:?}");
        ExitCode::FAILURE
    }
}
