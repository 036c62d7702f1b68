//! Runs every acceptance battery and prints one PASS/FAIL line each.
//! Built without the libtest harness so the lines are never captured.

use std::process::ExitCode;
use std::time::Instant;

use semiext::verify::{run_battery, VerifyOptions, BATTERIES};

fn main() -> ExitCode {
    let opts = VerifyOptions::default();
    let start = Instant::now();
    let mut failed = Vec::new();
    for battery in &BATTERIES {
        let t = Instant::now();
        let result = run_battery(battery, &opts);
        println!("{} ({:.2}s)", result.line(), t.elapsed().as_secs_f64());
        if !result.passed {
            failed.push(result.id);
        }
    }
    println!("total {:.2}s", start.elapsed().as_secs_f64());
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", BATTERIES.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
