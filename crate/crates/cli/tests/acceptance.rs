//! The ten acceptance criteria at desk scale. Prints one line per
//! criterion and fails if any criterion fails.
//!
//! `FLATLAB_ONLY=2,5` restricts the run to the listed criteria.

use std::process::ExitCode;

use flatlab_cli::verify::run_suite;
use flatlab_cli::Profile;
use flatlab_core::par::Parallelism;

fn main() -> ExitCode {
    let only: Vec<usize> = std::env::var("FLATLAB_ONLY")
        .ok()
        .map(|s| s.split(',').filter_map(|x| x.trim().parse().ok()).collect())
        .unwrap_or_default();
    let results = run_suite(Profile::Desk, &only, Parallelism::Parallel);
    for r in &results {
        println!("{}", r.line());
    }
    let failed = results.iter().filter(|r| !r.pass).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
