//! Runs every acceptance criterion and prints one line each.
//!
//! `LAGMAT_MAX_N=3` adds the `n = 3` antisymmetric enumeration to the
//! homotopy and property runs.

use std::process::ExitCode;

use lagmat::harness::{run_all, Options};

fn main() -> ExitCode {
    let results = run_all(Options::from_env());
    for c in &results {
        println!("{}", c.line());
    }
    let failed = results.iter().filter(|c| !c.passed).count();
    println!("acceptance: {} of {} criteria passed", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
