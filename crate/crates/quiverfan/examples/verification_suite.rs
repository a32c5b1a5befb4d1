//! Run the full verification suite from the library (the `quiverfan
//! verify` subcommand wraps exactly this).
//!
//! ```bash
//! cargo run --release --example verification_suite
//! ```

use quiverfan::verify::{run_verify_suite, VerifyConfig};

fn main() -> quiverfan::Result<()> {
    let cfg = VerifyConfig::default();
    let report = run_verify_suite(&cfg)?;
    for check in &report.checks {
        println!(
            "{} {:<28} {} [{} ms]",
            if check.passed { "PASS" } else { "FAIL" },
            check.name,
            check.details,
            check.wall_ms
        );
    }
    println!(
        "\n{} checks over {:?}, seed {}: {}",
        report.checks.len(),
        report.graphs,
        report.seed,
        if report.all_passed() {
            "all passed"
        } else {
            "FAILURES PRESENT"
        }
    );
    std::process::exit(if report.all_passed() { 0 } else { 1 });
}
