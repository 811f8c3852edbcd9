//! Prints one line per acceptance criterion.
//!
//! Two criteria state values that the exact computation contradicts; they
//! are reported as FAIL and listed in `KNOWN_FAILURES` with the reason. The
//! target exits nonzero if any other criterion fails, or if a known failure
//! starts passing.

use std::process::ExitCode;
use std::time::Instant;

use gprime_core::suite::{run, SuiteOptions, CRITERIA};

const KNOWN_FAILURES: [(u8, &str); 2] = [
    (
        7,
        "3R1: −I ∈ SL2 acts as −Id and fixes every bracket, so the scalar subgroup is μ2, not {1}",
    ),
    (
        9,
        "R2: a generic binary quadratic is fixed by a Cartan subalgebra, so the dimension is 1, not 0",
    ),
];

fn main() -> ExitCode {
    let opts = SuiteOptions::default();
    let mut unexpected = Vec::new();
    for id in CRITERIA {
        let start = Instant::now();
        let r = run(id, opts);
        let status = if r.passed { "PASS" } else { "FAIL" };
        println!(
            "criterion {id}: {status}  {} ({} checks, {:.1?})",
            r.title,
            r.checks,
            start.elapsed()
        );
        for f in &r.failures {
            println!("    failure: {f}");
        }
        for n in &r.notes {
            println!("    note: {n}");
        }
        let known = KNOWN_FAILURES.iter().find(|(k, _)| *k == id);
        match (r.passed, known) {
            (false, Some((_, why))) => println!("    known: {why}"),
            (false, None) => unexpected.push(format!("criterion {id} failed")),
            (true, Some(_)) => unexpected.push(format!("criterion {id} passed but is listed as failing")),
            (true, None) => {}
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: results as recorded");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {}", unexpected.join("; "));
        ExitCode::FAILURE
    }
}
