//! The acceptance suite: one test per criterion, each printing a single
//! pass/fail line.  Run with `cargo test --test acceptance -- --nocapture`
//! to see the lines; every criterion asserts all of its rows.

use sixmoment::report::CheckRow;
use sixmoment::suites::{criterion_rows, SuiteOptions};

fn run(index: u8, label: &str) {
    let opts = SuiteOptions::default();
    let start = std::time::Instant::now();
    let rows = criterion_rows(index, &opts).unwrap_or_else(|e| {
        println!("FAIL criterion {index} ({label}): error {e}");
        panic!("criterion {index} errored: {e}");
    });
    let failures: Vec<&CheckRow> = rows.iter().filter(|r| !r.passed()).collect();
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!(
        "{status} criterion {index} ({label}): {}/{} checks, {:.1}s",
        rows.len() - failures.len(),
        rows.len(),
        start.elapsed().as_secs_f64()
    );
    for row in &failures {
        println!(
            "    failed: {} measured {:.6e} threshold {:?}",
            row.name, row.measured, row.threshold
        );
    }
    assert!(failures.is_empty(), "criterion {index} ({label}) had failures");
}

#[test]
fn criterion_01_g_identity() {
    run(1, "triple-sum closed form and vanishing");
}

#[test]
fn criterion_02_h_identities() {
    run(2, "H/H*/g factorization and reconstruction");
}

#[test]
fn criterion_03_classical_sums() {
    run(3, "Weil bound, Gauss magnitude, Ramanujan formula");
}

#[test]
fn criterion_04_class_numbers() {
    run(4, "enumeration vs analytic class numbers");
}

#[test]
fn criterion_05_heegner_shrinking_sets() {
    run(5, "shrinking-set counts and trends");
}

#[test]
fn criterion_06_poisson_identity() {
    run(6, "Poisson summation cross-check");
}

#[test]
fn criterion_07_stationary_phase() {
    run(7, "stationary-phase oracles");
}

#[test]
fn criterion_08_kernels() {
    run(8, "kernel transforms and K-transform");
}

#[test]
fn criterion_09_l_functions() {
    run(9, "L-values, moments, trends, budget");
}

#[test]
fn criterion_10_sieve_bilinear() {
    run(10, "large sieve and bilinear constants");
}
