//! End-to-end acceptance gate: one test per verification area, each
//! printing its pass/fail line (visible with --nocapture) and enforcing
//! the runtime budget where one is stated.

use frobsplit_core::suites::{self, CriterionReport, SuiteConfig};

fn gate(report: CriterionReport, budget_ms: Option<u128>) {
    println!(
        "[{}] criterion {} {} ({} ms): {}",
        if report.passed { "PASS" } else { "FAIL" },
        report.index,
        report.name,
        report.millis,
        report.detail
    );
    if let Some(budget) = budget_ms {
        assert!(
            report.millis < budget,
            "criterion {} took {} ms, budget {} ms",
            report.index,
            report.millis,
            budget
        );
    }
    assert!(report.passed, "criterion {} failed: {}", report.index, report.detail);
}

fn config() -> SuiteConfig {
    SuiteConfig::default()
}

#[test]
fn criterion_1_witt_ring_laws() {
    gate(suites::criterion_1(&config()), Some(60_000));
}

#[test]
fn criterion_2_witt_module_basis() {
    gate(suites::criterion_2(&config()), None);
}

#[test]
fn criterion_3_hasse_fedder() {
    gate(suites::criterion_3(&config()), None);
}

#[test]
fn criterion_4_quadric_sections() {
    gate(suites::criterion_4(&config()), None);
}

#[test]
fn criterion_5_quasi_split_heights() {
    gate(suites::criterion_5(&config()), Some(600_000));
}

#[test]
fn criterion_6_cartier_decomposition() {
    gate(suites::criterion_6(&config()), None);
}

#[test]
fn criterion_7_witt_basechange() {
    gate(suites::criterion_7(&config()), None);
}

#[test]
fn criterion_8_conjugate_filtration() {
    gate(suites::criterion_8(&config()), Some(60_000));
}
