//! Exit-criteria suite: every verification check at its stated tolerance,
//! one printed line per criterion.

use std::time::Instant;

use gamma_qm::cli::verify;

#[test]
fn acceptance_criteria_full() {
    let start = Instant::now();
    let results = verify::run_all(false);
    let mut all_passed = true;
    for check in &results {
        println!("{}", check.line());
        all_passed &= check.passed;
    }
    let elapsed = start.elapsed().as_secs_f64();
    let within_budget = elapsed < 300.0;
    println!(
        "[{}] A10  end-to-end runtime        {elapsed:>7.2}s  budget 300s",
        if all_passed && within_budget { "PASS" } else { "FAIL" }
    );
    assert!(all_passed, "at least one acceptance criterion failed");
    assert!(within_budget, "full suite took {elapsed:.1}s, budget is 300s");
}

#[test]
fn acceptance_quick_subset_within_budget() {
    let start = Instant::now();
    let results = verify::run_all(true);
    for check in &results {
        println!("{}", check.line());
        assert!(check.passed, "{}", check.line());
    }
    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 30.0, "quick subset took {elapsed:.1}s, budget is 30s");
}

#[test]
fn acceptance_suite_catches_injected_fault() {
    // 1% perturbation of the normalization constant must trip the check
    let result = verify::check_normalization_with_scale(true, 1.01);
    assert!(!result.passed, "suite failed to catch the fault: {}", result.detail);
}
