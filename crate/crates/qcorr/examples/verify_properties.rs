//! In-process numerical audit: run all three verification suites for every
//! distance at a reduced sample count and print the check table. The same
//! audit is available from the command line as `qcorr verify <suite>`.

use qcorr::{
    verify_distance_axioms, verify_measure_conditions, verify_prop_vi_preconditions, Distance,
    Verdict, VerificationSuiteResult,
};

fn print_suite(result: &VerificationSuiteResult) {
    println!("[{}] {}", result.distance, result.suite);
    for check in &result.checks {
        let tol = check
            .tolerance
            .map(|t| format!("{t:.0e}"))
            .unwrap_or_else(|| "recorded".into());
        println!(
            "  {:<38} {:>4} samples  worst {:>9.2e}  tol {:>9}  {}",
            check.name,
            check.samples,
            check.worst_residual,
            tol,
            match check.verdict {
                Verdict::Pass => "pass",
                Verdict::Fail => "FAIL",
            }
        );
    }
}

fn main() {
    let seed = 1;
    let mut all_passed = true;
    for d in Distance::ALL {
        let suites = [
            verify_distance_axioms(d, 25, seed, (2, 2)),
            verify_measure_conditions(d, 8, seed, (2, 2)),
            verify_prop_vi_preconditions(d, 4, seed),
        ];
        for s in &suites {
            print_suite(s);
            all_passed &= s.passed();
        }
        println!();
    }
    if !all_passed {
        eprintln!("at least one asserted check failed");
        std::process::exit(1);
    }
    println!("all asserted checks passed");
}
