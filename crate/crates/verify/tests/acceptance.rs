use nncurv_verify::{run_suite, SuiteConfig};

fn main() {
    let seed = std::env::var("NNCURV_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(7);
    let report = run_suite(&SuiteConfig::new(seed), &[]);
    for c in &report.criteria {
        println!("{}", c.line());
    }
    println!(
        "acceptance: {} passed, {} failed (seed {seed})",
        report.passed, report.failed
    );
    if !report.all_passed() {
        std::process::exit(1);
    }
}
