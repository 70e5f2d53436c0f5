//! Runs every acceptance criterion at its pinned tolerance and prints one
//! PASS/FAIL line per criterion. Set `LINPROP_SEED` to change the draws.

use linprop::verify::{run_all, DEFAULT_SEED};

#[test]
fn acceptance_criteria() {
    let seed = std::env::var("LINPROP_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SEED);
    let summary = run_all(seed);
    println!("acceptance (seed {seed}):");
    for c in &summary.checks {
        println!("{}", c.line());
    }
    assert_eq!(summary.checks.len(), 13);
    let failed: Vec<String> = summary.failures().iter().map(|c| c.line()).collect();
    assert!(failed.is_empty(), "failed criteria:\n{}", failed.join("\n"));
}
