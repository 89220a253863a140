//! Time propagation on a small edge-count ladder at fixed node count and fit
//! a line to the timings.

use slpa::cli::{bench, BenchReport, Sizing};

pub fn run_example() -> BenchReport {
    bench(&[2_000, 4_000, 8_000, 16_000], Sizing::Nodes(1_000), 20, 1, 5).expect("valid ladder")
}

#[allow(dead_code)]
fn main() {
    let report = run_example();
    print!("{}", report.to_csv());
    println!("{}", report.fit_summary());
}
