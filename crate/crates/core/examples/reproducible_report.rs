//! Seeded study reports: identical CSV for any thread count.
//!
//! ```text
//! cargo run --release --example reproducible_report
//! ```

use pickands::studies::{run_study, Study, StudyConfig};

fn main() -> pickands::Result<()> {
    let cfg =
        StudyConfig::new(Study::Estimate).alphas(&[1.0, 2.0]).deltas(&[0.5]).horizons(&[24.0]).reps(5_000).seed(2024);
    let serial = run_study(&cfg.clone().threads(Some(1)))?;
    let parallel = run_study(&cfg.threads(Some(4)))?;
    print!("{}", serial.to_csv());
    println!("byte-identical across thread counts: {}", serial.to_csv() == parallel.to_csv());
    for check in &serial.checks {
        println!("[{}] {} ({})", if check.passed { "PASS" } else { "FAIL" }, check.name, check.detail);
    }
    Ok(())
}
