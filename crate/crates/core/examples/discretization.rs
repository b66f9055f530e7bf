//! Discretization error along a δ-ladder.
//!
//! Closed forms give the exact error for α ∈ {1, 2}; for other α the
//! half-step differences are estimated on nested sub-grids of one path.
//!
//! ```text
//! cargo run --release --example discretization -- 0.5 20000
//! ```

use pickands::studies::{run_study, Study, StudyConfig};

fn main() -> pickands::Result<()> {
    let alpha: f64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0.5);
    let reps: u64 = std::env::args().nth(2).and_then(|s| s.parse().ok()).unwrap_or(20_000);

    let exact = run_study(&StudyConfig::new(Study::Discretization).alphas(&[1.0, 2.0]))?;
    for row in exact.stat("ratio") {
        println!("alpha={} delta={:e}: (H - H^delta)/delta^p = {:.7}", row.alpha, row.delta, row.value);
    }
    for check in &exact.checks {
        println!("  [{}] {} ({})", if check.passed { "PASS" } else { "FAIL" }, check.name, check.detail);
    }

    let mc =
        run_study(&StudyConfig::new(Study::Discretization).alphas(&[alpha]).deltas(&[0.4, 0.2, 0.1, 0.05]).reps(reps))?;
    for row in mc.stat("H_delta_mc") {
        println!("alpha={alpha} delta={}: H^delta(T=8) = {:.5} +/- {:.5}", row.delta, row.value, row.std_err);
    }
    for row in mc.stat("half_step_diff") {
        println!("  H^{{{}}} - H^{{{}}} = {:.5} +/- {:.5}", row.delta / 2.0, row.delta, row.value, row.std_err);
    }
    if let Some(slope) = mc.stat("slope").next() {
        println!("  log-log slope of the half-step differences: {:.3} +/- {:.3}", slope.value, slope.std_err);
    }
    Ok(())
}
