//! Truncation error `E ξ(T)` along a T-ladder with common random numbers.
//!
//! Every horizon is a window of one path on `[−T_max, T_max]`, so the
//! differences to `T_max` have paired standard errors far below the
//! per-horizon ones.
//!
//! ```text
//! cargo run --release --example truncation -- 1 0.5 20000
//! ```

use pickands::closedform::h_delta;
use pickands::studies::truncation_ladder;

fn arg(i: usize, default: f64) -> f64 {
    std::env::args().nth(i).and_then(|s| s.parse().ok()).unwrap_or(default)
}

fn main() -> pickands::Result<()> {
    let (alpha, delta) = (arg(1, 1.0), arg(2, 0.5));
    let reps = arg(3, 20_000.0) as u64;
    let ladder = [2.0, 4.0, 6.0, 8.0, 12.0, 16.0, 24.0];
    let points = truncation_ladder(alpha, delta, &ladder, reps, 0, None)?;
    println!("{:>5} {:>10} {:>10} {:>12} {:>12}", "T", "mean", "se", "diff(Tmax)", "paired se");
    for p in &points {
        println!(
            "{:>5} {:>10.5} {:>10.5} {:>12.5} {:>12.5}",
            p.horizon, p.mean, p.std_err, p.abs_diff, p.paired_std_err
        );
    }
    if let Some(exact) = h_delta(alpha, delta)? {
        println!("closed form H^delta = {:.5}", exact.value);
    }
    Ok(())
}
