//! Empirical tail `P{ξ > x}` with Wilson intervals.
//!
//! ```text
//! cargo run --release --example tail -- 0.5 0.1 10 100000
//! ```

use pickands::estimate_tail;
use pickands::studies::log_square_slope;

fn arg(i: usize, default: f64) -> f64 {
    std::env::args().nth(i).and_then(|s| s.parse().ok()).unwrap_or(default)
}

fn main() -> pickands::Result<()> {
    let (alpha, delta, horizon) = (arg(1, 0.5), arg(2, 0.1), arg(3, 10.0));
    let reps = arg(4, 100_000.0) as u64;
    let cap = 1.0 / delta;
    let mut thresholds = vec![1.5, 2.0, 3.0, 4.0, 6.0];
    thresholds.retain(|&x| x < cap);
    thresholds.push(cap);
    let tail = estimate_tail(alpha, delta, horizon, reps, &thresholds, 0, None)?;
    println!("{:>8} {:>10} {:>12} {:>12}", "x", "p_hat", "lower", "upper");
    for (i, x) in thresholds.iter().enumerate() {
        println!("{x:>8} {:>10.2e} {:>12.2e} {:>12.2e}", tail.probabilities[i], tail.lower[i], tail.upper[i]);
    }
    println!("max xi = {:.4} (hard cap 1/delta = {cap})", tail.summary.max);
    match log_square_slope(&tail) {
        Some(fit) => println!("slope of log p_hat on (log x)^2: {:.3} +/- {:.3}", fit.slope, fit.slope_se),
        None => println!("too few thresholds with exceedances for a slope"),
    }
    Ok(())
}
