//! Monte Carlo estimate of `H_α^δ` with the truncated ratio estimator.
//!
//! ```text
//! cargo run --release --example estimate_constant -- 1.5 0.25 8 20000
//! ```
//! Arguments: `alpha delta T reps` (defaults 2, 0.5, 6, 20000). For
//! `α ∈ {1, 2}` the estimate is compared with the closed form.

use pickands::closedform::h_delta;
use pickands::Campaign;

fn arg(i: usize, default: f64) -> f64 {
    std::env::args().nth(i).and_then(|s| s.parse().ok()).unwrap_or(default)
}

fn main() -> pickands::Result<()> {
    let (alpha, delta, horizon) = (arg(1, 2.0), arg(2, 0.5), arg(3, 6.0));
    let reps = arg(4, 20_000.0) as u64;
    let summary = Campaign::new(alpha, delta, horizon, reps, 0)?.run()?;
    println!("{}", serde_json::to_string_pretty(&summary).expect("serializable"));
    if let Some(exact) = h_delta(alpha, delta)? {
        let z = (summary.mean - exact.value) / summary.std_err;
        println!("closed form {:.8}, z = {z:.2}", exact.value);
    }
    Ok(())
}
