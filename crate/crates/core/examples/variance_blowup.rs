//! Definitional estimator `(1/S) sup e^Z` versus the ratio estimator `ξ`.
//!
//! The variance of the former grows without bound in `S`; the variance of
//! `ξ(T)` stays bounded. With finitely many replications the definitional
//! variance is dominated by rare large excursions, so its sample variance
//! is erratic.
//!
//! ```text
//! cargo run --release --example variance_blowup -- 0.5 0.1 10000
//! ```

use pickands::studies::{definitional_variances, ratio_variances};

fn arg(i: usize, default: f64) -> f64 {
    std::env::args().nth(i).and_then(|s| s.parse().ok()).unwrap_or(default)
}

fn main() -> pickands::Result<()> {
    let (alpha, delta) = (arg(1, 0.5), arg(2, 0.1));
    let reps = arg(3, 10_000.0) as u64;
    let ladder = [8.0, 16.0, 32.0, 64.0];
    let def = definitional_variances(alpha, delta, &ladder, reps, 0, None)?;
    let xi = ratio_variances(alpha, delta, &ladder, reps, 0, None)?;
    println!("{:>6} {:>22} {:>22}", "S=T", "Var definitional", "Var xi");
    for (d, x) in def.iter().zip(&xi) {
        println!(
            "{:>6} {:>12.4e} ({:>7.1e}) {:>12.4e} ({:>7.1e})",
            d.horizon, d.variance, d.std_err, x.variance, x.std_err
        );
    }
    Ok(())
}
