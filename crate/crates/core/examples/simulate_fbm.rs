//! Exact fractional Brownian motion on a grid and the drifted field `Z`.
//!
//! ```text
//! cargo run --example simulate_fbm -- 0.7 0.05 2
//! ```
//! Arguments: `alpha delta T` (defaults 0.7, 0.05, 2).

use pickands::montecarlo::{replicate, Schedule};
use pickands::rng::replication_stream;
use pickands::{fbm_covariance, GridSpec, PathSampler};

fn arg(i: usize, default: f64) -> f64 {
    std::env::args().nth(i).and_then(|s| s.parse().ok()).unwrap_or(default)
}

fn main() -> pickands::Result<()> {
    let (alpha, delta, horizon) = (arg(1, 0.7), arg(2, 0.05), arg(3, 2.0));
    let grid = GridSpec::two_sided(alpha, delta, horizon)?;
    let sampler = PathSampler::new(grid)?;
    if let Some(plan) = sampler.plan() {
        let min = plan.eigenvalues().iter().cloned().fold(f64::INFINITY, f64::min);
        println!("{grid}: circulant size {}, smallest eigenvalue {min:.3e}", plan.m());
    } else {
        println!("{grid}: exact special-case sampler");
    }

    let path = sampler.sample(&mut replication_stream(1, 0));
    println!("{:>8} {:>12} {:>12}", "t", "B(t)", "Z(t)");
    let step = (grid.len() / 10).max(1);
    for i in (0..grid.len()).step_by(step) {
        println!("{:>8.3} {:>12.6} {:>12.6}", grid.time(i), path.b[i], path.z[i]);
    }

    // Empirical Var B(T) and Cov(B(-T), B(T)) against the exact values.
    let (first, last) = (0, grid.len() - 1);
    let out = replicate(&sampler, &Schedule::new(2, 20_000), 2, false, |p, out| {
        out[0] = p.b[last] * p.b[last];
        out[1] = p.b[first] * p.b[last];
    })?;
    let (t0, t1) = (grid.time(first), grid.time(last));
    for (j, (s, t)) in [(t1, t1), (t0, t1)].into_iter().enumerate() {
        let st = &out.stats[j];
        println!(
            "E[B({s})B({t})] = {:.4} +/- {:.4}, exact {:.4}",
            st.mean(),
            st.std_err(),
            fbm_covariance(alpha, s, t)?
        );
    }
    Ok(())
}
