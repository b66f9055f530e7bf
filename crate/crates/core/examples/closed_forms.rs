//! Closed-form discrete Pickands constants for α ∈ {1, 2}.
//!
//! ```text
//! cargo run --example closed_forms
//! ```

use pickands::closedform::{alpha1_rate_constant, alpha2_rate_constant, H1_CONTINUOUS, H2_CONTINUOUS};
use pickands::{h1_delta, h2_delta, v_eta, v_eta_prime, zeta_half};

fn main() -> pickands::Result<()> {
    println!("{:>8}  {:>20}  {:>10}  {:>20}", "delta", "H_1^delta", "bound", "H_2^delta");
    for delta in [2.0, 1.0, 0.5, 0.25, 0.1, 0.01] {
        let h1 = h1_delta(delta)?;
        let h2 = h2_delta(delta)?;
        println!("{delta:>8}  {:>20.16}  {:>10.1e}  {:>20.16}", h1.value, h1.truncation_bound, h2.value);
    }

    println!("\nzeta(1/2) = {:.16}", zeta_half());
    println!("normalized gaps approach their limits:");
    for delta in [1e-2, 1e-3, 1e-4] {
        let r = (H1_CONTINUOUS - h1_delta(delta)?.value) / delta.sqrt();
        println!("  alpha=1 delta={delta:e}: {r:.7} (limit {:.7})", alpha1_rate_constant());
    }
    for delta in [1e-1, 1e-2] {
        let r = (H2_CONTINUOUS - h2_delta(delta)?.value) / (delta * delta);
        println!("  alpha=2 delta={delta:e}: {r:.7} (limit {:.7})", alpha2_rate_constant());
    }

    println!("\nv(eta) = 1/H_1^eta is increasing:");
    for eta in [0.1, 0.5, 1.0, 2.0] {
        println!("  eta={eta}: v={:.10} v'={:.10}", v_eta(eta)?.value, v_eta_prime(eta)?.value);
    }
    Ok(())
}
