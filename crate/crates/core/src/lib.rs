//! Estimation of continuous and discrete Pickands constants.
//!
//! The discrete constant `H_α^δ` is the expectation of the ratio
//! `sup_t e^{Z(t)} / (δ Σ_t e^{Z(t)})` taken over the grid `δZ`, where
//! `Z(t) = √2 B_α(t) − |t|^α` and `B_α` is a fractional Brownian motion with
//! Hurst index `α/2`. This crate simulates `B_α` exactly on finite grids,
//! evaluates the truncated ratio in log-domain form, runs seeded parallel
//! Monte Carlo campaigns over it, and provides the closed forms available
//! for `α ∈ {1, 2}` so the simulation can be checked against exact values.
//!
//! Module map:
//!
//! * [`fbm`]: grids, covariance oracles and exact path sampling.
//! * [`estimator`]: the truncated ratio estimator and the classical
//!   definitional estimator.
//! * [`closedform`]: `Φ`, `ζ(1/2)`, `H_1^δ`, `H_2^δ` and the auxiliary `v(η)`.
//! * [`montecarlo`]: campaigns, streaming summaries and tail frequencies.
//! * [`studies`]: the experiment drivers behind the `pickands` binary.

pub mod closedform;
pub mod error;
pub mod estimator;
pub mod fbm;
pub mod montecarlo;
pub mod rng;
pub mod stats;
pub mod studies;

pub use closedform::{h1_delta, h2_delta, normal_cdf, v_eta, v_eta_prime, zeta_half, ClosedFormValue};
pub use error::{Error, Result};
pub use estimator::{definitional_estimator, xi_truncated, EstimatorSample};
pub use fbm::{fbm_covariance, fgn_autocovariance, FbmPath, GridSpec, PathSampler, SpectralPlan};
pub use montecarlo::{estimate_tail, run_campaign, Campaign, McSummary, TailEstimate};
