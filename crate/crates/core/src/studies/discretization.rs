//! Discretization error `H_α − H_α^δ` along a δ-ladder.
//!
//! For `α ∈ {1, 2}` the closed forms give the error exactly and the study
//! checks the known limits of the normalized error. For other `α` the
//! ladder must halve at each step: one path is sampled on the finest grid
//! and every coarser grid is a sub-grid of it, so the half-step differences
//! `H^{δ/2} − H^{δ}` are estimated with common random numbers. Only upper
//! rates are known there, so the fitted slope is reported without a check.

use crate::closedform::{alpha1_rate_constant, alpha2_rate_constant, h_continuous, h_delta};
use crate::error::{Error, Result};
use crate::estimator::xi_subgrid;
use crate::fbm::{GridSpec, PathSampler};
use crate::montecarlo::{replicate, Schedule};
use crate::stats::linear_fit;

use super::{Report, Study, StudyConfig};

/// Tolerance on `(H_1 − H_1^δ)/√δ − (−ζ(1/2)/√π)` at the finest δ.
pub const ALPHA1_LIMIT_TOL: f64 = 1e-3;
/// Tolerance on `(H_2 − H_2^δ)/δ² − 1/(12√π)` at the finest δ.
pub const ALPHA2_LIMIT_TOL: f64 = 1e-4;

pub fn study_discretization(config: &StudyConfig) -> Result<Report> {
    let mut report = Report::new();
    for alpha in config.alphas_or(&[1.0, 2.0]) {
        let part =
            if alpha == 1.0 || alpha == 2.0 { exact_ladder(config, alpha)? } else { paired_ladder(config, alpha)? };
        report.extend(part);
    }
    Ok(report)
}

fn exact_ladder(config: &StudyConfig, alpha: f64) -> Result<Report> {
    let name = Study::Discretization.name();
    let (default, power, limit, tol) = if alpha == 1.0 {
        (&[1e-2, 1e-3, 1e-4][..], 0.5, alpha1_rate_constant(), ALPHA1_LIMIT_TOL)
    } else {
        (&[1e-1, 1e-2][..], 2.0, alpha2_rate_constant(), ALPHA2_LIMIT_TOL)
    };
    let mut deltas = config.deltas_or(default);
    deltas.sort_by(|a, b| b.total_cmp(a));
    deltas.dedup();
    let continuous = h_continuous(alpha).expect("alpha 1 or 2");

    let mut report = Report::new();
    let mut log_delta = Vec::new();
    let mut log_gap = Vec::new();
    let mut distance = Vec::new();
    for &delta in &deltas {
        let v = h_delta(alpha, delta)?.expect("alpha 1 or 2");
        let gap = continuous - v.value;
        let ratio = gap / delta.powf(power);
        let p = super::report::Point { study: name, alpha, delta, horizon: 0.0, reps: 0, seed: 0 };
        report.rows.push(p.row("H_delta", v.value, v.truncation_bound));
        report.rows.push(p.row("gap", gap, v.truncation_bound));
        report.rows.push(p.row("ratio", ratio, v.truncation_bound / delta.powf(power)));
        if gap > 0.0 {
            log_delta.push(delta.ln());
            log_gap.push(gap.ln());
        }
        distance.push((ratio - limit).abs());
    }
    let p = super::report::Point { study: name, alpha, delta: 0.0, horizon: 0.0, reps: 0, seed: 0 };
    report.rows.push(p.row("limit", limit, 0.0));
    if let Some(fit) = linear_fit(&log_delta, &log_gap) {
        report.rows.push(p.row("slope", fit.slope, fit.slope_se));
    }
    if let (Some(&finest), Some(&d)) = (deltas.last(), distance.last()) {
        report.check(
            format!("alpha={alpha}: normalized gap at delta={finest} within {tol:e} of limit {limit:.7}"),
            d <= tol,
            format!("|ratio - limit| = {d:.3e}"),
        );
    }
    report.check(
        format!("alpha={alpha}: normalized gap approaches limit monotonically"),
        distance.windows(2).all(|w| w[1] < w[0]),
        format!("distances [{}]", distance.iter().map(|d| format!("{d:.3e}")).collect::<Vec<_>>().join(", ")),
    );
    Ok(report)
}

fn paired_ladder(config: &StudyConfig, alpha: f64) -> Result<Report> {
    let name = Study::Discretization.name();
    let mut deltas = config.deltas_or(&[0.4, 0.2, 0.1, 0.05]);
    deltas.sort_by(|a, b| b.total_cmp(a));
    if deltas.len() < 2 {
        return Err(Error::Config("a discretization ladder needs at least two deltas".into()));
    }
    if deltas.windows(2).any(|w| ((w[0] / w[1]) - 2.0).abs() > 1e-9) {
        return Err(Error::Config(format!("Monte Carlo ladders must halve at each step, got {deltas:?}")));
    }
    let finest = *deltas.last().expect("non-empty");
    let levels = deltas.len();
    let strides: Vec<usize> = (0..levels).rev().map(|j| 1usize << j).collect();

    let mut report = Report::new();
    for horizon in config.horizons_or(&[8.0]) {
        if horizon < deltas[0] {
            return Err(Error::Config(format!("T={horizon} is shorter than the coarsest delta {}", deltas[0])));
        }
        let grid = GridSpec::two_sided(alpha, finest, horizon)?;
        let sampler = PathSampler::new(grid)?;
        let schedule = Schedule::new(config.seed, config.reps).threads(config.threads);
        // Columns: ξ at each level (coarse to fine), then each fine-minus-coarse difference.
        let width = 2 * levels - 1;
        let out = replicate(&sampler, &schedule, width, false, |path, out| {
            for (j, &stride) in strides.iter().enumerate() {
                out[j] = xi_subgrid(path, stride, horizon);
            }
            for j in 0..levels - 1 {
                out[levels + j] = out[j + 1] - out[j];
            }
        })?;

        let mut log_delta = Vec::new();
        let mut log_diff = Vec::new();
        for (j, &delta) in deltas.iter().enumerate() {
            let s = &out.stats[j];
            report.rows.push(config.point(name, alpha, delta, horizon).row("H_delta_mc", s.mean(), s.std_err()));
        }
        for (j, &delta) in deltas.iter().enumerate().take(levels - 1) {
            let s = &out.stats[levels + j];
            report.rows.push(config.point(name, alpha, delta, horizon).row("half_step_diff", s.mean(), s.std_err()));
            if s.mean() > 0.0 {
                log_delta.push(delta.ln());
                log_diff.push(s.mean().ln());
            }
        }
        if let Some(fit) = linear_fit(&log_delta, &log_diff) {
            report.rows.push(config.point(name, alpha, 0.0, horizon).row("slope", fit.slope, fit.slope_se));
        }
    }
    Ok(report)
}
