//! Truncation error along a T-ladder at fixed `(α, δ)`.
//!
//! Paths are sampled once per replication on `[−T_max, T_max]` and every
//! shorter horizon is a window of the same path (common random numbers).
//! Every ladder is checked for differences non-increasing in `T`; a
//! two-horizon ladder is also checked for a difference within the
//! combined error bars.

use crate::error::{Error, Result};
use crate::estimator::xi_window;
use crate::fbm::{GridSpec, PathSampler};
use crate::montecarlo::{replicate, Schedule};

use super::{Report, Study, StudyConfig, SIGMA_BAND};

/// Per-horizon result of a truncation campaign.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncationPoint {
    pub horizon: f64,
    pub mean: f64,
    pub std_err: f64,
    /// `|mean(T) − mean(T_max)|`.
    pub abs_diff: f64,
    /// `sqrt(se(T)² + se(T_max)²)`.
    pub combined_std_err: f64,
    /// Standard error of the replication-wise difference.
    pub paired_std_err: f64,
}

/// Runs the common-random-number campaign for one `(α, δ)` and horizon ladder.
pub fn truncation_ladder(
    alpha: f64,
    delta: f64,
    horizons: &[f64],
    reps: u64,
    seed: u64,
    threads: Option<usize>,
) -> Result<Vec<TruncationPoint>> {
    let mut horizons = horizons.to_vec();
    horizons.sort_by(f64::total_cmp);
    horizons.dedup();
    if horizons.len() < 2 {
        return Err(Error::Config("truncation study needs at least two T values".into()));
    }
    let t_max = *horizons.last().expect("non-empty");
    let grid = GridSpec::two_sided(alpha, delta, t_max)?;
    let windows = horizons.iter().map(|&t| grid.window(t)).collect::<Result<Vec<_>>>()?;
    let sampler = PathSampler::new(grid)?;
    let schedule = Schedule::new(seed, reps).threads(threads);
    let n = horizons.len();
    let out = replicate(&sampler, &schedule, 2 * n, false, |path, out| {
        for (j, w) in windows.iter().enumerate() {
            out[j] = xi_window(path, w.clone()).xi;
        }
        for j in 0..n {
            out[n + j] = out[j] - out[n - 1];
        }
    })?;
    let top = &out.stats[n - 1];
    Ok(horizons
        .iter()
        .enumerate()
        .map(|(j, &horizon)| {
            let s = &out.stats[j];
            TruncationPoint {
                horizon,
                mean: s.mean(),
                std_err: s.std_err(),
                abs_diff: (s.mean() - top.mean()).abs(),
                combined_std_err: s.std_err().hypot(top.std_err()),
                paired_std_err: out.stats[n + j].std_err(),
            }
        })
        .collect())
}

pub fn study_truncation(config: &StudyConfig) -> Result<Report> {
    let name = Study::Truncation.name();
    let horizons = config.horizons_or(&[2.0, 3.0, 4.0, 6.0]);
    let mut report = Report::new();
    for alpha in config.alphas_or(&[1.0]) {
        for delta in config.deltas_or(&[0.25]) {
            let points = truncation_ladder(alpha, delta, &horizons, config.reps, config.seed, config.threads)?;
            for pt in &points {
                let p = config.point(name, alpha, delta, pt.horizon);
                report.rows.push(p.row("mean", pt.mean, pt.std_err));
                report.rows.push(p.row("abs_diff_vs_Tmax", pt.abs_diff, pt.combined_std_err));
                report.rows.push(p.row("paired_diff_std_err", pt.paired_std_err, 0.0));
            }
            let label = format!("alpha={alpha} delta={delta}");
            let last = points.last().expect("at least two horizons");
            report.check(
                format!("{label}: T_max differs from itself by exactly 0"),
                last.abs_diff == 0.0,
                format!("{}", last.abs_diff),
            );

            if let [near, _] = points.as_slice() {
                report.check(
                    format!(
                        "{label}: |mean(T={}) - mean(T={})| <= {SIGMA_BAND} combined std_err",
                        near.horizon, last.horizon
                    ),
                    near.abs_diff <= SIGMA_BAND * near.combined_std_err,
                    format!("diff={:.3e} combined_se={:.3e}", near.abs_diff, near.combined_std_err),
                );
            }

            let worst = points
                .windows(2)
                .map(|w| {
                    (w[1].abs_diff - w[0].abs_diff)
                        / w[0].combined_std_err.hypot(w[1].combined_std_err).max(f64::MIN_POSITIVE)
                })
                .fold(f64::NEG_INFINITY, f64::max);
            report.check(
                format!("{label}: differences non-increasing in T within error bars"),
                worst <= SIGMA_BAND,
                format!("largest increase {worst:.3} sigma"),
            );
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equal_horizons_give_zero_difference() {
        let pts = truncation_ladder(1.0, 0.5, &[2.0, 3.0], 300, 1, None).unwrap();
        assert_eq!(pts[1].abs_diff, 0.0);
        assert_eq!(pts[1].paired_std_err, 0.0);
        assert!(pts[0].paired_std_err < pts[0].combined_std_err);
    }

    #[test]
    fn two_horizon_ladder_checks_the_difference() {
        let cfg = StudyConfig::new(Study::Truncation).alphas(&[2.0]).deltas(&[0.5]).horizons(&[3.0, 5.0]).reps(500);
        let r = study_truncation(&cfg).unwrap();
        assert_eq!(r.checks.len(), 3);
        assert!(r.checks[1].name.contains("combined std_err"));
    }

    #[test]
    fn needs_two_horizons() {
        assert!(truncation_ladder(1.0, 0.5, &[2.0], 10, 1, None).is_err());
        assert!(truncation_ladder(1.0, 0.5, &[2.0, 2.0], 10, 1, None).is_err());
    }

    #[test]
    fn report_shape() {
        let cfg =
            StudyConfig::new(Study::Truncation).alphas(&[1.5]).deltas(&[0.5]).horizons(&[1.0, 2.0, 4.0]).reps(500);
        let r = study_truncation(&cfg).unwrap();
        assert_eq!(r.stat("mean").count(), 3);
        assert_eq!(r.checks.len(), 2);
        assert!(r.checks[0].passed);
    }
}
