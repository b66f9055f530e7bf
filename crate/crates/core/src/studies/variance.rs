//! Variance of the definitional estimator versus the ratio estimator.
//!
//! Both estimators are evaluated along the same ladder of horizons, each
//! with common random numbers across the ladder: one path on `[0, S_max]`
//! for the definitional estimator and one on `[−T_max, T_max]` for the ratio.

use crate::error::{Error, Result};
use crate::estimator::xi_window;
use crate::fbm::{GridSpec, PathSampler};
use crate::montecarlo::{replicate, Schedule};

use super::{Report, Study, StudyConfig};

/// Allowed spread (max/min) of the ratio estimator's variance along a ladder.
pub const VARIANCE_BAND: f64 = 10.0;

/// Sample variance of each ladder point and its large-sample standard error.
#[derive(Debug, Clone, PartialEq)]
pub struct VariancePoint {
    pub horizon: f64,
    pub variance: f64,
    pub std_err: f64,
}

fn variance_with_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let m2 = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
    let m4 = xs.iter().map(|x| (x - mean).powi(4)).sum::<f64>() / n;
    let var = m2 * n / (n - 1.0);
    (var, ((m4 - m2 * m2).max(0.0) / n).sqrt())
}

fn sorted_ladder(horizons: &[f64]) -> Result<Vec<f64>> {
    let mut h = horizons.to_vec();
    h.sort_by(f64::total_cmp);
    h.dedup();
    if h.len() < 2 {
        return Err(Error::Config("variance study needs at least two horizons".into()));
    }
    Ok(h)
}

/// Variance of `(1/S) sup_{[0,S]_δ} e^Z` along the S-ladder.
pub fn definitional_variances(
    alpha: f64,
    delta: f64,
    horizons: &[f64],
    reps: u64,
    seed: u64,
    threads: Option<usize>,
) -> Result<Vec<VariancePoint>> {
    let ladder = sorted_ladder(horizons)?;
    let s_max = *ladder.last().expect("non-empty");
    let grid = GridSpec::one_sided(alpha, delta, s_max)?;
    let ends: Vec<usize> =
        ladder.iter().map(|&s| ((s / delta) * (1.0 + 4.0 * f64::EPSILON)).floor() as usize).collect();
    let sampler = PathSampler::new(grid)?;
    let schedule = Schedule::new(seed, reps).threads(threads);
    let out = replicate(&sampler, &schedule, ladder.len(), true, |path, out| {
        let mut z_max = f64::NEG_INFINITY;
        let mut from = 0;
        for (j, &end) in ends.iter().enumerate() {
            z_max = path.z[from..=end].iter().cloned().fold(z_max, f64::max);
            from = end + 1;
            out[j] = z_max.exp() / ladder[j];
        }
    })?;
    Ok(collect(&ladder, &out))
}

/// Variance of the ratio estimator along the T-ladder.
pub fn ratio_variances(
    alpha: f64,
    delta: f64,
    horizons: &[f64],
    reps: u64,
    seed: u64,
    threads: Option<usize>,
) -> Result<Vec<VariancePoint>> {
    let ladder = sorted_ladder(horizons)?;
    let grid = GridSpec::two_sided(alpha, delta, *ladder.last().expect("non-empty"))?;
    let windows = ladder.iter().map(|&t| grid.window(t)).collect::<Result<Vec<_>>>()?;
    let sampler = PathSampler::new(grid)?;
    let schedule = Schedule::new(seed, reps).threads(threads);
    let out = replicate(&sampler, &schedule, ladder.len(), true, |path, out| {
        for (o, w) in out.iter_mut().zip(&windows) {
            *o = xi_window(path, w.clone()).xi;
        }
    })?;
    Ok(collect(&ladder, &out))
}

fn collect(ladder: &[f64], out: &crate::montecarlo::Replicated) -> Vec<VariancePoint> {
    ladder
        .iter()
        .enumerate()
        .map(|(j, &horizon)| {
            let col = out.column(j).expect("raw samples kept");
            let (variance, std_err) = variance_with_se(&col);
            VariancePoint { horizon, variance, std_err }
        })
        .collect()
}

pub fn study_variance_blowup(config: &StudyConfig) -> Result<Report> {
    let name = Study::VarianceBlowup.name();
    let ladder = config.horizons_or(&[8.0, 16.0, 32.0, 64.0]);
    let mut report = Report::new();
    for alpha in config.alphas_or(&[0.5]) {
        for delta in config.deltas_or(&[0.1]) {
            let def = definitional_variances(alpha, delta, &ladder, config.reps, config.seed, config.threads)?;
            let xi = ratio_variances(alpha, delta, &ladder, config.reps, config.seed, config.threads)?;
            for pt in &def {
                report.rows.push(config.point(name, alpha, delta, pt.horizon).row(
                    "definitional_variance",
                    pt.variance,
                    pt.std_err,
                ));
            }
            for pt in &xi {
                report.rows.push(config.point(name, alpha, delta, pt.horizon).row(
                    "xi_variance",
                    pt.variance,
                    pt.std_err,
                ));
            }
            let label = format!("alpha={alpha} delta={delta}");
            // Growth is only claimed for α < 2; at α = 2 the supremum
            // saturates once S exceeds the random peak location.
            if alpha < 2.0 {
                let vars: Vec<f64> = def.iter().map(|p| p.variance).collect();
                report.check(
                    format!("{label}: definitional variance strictly increasing in S"),
                    vars.windows(2).all(|w| w[1] > w[0]),
                    format!("{vars:.4?}"),
                );
            }
            let hi = xi.iter().map(|p| p.variance).fold(f64::NEG_INFINITY, f64::max);
            let lo = xi.iter().map(|p| p.variance).fold(f64::INFINITY, f64::min);
            report.check(
                format!("{label}: ratio-estimator variance within a {VARIANCE_BAND}x band"),
                hi < VARIANCE_BAND * lo,
                format!("min={lo:.4e} max={hi:.4e}"),
            );
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn variance_helper() {
        let (v, se) = variance_with_se(&[1.0, 2.0, 3.0, 4.0]);
        assert!((v - 5.0 / 3.0).abs() < 1e-15);
        // m2 = 1.25, m4 = 2.5625
        assert!((se - ((2.5625f64 - 1.5625) / 4.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn ladders_need_two_points() {
        assert!(definitional_variances(0.5, 0.5, &[4.0], 10, 0, None).is_err());
        assert!(ratio_variances(0.5, 0.5, &[4.0, 4.0], 10, 0, None).is_err());
    }

    #[test]
    fn definitional_prefixes_share_paths() {
        // With Z(0) = 0 the supremum is at least 1, so S·value >= 1.
        let pts = definitional_variances(1.0, 0.5, &[1.0, 2.0, 4.0], 200, 3, None).unwrap();
        assert_eq!(pts.len(), 3);
        assert!(pts.iter().all(|p| p.variance > 0.0 && p.std_err > 0.0));
    }
}
