//! Empirical tail of the ratio estimator.

use crate::error::Result;
use crate::montecarlo::{estimate_tail, TailEstimate};
use crate::stats::{linear_fit, LineFit};

use super::{Report, Study, StudyConfig};

/// Slope of `ln p̂(x)` against `(ln x)²` over thresholds below `1/δ` with
/// at least one exceedance. Thresholds with `p̂ = 0` (log-probability `−∞`)
/// are left out. `None` if fewer than two points remain.
pub fn log_square_slope(tail: &TailEstimate) -> Option<LineFit> {
    let cap = 1.0 / tail.summary.delta;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (&x, &p) in tail.thresholds.iter().zip(&tail.probabilities) {
        if x >= cap || p <= 0.0 {
            continue;
        }
        xs.push(x.ln().powi(2));
        ys.push(p.ln());
    }
    linear_fit(&xs, &ys)
}

pub fn study_tail(config: &StudyConfig) -> Result<Report> {
    let name = Study::Tail.name();
    let thresholds = if config.thresholds.is_empty() { vec![2.0, 3.0, 4.0, 6.0] } else { config.thresholds.clone() };
    let mut report = Report::new();
    for alpha in config.alphas_or(&[0.5]) {
        for delta in config.deltas_or(&[0.1]) {
            for horizon in config.horizons_or(&[10.0]) {
                let tail = estimate_tail(alpha, delta, horizon, config.reps, &thresholds, config.seed, config.threads)?;
                let n = tail.summary.reps as f64;
                for (i, &x) in thresholds.iter().enumerate() {
                    let p = config.point(name, alpha, delta, horizon);
                    let prob = tail.probabilities[i];
                    report.rows.push(p.row(format!("p_hat@x={x}"), prob, (prob * (1.0 - prob) / n).sqrt()));
                    report.rows.push(p.row(format!("wilson_lower@x={x}"), tail.lower[i], 0.0));
                    report.rows.push(p.row(format!("wilson_upper@x={x}"), tail.upper[i], 0.0));
                }
                let fit = log_square_slope(&tail);
                if let Some(f) = fit {
                    report.rows.push(config.point(name, alpha, delta, horizon).row(
                        "log_square_slope",
                        f.slope,
                        f.slope_se,
                    ));
                }

                let label = format!("alpha={alpha} delta={delta} T={horizon}");
                report.check(
                    format!("{label}: exceedance non-increasing in x"),
                    tail.probabilities.windows(2).all(|w| w[1] <= w[0]),
                    format!("{:?}", tail.probabilities),
                );
                let beyond_cap =
                    thresholds.iter().zip(&tail.exceedances).filter(|(&x, _)| x >= 1.0 / delta).all(|(_, &c)| c == 0);
                report.check(
                    format!("{label}: no exceedance at or beyond 1/delta"),
                    beyond_cap && tail.summary.max <= 1.0 / delta,
                    format!("max xi = {}", tail.summary.max),
                );
                report.check(
                    format!("{label}: log p_hat decreasing in (log x)^2"),
                    fit.is_some_and(|f| f.slope < 0.0),
                    match fit {
                        Some(f) => format!("slope {:.4} +/- {:.4}", f.slope, f.slope_se),
                        None => {
                            "slope not computable (fewer than two thresholds below 1/delta with exceedances)".into()
                        }
                    },
                );
            }
        }
    }
    Ok(report)
}
