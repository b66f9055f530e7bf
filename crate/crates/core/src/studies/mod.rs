//! Desk-scale experiments over the estimator and the closed forms.
//!
//! Each study turns a [`StudyConfig`] into a [`Report`]: rows of
//! `(study, alpha, delta, T, reps, seed, stat, value, std_err)` plus named
//! checks. A study passes when all of its checks pass.

mod discretization;
mod report;
mod tail;
mod truncation;
mod variance;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::closedform::{alpha1_rate_constant, alpha2_rate_constant, h_delta, zeta_half};
use crate::error::{Error, Result};
use crate::montecarlo::Campaign;

pub use discretization::{study_discretization, ALPHA1_LIMIT_TOL, ALPHA2_LIMIT_TOL};
pub use report::{format_g17, parse_csv, Check, Report, Row, CSV_HEADER};
pub use tail::{log_square_slope, study_tail};
pub use truncation::{study_truncation, truncation_ladder, TruncationPoint};
pub use variance::{definitional_variances, ratio_variances, study_variance_blowup, VariancePoint, VARIANCE_BAND};

use report::Point;

/// Acceptance band half-width in standard errors.
pub const SIGMA_BAND: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Study {
    ClosedForm,
    Estimate,
    Discretization,
    Truncation,
    VarianceBlowup,
    Tail,
}

impl Study {
    pub const ALL: [Study; 6] = [
        Study::ClosedForm,
        Study::Estimate,
        Study::Discretization,
        Study::Truncation,
        Study::VarianceBlowup,
        Study::Tail,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Study::ClosedForm => "closed-form",
            Study::Estimate => "estimate",
            Study::Discretization => "discretization",
            Study::Truncation => "truncation",
            Study::VarianceBlowup => "variance-blowup",
            Study::Tail => "tail",
        }
    }
}

impl fmt::Display for Study {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Study {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Study::ALL.into_iter().find(|st| st.name() == s).ok_or_else(|| Error::Config(format!("unknown study {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::Config(format!("output format must be csv or json, got {other:?}"))),
        }
    }
}

/// Parameters for one study run.
///
/// Empty parameter lists fall back to the study's default ladder.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StudyConfig {
    pub study: Study,
    pub alphas: Vec<f64>,
    pub deltas: Vec<f64>,
    pub horizons: Vec<f64>,
    pub thresholds: Vec<f64>,
    pub reps: u64,
    pub seed: u64,
    pub threads: Option<usize>,
    pub format: OutputFormat,
}

impl StudyConfig {
    pub fn new(study: Study) -> Self {
        Self {
            study,
            alphas: Vec::new(),
            deltas: Vec::new(),
            horizons: Vec::new(),
            thresholds: Vec::new(),
            reps: 10_000,
            seed: 0,
            threads: None,
            format: OutputFormat::Csv,
        }
    }

    pub fn alphas(mut self, v: &[f64]) -> Self {
        self.alphas = v.to_vec();
        self
    }

    pub fn deltas(mut self, v: &[f64]) -> Self {
        self.deltas = v.to_vec();
        self
    }

    pub fn horizons(mut self, v: &[f64]) -> Self {
        self.horizons = v.to_vec();
        self
    }

    pub fn thresholds(mut self, v: &[f64]) -> Self {
        self.thresholds = v.to_vec();
        self
    }

    pub fn reps(mut self, reps: u64) -> Self {
        self.reps = reps;
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn threads(mut self, threads: Option<usize>) -> Self {
        self.threads = threads;
        self
    }

    pub(crate) fn alphas_or(&self, default: &[f64]) -> Vec<f64> {
        or_default(&self.alphas, default)
    }

    pub(crate) fn deltas_or(&self, default: &[f64]) -> Vec<f64> {
        or_default(&self.deltas, default)
    }

    pub(crate) fn horizons_or(&self, default: &[f64]) -> Vec<f64> {
        or_default(&self.horizons, default)
    }

    pub(crate) fn validate(&self) -> Result<()> {
        let bad = |what: &str, v: f64| Error::Config(format!("{what} out of range: {v}"));
        for &a in &self.alphas {
            if !(a > 0.0 && a <= 2.0) {
                return Err(bad("alpha", a));
            }
        }
        for &d in &self.deltas {
            if !(d > 0.0 && d.is_finite()) {
                return Err(bad("delta", d));
            }
        }
        for &t in &self.horizons {
            if !(t > 0.0 && t.is_finite()) {
                return Err(bad("T", t));
            }
        }
        if self.study != Study::ClosedForm && self.reps < 2 {
            return Err(Error::Config(format!("reps must be at least 2, got {}", self.reps)));
        }
        if self.threads == Some(0) {
            return Err(Error::Config("threads must be positive".into()));
        }
        Ok(())
    }

    pub(crate) fn point<'a>(&self, study: &'a str, alpha: f64, delta: f64, horizon: f64) -> Point<'a> {
        Point { study, alpha, delta, horizon, reps: self.reps, seed: self.seed }
    }
}

fn or_default(v: &[f64], default: &[f64]) -> Vec<f64> {
    if v.is_empty() {
        default.to_vec()
    } else {
        v.to_vec()
    }
}

/// Runs the configured study.
pub fn run_study(config: &StudyConfig) -> Result<Report> {
    config.validate()?;
    match config.study {
        Study::ClosedForm => study_closed_form(config),
        Study::Estimate => study_estimate(config),
        Study::Discretization => study_discretization(config),
        Study::Truncation => study_truncation(config),
        Study::VarianceBlowup => study_variance_blowup(config),
        Study::Tail => study_tail(config),
    }
}

/// Renders a report in the configured format.
pub fn render(report: &Report, format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => report.to_csv(),
        OutputFormat::Json => report.to_json(),
    }
}

/// Closed-form `H_α^δ` over a δ-ladder, with strict-decrease checks.
pub fn study_closed_form(config: &StudyConfig) -> Result<Report> {
    let name = Study::ClosedForm.name();
    let mut report = Report::new();
    let mut deltas = config.deltas_or(&[0.01, 0.05, 0.1, 0.25, 0.5, 1.0, 2.0]);
    deltas.sort_by(f64::total_cmp);
    deltas.dedup();
    for alpha in config.alphas_or(&[1.0, 2.0]) {
        if alpha != 1.0 && alpha != 2.0 {
            return Err(Error::Config(format!("closed forms exist only for alpha in {{1, 2}}, got {alpha}")));
        }
        let mut values = Vec::with_capacity(deltas.len());
        for &delta in &deltas {
            let v = h_delta(alpha, delta)?.expect("closed form for alpha 1 or 2");
            let p = Point { study: name, alpha, delta, horizon: 0.0, reps: 0, seed: 0 };
            report.rows.push(p.row("H_delta", v.value, v.truncation_bound));
            report.rows.push(p.row("terms", v.terms_used as f64, 0.0));
            values.push(v.value);
        }
        let decreasing = values.windows(2).all(|w| w[1] < w[0]);
        report.check(
            format!("alpha={alpha}: H_delta strictly decreasing"),
            decreasing,
            format!("{} grid points", values.len()),
        );
    }
    let p = Point { study: name, alpha: 1.0, delta: 0.0, horizon: 0.0, reps: 0, seed: 0 };
    report.rows.push(p.row("zeta_half", zeta_half(), 0.0));
    report.rows.push(p.row("rate_constant", alpha1_rate_constant(), 0.0));
    let p = Point { alpha: 2.0, ..p };
    report.rows.push(p.row("rate_constant", alpha2_rate_constant(), 0.0));
    Ok(report)
}

/// Plain campaigns over the α×δ×T grid, cross-checked against closed forms
/// where they exist.
pub fn study_estimate(config: &StudyConfig) -> Result<Report> {
    let name = Study::Estimate.name();
    let mut report = Report::new();
    for alpha in config.alphas_or(&[1.0]) {
        for delta in config.deltas_or(&[0.5]) {
            for horizon in config.horizons_or(&[6.0]) {
                let s =
                    Campaign::new(alpha, delta, horizon, config.reps, config.seed)?.threads(config.threads).run()?;
                let p = config.point(name, alpha, delta, horizon);
                report.rows.push(p.row("mean", s.mean, s.std_err));
                report.rows.push(p.row("variance", s.variance, 0.0));
                report.rows.push(p.row("min", s.min, 0.0));
                report.rows.push(p.row("max", s.max, 0.0));
                if let Some(exact) = h_delta(alpha, delta)? {
                    report.rows.push(p.row("closed_form", exact.value, exact.truncation_bound));
                    let z = (s.mean - exact.value) / s.std_err;
                    report.check(
                        format!(
                            "alpha={alpha} delta={delta} T={horizon}: mean within {SIGMA_BAND} std_err of closed form"
                        ),
                        z.abs() <= SIGMA_BAND,
                        format!("mean={} exact={} z={z:.3}", s.mean, exact.value),
                    );
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_names() {
        for s in Study::ALL {
            assert_eq!(s.name().parse::<Study>().unwrap(), s);
        }
        assert!("nope".parse::<Study>().is_err());
        assert_eq!("json".parse::<OutputFormat>().unwrap(), OutputFormat::Json);
        assert!("xml".parse::<OutputFormat>().is_err());
    }

    #[test]
    fn config_validation() {
        assert!(run_study(&StudyConfig::new(Study::Estimate).alphas(&[2.5])).is_err());
        assert!(run_study(&StudyConfig::new(Study::Estimate).deltas(&[0.0])).is_err());
        assert!(run_study(&StudyConfig::new(Study::Estimate).reps(1)).is_err());
        assert!(run_study(&StudyConfig::new(Study::ClosedForm).alphas(&[1.5])).is_err());
    }

    #[test]
    fn closed_form_report() {
        let r = run_study(&StudyConfig::new(Study::ClosedForm)).unwrap();
        assert!(r.passed());
        assert_eq!(r.checks.len(), 2);
        assert_eq!(r.stat("H_delta").count(), 14);
        let zeta = r.stat("zeta_half").next().unwrap();
        assert!((zeta.value + 1.460_354_508_8).abs() < 1e-10);
    }

    #[test]
    fn estimate_report_is_reproducible() {
        let cfg = StudyConfig::new(Study::Estimate).alphas(&[2.0]).deltas(&[0.5]).horizons(&[3.0]).reps(2000).seed(5);
        let a = run_study(&cfg).unwrap();
        let b = run_study(&cfg.clone().threads(Some(2))).unwrap();
        assert_eq!(a.to_csv(), b.to_csv());
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.stat("closed_form").count(), 1);
        assert_eq!(a.checks.len(), 1);
    }
}
