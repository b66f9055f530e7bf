//! Seeded, parallel Monte Carlo campaigns.
//!
//! Replication `i` always draws from `replication_stream(seed, i)`, and
//! replications are accumulated in fixed-size chunks that are merged in
//! index order. The summary is therefore bit-identical for any thread count.

use std::ops::Range;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::estimator::xi_truncated;
use crate::fbm::{FbmPath, GridSpec, PathSampler, Workspace};
use crate::rng::replication_stream;
use crate::stats::{wilson_interval, RunningStats};

/// Replications per work unit. Fixed so that the reduction order does not
/// depend on the number of threads.
const CHUNK: u64 = 256;

/// Normal quantile used for Wilson intervals (matches the 3·std_err bands).
pub const WILSON_Z: f64 = 3.0;

/// Which replications to run and how.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    pub seed: u64,
    pub replications: Range<u64>,
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
}

impl Schedule {
    pub fn new(seed: u64, reps: u64) -> Self {
        Self { seed, replications: 0..reps, threads: None }
    }

    pub fn threads(mut self, threads: Option<usize>) -> Self {
        self.threads = threads;
        self
    }

    pub fn reps(&self) -> u64 {
        self.replications.end.saturating_sub(self.replications.start)
    }
}

/// Output of [`replicate`].
#[derive(Debug, Clone)]
pub struct Replicated {
    pub stats: Vec<RunningStats>,
    /// Per-replication values, `width` per replication, in replication order.
    pub raw: Option<Vec<f64>>,
    pub wall_time: f64,
}

impl Replicated {
    /// Values of statistic `j` in replication order.
    pub fn column(&self, j: usize) -> Option<Vec<f64>> {
        let width = self.stats.len();
        self.raw.as_ref().map(|r| r.chunks(width).map(|row| row[j]).collect())
    }
}

/// Runs `eval` on one sampled path per replication.
///
/// `eval` writes `width` statistics for the path into its output slice; each
/// gets its own streaming accumulator. With `keep_raw` every value is also
/// returned.
pub fn replicate<F>(
    sampler: &PathSampler,
    schedule: &Schedule,
    width: usize,
    keep_raw: bool,
    eval: F,
) -> Result<Replicated>
where
    F: Fn(&FbmPath, &mut [f64]) + Sync,
{
    if width == 0 {
        return Err(Error::Config("at least one statistic is required".into()));
    }
    let start = Instant::now();
    let range = schedule.replications.clone();
    let chunks: Vec<Range<u64>> =
        (range.start..range.end).step_by(CHUNK as usize).map(|s| s..(s + CHUNK).min(range.end)).collect();

    let run_chunk = |chunk: &Range<u64>| {
        let mut ws = Workspace::default();
        let mut path = sampler.sample(&mut replication_stream(schedule.seed, chunk.start));
        let mut out = vec![0.0; width];
        let mut stats = vec![RunningStats::new(); width];
        let mut raw =
            if keep_raw { Vec::with_capacity((chunk.end - chunk.start) as usize * width) } else { Vec::new() };
        for i in chunk.clone() {
            let mut rng = replication_stream(schedule.seed, i);
            sampler.sample_into(&mut rng, &mut ws, &mut path);
            eval(&path, &mut out);
            for (s, &v) in stats.iter_mut().zip(&out) {
                s.push(v);
            }
            if keep_raw {
                raw.extend_from_slice(&out);
            }
        }
        (stats, raw)
    };

    let parts: Vec<(Vec<RunningStats>, Vec<f64>)> = match schedule.threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
            pool.install(|| chunks.par_iter().map(run_chunk).collect())
        }
        None => chunks.par_iter().map(run_chunk).collect(),
    };

    let mut stats = vec![RunningStats::new(); width];
    let mut raw = if keep_raw { Some(Vec::with_capacity(schedule.reps() as usize * width)) } else { None };
    for (part, values) in parts {
        for (acc, s) in stats.iter_mut().zip(&part) {
            acc.merge(s);
        }
        if let Some(r) = raw.as_mut() {
            r.extend_from_slice(&values);
        }
    }
    Ok(Replicated { stats, raw, wall_time: start.elapsed().as_secs_f64() })
}

/// Summary of one campaign of the ratio estimator.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McSummary {
    pub alpha: f64,
    pub delta: f64,
    #[serde(rename = "T")]
    pub horizon: f64,
    pub reps: u64,
    pub mean: f64,
    pub variance: f64,
    pub std_err: f64,
    pub min: f64,
    pub max: f64,
    pub seed: u64,
    /// Seconds; excluded from equality-sensitive reports.
    pub wall_time: f64,
}

impl McSummary {
    pub fn from_stats(grid: &GridSpec, stats: &RunningStats, seed: u64, wall_time: f64) -> Self {
        Self {
            alpha: grid.alpha(),
            delta: grid.delta(),
            horizon: grid.horizon(),
            reps: stats.count(),
            mean: stats.mean(),
            variance: stats.variance(),
            std_err: stats.std_err(),
            min: stats.min(),
            max: stats.max(),
            seed,
            wall_time,
        }
    }
}

/// Campaign of the truncated ratio estimator at one parameter point.
#[derive(Debug, Clone)]
pub struct Campaign {
    grid: GridSpec,
    sampler: PathSampler,
    schedule: Schedule,
}

impl Campaign {
    pub fn new(alpha: f64, delta: f64, horizon: f64, reps: u64, seed: u64) -> Result<Self> {
        if reps < 2 {
            return Err(Error::Config(format!("reps must be at least 2, got {reps}")));
        }
        let grid = GridSpec::two_sided(alpha, delta, horizon)?;
        let sampler = PathSampler::new(grid)?;
        Ok(Self { grid, sampler, schedule: Schedule::new(seed, reps) })
    }

    pub fn threads(mut self, threads: Option<usize>) -> Self {
        self.schedule.threads = threads;
        self
    }

    /// Runs replications `range` instead of `0..reps`.
    pub fn replications(mut self, range: Range<u64>) -> Self {
        self.schedule.replications = range;
        self
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn sampler(&self) -> &PathSampler {
        &self.sampler
    }

    pub fn schedule(&self) -> &Schedule {
        &self.schedule
    }

    pub fn run(&self) -> Result<McSummary> {
        Ok(self.execute(false)?.0)
    }

    /// Runs the campaign and also returns every replication's value.
    pub fn run_with_samples(&self) -> Result<(McSummary, Vec<f64>)> {
        let (summary, raw) = self.execute(true)?;
        Ok((summary, raw.unwrap_or_default()))
    }

    fn execute(&self, keep_raw: bool) -> Result<(McSummary, Option<Vec<f64>>)> {
        let out = replicate(&self.sampler, &self.schedule, 1, keep_raw, |path, out| {
            out[0] = xi_truncated(path).xi;
        })?;
        let summary = McSummary::from_stats(&self.grid, &out.stats[0], self.schedule.seed, out.wall_time);
        Ok((summary, out.raw))
    }
}

/// Runs `reps` replications of the ratio estimator on `[−T, T]_δ`.
pub fn run_campaign(
    alpha: f64,
    delta: f64,
    horizon: f64,
    reps: u64,
    seed: u64,
    threads: Option<usize>,
) -> Result<McSummary> {
    Campaign::new(alpha, delta, horizon, reps, seed)?.threads(threads).run()
}

/// Empirical exceedance probabilities `P{ξ > x}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TailEstimate {
    pub summary: McSummary,
    pub thresholds: Vec<f64>,
    pub exceedances: Vec<u64>,
    pub probabilities: Vec<f64>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

impl TailEstimate {
    pub fn from_samples(summary: McSummary, samples: &[f64], thresholds: &[f64]) -> Result<Self> {
        check_thresholds(thresholds)?;
        let n = samples.len() as u64;
        let exceedances: Vec<u64> =
            thresholds.iter().map(|&x| samples.iter().filter(|&&v| v > x).count() as u64).collect();
        let probabilities = exceedances.iter().map(|&c| c as f64 / n as f64).collect();
        let (lower, upper) = exceedances.iter().map(|&c| wilson_interval(c, n, WILSON_Z)).unzip();
        Ok(Self { summary, thresholds: thresholds.to_vec(), exceedances, probabilities, lower, upper })
    }
}

fn check_thresholds(thresholds: &[f64]) -> Result<()> {
    if thresholds.is_empty() {
        return Err(Error::Config("no tail thresholds given".into()));
    }
    if thresholds.iter().any(|&x| !(x >= 1.0 && x.is_finite())) {
        return Err(Error::Config("tail thresholds must be finite and >= 1".into()));
    }
    if thresholds.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Config("tail thresholds must be strictly increasing".into()));
    }
    Ok(())
}

/// Estimates `P{ξ(T) > x}` for each threshold from one campaign.
pub fn estimate_tail(
    alpha: f64,
    delta: f64,
    horizon: f64,
    reps: u64,
    thresholds: &[f64],
    seed: u64,
    threads: Option<usize>,
) -> Result<TailEstimate> {
    check_thresholds(thresholds)?;
    let (summary, samples) = Campaign::new(alpha, delta, horizon, reps, seed)?.threads(threads).run_with_samples()?;
    TailEstimate::from_samples(summary, &samples, thresholds)
}
