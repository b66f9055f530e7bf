//! Exact simulation of fractional Brownian motion on regular grids.
//!
//! A path is produced on a one-sided grid of increments by circulant
//! embedding of fractional Gaussian noise, summed, and then re-pinned at the
//! grid origin. Stationary increments make the shifted path a valid
//! two-sided fBm with `B(0) = 0`. The cases `α = 1` (independent increments)
//! and `α = 2` (a random straight line) have dedicated generators.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};
use serde::Serialize;

use crate::error::{check_alpha, Error, Result};
use crate::rng::{fill_standard_normal, standard_normal};

/// Relative tolerance below zero accepted for embedding eigenvalues.
pub const EIGEN_CLAMP_TOL: f64 = 1e-8;

/// Covariance of fBm: `(|t|^α + |s|^α − |t−s|^α) / 2`.
pub fn fbm_covariance(alpha: f64, t: f64, s: f64) -> Result<f64> {
    check_alpha(alpha)?;
    Ok(0.5 * (pow_abs(t, alpha) + pow_abs(s, alpha) - pow_abs(t - s, alpha)))
}

/// Autocovariance at lag `k` of the increments of fBm sampled with step `delta`.
pub fn fgn_autocovariance(alpha: f64, delta: f64, k: usize) -> Result<f64> {
    check_alpha(alpha)?;
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(Error::Domain(format!("delta must be positive, got {delta}")));
    }
    Ok(fgn_acov(alpha, delta, k))
}

fn fgn_acov(alpha: f64, delta: f64, k: usize) -> f64 {
    let k = k as f64;
    let r = pow_abs(k + 1.0, alpha) + pow_abs(k - 1.0, alpha) - 2.0 * pow_abs(k, alpha);
    0.5 * delta.powf(alpha) * r
}

fn pow_abs(x: f64, alpha: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x.abs().powf(alpha)
    }
}

/// Regular grid `{kδ : −n_left ≤ k ≤ n_right}`.
///
/// Two-sided grids have `n_left = n_right = ⌊T/δ⌋`; one-sided grids (used by
/// the definitional estimator) have `n_left = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    alpha: f64,
    delta: f64,
    horizon: f64,
    n_left: usize,
    n_right: usize,
}

impl GridSpec {
    /// The grid `[−T, T] ∩ δZ`.
    pub fn two_sided(alpha: f64, delta: f64, horizon: f64) -> Result<Self> {
        let k = Self::validate(alpha, delta, horizon)?;
        Ok(Self { alpha, delta, horizon, n_left: k, n_right: k })
    }

    /// The grid `[0, S] ∩ δZ`.
    pub fn one_sided(alpha: f64, delta: f64, horizon: f64) -> Result<Self> {
        let k = Self::validate(alpha, delta, horizon)?;
        Ok(Self { alpha, delta, horizon, n_left: 0, n_right: k })
    }

    fn validate(alpha: f64, delta: f64, horizon: f64) -> Result<usize> {
        check_alpha(alpha)?;
        if !(delta > 0.0 && delta.is_finite()) {
            return Err(Error::Domain(format!("delta must be positive, got {delta}")));
        }
        if !(horizon.is_finite() && horizon >= delta) {
            return Err(Error::Domain(format!("horizon must satisfy T >= delta, got T={horizon}, delta={delta}")));
        }
        // T/δ is often an integer that rounds to just below itself.
        let ratio = horizon / delta;
        let k = (ratio * (1.0 + 4.0 * f64::EPSILON)).floor();
        if k > (u32::MAX as f64) {
            return Err(Error::Domain(format!("grid too large: {k} points per side")));
        }
        Ok(k as usize)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    pub fn n_left(&self) -> usize {
        self.n_left
    }

    pub fn n_right(&self) -> usize {
        self.n_right
    }

    /// Number of grid points.
    pub fn len(&self) -> usize {
        self.n_left + self.n_right + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of increments between consecutive grid points.
    pub fn increments(&self) -> usize {
        self.n_left + self.n_right
    }

    /// Index of `t = 0`.
    pub fn origin(&self) -> usize {
        self.n_left
    }

    pub fn time(&self, index: usize) -> f64 {
        (index as f64 - self.n_left as f64) * self.delta
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len()).map(|i| self.time(i))
    }

    /// Index range of the sub-grid `[−T', T'] ∩ δZ` for `T' ≤ T`.
    pub fn window(&self, horizon: f64) -> Result<std::ops::Range<usize>> {
        let k = Self::validate(self.alpha, self.delta, horizon)?;
        if k > self.n_left || k > self.n_right {
            return Err(Error::Domain(format!("window T={horizon} exceeds grid horizon {}", self.horizon)));
        }
        Ok(self.n_left - k..self.n_left + k + 1)
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "alpha={} delta={} T={} points={}..={}",
            self.alpha,
            self.delta,
            self.horizon,
            -(self.n_left as i64),
            self.n_right
        )
    }
}

/// A sampled path `B_α` together with the drifted field `Z_α = √2 B_α − |t|^α`.
#[derive(Debug, Clone, PartialEq)]
pub struct FbmPath {
    pub grid: GridSpec,
    pub b: Vec<f64>,
    pub z: Vec<f64>,
}

impl FbmPath {
    fn zeroed(grid: GridSpec) -> Self {
        Self { grid, b: vec![0.0; grid.len()], z: vec![0.0; grid.len()] }
    }

    /// Builds the path from `B` values, computing the drifted field.
    pub fn from_b(grid: GridSpec, b: Vec<f64>) -> Result<Self> {
        if b.len() != grid.len() {
            return Err(Error::Domain(format!("expected {} values, got {}", grid.len(), b.len())));
        }
        let mut path = Self { grid, b, z: vec![0.0; grid.len()] };
        path.fill_z();
        Ok(path)
    }

    fn fill_z(&mut self) {
        let alpha = self.grid.alpha;
        for (i, (z, b)) in self.z.iter_mut().zip(&self.b).enumerate() {
            *z = std::f64::consts::SQRT_2 * b - pow_abs(self.grid.time(i), alpha);
        }
    }
}

/// Circulant embedding of fractional Gaussian noise, reusable across draws.
#[derive(Clone)]
pub struct SpectralPlan {
    increments: usize,
    m: usize,
    gamma: Vec<f64>,
    eigenvalues: Vec<f64>,
    /// `sqrt(λ_j / m)`, with the Hermitian pairs pre-halved.
    weights: Vec<f64>,
    fft: Arc<dyn Fft<f64>>,
}

impl fmt::Debug for SpectralPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SpectralPlan").field("increments", &self.increments).field("m", &self.m).finish_non_exhaustive()
    }
}

impl SpectralPlan {
    pub fn new(grid: &GridSpec) -> Result<Self> {
        let alpha = grid.alpha();
        if alpha >= 2.0 {
            return Err(Error::Domain("circulant embedding requires alpha < 2".into()));
        }
        let n = grid.increments();
        if n == 0 {
            return Err(Error::Domain("grid has no increments".into()));
        }
        let m = (2 * n).next_power_of_two();
        let half = m / 2;
        let gamma: Vec<f64> = (0..=half).map(|k| fgn_acov(alpha, grid.delta(), k)).collect();

        let mut row: Vec<Complex<f64>> =
            (0..m).map(|j| Complex::new(if j <= half { gamma[j] } else { gamma[m - j] }, 0.0)).collect();
        let fft = FftPlanner::new().plan_fft_forward(m);
        fft.process(&mut row);

        let raw: Vec<f64> = row.iter().map(|c| c.re).collect();
        let max = raw.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let min = raw.iter().cloned().fold(f64::INFINITY, f64::min);
        if min < -EIGEN_CLAMP_TOL * max {
            return Err(Error::EmbeddingNotPsd { min, max });
        }
        let mf = m as f64;
        let weights = raw
            .iter()
            .map(|l| l.max(0.0))
            .enumerate()
            .map(|(j, l)| if j == 0 || j == half { (l / mf).sqrt() } else { (l / (2.0 * mf)).sqrt() })
            .collect();
        let eigenvalues = raw;

        debug_assert!(gamma.len() > n);
        Ok(Self { increments: n, m, gamma, eigenvalues, weights, fft })
    }

    /// Circulant size (a power of two, at least twice the increment count).
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn increments(&self) -> usize {
        self.increments
    }

    /// Circulant eigenvalues as computed, before round-off negatives are
    /// clamped to zero for sampling.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// fGn autocovariance at lags `0..=m/2`.
    pub fn gamma(&self) -> &[f64] {
        &self.gamma
    }

    /// Draws `increments()` fGn values into `out`.
    fn sample_increments<R: Rng + ?Sized>(&self, rng: &mut R, ws: &mut Workspace, out: &mut [f64]) {
        let m = self.m;
        let half = m / 2;
        ws.normals.resize(m, 0.0);
        fill_standard_normal(rng, &mut ws.normals);
        ws.buf.resize(m, Complex::new(0.0, 0.0));
        let g = &ws.normals;
        let w = &self.weights;
        ws.buf[0] = Complex::new(w[0] * g[0], 0.0);
        ws.buf[half] = Complex::new(w[half] * g[1], 0.0);
        for j in 1..half {
            let c = Complex::new(w[j] * g[2 * j], w[j] * g[2 * j + 1]);
            ws.buf[j] = c;
            ws.buf[m - j] = c.conj();
        }
        ws.scratch.resize(self.fft.get_inplace_scratch_len(), Complex::new(0.0, 0.0));
        self.fft.process_with_scratch(&mut ws.buf, &mut ws.scratch);
        for (o, y) in out.iter_mut().zip(&ws.buf) {
            *o = y.re;
        }
    }
}

/// Builds the circulant-embedding plan for `grid` (requires `α < 2`).
pub fn build_spectral_plan(grid: &GridSpec) -> Result<SpectralPlan> {
    SpectralPlan::new(grid)
}

/// Reusable buffers for path sampling.
#[derive(Debug, Default, Clone)]
pub struct Workspace {
    normals: Vec<f64>,
    buf: Vec<Complex<f64>>,
    scratch: Vec<Complex<f64>>,
    increments: Vec<f64>,
}

#[derive(Debug, Clone)]
enum Method {
    Brownian,
    Linear,
    Spectral(SpectralPlan),
}

/// Exact sampler for fBm on a fixed grid.
#[derive(Debug, Clone)]
pub struct PathSampler {
    grid: GridSpec,
    method: Method,
}

impl PathSampler {
    /// Picks the cheapest exact method: independent increments for `α = 1`,
    /// a random slope for `α = 2`, circulant embedding otherwise.
    pub fn new(grid: GridSpec) -> Result<Self> {
        let method = if grid.alpha() == 2.0 {
            Method::Linear
        } else if grid.alpha() == 1.0 {
            Method::Brownian
        } else {
            Method::Spectral(SpectralPlan::new(&grid)?)
        };
        Ok(Self { grid, method })
    }

    /// Always uses circulant embedding with the given plan.
    pub fn with_plan(grid: GridSpec, plan: SpectralPlan) -> Result<Self> {
        if plan.increments() != grid.increments() {
            return Err(Error::Domain(format!(
                "plan built for {} increments, grid has {}",
                plan.increments(),
                grid.increments()
            )));
        }
        Ok(Self { grid, method: Method::Spectral(plan) })
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn plan(&self) -> Option<&SpectralPlan> {
        match &self.method {
            Method::Spectral(p) => Some(p),
            _ => None,
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> FbmPath {
        let mut path = FbmPath::zeroed(self.grid);
        self.sample_into(rng, &mut Workspace::default(), &mut path);
        path
    }

    /// Samples into an existing path whose grid matches this sampler.
    pub fn sample_into<R: Rng + ?Sized>(&self, rng: &mut R, ws: &mut Workspace, path: &mut FbmPath) {
        assert_eq!(path.grid, self.grid, "path grid does not match sampler grid");
        let n = self.grid.increments();
        let origin = self.grid.origin();
        match &self.method {
            Method::Linear => {
                let slope = standard_normal(rng);
                for (i, b) in path.b.iter_mut().enumerate() {
                    *b = (i as f64 - origin as f64) * self.grid.delta() * slope;
                }
                path.b[origin] = 0.0;
            }
            Method::Brownian | Method::Spectral(_) => {
                let mut inc = std::mem::take(&mut ws.increments);
                inc.resize(n, 0.0);
                match &self.method {
                    Method::Spectral(plan) => plan.sample_increments(rng, ws, &mut inc),
                    _ => {
                        fill_standard_normal(rng, &mut inc);
                        let sd = self.grid.delta().sqrt();
                        inc.iter_mut().for_each(|x| *x *= sd);
                    }
                }
                // One-sided walk W, re-pinned so that B(0) = W(origin) - W(origin) = 0.
                path.b[0] = 0.0;
                for (j, d) in inc.iter().enumerate() {
                    path.b[j + 1] = path.b[j] + d;
                }
                let pin = path.b[origin];
                path.b.iter_mut().for_each(|b| *b -= pin);
                path.b[origin] = 0.0;
                ws.increments = inc;
            }
        }
        path.fill_z();
    }
}

/// Samples one path on `grid` with a prebuilt circulant-embedding plan.
pub fn sample_path<R: Rng + ?Sized>(plan: &SpectralPlan, grid: &GridSpec, rng: &mut R) -> Result<FbmPath> {
    Ok(PathSampler::with_plan(*grid, plan.clone())?.sample(rng))
}
