//! The truncated ratio estimator and the classical definitional estimator.

use serde::Serialize;

use crate::fbm::FbmPath;

/// One realization of `sup e^Z / (δ Σ e^Z)` over a finite grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EstimatorSample {
    pub xi: f64,
    /// Grid time at which `Z` is maximal (first maximiser on ties).
    pub argmax_t: f64,
    /// `ln(δ Σ_t e^{Z(t)})`.
    pub log_denominator: f64,
    pub z_max: f64,
}

/// Evaluates the truncated ratio estimator on a sampled path.
pub fn xi_truncated(path: &FbmPath) -> EstimatorSample {
    let (sample, index) = xi_kernel(&path.z, path.grid.delta());
    EstimatorSample { argmax_t: path.grid.time(index), ..sample }
}

/// Same as [`xi_truncated`] restricted to `z[range]`, a symmetric window
/// around the origin.
pub fn xi_window(path: &FbmPath, range: std::ops::Range<usize>) -> EstimatorSample {
    let start = range.start;
    let (sample, index) = xi_kernel(&path.z[range], path.grid.delta());
    EstimatorSample { argmax_t: path.grid.time(start + index), ..sample }
}

/// Ratio estimator on a raw field with grid step `delta`.
///
/// Computed as `1 / (δ Σ e^{z − z_max})` so the result does not depend on
/// the magnitude of `z`. `argmax_t` is reported as the index into `z`.
pub fn xi_from_field(z: &[f64], delta: f64) -> EstimatorSample {
    let (sample, index) = xi_kernel(z, delta);
    EstimatorSample { argmax_t: index as f64, ..sample }
}

/// Ratio estimator on the coarser grid `(stride·δ)Z ∩ [−T', T']` embedded
/// in a two-sided path sampled with step `δ`.
///
/// Evaluating several strides on one path gives common-random-number
/// estimates of `H^{δ}`, `H^{2δ}`, ... from a single simulation.
pub fn xi_subgrid(path: &FbmPath, stride: usize, horizon: f64) -> f64 {
    let grid = &path.grid;
    assert!(stride >= 1, "stride must be positive");
    let step = grid.delta() * stride as f64;
    let k_max = ((horizon / step) * (1.0 + 4.0 * f64::EPSILON)).floor() as usize;
    assert!(k_max * stride <= grid.n_left().min(grid.n_right()), "sub-grid exceeds the sampled horizon");
    let origin = grid.origin();
    let points = || (0..=2 * k_max).map(move |j| path.z[origin + j * stride - k_max * stride]);
    let z_max = points().fold(f64::NEG_INFINITY, f64::max);
    let scaled: f64 = points().map(|v| (v - z_max).exp()).sum();
    1.0 / (step * scaled)
}

fn xi_kernel(z: &[f64], delta: f64) -> (EstimatorSample, usize) {
    assert!(!z.is_empty(), "estimator needs at least one grid point");
    let (index, z_max) = argmax(z);
    let scaled: f64 = z.iter().map(|&v| (v - z_max).exp()).sum();
    let denom = delta * scaled;
    let sample = EstimatorSample { xi: 1.0 / denom, argmax_t: 0.0, log_denominator: z_max + denom.ln(), z_max };
    (sample, index)
}

fn argmax(z: &[f64]) -> (usize, f64) {
    let mut best = (0, z[0]);
    for (i, &v) in z.iter().enumerate().skip(1) {
        if v > best.1 {
            best = (i, v);
        }
    }
    best
}

/// `(1/S) · sup_{t ∈ [0,S]_δ} e^{Z(t)}` on a one-sided path.
///
/// The variance of this estimator grows without bound in `S`; it is kept as
/// the baseline the ratio estimator is contrasted with.
pub fn definitional_estimator(path: &FbmPath, horizon: f64) -> f64 {
    let grid = &path.grid;
    let end =
        (grid.origin() + ((horizon / grid.delta()) * (1.0 + 4.0 * f64::EPSILON)).floor() as usize).min(grid.len() - 1);
    let z_max = path.z[grid.origin()..=end].iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    z_max.exp() / horizon
}

/// Definitional estimator on a raw one-sided field `z` sampled on `[0,S]_δ`.
pub fn definitional_from_field(z: &[f64], horizon: f64) -> f64 {
    z.iter().cloned().fold(f64::NEG_INFINITY, f64::max).exp() / horizon
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fbm::{GridSpec, PathSampler};
    use crate::rng::replication_stream;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn naive_xi(z: &[f64], delta: f64) -> f64 {
        let sup = z.iter().map(|v| v.exp()).fold(0.0, f64::max);
        let sum: f64 = z.iter().map(|v| v.exp()).sum();
        sup / (delta * sum)
    }

    #[test]
    fn hand_example() {
        let z = [-0.5, 0.0, -2.0];
        let s = xi_from_field(&z, 1.0);
        let expected = 1.0 / ((-0.5f64).exp() + 1.0 + (-2.0f64).exp());
        assert_relative_eq!(s.xi, expected, max_relative = 1e-15);
        assert_relative_eq!(s.xi, 0.574097, epsilon = 1e-6);
        assert_eq!(s.argmax_t, 1.0);
        assert_eq!(s.z_max, 0.0);
        assert_relative_eq!(s.log_denominator, -s.xi.ln(), max_relative = 1e-14);
    }

    #[test]
    fn flat_field() {
        let z = vec![0.3; 9];
        assert_relative_eq!(xi_from_field(&z, 0.25).xi, 1.0 / (0.25 * 9.0), max_relative = 1e-15);
    }

    #[test]
    fn single_point() {
        assert_eq!(xi_from_field(&[4.2], 0.5).xi, 2.0);
    }

    #[test]
    fn huge_fields_do_not_overflow() {
        let z: Vec<f64> = (0..50).map(|i| 900.0 - i as f64).collect();
        let s = xi_from_field(&z, 0.1);
        assert!(s.xi.is_finite());
        assert!(naive_xi(&z, 0.1).is_nan());
        let shifted: Vec<f64> = z.iter().map(|v| v - 900.0).collect();
        assert_relative_eq!(s.xi, naive_xi(&shifted, 0.1), max_relative = 1e-12);
    }

    #[test]
    fn path_argmax_is_a_grid_time() {
        let g = GridSpec::two_sided(1.0, 0.5, 3.0).unwrap();
        let p = PathSampler::new(g).unwrap().sample(&mut replication_stream(2, 0));
        let s = xi_truncated(&p);
        let i = p.z.iter().position(|&v| v == s.z_max).unwrap();
        assert_eq!(s.argmax_t, g.time(i));
        let w = xi_window(&p, 0..g.len());
        assert_eq!(w, s);
    }

    #[test]
    fn subgrid_matches_direct_evaluation() {
        let g = GridSpec::two_sided(0.6, 0.25, 4.0).unwrap();
        let p = PathSampler::new(g).unwrap().sample(&mut replication_stream(8, 1));
        assert_eq!(xi_subgrid(&p, 1, 4.0), xi_truncated(&p).xi);
        assert_eq!(xi_subgrid(&p, 1, 2.0), xi_window(&p, g.window(2.0).unwrap()).xi);
        let coarse: Vec<f64> = (0..g.len()).step_by(4).map(|i| p.z[i]).collect();
        assert_relative_eq!(xi_subgrid(&p, 4, 4.0), xi_from_field(&coarse, 1.0).xi, max_relative = 1e-15);
        // 4/(0.75) = 5.33: five steps each side of the stride-3 grid.
        let odd: Vec<f64> = (1..g.len()).step_by(3).map(|i| p.z[i]).collect();
        assert_eq!(odd.len(), 11);
        assert_relative_eq!(xi_subgrid(&p, 3, 4.0), xi_from_field(&odd, 0.75).xi, max_relative = 1e-15);
    }

    #[test]
    fn definitional_examples() {
        let g = GridSpec::one_sided(1.0, 0.5, 1.0).unwrap();
        assert_eq!(definitional_from_field(&[0.0, 0.0, 0.0], 4.0), 0.25);
        assert_relative_eq!(definitional_from_field(&[0.0, 0.3, -0.1], 1.0), 0.3f64.exp(), max_relative = 1e-15);
        assert_relative_eq!(0.3f64.exp(), 1.349859, epsilon = 1e-6);
        let p = FbmPath { grid: g, b: vec![0.0; 3], z: vec![0.0, 0.3, -0.1] };
        assert_relative_eq!(definitional_estimator(&p, 1.0), 1.349859, epsilon = 1e-6);
        // Prefix [0, 0.5] only sees the first two points.
        assert_relative_eq!(definitional_estimator(&p, 0.5), 0.3f64.exp() / 0.5, max_relative = 1e-15);
    }

    proptest! {
        #[test]
        fn shift_invariance(z in prop::collection::vec(-30.0f64..30.0, 1..60), delta in 0.01f64..2.0) {
            let base = xi_from_field(&z, delta).xi;
            for c in [-700.0, 0.0, 700.0] {
                let shifted: Vec<f64> = z.iter().map(|v| v + c).collect();
                let s = xi_from_field(&shifted, delta).xi;
                prop_assert!(((s - base) / base).abs() <= 1e-12);
            }
        }

        #[test]
        fn bounds_and_naive_agreement(z in prop::collection::vec(-30.0f64..30.0, 1..60), delta in 0.01f64..2.0) {
            let n = z.len() as f64;
            let s = xi_from_field(&z, delta);
            prop_assert!(s.xi >= 1.0 / (delta * n) * (1.0 - 1e-14));
            prop_assert!(s.xi <= 1.0 / delta * (1.0 + 1e-14));
            let naive = naive_xi(&z, delta);
            prop_assert!(((s.xi - naive) / naive).abs() <= 1e-12);
        }
    }
}
