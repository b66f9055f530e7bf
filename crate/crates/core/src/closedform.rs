//! Exact values of Pickands constants for `α ∈ {1, 2}`.
//!
//! `H_1^δ` is an infinite series; it is truncated where an analytic tail
//! bound drops below [`SERIES_TARGET`], and the bound travels with the value
//! in [`ClosedFormValue`]. `H_2^δ` is a finite expression in `Φ`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::stats::CompensatedSum;

/// Target for certified series tail bounds.
pub const SERIES_TARGET: f64 = 1e-13;

/// `H_1 = 1`.
pub const H1_CONTINUOUS: f64 = 1.0;

/// `H_2 = 1/√π`.
pub const H2_CONTINUOUS: f64 = 0.564_189_583_547_756_3;

const INV_SQRT_PI: f64 = 0.564_189_583_547_756_3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClosedFormValue {
    pub value: f64,
    /// Upper bound on the error caused by truncating a series (0 for finite formulas).
    pub truncation_bound: f64,
    pub terms_used: u64,
}

impl ClosedFormValue {
    fn exact(value: f64) -> Self {
        Self { value, truncation_bound: 0.0, terms_used: 0 }
    }
}

/// Standard normal cdf, via the complementary error function.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x * std::f64::consts::FRAC_1_SQRT_2)
}

fn check_step(delta: f64) -> Result<()> {
    if delta > 0.0 && delta.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("grid step must be positive and finite, got {delta}")))
    }
}

/// Smallest `K` for which the decreasing `bound(K)` is at most `target`.
fn smallest_terms(target: f64, bound: impl Fn(u64) -> f64) -> u64 {
    if bound(1) <= target {
        return 1;
    }
    // Invariant: bound(lo) > target >= bound(hi).
    let mut lo = 1u64;
    let mut hi = 2u64;
    while bound(hi) > target {
        lo = hi;
        hi *= 2;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if bound(mid) <= target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// `Σ_{k≥1} Φ(−√(ηk/2))/k` with its certified tail bound and term count.
///
/// Uses `Φ(−x) ≤ ½e^{−x²/2}`, giving the tail bound
/// `Σ_{k>K} ≤ e^{−ηK/4} / (K (1 − e^{−η/4}))`.
fn tail_series(eta: f64) -> (f64, f64, u64) {
    let ratio = -(-eta / 4.0).exp_m1();
    let bound = |k: u64| (-eta * k as f64 / 4.0).exp() / (k as f64 * ratio);
    let terms = smallest_terms(SERIES_TARGET, bound);
    let mut sum = CompensatedSum::default();
    // Summed smallest first.
    for k in (1..=terms).rev() {
        let kf = k as f64;
        sum.add(normal_cdf(-(eta * kf / 2.0).sqrt()) / kf);
    }
    (sum.value(), bound(terms), terms)
}

/// `Σ_{k≥1} e^{−ηk/4}/√k`, certified the same way.
fn exp_series(eta: f64) -> (f64, f64, u64) {
    let ratio = -(-eta / 4.0).exp_m1();
    let bound = |k: u64| (-eta * (k + 1) as f64 / 4.0).exp() / ((k as f64 + 1.0).sqrt() * ratio);
    let terms = smallest_terms(SERIES_TARGET, bound);
    let mut sum = CompensatedSum::default();
    for k in (1..=terms).rev() {
        let kf = k as f64;
        sum.add((-eta * kf / 4.0).exp() / kf.sqrt());
    }
    (sum.value(), bound(terms), terms)
}

/// `H_1^δ = (δ exp{2 Σ_{k≥1} Φ(−√(δk/2))/k})^{-1}`.
pub fn h1_delta(delta: f64) -> Result<ClosedFormValue> {
    check_step(delta)?;
    let (series, tail, terms) = tail_series(delta);
    let value = 1.0 / (delta * (2.0 * series).exp());
    // Missing tail mass ε lowers the exact value by a factor e^{−2ε}.
    let truncation_bound = value * -(-2.0 * tail).exp_m1();
    Ok(ClosedFormValue { value, truncation_bound, terms_used: terms })
}

/// `H_2^δ = (2/δ)(Φ(δ/√2) − ½)`.
pub fn h2_delta(delta: f64) -> Result<ClosedFormValue> {
    check_step(delta)?;
    // Φ(x) − ½ = ½ erf(x/√2); erf avoids the cancellation for small δ.
    let value = libm::erf(delta / 2.0) / delta;
    Ok(ClosedFormValue::exact(value))
}

/// `v(η) = η exp{2 Σ_{k≥1} Ψ(√(ηk/2))/k}`, so that `H_1^η = 1/v(η)`.
pub fn v_eta(eta: f64) -> Result<ClosedFormValue> {
    check_step(eta)?;
    let (series, tail, terms) = tail_series(eta);
    let value = eta * (2.0 * series).exp();
    let truncation_bound = value * (2.0 * tail).exp_m1();
    Ok(ClosedFormValue { value, truncation_bound, terms_used: terms })
}

/// `v′(η) = exp{2 Σ Ψ(√(ηk/2))/k} · (1 − √η/(2√π) Σ_{k≥1} e^{−ηk/4}/√k)`.
pub fn v_eta_prime(eta: f64) -> Result<ClosedFormValue> {
    check_step(eta)?;
    let (series, tail_a, terms_a) = tail_series(eta);
    let (exps, tail_b, terms_b) = exp_series(eta);
    let scale = eta.sqrt() * 0.5 * INV_SQRT_PI;
    let front = (2.0 * series).exp();
    let bracket = 1.0 - scale * exps;
    let value = front * bracket;
    let truncation_bound = front * ((2.0 * tail_a).exp_m1() * bracket.abs() + (2.0 * tail_a).exp() * scale * tail_b);
    Ok(ClosedFormValue { value, truncation_bound, terms_used: terms_a + terms_b })
}

/// Dirichlet eta function `Σ_{k≥0} (−1)^k / (k+1)^s` for real `s > 0`, by the
/// Cohen–Villegas–Zagier acceleration of alternating series.
pub fn dirichlet_eta(s: f64) -> f64 {
    const TERMS: i32 = 40;
    let n = TERMS as f64;
    let d = (3.0 + 8f64.sqrt()).powi(TERMS);
    let d = 0.5 * (d + 1.0 / d);
    let mut b = -1.0;
    let mut c = -d;
    let mut acc = 0.0;
    for k in 0..TERMS {
        let kf = k as f64;
        c = b - c;
        acc += c * (kf + 1.0).powf(-s);
        b = (kf + n) * (kf - n) * b / ((kf + 0.5) * (kf + 1.0));
    }
    acc / d
}

/// Riemann zeta on `(0, 1)` through `ζ(s) = η(s) / (1 − 2^{1−s})`.
pub fn zeta(s: f64) -> Result<f64> {
    if !(s > 0.0 && s < 1.0) {
        return Err(Error::Domain(format!("zeta is only provided on (0, 1), got {s}")));
    }
    Ok(dirichlet_eta(s) / (1.0 - 2f64.powf(1.0 - s)))
}

/// `ζ(1/2)`.
pub fn zeta_half() -> f64 {
    dirichlet_eta(0.5) / (1.0 - std::f64::consts::SQRT_2)
}

/// `lim_{δ→0} (H_1 − H_1^δ)/√δ = −ζ(1/2)/√π`.
pub fn alpha1_rate_constant() -> f64 {
    -zeta_half() * INV_SQRT_PI
}

/// `lim_{δ→0} (H_2 − H_2^δ)/δ² = 1/(12√π)`.
pub fn alpha2_rate_constant() -> f64 {
    INV_SQRT_PI / 12.0
}

/// Continuous constant `H_α` where it is known exactly.
pub fn h_continuous(alpha: f64) -> Option<f64> {
    if alpha == 1.0 {
        Some(H1_CONTINUOUS)
    } else if alpha == 2.0 {
        Some(H2_CONTINUOUS)
    } else {
        None
    }
}

/// Discrete constant `H_α^δ` where a closed form exists.
pub fn h_delta(alpha: f64, delta: f64) -> Result<Option<ClosedFormValue>> {
    if alpha == 1.0 {
        h1_delta(delta).map(Some)
    } else if alpha == 2.0 {
        h2_delta(delta).map(Some)
    } else {
        Ok(None)
    }
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    // Reference values from a 40-digit evaluation of the same formulas.
    const PHI_INV_SQRT2: f64 = 0.760_249_938_906_523_3;
    const ZETA_HALF: f64 = -1.460_354_508_809_586_8;
    const H1_HALF: f64 = 0.560_370_228_420_053_2;
    const H1_ONE: f64 = 0.442_978_309_950_351_4;
    const H2_ONE: f64 = 0.520_499_877_813_046_5;
    const H2_HALF: f64 = 0.552_652_780_336_473_9;
    const V: [(f64, f64, f64); 4] = [
        (0.1, 1.297_236_944_781_750_9, 1.683_940_407_913_491_7),
        (0.5, 1.784_534_490_384_097_5, 1.021_308_452_347_929_9),
        (1.0, 2.257_446_871_635_947_8, 0.897_398_804_032_597_4),
        (2.0, 3.120_761_207_237_756_4, 0.846_454_395_989_705_2),
    ];

    /// Alternating sum with repeated averaging of partial sums.
    fn eta_by_averaging(s: f64, terms: usize, levels: usize) -> f64 {
        let mut partial = Vec::with_capacity(terms);
        let mut acc = 0.0;
        for k in 0..terms {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            acc += sign / ((k + 1) as f64).powf(s);
            partial.push(acc);
        }
        let mut row = partial[terms - levels - 1..].to_vec();
        for _ in 0..levels {
            row = row.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
        }
        row[0]
    }

    #[test]
    fn normal_cdf_values() {
        assert_eq!(normal_cdf(0.0), 0.5);
        for x in [0.1, 0.7, 1.3, 2.9, 5.0, 8.0] {
            assert!((normal_cdf(x) + normal_cdf(-x) - 1.0).abs() <= 1e-15);
        }
        assert_relative_eq!(normal_cdf(std::f64::consts::FRAC_1_SQRT_2), PHI_INV_SQRT2, max_relative = 1e-14);
        assert_relative_eq!(normal_cdf(-10.0), 7.619_853_024_160_526_6e-24, max_relative = 1e-14);
    }

    #[test]
    fn zeta_half_matches_oracles() {
        let z = zeta_half();
        assert!((z + 1.460_354_508_80).abs() <= 1e-10);
        assert_relative_eq!(z, ZETA_HALF, max_relative = 1e-14);
        let oracle = eta_by_averaging(0.5, 10_000, 30) / (1.0 - std::f64::consts::SQRT_2);
        assert!((z - oracle).abs() <= 1e-12, "{z} vs {oracle}");
        assert_relative_eq!(zeta(0.5).unwrap(), z);
        assert!(zeta(1.0).is_err());
        assert_relative_eq!(zeta(0.25).unwrap(), -0.813_278_405_261_891_7, max_relative = 1e-13);
    }

    #[test]
    fn rate_constants() {
        assert!((alpha1_rate_constant() - 0.823_917).abs() < 1e-6);
        assert!((alpha2_rate_constant() - 0.047_015_8).abs() < 1e-7);
        assert_relative_eq!(H2_CONTINUOUS, 1.0 / std::f64::consts::PI.sqrt(), max_relative = 1e-15);
    }

    #[test]
    fn h1_against_reference_and_brute_force() {
        let v = h1_delta(0.5).unwrap();
        assert!(v.truncation_bound <= 1e-12 && v.truncation_bound > 0.0);
        assert_relative_eq!(v.value, H1_HALF, max_relative = 1e-13);
        let mut brute = CompensatedSum::default();
        for k in (1..=1_000_000u64).rev() {
            brute.add(normal_cdf(-(0.5 * k as f64 / 2.0).sqrt()) / k as f64);
        }
        assert_relative_eq!(v.value, 1.0 / (0.5 * (2.0 * brute.value()).exp()), max_relative = 1e-13);
        assert_relative_eq!(h1_delta(1.0).unwrap().value, H1_ONE, max_relative = 1e-13);
    }

    #[test]
    fn h1_small_step_limit() {
        let v = h1_delta(1e-6).unwrap().value;
        assert!(v > 0.999 && v < 1.0, "{v}");
    }

    #[test]
    fn h2_values() {
        let v = h2_delta(1.0).unwrap();
        assert_eq!(v.truncation_bound, 0.0);
        assert_relative_eq!(v.value, H2_ONE, max_relative = 1e-14);
        assert_relative_eq!(v.value, 2.0 * (normal_cdf(std::f64::consts::FRAC_1_SQRT_2) - 0.5), max_relative = 1e-14);
        assert_relative_eq!(h2_delta(0.5).unwrap().value, H2_HALF, max_relative = 1e-14);
        assert!((h2_delta(1e-8).unwrap().value - H2_CONTINUOUS).abs() <= 1e-10);
    }

    #[test]
    fn domain_errors() {
        for bad in [0.0, -1.0, f64::NAN, f64::INFINITY] {
            assert!(h1_delta(bad).is_err());
            assert!(h2_delta(bad).is_err());
            assert!(v_eta(bad).is_err());
            assert!(v_eta_prime(bad).is_err());
        }
    }

    #[test]
    fn strictly_decreasing() {
        let deltas: Vec<f64> = (1..=30).map(|k| 0.1 * k as f64).collect();
        for w in deltas.windows(2) {
            assert!(h1_delta(w[1]).unwrap().value < h1_delta(w[0]).unwrap().value);
            assert!(h2_delta(w[1]).unwrap().value < h2_delta(w[0]).unwrap().value);
        }
    }

    #[test]
    fn v_identities() {
        for (eta, v, dv) in V {
            let val = v_eta(eta).unwrap();
            assert_relative_eq!(val.value, v, max_relative = 1e-13);
            assert_relative_eq!(h1_delta(eta).unwrap().value * val.value, 1.0, max_relative = 1e-12);
            let d = v_eta_prime(eta).unwrap();
            assert!(d.value > 0.0);
            assert!(d.truncation_bound <= 1e-12);
            assert_relative_eq!(d.value, dv, max_relative = 1e-12);
            let h = 1e-5;
            let fd = (v_eta(eta + h).unwrap().value - v_eta(eta - h).unwrap().value) / (2.0 * h);
            assert_relative_eq!(fd, d.value, max_relative = 1e-6);
        }
    }

    #[test]
    fn smallest_terms_is_minimal() {
        let bound = |k: u64| 1.0 / k as f64;
        assert_eq!(smallest_terms(0.01, bound), 100);
        assert_eq!(smallest_terms(2.0, bound), 1);
        assert_eq!(smallest_terms(0.3, bound), 4);
    }
}
