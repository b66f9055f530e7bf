use pickands::studies::{definitional_variances, ratio_variances, run_study, Study, StudyConfig, VARIANCE_BAND};

#[test]
fn discretization_slope_for_alpha_half() {
    let cfg = StudyConfig::new(Study::Discretization).alphas(&[0.5]).deltas(&[0.4, 0.2, 0.1, 0.05]).reps(100_000);
    let report = run_study(&cfg).unwrap();
    assert!(report.checks.is_empty(), "only upper rates are known for alpha=0.5");
    let slope = report.stat("slope").next().expect("slope row");
    assert!(
        (0.15..=0.35).contains(&slope.value),
        "fitted slope {} +/- {} outside [0.15, 0.35]; half-step diffs {:?}",
        slope.value,
        slope.std_err,
        report.stat("half_step_diff").map(|r| r.value).collect::<Vec<_>>()
    );
}

#[test]
fn closed_form_discretization_ratios() {
    let report = run_study(&StudyConfig::new(Study::Discretization).alphas(&[2.0]).deltas(&[1e-1, 1e-2])).unwrap();
    assert!(report.passed(), "{:?}", report.checks);
    let alpha1 = run_study(&StudyConfig::new(Study::Discretization).alphas(&[1.0]).deltas(&[1e-2, 1e-3])).unwrap();
    let slope = alpha1.stat("slope").next().unwrap().value;
    assert!((slope - 0.5).abs() < 0.05, "log-log slope {slope}");
}

#[test]
fn definitional_variance_grows_from_s8_to_s64() {
    let v = definitional_variances(0.5, 0.1, &[8.0, 64.0], 10_000, 0, None).unwrap();
    assert!(v[1].variance > v[0].variance, "{v:?}");
}

#[test]
fn ratio_variance_stays_in_band_along_the_ladder() {
    for alpha in [0.5, 1.0, 1.5, 2.0] {
        let v = ratio_variances(alpha, 0.1, &[8.0, 16.0, 32.0, 64.0], 5_000, 1, None).unwrap();
        let hi = v.iter().map(|p| p.variance).fold(f64::NEG_INFINITY, f64::max);
        let lo = v.iter().map(|p| p.variance).fold(f64::INFINITY, f64::min);
        assert!(hi < VARIANCE_BAND * lo, "alpha={alpha}: {v:?}");
    }
}

#[test]
fn tail_study_defaults() {
    let report = run_study(&StudyConfig::new(Study::Tail).reps(20_000)).unwrap();
    assert!(report.passed(), "{:?}", report.checks);
    assert_eq!(report.stat("log_square_slope").count(), 1);
}

#[test]
fn estimate_is_seed_deterministic() {
    let cfg = StudyConfig::new(Study::Estimate).alphas(&[0.7]).deltas(&[0.25]).horizons(&[3.0]).reps(1000).seed(77);
    let a = run_study(&cfg).unwrap();
    let b = run_study(&cfg).unwrap();
    assert_eq!(a, b);
    let c = run_study(&cfg.clone().seed(78)).unwrap();
    assert_ne!(a.rows[0].value, c.rows[0].value);
}
