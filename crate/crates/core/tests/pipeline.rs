use tailratio::estimators::{estimate, quantile_extrapolate, EstimatorKind};
use tailratio::{DistributionSpec, Family, RatioConfig, Sample};

#[test]
fn text_round_trip_preserves_estimates() {
    let dist = DistributionSpec::new(Family::Frechet, 1.7).unwrap();
    let cfg = RatioConfig::new(40, 3).unwrap();
    let sample = dist.sample(cfg.n(), 99).unwrap();
    let reread = Sample::from_reader(sample.to_text().as_bytes()).unwrap();
    assert_eq!(reread, sample);
    for kind in EstimatorKind::ALL {
        assert_eq!(
            estimate(kind, &sample, &cfg).unwrap().inv_alpha_hat,
            estimate(kind, &reread, &cfg).unwrap().inv_alpha_hat
        );
    }
}

#[test]
fn large_sample_estimates_recover_alpha() {
    let cfg = RatioConfig::new(3000, 2).unwrap();
    for (family, kind) in [
        (Family::LogLogistic, EstimatorKind::QLLStar),
        (Family::LogLogistic, EstimatorKind::QLL),
        (Family::Frechet, EstimatorKind::QFrStar),
        (Family::Pareto, EstimatorKind::QStar),
    ] {
        let dist = DistributionSpec::new(family, 1.5).unwrap();
        let sample = dist.sample(cfg.n(), 4).unwrap();
        let alpha = estimate(kind, &sample, &cfg).unwrap().alpha_hat;
        assert!((alpha - 1.5).abs() < 0.15, "{family} {kind}: {alpha}");
    }
}

#[test]
fn extrapolation_lands_near_true_quantile() {
    let dist = DistributionSpec::new(Family::LogLogistic, 2.0).unwrap();
    let cfg = RatioConfig::new(2000, 3).unwrap();
    let sample = dist.sample(cfg.n(), 12).unwrap();
    let q = quantile_extrapolate(&sample, &cfg, 0.9999, Family::LogLogistic, EstimatorKind::QLLStar).unwrap();
    let truth = dist.quantile(0.9999).unwrap();
    assert!((q / truth - 1.0).abs() < 0.25, "{q} vs {truth}");
}

#[test]
fn reader_reports_line_numbers() {
    let err = Sample::from_reader("1.0\n# note\n2.0\n-3\n".as_bytes()).unwrap_err();
    assert!(err.to_string().contains('4'), "{err}");
}
