//! Acceptance suite: one line per criterion, then a single assertion.
//! Run with `cargo test -p tailratio-cli --test acceptance -- --nocapture`.

use std::path::Path;
use std::process::Command;
use std::time::Instant;

use tailratio::estimators::{estimate, EstimatorKind};
use tailratio::montecarlo::{
    bias_variance_study, coverage_study, density_ks_check, exact_mean, normality_check, run_figure_experiment,
    Preset, SimConfig,
};
use tailratio::theory::hypergeometric::gauss_2f1;
use tailratio::theory::{asymptotic_variance, DensityKind, DensitySpec};
use tailratio::{DistributionSpec, Family, RatioConfig, Sample};

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn unbiasedness() -> Outcome {
    let dist = DistributionSpec::new(Family::LogLogistic, 2.0).unwrap();
    let row = &bias_variance_study(EstimatorKind::QLL, &dist, 2, &[10], 100_000, 1).map_err(|e| e.to_string())?[0];
    let z = (row.mean - 0.5) / row.std_error;
    check(z.abs() < 3.0, format!("mean {:.6}, se {:.2e}, z {z:.2}", row.mean, row.std_error))
}

fn qll_star_mean() -> Outcome {
    let dist = DistributionSpec::new(Family::LogLogistic, 2.0).unwrap();
    let rows = bias_variance_study(EstimatorKind::QLLStar, &dist, 2, &[10, 50], 100_000, 2).map_err(|e| e.to_string())?;
    let mut ok = true;
    let mut detail = Vec::new();
    for row in rows {
        let expected = exact_mean(EstimatorKind::QLLStar, Family::LogLogistic, 2.0, row.i, 2).unwrap();
        let z = (row.mean - expected) / row.std_error;
        ok &= z.abs() < 3.0;
        detail.push(format!("i={} mean {:.6} expected {:.6} z {z:.2}", row.i, row.mean, expected));
    }
    check(ok, detail.join("; "))
}

fn normality() -> Outcome {
    let r = normality_check(EstimatorKind::QLLStar, 2.0, 2, 500, 10_000, 3).map_err(|e| e.to_string())?;
    let target = asymptotic_variance(EstimatorKind::QLLStar, 2).unwrap();
    let rel = (r.empirical_var / target - 1.0).abs();
    check(
        rel < 0.1 && r.ks_distance < 0.02,
        format!("variance {:.4} vs {target:.4} ({:.1}%), KS {:.4}", r.empirical_var, 100.0 * rel, r.ks_distance),
    )
}

fn coverage() -> Outcome {
    let r = coverage_study(2.0, 2, 300, 0.95, 10_000, 4).map_err(|e| e.to_string())?;
    check((0.94..=0.96).contains(&r.coverage), format!("coverage {:.4}", r.coverage))
}

fn densities() -> Outcome {
    let mut ok = true;
    let mut detail = Vec::new();
    let mut worst_mass: f64 = 0.0;
    for kind in [DensityKind::LLStar, DensityKind::FrStar] {
        for (i, s) in [(2, 2), (3, 2), (2, 3), (4, 5)] {
            let spec = DensitySpec::new(kind, i, s).map_err(|e| e.to_string())?;
            let mass = spec.total_mass().map_err(|e| e.to_string())?.value;
            worst_mass = worst_mass.max((mass - 1.0).abs());
        }
    }
    ok &= worst_mass < 1e-5;
    detail.push(format!("max |mass-1| {worst_mass:.1e}"));

    let spec = DensitySpec::new(DensityKind::LLStar, 2, 2).unwrap();
    let mut worst_rel: f64 = 0.0;
    for x in [0.1, 0.5, 1.0, 2.0] {
        let closed = spec.ll_star_pdf(x);
        let integral = spec.ll_star_pdf_integral_form(x).map_err(|e| e.to_string())?;
        worst_rel = worst_rel.max(((closed - integral) / integral).abs());
    }
    ok &= worst_rel < 1e-7;
    detail.push(format!("forms agree to {worst_rel:.1e}"));

    for kind in [DensityKind::LLStar, DensityKind::FrStar] {
        let r = density_ks_check(kind, 1.0, 2, 2, 1_000_000, 11, 4000).map_err(|e| e.to_string())?;
        ok &= r.ks_distance < 0.01;
        detail.push(format!("{kind} KS {:.5}", r.ks_distance));
    }
    check(ok, detail.join("; "))
}

fn figures() -> Outcome {
    let mut ok = true;
    let mut detail = Vec::new();
    for alpha in [1.4, 2.0] {
        let mut terminal = std::collections::HashMap::new();
        for preset in [Preset::FigureLogLogistic, Preset::FigureFrechet, Preset::FigureHillHorror] {
            let cfg = SimConfig::preset(preset, alpha);
            let table = run_figure_experiment(&cfg).map_err(|e| e.to_string())?;
            let target = cfg.target().unwrap();
            for s in 2..=5 {
                let early = table.relative_error(s, 10, target).unwrap();
                let late = table.relative_error(s, 150, target).unwrap();
                if preset != Preset::FigureHillHorror && late >= early {
                    ok = false;
                    detail.push(format!("{preset:?} alpha={alpha} s={s}: {late:.4} >= {early:.4}"));
                }
                terminal.insert((preset, s), late);
            }
        }
        for s in 2..=5 {
            let hh = terminal[&(Preset::FigureHillHorror, s)];
            let ll = terminal[&(Preset::FigureLogLogistic, s)];
            if hh <= ll {
                ok = false;
                detail.push(format!("alpha={alpha} s={s}: hill-horror {hh:.4} <= log-logistic {ll:.4}"));
            }
        }
        detail.push(format!(
            "alpha={alpha}: LL s=2 error at i=150 {:.3}, HH {:.3}",
            terminal[&(Preset::FigureLogLogistic, 2)],
            terminal[&(Preset::FigureHillHorror, 2)]
        ));
    }
    check(ok, detail.join("; "))
}

fn scale_invariance() -> Outcome {
    let mut worst: f64 = 0.0;
    for (family, i, s, seed) in [(Family::LogLogistic, 20, 2, 1), (Family::Frechet, 7, 4, 2), (Family::Pareto, 50, 3, 3)] {
        let cfg = RatioConfig::new(i, s).unwrap();
        let sample = DistributionSpec::new(family, 1.3).unwrap().sample(cfg.n(), seed).unwrap();
        for kind in EstimatorKind::ALL {
            let base = estimate(kind, &sample, &cfg).unwrap().inv_alpha_hat;
            for c in [1e-3, 7.0, 1e6] {
                let scaled = estimate(kind, &sample.scaled(c).unwrap(), &cfg).unwrap().inv_alpha_hat;
                worst = worst.max(((scaled - base) / base).abs());
            }
        }
    }
    check(worst <= 1e-12, format!("max relative change {worst:.1e}"))
}

fn literal_index(n: usize, k: usize) -> usize {
    if k == 0 {
        return 1;
    }
    (1..=n).find(|&j| j * 100 >= n * k).unwrap()
}

fn oracles() -> Outcome {
    let mut mismatches = 0;
    for n in 1..=30usize {
        let values: Vec<f64> = (1..=n).map(|k| (k as f64).powf(1.3)).collect();
        let sample = Sample::new(values.clone()).unwrap();
        for k in 0..=100usize {
            if sample.empirical_quantile(k as f64 / 100.0).unwrap() != values[literal_index(n, k) - 1] {
                mismatches += 1;
            }
        }
    }
    let rel = |a: f64, b: f64| ((a - b) / b).abs();
    let mut worst: f64 = 0.0;
    for y in [-50.0, -3.0, -0.5, 0.3, 0.85, 0.999] {
        worst = worst.max(rel(gauss_2f1(1.0, 1.0, 2.0, y).unwrap(), -(-y as f64).ln_1p() / y));
    }
    for y in [-4.0, -0.2, 0.5, 0.93] {
        worst = worst.max(rel(gauss_2f1(2.5, 1.5, 1.5, y).unwrap(), (1.0 - y as f64).powf(-2.5)));
    }
    for x in [0.3f64, 0.9, 0.99] {
        worst = worst.max(rel(gauss_2f1(0.5, 0.5, 1.5, x * x).unwrap(), x.asin() / x));
    }
    for x in [0.5f64, 2.0, 10.0] {
        worst = worst.max(rel(gauss_2f1(0.5, 1.0, 1.5, -x * x).unwrap(), x.atan() / x));
    }
    check(
        mismatches == 0 && worst < 1e-9,
        format!("{mismatches} quantile mismatches over n<=30; 2F1 max relative error {worst:.1e}"),
    )
}

fn tool(dir: &Path, args: &[&str]) -> Result<(), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_tailratio"))
        .current_dir(dir)
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if out.status.success() {
        Ok(())
    } else {
        Err(format!("{args:?}: {}", String::from_utf8_lossy(&out.stderr)))
    }
}

fn read(dir: &Path, name: &str) -> Result<Vec<u8>, String> {
    std::fs::read(dir.join(name)).map_err(|e| format!("{name}: {e}"))
}

fn determinism() -> Outcome {
    let tmp = tempfile::TempDir::new().map_err(|e| e.to_string())?;
    let dir = tmp.path();
    tool(dir, &["sample", "--family", "loglogistic", "--alpha", "2", "--n", "449", "--seed", "3", "--out", "data.txt"])?;
    let cases: Vec<(&str, Vec<&str>, bool)> = vec![
        ("sample", vec!["sample", "--family", "hillhorror", "--alpha", "1.4", "--n", "1000", "--seed", "9"], false),
        ("estimate", vec!["estimate", "--input", "data.txt", "--kind", "qllstar", "--i", "150", "--s", "2"], false),
        ("quantile", vec!["quantile", "--input", "data.txt", "--family", "loglogistic", "--i", "150", "--s", "2", "--p", "0.999"], false),
        ("ci", vec!["ci", "--input", "data.txt", "--i", "150", "--s", "2", "--level", "0.9"], false),
        ("density", vec!["density", "--kind", "fr-star", "--i", "2", "--s", "2", "--grid", "0:4:0.05"], false),
        ("simulate", vec!["simulate", "--preset", "figure-fr", "--alpha", "1.4"], true),
    ];
    let mut names = Vec::new();
    for (name, args, chart) in cases {
        for run in ["a", "b"] {
            let mut full: Vec<String> = args.iter().map(|s| s.to_string()).collect();
            full.extend(["--out".into(), format!("{name}.{run}")]);
            if chart {
                full.extend(["--svg".into(), format!("{name}.{run}.svg")]);
            }
            tool(dir, &full.iter().map(String::as_str).collect::<Vec<_>>())?;
        }
        let manifest = format!("{name}.a.manifest.json");
        let mut replay = vec!["replay".to_string(), manifest, "--out".into(), format!("{name}.c")];
        if chart {
            replay.extend(["--svg".into(), format!("{name}.c.svg")]);
        }
        tool(dir, &replay.iter().map(String::as_str).collect::<Vec<_>>())?;
        let mut files = vec![(format!("{name}.a"), format!("{name}.b"), format!("{name}.c"))];
        if chart {
            files.push((format!("{name}.a.svg"), format!("{name}.b.svg"), format!("{name}.c.svg")));
        }
        for (a, b, c) in files {
            let (a_bytes, b_bytes, c_bytes) = (read(dir, &a)?, read(dir, &b)?, read(dir, &c)?);
            if a_bytes.is_empty() || a_bytes != b_bytes || a_bytes != c_bytes {
                return Err(format!("{name}: outputs {a}, {b}, {c} differ"));
            }
        }
        names.push(name);
    }
    Ok(format!("byte-identical reruns and replays for {}", names.join(", ")))
}

#[test]
fn acceptance_criteria() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("QLL unbiased at i=10", unbiasedness),
        ("QLL* mean matches harmonic expression", qll_star_mean),
        ("QLL* asymptotic normality", normality),
        ("95% interval coverage", coverage),
        ("exact densities", densities),
        ("figure presets", figures),
        ("scale invariance", scale_invariance),
        ("quantile and 2F1 oracles", oracles),
        ("CLI determinism", determinism),
    ];
    let mut failed = Vec::new();
    for (idx, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match &outcome {
            Ok(detail) => println!("criterion {} ({name}): PASS [{secs:.1}s] {detail}", idx + 1),
            Err(detail) => {
                println!("criterion {} ({name}): FAIL [{secs:.1}s] {detail}", idx + 1);
                failed.push(idx + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
