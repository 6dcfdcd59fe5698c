//! Exact finite-sample densities of the normalized log-ratio estimators,
//! their combinatorial constants, and the limiting variances.
//!
//! For a Log-Logistic sample the statistic `αQ^{LL*}` has density
//!
//! ```text
//! f(x) = 2 log s · C · B(is,is) · s^{2x i(s-1)} (1 - s^{-2x})^{i(s-1)-1}
//!        · ₂F₁(is, is; 2is; 1 - s^{2x}),                     x > 0,
//! ```
//!
//! equivalently `2 log s · C · s^{-2ix} (1 - s^{-2x})^{i(s-1)-1} · J(x)` with
//! `J(x) = ∫₀^∞ z^{is-1} (1+z)^{-is} (1 + z s^{-2x})^{-is} dz`.
//! For a Fréchet sample `αQ^{Fr*}` has density
//!
//! ```text
//! f(y) = c_s C e^{-y c_s} ∫₀^∞ z e^{-iz} (e^{-zq} - e^{-z})^{i(s-1)-1}
//!        (1 - e^{-zq})^{i-1} e^{-zq} dz,      q = e^{-y c_s},  y > 0,
//! ```
//!
//! with `c_s = -log(1 - log s / log(s+1))` and
//! `C = [i(s+1)-1]! / ([(i-1)!]² [i(s-1)-1]!)`.

pub mod hypergeometric;
pub mod quadrature;

use std::cell::RefCell;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::function::factorial::ln_factorial;
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::estimators::EstimatorKind;
use crate::stats::CompensatedSum;
use hypergeometric::ln_gauss_2f1;
use quadrature::{
    integrate_semi_infinite, integrate_with_breakpoints, ln_integrate_semi_infinite, Integral,
    QuadratureOptions,
};

/// `c_s = -log(1 - log s / log(s+1))`.
pub fn constant_c(s: usize) -> Result<f64> {
    if s < 2 {
        return Err(Error::Domain(format!("s must be at least 2, got {s}")));
    }
    let sf = s as f64;
    Ok(-(-(sf.ln() / (sf + 1.0).ln())).ln_1p())
}

/// `log C_{i,s}`, `C_{i,s} = [i(s+1)-1]! / ([(i-1)!]² [i(s-1)-1]!)`.
pub fn ln_constant_big_c(i: usize, s: usize) -> Result<f64> {
    if i < 2 || s < 2 {
        return Err(Error::Domain(format!("need i >= 2 and s >= 2, got i = {i}, s = {s}")));
    }
    let n = (i * (s + 1) - 1) as u64;
    let m = (i * (s - 1) - 1) as u64;
    Ok(ln_factorial(n) - 2.0 * ln_factorial((i - 1) as u64) - ln_factorial(m))
}

/// Limiting variance of the scaled statistics:
///
/// * `QLL`: `2√n (H_{is-1} - H_{i-1}) (αQ^{LL} - log s / (H_{is-1} - H_{i-1}))`
///   has variance `2(s+1)²(s-1)/s²`;
/// * `QLLStar`: `√n (αQ^{LL*} - 1)` has variance `(s+1)²(s-1) / (2s² log² s)`.
pub fn asymptotic_variance(kind: EstimatorKind, s: usize) -> Result<f64> {
    if s < 2 {
        return Err(Error::Domain(format!("s must be at least 2, got {s}")));
    }
    let sf = s as f64;
    let base = (sf + 1.0).powi(2) * (sf - 1.0) / (sf * sf);
    match kind {
        EstimatorKind::QLL => Ok(2.0 * base),
        EstimatorKind::QLLStar => Ok(base / (2.0 * sf.ln().powi(2))),
        other => Err(Error::UnsupportedKind(format!(
            "no limiting variance is available for {other}"
        ))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DensityKind {
    /// `αQ^{LL*}` under Log-Logistic data.
    #[serde(rename = "ll-star")]
    LLStar,
    /// `αQ^{Fr*}` under Fréchet data.
    #[serde(rename = "fr-star")]
    FrStar,
}

impl DensityKind {
    pub fn name(&self) -> &'static str {
        match self {
            DensityKind::LLStar => "ll-star",
            DensityKind::FrStar => "fr-star",
        }
    }
}

impl std::fmt::Display for DensityKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for DensityKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "ll-star" | "llstar" | "qllstar" => Ok(DensityKind::LLStar),
            "fr-star" | "frstar" | "qfrstar" => Ok(DensityKind::FrStar),
            _ => Err(Error::Domain(format!(
                "unknown density '{s}' (expected ll-star or fr-star)"
            ))),
        }
    }
}

/// Which density, and the `(i, s)` it is evaluated for.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensitySpec {
    kind: DensityKind,
    i: usize,
    s: usize,
    ln_c: f64,
}

fn inner_options() -> QuadratureOptions {
    QuadratureOptions {
        abs_tol: 1e-12,
        rel_tol: 1e-11,
        max_subdivisions: 2000,
    }
}

impl DensitySpec {
    pub fn new(kind: DensityKind, i: usize, s: usize) -> Result<Self> {
        let ln_c = ln_constant_big_c(i, s)?;
        if !ln_c.is_finite() {
            return Err(Error::Domain(format!("C_(i,s) not representable for i = {i}, s = {s}")));
        }
        Ok(DensitySpec { kind, i, s, ln_c })
    }

    pub fn kind(&self) -> DensityKind {
        self.kind
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn s(&self) -> usize {
        self.s
    }

    fn is(&self) -> f64 {
        (self.i * self.s) as f64
    }

    fn m(&self) -> f64 {
        (self.i * (self.s - 1) - 1) as f64
    }

    pub fn pdf(&self, x: f64) -> Result<f64> {
        match self.kind {
            DensityKind::LLStar => Ok(self.ll_star_pdf(x)),
            DensityKind::FrStar => self.fr_star_pdf(x),
        }
    }

    /// Log-Logistic density through the hypergeometric representation.
    /// Zero for `x <= 0`; also zero once `s^{-2x}` drops below machine
    /// precision, where the true value is under `e^{-36i}`.
    pub fn ll_star_pdf(&self, x: f64) -> f64 {
        if x.is_nan() || x <= 0.0 {
            return 0.0;
        }
        let ln_s = (self.s as f64).ln();
        let two_x_ln_s = 2.0 * x * ln_s;
        if two_x_ln_s > 36.0 {
            return 0.0;
        }
        let is = self.is();
        let i = self.i as f64;
        let y = -two_x_ln_s.exp_m1();
        let ln_pref = (2.0 * ln_s).ln() + self.ln_c + 2.0 * ln_gamma(is) - ln_gamma(2.0 * is)
            + two_x_ln_s * i * (self.s as f64 - 1.0)
            + self.m() * (-(-two_x_ln_s).exp_m1()).ln();
        match ln_gauss_2f1(is, is, 2.0 * is, y) {
            Ok(ln_f) => (ln_pref + ln_f).exp(),
            Err(_) => f64::NAN,
        }
    }

    /// Log-Logistic density through the semi-infinite `z`-integral.
    pub fn ll_star_pdf_integral_form(&self, x: f64) -> Result<f64> {
        if x.is_nan() || x <= 0.0 {
            return Ok(0.0);
        }
        let ln_s = (self.s as f64).ln();
        let two_x_ln_s = 2.0 * x * ln_s;
        let q = (-two_x_ln_s).exp();
        let is = self.is();
        let g = |z: f64| (is - 1.0) * z.ln() - is * z.ln_1p() - is * (z * q).ln_1p();
        let ln_j = ln_integrate_semi_infinite(g, &inner_options())?;
        let ln_f = (2.0 * ln_s).ln() + self.ln_c - two_x_ln_s * self.i as f64
            + self.m() * (-(-two_x_ln_s).exp_m1()).ln()
            + ln_j;
        Ok(ln_f.exp())
    }

    /// Fréchet density; the `z`-integral is evaluated in log space on the
    /// compactified half-line. Zero for `y <= 0`, and also once `e^{-y c_s}`
    /// leaves the normal floating-point range, where the density is below
    /// `e^{-700 i}`.
    pub fn fr_star_pdf(&self, y: f64) -> Result<f64> {
        if y.is_nan() || y <= 0.0 {
            return Ok(0.0);
        }
        let c = constant_c(self.s)?;
        if y * c > 700.0 {
            return Ok(0.0);
        }
        let q = (-y * c).exp();
        let one_minus_q = -(-y * c).exp_m1();
        let i = self.i as f64;
        let m = self.m();
        let g = |z: f64| {
            z.ln() - i * z
                + m * (-z * q + (-(-z * one_minus_q).exp_m1()).ln())
                + (i - 1.0) * (-(-z * q).exp_m1()).ln()
                - z * q
        };
        let ln_int = ln_integrate_semi_infinite(g, &inner_options())?;
        Ok((c.ln() + self.ln_c - y * c + ln_int).exp())
    }

    /// `∫₀^∞ f`, which should be 1.
    pub fn total_mass(&self) -> Result<Integral> {
        let opts = QuadratureOptions {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_subdivisions: 2000,
        };
        self.guarded(|f| integrate_semi_infinite(f, 0.0, &opts))
    }

    /// The c.d.f. `F(x) = ∫₀^x f` at each point of a nondecreasing grid,
    /// accumulated cell by cell.
    pub fn cdf_table(&self, grid: &[f64]) -> Result<Vec<f64>> {
        if grid.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::Domain("grid must be nondecreasing".into()));
        }
        let opts = QuadratureOptions {
            abs_tol: 1e-12,
            rel_tol: 1e-10,
            max_subdivisions: 500,
        };
        // cells are integrated in parallel and accumulated in grid order
        let mut edges = Vec::with_capacity(grid.len() + 1);
        edges.push(0.0f64);
        edges.extend(grid.iter().map(|&x| x.max(0.0)));
        let cells: Vec<f64> = edges
            .par_windows(2)
            .map(|w| {
                if w[1] > w[0] {
                    Ok(self.guarded(|f| integrate_with_breakpoints(f, &[w[0], w[1]], &opts))?.value)
                } else {
                    Ok(0.0)
                }
            })
            .collect::<Result<_>>()?;
        let mut acc = CompensatedSum::new();
        Ok(cells
            .into_iter()
            .map(|cell| {
                acc.add(cell);
                acc.value()
            })
            .collect())
    }

    /// Runs a quadrature over `pdf`, surfacing the first inner failure.
    fn guarded<T>(&self, run: impl FnOnce(&dyn Fn(f64) -> f64) -> Result<T>) -> Result<T> {
        let failure: RefCell<Option<Error>> = RefCell::new(None);
        let f = |x: f64| match self.pdf(x) {
            Ok(v) if v.is_finite() => v,
            Ok(v) => {
                failure
                    .borrow_mut()
                    .get_or_insert(Error::Domain(format!("density is {v} at {x}")));
                0.0
            }
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                0.0
            }
        };
        let result = run(&f);
        if let Some(e) = failure.into_inner() {
            return Err(e);
        }
        result
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants() {
        assert!((constant_c(2).unwrap() - 0.996768283334579).abs() < 1e-14);
        assert!(constant_c(1).is_err());
        for s in 2..50 {
            assert!(constant_c(s).unwrap() > 0.0);
        }
        // 5! / (1!·1!·1!) = 120
        assert!((ln_constant_big_c(2, 2).unwrap() - 120f64.ln()).abs() < 1e-12);
        // i = 3, s = 2: 8! / (2!² · 2!) = 40320 / 8 = 5040
        assert!((ln_constant_big_c(3, 2).unwrap() - 5040f64.ln()).abs() < 1e-12);
        assert!(ln_constant_big_c(200, 5).unwrap().is_finite());
        assert!(ln_constant_big_c(1, 5).is_err());
    }

    #[test]
    fn limiting_variances() {
        assert!((asymptotic_variance(EstimatorKind::QLL, 2).unwrap() - 4.5).abs() < 1e-15);
        let v = asymptotic_variance(EstimatorKind::QLLStar, 2).unwrap();
        assert!((v - 9.0 / (8.0 * 2f64.ln().powi(2))).abs() < 1e-15);
        assert!((v - 2.341540103631309).abs() < 1e-12);
        // QLL* = L/(2 log s) while the QLL statistic is √n(L - 2 log s)
        for s in 2..=10 {
            let star = asymptotic_variance(EstimatorKind::QLLStar, s).unwrap();
            let plain = asymptotic_variance(EstimatorKind::QLL, s).unwrap();
            let scale = 2.0 * (s as f64).ln();
            assert!((star * scale * scale - plain).abs() < 1e-12 * plain);
        }
        for kind in [EstimatorKind::Q, EstimatorKind::QStar, EstimatorKind::QFrStar, EstimatorKind::QHHStar] {
            assert!(matches!(asymptotic_variance(kind, 2), Err(Error::UnsupportedKind(_))));
        }
    }

    #[test]
    fn densities_vanish_off_support() {
        let ll = DensitySpec::new(DensityKind::LLStar, 2, 2).unwrap();
        let fr = DensitySpec::new(DensityKind::FrStar, 2, 2).unwrap();
        assert_eq!(ll.pdf(-1.0).unwrap(), 0.0);
        assert_eq!(ll.pdf(0.0).unwrap(), 0.0);
        assert_eq!(ll.ll_star_pdf_integral_form(-1.0).unwrap(), 0.0);
        assert_eq!(fr.pdf(0.0).unwrap(), 0.0);
        assert_eq!(fr.pdf(-2.0).unwrap(), 0.0);
    }

    #[test]
    fn ll_star_representations_agree() {
        for (i, s) in [(2, 2), (3, 2), (2, 3), (5, 4)] {
            let d = DensitySpec::new(DensityKind::LLStar, i, s).unwrap();
            for x in [0.01, 0.1, 0.5, 1.0, 2.0, 4.0] {
                let a = d.ll_star_pdf(x);
                let b = d.ll_star_pdf_integral_form(x).unwrap();
                assert!((a - b).abs() <= 1e-7 * b.abs(), "(i,s)=({i},{s}) x={x}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn ll_star_reference_values() {
        // independent high-precision evaluation of the hypergeometric form
        let d = DensitySpec::new(DensityKind::LLStar, 2, 2).unwrap();
        let expected = [
            (0.1, 0.153163207753148),
            (0.5, 0.534236349957397),
            (1.0, 0.586117017412001),
            (2.0, 0.227035406794972),
        ];
        for (x, f) in expected {
            assert!((d.ll_star_pdf(x) - f).abs() < 1e-10 * f, "x={x}");
        }
    }

    #[test]
    fn densities_are_nonnegative_and_normalized() {
        for (i, s) in [(2, 2), (3, 2), (2, 3)] {
            for kind in [DensityKind::LLStar, DensityKind::FrStar] {
                let d = DensitySpec::new(kind, i, s).unwrap();
                for k in 0..200 {
                    assert!(d.pdf(k as f64 * 0.05 - 1.0).unwrap() >= 0.0);
                }
                let mass = d.total_mass().unwrap().value;
                assert!((mass - 1.0).abs() < 1e-6, "{kind:?} ({i},{s}) mass {mass}");
            }
        }
    }

    #[test]
    fn large_configurations_stay_finite() {
        let d = DensitySpec::new(DensityKind::LLStar, 200, 5).unwrap();
        let v = d.pdf(1.0).unwrap();
        assert!(v.is_finite() && v > 0.0);
        let fr = DensitySpec::new(DensityKind::FrStar, 50, 3).unwrap();
        let v = fr.pdf(1.0).unwrap();
        assert!(v.is_finite() && v > 0.0);
    }

    #[test]
    fn cdf_table_is_monotone() {
        let d = DensitySpec::new(DensityKind::LLStar, 2, 2).unwrap();
        let grid: Vec<f64> = (0..=100).map(|k| k as f64 * 0.1).collect();
        let cdf = d.cdf_table(&grid).unwrap();
        assert_eq!(cdf[0], 0.0);
        assert!(cdf.windows(2).all(|w| w[1] >= w[0]));
        assert!((cdf[100] - 1.0).abs() < 1e-6);
        assert!(d.cdf_table(&[1.0, 0.5]).is_err());
    }
}
