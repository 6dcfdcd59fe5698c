//! Gauss hypergeometric function ₂F₁(a, b; c; y) for real arguments `y < 1`.
//!
//! Two independent routes are provided:
//!
//! * the power series `Σ (a)ₙ(b)ₙ/(c)ₙ · yⁿ/n!`, used directly for
//!   `0 ≤ y < 0.9` and, for `y < 0`, after the Pfaff transformation
//!   `₂F₁(a,b;c;y) = (1-y)^(-a) ₂F₁(a, c-b; c; y/(y-1))`;
//! * the Euler integral `∫₀¹ t^(b-1) (1-t)^(c-b-1) (1-yt)^(-a) dt / B(b, c-b)`,
//!   valid for `c > b > 0`, evaluated by adaptive quadrature.
//!
//! [`gauss_2f1`] picks the series on `[0, 0.9)` and the integral on
//! `[0.9, 1)`, where the series converges too slowly.

use statrs::function::gamma::ln_gamma;

use super::quadrature::{ln_integrate, QuadratureOptions};
use crate::error::{Error, Result};

const SERIES_SWITCH: f64 = 0.9;
const SERIES_MAX_TERMS: usize = 200_000;
const SERIES_FALLBACK_MAX_TERMS: usize = 20_000_000;
// Rescale threshold keeping the running series sum finite.
const RESCALE_AT: f64 = 1e250;

fn check_args(a: f64, b: f64, c: f64, y: f64) -> Result<()> {
    if !(a.is_finite() && b.is_finite() && c.is_finite() && y.is_finite()) {
        return Err(Error::Domain("hypergeometric arguments must be finite".into()));
    }
    if y >= 1.0 {
        return Err(Error::Domain(format!("2F1 argument must be < 1, got {y}")));
    }
    if c <= 0.0 && c.fract() == 0.0 {
        return Err(Error::Domain(format!("2F1 parameter c = {c} is a non-positive integer")));
    }
    Ok(())
}

/// Series partial sums in scaled form: returns `(sum, ln_scale)` with the
/// value equal to `sum · exp(ln_scale)`.
fn series_scaled(a: f64, b: f64, c: f64, y: f64, max_terms: usize) -> Result<(f64, f64)> {
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let mut ln_scale = 0.0f64;
    for n in 0..max_terms {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * y;
        sum += term;
        if term == 0.0 {
            return Ok((sum, ln_scale));
        }
        if sum.abs() > RESCALE_AT {
            sum /= RESCALE_AT;
            term /= RESCALE_AT;
            ln_scale += RESCALE_AT.ln();
        }
        // terms shrink geometrically once n exceeds the parameters
        if nf > (a.abs() + b.abs()) && term.abs() <= 1e-17 * sum.abs() {
            return Ok((sum, ln_scale));
        }
    }
    Err(Error::Domain(format!(
        "2F1 series did not converge in {max_terms} terms at y = {y}"
    )))
}

/// Direct power series, `|y| < 1`.
pub fn gauss_2f1_series(a: f64, b: f64, c: f64, y: f64) -> Result<f64> {
    check_args(a, b, c, y)?;
    if y.abs() >= 1.0 {
        return Err(Error::Domain(format!("2F1 series needs |y| < 1, got {y}")));
    }
    let (sum, ln_scale) = series_scaled(a, b, c, y, SERIES_FALLBACK_MAX_TERMS)?;
    Ok(sum * ln_scale.exp())
}

/// Euler integral representation, `c > b > 0`, `y < 1`.
pub fn gauss_2f1_euler(a: f64, b: f64, c: f64, y: f64) -> Result<f64> {
    check_args(a, b, c, y)?;
    Ok(ln_gauss_2f1_euler(a, b, c, y)?.exp())
}

fn ln_beta(p: f64, q: f64) -> f64 {
    ln_gamma(p) + ln_gamma(q) - ln_gamma(p + q)
}

/// `ln` of the Euler integral; the integrand is positive so this is always defined.
///
/// The interval is split at 1/2. Endpoint singularities `t^(b-1)` and
/// `(1-t)^(c-b-1)` with negative exponents are removed by the substitutions
/// `t = u^(1/b)` and `1 - t = v^(1/(c-b))`.
fn ln_gauss_2f1_euler(a: f64, b: f64, c: f64, y: f64) -> Result<f64> {
    if !(c > b && b > 0.0) {
        return Err(Error::Domain(format!(
            "Euler integral needs c > b > 0, got b = {b}, c = {c}"
        )));
    }
    let d = c - b;
    let opts = QuadratureOptions {
        abs_tol: 1e-13,
        rel_tol: 1e-13,
        max_subdivisions: 4000,
    };
    let rest = |t: f64, one_minus_t: f64| -a * (-y * t).ln_1p() + (b - 1.0) * t.ln() + (d - 1.0) * one_minus_t.ln();

    // left half, t in (0, 1/2]
    let left = if b < 1.0 {
        let h = |u: f64| {
            if u <= 0.0 {
                return f64::NEG_INFINITY;
            }
            let t = u.powf(1.0 / b);
            -a * (-y * t).ln_1p() + (d - 1.0) * (-t).ln_1p() - b.ln()
        };
        ln_integrate(h, 0.0, 0.5f64.powf(b), &opts)?
    } else {
        let h = |t: f64| if t <= 0.0 { f64::NEG_INFINITY } else { rest(t, 1.0 - t) };
        ln_integrate(h, 0.0, 0.5, &opts)?
    };
    // right half, t in [1/2, 1)
    let right = if d < 1.0 {
        let h = |v: f64| {
            if v <= 0.0 {
                return f64::NEG_INFINITY;
            }
            let one_minus_t = v.powf(1.0 / d);
            let t = 1.0 - one_minus_t;
            -a * (-y * t).ln_1p() + (b - 1.0) * t.ln() - d.ln()
        };
        ln_integrate(h, 0.0, 0.5f64.powf(d), &opts)?
    } else {
        let h = |t: f64| if t >= 1.0 { f64::NEG_INFINITY } else { rest(t, 1.0 - t) };
        ln_integrate(h, 0.5, 1.0, &opts)?
    };
    let hi = left.max(right);
    let total = hi + ((left - hi).exp() + (right - hi).exp()).ln();
    Ok(total - ln_beta(b, d))
}

/// ₂F₁(a, b; c; y) for `y < 1`.
pub fn gauss_2f1(a: f64, b: f64, c: f64, y: f64) -> Result<f64> {
    check_args(a, b, c, y)?;
    if y == 0.0 {
        return Ok(1.0);
    }
    if y < 0.0 {
        let w = y / (y - 1.0);
        let ln_1my = (-y).ln_1p();
        // either Pfaff form is valid; prefer one the Euler route can handle
        let (p, q, pre) = if c > b && b > 0.0 {
            (a, c - b, -a * ln_1my)
        } else {
            (c - a, b, -b * ln_1my)
        };
        let (sum, ln_scale) = unit_interval(p, q, c, w)?;
        return Ok(sum * (ln_scale + pre).exp());
    }
    let (sum, ln_scale) = unit_interval(a, b, c, y)?;
    Ok(sum * ln_scale.exp())
}

/// Value on `[0, 1)` as `(mantissa, ln_scale)`.
fn unit_interval(a: f64, b: f64, c: f64, w: f64) -> Result<(f64, f64)> {
    if w < SERIES_SWITCH {
        return series_scaled(a, b, c, w, SERIES_MAX_TERMS);
    }
    let euler = if c > b && b > 0.0 {
        ln_gauss_2f1_euler(a, b, c, w)
    } else if c > a && a > 0.0 {
        ln_gauss_2f1_euler(b, a, c, w)
    } else {
        Err(Error::Domain("no integral route".into()))
    };
    match euler {
        Ok(ln) => Ok((1.0, ln)),
        Err(_) => series_scaled(a, b, c, w, SERIES_FALLBACK_MAX_TERMS),
    }
}

/// `ln ₂F₁(a, b; c; y)` for `a, b > 0`, `c > max(a, b)` and `y < 1`, where the
/// function is positive. Works far beyond the range where the value itself
/// would overflow.
pub fn ln_gauss_2f1(a: f64, b: f64, c: f64, y: f64) -> Result<f64> {
    check_args(a, b, c, y)?;
    if !(a > 0.0 && b > 0.0 && c > a && c > b) {
        return Err(Error::Domain(format!(
            "ln 2F1 needs a, b > 0 and c > max(a, b), got a = {a}, b = {b}, c = {c}"
        )));
    }
    if y == 0.0 {
        return Ok(0.0);
    }
    let (pre, a, b, w) = if y < 0.0 {
        (-a * (-y).ln_1p(), a, c - b, y / (y - 1.0))
    } else {
        (0.0, a, b, y)
    };
    let (sum, ln_scale) = unit_interval(a, b, c, w)?;
    Ok(pre + ln_scale + sum.ln())
}
