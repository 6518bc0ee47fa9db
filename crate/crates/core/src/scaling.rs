//! Log-log exponent fitting and the exact exponent bound calculator.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Least-squares slope of log p against log n.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub slope: f64,
    pub stderr: f64,
    pub points: usize,
}

/// Fits `log p = slope * log n + c` by ordinary least squares. Requires at
/// least two points with distinct n, and every probability positive.
pub fn exponent_fit(points: &[(u64, f64)]) -> Result<FitResult> {
    if points.len() < 2 {
        return Err(Error::precondition("need at least two points to fit"));
    }
    if points.iter().any(|&(n, p)| n == 0 || p <= 0.0) {
        return Err(Error::precondition(
            "fit points need n >= 1 and probability > 0",
        ));
    }
    {
        let mut ns: Vec<u64> = points.iter().map(|&(n, _)| n).collect();
        ns.sort_unstable();
        ns.dedup();
        if ns.len() < 2 {
            return Err(Error::precondition("fit points must have distinct n"));
        }
    }
    let xs: Vec<f64> = points.iter().map(|&(n, _)| (n as f64).ln()).collect();
    let ys: Vec<f64> = points.iter().map(|&(_, p)| p.ln()).collect();
    let m = xs.len() as f64;
    let x_mean = xs.iter().sum::<f64>() / m;
    let y_mean = ys.iter().sum::<f64>() / m;
    let sxx: f64 = xs.iter().map(|x| (x - x_mean).powi(2)).sum();
    let sxy: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (x - x_mean) * (y - y_mean))
        .sum();
    let slope = sxy / sxx;
    let intercept = y_mean - slope * x_mean;
    let stderr = if points.len() == 2 {
        0.0
    } else {
        let rss: f64 = xs
            .iter()
            .zip(&ys)
            .map(|(x, y)| (y - (slope * x + intercept)).powi(2))
            .sum();
        (rss / (m - 2.0) / sxx).sqrt()
    };
    Ok(FitResult {
        slope,
        stderr,
        points: points.len(),
    })
}

/// The exponent function f(r) = r/2 + r/(r-2), exact.
pub fn f_exponent(r: u64) -> Result<Ratio<i64>> {
    if r < 3 {
        return Err(Error::precondition("f(r) is defined for r >= 3"));
    }
    let r = r as i64;
    Ok(Ratio::new(r, 2) + Ratio::new(r, r - 2))
}

/// Exact decay exponent d/2 + d/(d-2) governing the d >= 4 regime (d = 3
/// follows a different rule and d = 2 is superpolynomial, so those are
/// rejected).
pub fn bound_exponent(d: u64) -> Result<Ratio<i64>> {
    if d < 3 {
        return Err(Error::precondition(
            "the polynomial bound exponent needs d >= 3",
        ));
    }
    f_exponent(d)
}

/// Table of (r, f(r)) for an inclusive range.
pub fn f_table(lo: u64, hi: u64) -> Result<Vec<(u64, Ratio<i64>)>> {
    if lo < 3 {
        return Err(Error::precondition("f(r) is defined for r >= 3"));
    }
    if hi < lo {
        return Err(Error::precondition("empty range"));
    }
    (lo..=hi).map(|r| Ok((r, f_exponent(r)?))).collect()
}
