//! Least-squares slopes on log-log data.

use alloc::vec::Vec;


use crate::{Error, Result};
#[allow(unused_imports)]
use num_traits::Float;

/// Least-squares slope of `log y` against `log x`.
///
/// Points with `x <= 0` or `y < 1` are unusable; at least two usable points
/// with distinct `x` are required.
pub fn fit_exponent(points: &[(f64, f64)]) -> Result<f64> {
    let usable: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, y)| *x > 0.0 && *y >= 1.0 && x.is_finite() && y.is_finite())
        .map(|&(x, y)| (x.ln(), y.ln()))
        .collect();
    least_squares_slope(&usable)
}

/// Slope of `log(count + 1)` against `log x`; tolerates zero counts.
pub fn fit_shifted_exponent(points: &[(f64, u64)]) -> Result<f64> {
    let logs: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, _)| *x > 0.0)
        .map(|&(x, c)| (x.ln(), (c as f64 + 1.0).ln()))
        .collect();
    least_squares_slope(&logs)
}

pub(crate) fn least_squares_slope(points: &[(f64, f64)]) -> Result<f64> {
    if points.len() < 2 {
        return Err(Error::domain("slope fit needs at least two usable points"));
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx <= f64::EPSILON * n * (1.0 + mx.abs()) {
        return Err(Error::domain("slope fit needs distinct abscissae"));
    }
    Ok(sxy / sxx)
}
