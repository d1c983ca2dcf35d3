//! L_p special cases.

use super::{sum_abs_diff, sum_sq_diff, Metric};

pub(super) fn kernel(m: Metric, x: &[f64], y: &[f64]) -> f64 {
    match m {
        Metric::Manhattan => manhattan(x, y),
        Metric::Chebyshev => chebyshev(x, y),
        Metric::Euclidean => euclidean(x, y),
        _ => unreachable!("{m:?} is not a Minkowski measure"),
    }
}

#[inline]
pub fn manhattan(x: &[f64], y: &[f64]) -> f64 {
    sum_abs_diff(x, y)
}

#[inline]
pub fn chebyshev(x: &[f64], y: &[f64]) -> f64 {
    x.iter()
        .zip(y)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max)
}

#[inline]
pub fn euclidean(x: &[f64], y: &[f64]) -> f64 {
    sum_sq_diff(x, y).sqrt()
}
