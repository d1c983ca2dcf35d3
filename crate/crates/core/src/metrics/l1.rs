//! Absolute-difference measures.

use super::{sum_abs_diff, GuardPolicy, Metric};

pub(super) fn kernel(m: Metric, x: &[f64], y: &[f64], g: &GuardPolicy) -> f64 {
    let pairs = x.iter().zip(y);
    match m {
        Metric::Lorentzian => pairs.map(|(a, b)| (a - b).abs().ln_1p()).sum(),
        Metric::Canberra => pairs
            .map(|(a, b)| g.div((a - b).abs(), a.abs() + b.abs()))
            .sum(),
        Metric::Sorensen => g.div(sum_abs_diff(x, y), pairs.map(|(a, b)| a + b).sum()),
        Metric::Soergel => g.div(sum_abs_diff(x, y), pairs.map(|(a, b)| a.max(*b)).sum()),
        Metric::Kulczynski => g.div(sum_abs_diff(x, y), pairs.map(|(a, b)| a.min(*b)).sum()),
        Metric::MeanCharacter => sum_abs_diff(x, y) / x.len() as f64,
        Metric::NonIntersection => 0.5 * sum_abs_diff(x, y),
        _ => unreachable!("{m:?} is not an L1 measure"),
    }
}
