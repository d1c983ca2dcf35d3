//! Squared-difference measures, mostly chi-square variants.

use super::{sum_sq_diff, GuardPolicy, Metric};

pub(super) fn kernel(m: Metric, x: &[f64], y: &[f64], g: &GuardPolicy) -> f64 {
    let sq = |a: f64, b: f64| (a - b) * (a - b);
    let pairs = x.iter().zip(y).map(|(&a, &b)| (a, b));
    match m {
        Metric::SquaredEuclidean => sum_sq_diff(x, y),
        Metric::Clark => pairs
            .map(|(a, b)| {
                let t = g.div((a - b).abs(), a + b);
                t * t
            })
            .sum::<f64>()
            .sqrt(),
        Metric::NeymanChiSquare => neyman(x, y, g),
        Metric::PearsonChiSquare => neyman(y, x, g),
        Metric::SquaredChiSquare => squared_chi(x, y, g),
        Metric::ProbabilisticSymmetricChiSquare => 2.0 * squared_chi(x, y, g),
        Metric::Divergence => {
            2.0 * pairs
                .map(|(a, b)| g.div(sq(a, b), (a + b) * (a + b)))
                .sum::<f64>()
        }
        Metric::AdditiveSymmetricChiSquare => {
            2.0 * pairs
                .map(|(a, b)| g.div(sq(a, b) * (a + b), a * b))
                .sum::<f64>()
        }
        Metric::Average => (sum_sq_diff(x, y) / x.len() as f64).sqrt(),
        Metric::MeanCensoredEuclidean => {
            let support = pairs.filter(|(a, b)| a * a + b * b != 0.0).count();
            if support == 0 {
                0.0
            } else {
                (sum_sq_diff(x, y) / support as f64).sqrt()
            }
        }
        Metric::SquaredChiSquared => pairs.map(|(a, b)| g.div(sq(a, b), (a + b).abs())).sum(),
        _ => unreachable!("{m:?} is not a squared-L2 measure"),
    }
}

/// Sum of `(x-y)^2 / x`; the Pearson form swaps the arguments.
pub(super) fn neyman(x: &[f64], y: &[f64], g: &GuardPolicy) -> f64 {
    x.iter()
        .zip(y)
        .map(|(&a, &b)| g.div((a - b) * (a - b), a))
        .sum()
}

fn squared_chi(x: &[f64], y: &[f64], g: &GuardPolicy) -> f64 {
    x.iter()
        .zip(y)
        .map(|(&a, &b)| g.div((a - b) * (a - b), a + b))
        .sum()
}
