//! Measures that combine ideas from the other families.

use super::minkowski::chebyshev;
use super::{sum_abs_diff, GuardPolicy, Metric};

pub(super) fn kernel(m: Metric, x: &[f64], y: &[f64], g: &GuardPolicy) -> f64 {
    let pairs = x.iter().zip(y).map(|(&a, &b)| (a, b));
    match m {
        Metric::AverageL1LInf => 0.5 * (sum_abs_diff(x, y) + chebyshev(x, y)),
        Metric::KumarJohnson => pairs
            .map(|(a, b)| {
                let s = a * a + b * b;
                let p = a * b;
                g.div(s * s, 2.0 * p * p.sqrt())
            })
            .sum(),
        Metric::Taneja => pairs
            .map(|(a, b)| {
                let mid = 0.5 * (a + b);
                g.xlog(mid, g.div(a + b, 2.0 * (a * b).sqrt())).max(0.0)
            })
            .sum(),
        Metric::Pearson => 1.0 - pearson_r(x, y),
        Metric::Correlation => 0.5 * (1.0 - pearson_r(x, y)),
        Metric::SquaredPearson => {
            let r = pearson_r(x, y);
            1.0 - r * r
        }
        Metric::Hamming => pairs.filter(|(a, b)| a != b).count() as f64,
        Metric::Hausdorff => directed_hausdorff(x, y).max(directed_hausdorff(y, x)),
        Metric::ChiSquareStatistic => pairs
            .map(|(a, b)| {
                let mid = 0.5 * (a + b);
                g.div(a - mid, mid)
            })
            .sum(),
        Metric::Whittaker => {
            let sx: f64 = x.iter().sum();
            let sy: f64 = y.iter().sum();
            0.5 * pairs
                .map(|(a, b)| (g.div(a, sx) - g.div(b, sy)).abs())
                .sum::<f64>()
        }
        Metric::Meehl => x
            .windows(2)
            .zip(y.windows(2))
            .map(|(xw, yw)| {
                let d = (xw[0] - yw[0]) - (xw[1] - yw[1]);
                d * d
            })
            .sum(),
        Metric::Motyka => {
            let (num, den) = pairs.fold((0.0, 0.0), |(num, den), (a, b)| {
                (num + a.max(b), den + (a + b))
            });
            g.div(num, den)
        }
        Metric::Hassanat => pairs.map(|(a, b)| hassanat_term(a, b)).sum(),
        _ => unreachable!("{m:?} is not in the 'other' family"),
    }
}

/// Pearson correlation, clamped to [-1, 1]. Zero variance in either vector
/// gives 0: no linear relationship is measurable.
pub fn pearson_r(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut cov, mut vx, mut vy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        cov += dx * dy;
        vx += dx * dx;
        vy += dy * dy;
    }
    if vx == 0.0 || vy == 0.0 {
        return 0.0;
    }
    (cov / (vx * vy).sqrt()).clamp(-1.0, 1.0)
}

/// Largest distance from a coordinate of `x` to its nearest coordinate of
/// `y`, treating both vectors as sets of scalars.
fn directed_hausdorff(x: &[f64], y: &[f64]) -> f64 {
    x.iter()
        .map(|a| {
            y.iter()
                .map(|b| (a - b).abs())
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max)
}

/// Per-dimension Hassanat dissimilarity, in `[0, 1)`.
#[inline]
pub fn hassanat_term(a: f64, b: f64) -> f64 {
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    if lo >= 0.0 {
        1.0 - (1.0 + lo) / (1.0 + hi)
    } else {
        let shift = lo.abs();
        1.0 - (1.0 + lo + shift) / (1.0 + hi + shift)
    }
}
