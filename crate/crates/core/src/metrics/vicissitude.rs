use super::squared_l2::neyman;
use super::{GuardPolicy, Metric};

pub(super) fn kernel(m: Metric, x: &[f64], y: &[f64], g: &GuardPolicy) -> f64 {
    let pairs = x.iter().zip(y).map(|(&a, &b)| (a, b));
    let sq = |a: f64, b: f64| (a - b) * (a - b);
    match m {
        Metric::VicisWaveHedges => pairs.map(|(a, b)| g.div((a - b).abs(), a.min(b))).sum(),
        Metric::VicisSymmetric1 => pairs
            .map(|(a, b)| {
                let lo = a.min(b);
                g.div(sq(a, b), lo * lo)
            })
            .sum(),
        Metric::VicisSymmetric2 => pairs.map(|(a, b)| g.div(sq(a, b), a.min(b))).sum(),
        Metric::VicisSymmetric3 => pairs.map(|(a, b)| g.div(sq(a, b), a.max(b))).sum(),
        Metric::MaxSymmetricChiSquare => neyman(x, y, g).max(neyman(y, x, g)),
        Metric::MinSymmetricChiSquare => neyman(x, y, g).min(neyman(y, x, g)),
        _ => unreachable!("{m:?} is not a vicissitude measure"),
    }
}
