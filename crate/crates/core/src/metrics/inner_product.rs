//! Measures built from dot products and norms.

use super::{sum_sq_diff, GuardPolicy, Metric};

struct Products {
    xy: f64,
    xx: f64,
    yy: f64,
}

fn products(x: &[f64], y: &[f64]) -> Products {
    let mut p = Products {
        xy: 0.0,
        xx: 0.0,
        yy: 0.0,
    };
    for (a, b) in x.iter().zip(y) {
        p.xy += a * b;
        p.xx += a * a;
        p.yy += b * b;
    }
    p
}

pub(super) fn kernel(m: Metric, x: &[f64], y: &[f64], g: &GuardPolicy) -> f64 {
    let p = products(x, y);
    match m {
        Metric::Jaccard => g.div(sum_sq_diff(x, y), p.xx + p.yy - p.xy),
        Metric::Cosine => match cosine(&p) {
            Some(c) => (1.0 - c).max(0.0),
            None => 0.0,
        },
        Metric::Dice => {
            let den = p.xx + p.yy;
            if den == 0.0 {
                0.0
            } else {
                (1.0 - 2.0 * p.xy / den).max(0.0)
            }
        }
        Metric::Chord => chord(x, y, &p),
        _ => unreachable!("{m:?} is not an inner-product measure"),
    }
}

/// Cosine similarity clamped to [-1, 1]. `None` when both vectors are zero
/// (identical); a single zero vector is orthogonal to everything.
fn cosine(p: &Products) -> Option<f64> {
    if p.xx == 0.0 && p.yy == 0.0 {
        None
    } else if p.xx == 0.0 || p.yy == 0.0 {
        Some(0.0)
    } else {
        Some((p.xy / (p.xx.sqrt() * p.yy.sqrt())).clamp(-1.0, 1.0))
    }
}

/// Euclidean distance between the unit-normalized vectors, which equals
/// `sqrt(2 - 2 cos)` but stays exactly zero for identical inputs.
fn chord(x: &[f64], y: &[f64], p: &Products) -> f64 {
    if p.xx == 0.0 || p.yy == 0.0 {
        return if p.xx == p.yy {
            0.0
        } else {
            std::f64::consts::SQRT_2
        };
    }
    let (nx, ny) = (p.xx.sqrt(), p.yy.sqrt());
    x.iter()
        .zip(y)
        .map(|(a, b)| {
            let d = a / nx - b / ny;
            d * d
        })
        .sum::<f64>()
        .sqrt()
}
