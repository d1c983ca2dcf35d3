//! Geometric-mean measures. Callers guarantee non-negative inputs.

use super::{GuardPolicy, Metric};

pub(super) fn kernel(m: Metric, x: &[f64], y: &[f64], g: &GuardPolicy) -> f64 {
    match m {
        Metric::Bhattacharyya => {
            let s: f64 = x.iter().zip(y).map(|(a, b)| (a * b).sqrt()).sum();
            match g.ln(s) {
                Some(l) => -l,
                None => 0.0,
            }
        }
        Metric::SquaredChord => squared_chord(x, y),
        Metric::Matusita => squared_chord(x, y).sqrt(),
        Metric::Hellinger => (2.0 * squared_chord(x, y)).sqrt(),
        _ => unreachable!("{m:?} is not a squared-chord measure"),
    }
}

fn squared_chord(x: &[f64], y: &[f64]) -> f64 {
    x.iter()
        .zip(y)
        .map(|(a, b)| {
            let d = a.sqrt() - b.sqrt();
            d * d
        })
        .sum()
}
