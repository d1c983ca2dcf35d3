//! Entropy-based measures. Callers guarantee non-negative inputs.
//!
//! Terms follow `0 ln 0 = 0`; a zero inside a ratio goes through the guard
//! policy. The symmetric measures are summed per coordinate and each term is
//! clamped at zero, which it is mathematically (log-sum inequality or
//! convexity of `t ln t`); the clamp only removes rounding residue.

use super::{GuardPolicy, Metric};

pub(super) fn kernel(m: Metric, x: &[f64], y: &[f64], g: &GuardPolicy) -> f64 {
    let pairs = x.iter().zip(y).map(|(&a, &b)| (a, b));
    match m {
        Metric::KullbackLeibler => pairs.map(|(a, b)| g.xlog(a, g.div(a, b))).sum(),
        Metric::Jeffreys => pairs.map(|(a, b)| jeffreys_term(a, b, g)).sum(),
        Metric::KDivergence => pairs.map(|(a, b)| k_term(a, b, g)).sum(),
        Metric::Topsoe => topsoe(x, y, g),
        Metric::JensenShannon => 0.5 * topsoe(x, y, g),
        Metric::JensenDifference => {
            0.5 * pairs
                .map(|(a, b)| {
                    let mid = 0.5 * (a + b);
                    let t = 0.5 * (g.xlog(a, a) + g.xlog(b, b)) - g.xlog(mid, mid);
                    t.max(0.0)
                })
                .sum::<f64>()
        }
        _ => unreachable!("{m:?} is not a Shannon-entropy measure"),
    }
}

/// `x ln(2x / (x + y))`
#[inline]
fn k_term(a: f64, b: f64, g: &GuardPolicy) -> f64 {
    g.xlog(a, g.div(2.0 * a, a + b))
}

fn topsoe(x: &[f64], y: &[f64], g: &GuardPolicy) -> f64 {
    x.iter()
        .zip(y)
        .map(|(&a, &b)| (k_term(a, b, g) + k_term(b, a, g)).max(0.0))
        .sum()
}

/// `(x - y) ln(x / y)`, written as `|x - y| |ln x - ln y|` so that swapping
/// the arguments is bit-exact. Both factors share a sign for positive inputs.
#[inline]
fn jeffreys_term(a: f64, b: f64, g: &GuardPolicy) -> f64 {
    if a == b {
        return 0.0;
    }
    match (g.ln(a), g.ln(b)) {
        (Some(la), Some(lb)) => (a - b).abs() * (la - lb).abs(),
        _ => 0.0,
    }
}
