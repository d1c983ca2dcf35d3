//! Wilcoxon tests with exact small-sample distributions.
//!
//! The rank-sum test conditions on the observed tie pattern: ranks are
//! doubled midranks (always integers), and the null distribution of the
//! first sample's rank sum is counted by dynamic programming over subsets.
//! Beyond the exact limits a tie-corrected normal approximation with
//! continuity correction takes over.

use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};

/// Largest combined sample size for which `Auto` uses the exact distribution.
pub const EXACT_MAX_RANK_SUM_N: usize = 40;
/// Largest number of nonzero differences for an exact signed-rank test.
pub const EXACT_MAX_SIGNED_RANK_N: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PValueMethod {
    /// Exact when small enough, normal otherwise.
    #[default]
    Auto,
    Exact,
    Normal,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TestOutcome {
    /// Rank sum of the first sample (rank-sum) or `W+` (signed-rank).
    pub statistic: f64,
    /// Two-sided p-value.
    pub p_value: f64,
    /// Whether the exact distribution produced the p-value.
    pub exact: bool,
}

/// Two-sided rank-sum p-value using [`PValueMethod::Auto`].
pub fn wilcoxon_rank_sum(a: &[f64], b: &[f64]) -> Result<f64> {
    rank_sum_test(a, b, PValueMethod::Auto).map(|t| t.p_value)
}

/// Two-sided signed-rank p-value for paired samples, [`PValueMethod::Auto`].
pub fn wilcoxon_signed_rank(a: &[f64], b: &[f64]) -> Result<f64> {
    signed_rank_test(a, b, PValueMethod::Auto).map(|t| t.p_value)
}

/// Average (1-based) ranks, ties sharing the mean of their positions.
pub fn midranks(values: &[f64]) -> Vec<f64> {
    doubled_midranks(values)
        .into_iter()
        .map(|r| r as f64 / 2.0)
        .collect()
}

fn doubled_midranks(values: &[f64]) -> Vec<u64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    let mut ranks = vec![0; values.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && values[order[end]] == values[order[start]] {
            end += 1;
        }
        // positions start+1..=end averaged, doubled
        let doubled = (start + 1 + end) as u64;
        for &i in &order[start..end] {
            ranks[i] = doubled;
        }
        start = end;
    }
    ranks
}

/// Sum of `t^3 - t` over tie groups, given doubled ranks.
fn tie_term(doubled: &[u64]) -> f64 {
    let mut sorted = doubled.to_vec();
    sorted.sort_unstable();
    sorted
        .chunk_by(|a, b| a == b)
        .map(|g| {
            let t = g.len() as f64;
            t * t * t - t
        })
        .sum()
}

fn two_sided(lower: f64, upper: f64) -> f64 {
    (2.0 * lower.min(upper)).min(1.0)
}

fn normal_two_sided(deviation: f64, variance: f64) -> f64 {
    if variance <= 0.0 {
        return 1.0;
    }
    let z = (deviation.abs() - 0.5).max(0.0) / variance.sqrt();
    let std = Normal::standard();
    (2.0 * std.sf(z)).min(1.0)
}

pub fn rank_sum_test(a: &[f64], b: &[f64], method: PValueMethod) -> Result<TestOutcome> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySample);
    }
    let (n1, n2) = (a.len(), b.len());
    let n = n1 + n2;
    let pooled: Vec<f64> = a.iter().chain(b).copied().collect();
    let doubled = doubled_midranks(&pooled);
    let w2: u64 = doubled[..n1].iter().sum();
    let statistic = w2 as f64 / 2.0;

    let exact = match method {
        PValueMethod::Exact => true,
        PValueMethod::Normal => false,
        PValueMethod::Auto => n <= EXACT_MAX_RANK_SUM_N,
    };
    let p_value = if exact {
        let dist = subset_sum_distribution(&doubled, n1);
        let total: f64 = dist.iter().sum();
        let lower: f64 = dist[..=w2 as usize].iter().sum();
        let upper: f64 = dist[w2 as usize..].iter().sum();
        two_sided(lower / total, upper / total)
    } else {
        let (n1f, n2f, nf) = (n1 as f64, n2 as f64, n as f64);
        let u = statistic - n1f * (n1f + 1.0) / 2.0;
        let mean = n1f * n2f / 2.0;
        let variance = n1f * n2f / 12.0 * ((nf + 1.0) - tie_term(&doubled) / (nf * (nf - 1.0)));
        normal_two_sided(u - mean, variance)
    };
    Ok(TestOutcome {
        statistic,
        p_value,
        exact,
    })
}

/// `dist[s]` = number of size-`k` subsets of `weights` summing to `s`.
/// Counts are kept in f64; they are exact up to 2^53, far above C(40, 20).
fn subset_sum_distribution(weights: &[u64], k: usize) -> Vec<f64> {
    let max: usize = weights.iter().sum::<u64>() as usize;
    let mut table = vec![vec![0.0f64; max + 1]; k + 1];
    table[0][0] = 1.0;
    for (seen, &w) in weights.iter().enumerate() {
        let w = w as usize;
        for j in (1..=k.min(seen + 1)).rev() {
            let (lo, hi) = table.split_at_mut(j);
            let (prev, cur) = (&lo[j - 1], &mut hi[0]);
            for s in (w..=max).rev() {
                cur[s] += prev[s - w];
            }
        }
    }
    table.swap_remove(k)
}

/// Paired test on `a[i] - b[i]`; zero differences are dropped.
pub fn signed_rank_test(a: &[f64], b: &[f64], method: PValueMethod) -> Result<TestOutcome> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    if a.is_empty() {
        return Err(Error::EmptySample);
    }
    let diffs: Vec<f64> = a
        .iter()
        .zip(b)
        .map(|(x, y)| x - y)
        .filter(|d| *d != 0.0)
        .collect();
    let n = diffs.len();
    if n == 0 {
        return Ok(TestOutcome {
            statistic: 0.0,
            p_value: 1.0,
            exact: true,
        });
    }
    let magnitudes: Vec<f64> = diffs.iter().map(|d| d.abs()).collect();
    let doubled = doubled_midranks(&magnitudes);
    let w2: u64 = doubled
        .iter()
        .zip(&diffs)
        .filter(|(_, d)| **d > 0.0)
        .map(|(r, _)| r)
        .sum();
    let statistic = w2 as f64 / 2.0;

    let exact = match method {
        PValueMethod::Exact => true,
        PValueMethod::Normal => false,
        PValueMethod::Auto => n <= EXACT_MAX_SIGNED_RANK_N,
    };
    let p_value = if exact {
        // each rank independently positive or negative
        let max: usize = doubled.iter().sum::<u64>() as usize;
        let mut dist = vec![0.0f64; max + 1];
        dist[0] = 1.0;
        for &r in &doubled {
            let r = r as usize;
            for s in (r..=max).rev() {
                dist[s] += dist[s - r];
            }
        }
        let total: f64 = dist.iter().sum();
        let lower: f64 = dist[..=w2 as usize].iter().sum();
        let upper: f64 = dist[w2 as usize..].iter().sum();
        two_sided(lower / total, upper / total)
    } else {
        let nf = n as f64;
        let mean = nf * (nf + 1.0) / 4.0;
        let variance = nf * (nf + 1.0) * (2.0 * nf + 1.0) / 24.0 - tie_term(&doubled) / 48.0;
        normal_two_sided(statistic - mean, variance)
    };
    Ok(TestOutcome {
        statistic,
        p_value,
        exact,
    })
}
