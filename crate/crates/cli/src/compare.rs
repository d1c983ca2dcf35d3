//! Significance of the difference between a reference metric and others.

use anyhow::{bail, ensure};
use distbench::eval::{rank_sum_test, signed_rank_test, PValueMethod};
use distbench::Metric;

use crate::runner::RunRecord;
use crate::summary::{dataset_means, DatasetMean, ScoreKind};

pub const SIGNIFICANCE: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TestKind {
    /// Unpaired rank-sum over per-dataset means.
    #[default]
    RankSum,
    /// Paired signed-rank over datasets both metrics ran on.
    SignedRank,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub metric: Metric,
    /// p-values for accuracy, precision and recall.
    pub p_values: [f64; 3],
    /// Datasets on which both metrics produced scores.
    pub datasets: usize,
}

impl Comparison {
    pub fn p(&self, kind: ScoreKind) -> f64 {
        self.p_values[ScoreKind::ALL.iter().position(|k| *k == kind).unwrap()]
    }

    pub fn significant(&self, kind: ScoreKind) -> bool {
        self.p(kind) < SIGNIFICANCE
    }
}

/// Compares `reference` against each of `others` at `level`. An empty
/// `others` means every other metric present in the records.
pub fn compare_to_reference(
    records: &[RunRecord],
    reference: Metric,
    others: &[Metric],
    level: f64,
    test: TestKind,
) -> anyhow::Result<Vec<Comparison>> {
    let means = dataset_means(records, level);
    let of = |m: Metric| -> Vec<&DatasetMean> { means.iter().filter(|d| d.metric == m).collect() };
    let reference_means = of(reference);
    ensure!(
        !reference_means.is_empty(),
        "no scores for reference metric {} at noise level {level}",
        reference.abbrev()
    );
    let others: Vec<Metric> = if others.is_empty() {
        crate::summary::metrics(records)
            .into_iter()
            .filter(|m| *m != reference)
            .collect()
    } else {
        others.to_vec()
    };

    let mut out = Vec::with_capacity(others.len());
    for m in others {
        let other_means = of(m);
        if other_means.is_empty() {
            bail!("no scores for metric {} at noise level {level}", m.abbrev());
        }
        // pair by dataset so both tests see the same datasets
        let pairs: Vec<(&DatasetMean, &DatasetMean)> = reference_means
            .iter()
            .filter_map(|r| {
                other_means
                    .iter()
                    .find(|o| o.dataset == r.dataset)
                    .map(|o| (*r, *o))
            })
            .collect();
        ensure!(
            !pairs.is_empty(),
            "{} and {} share no datasets",
            reference.abbrev(),
            m.abbrev()
        );
        let mut p_values = [1.0; 3];
        for (slot, kind) in p_values.iter_mut().zip(ScoreKind::ALL) {
            let a: Vec<f64> = pairs.iter().map(|(r, _)| r.get(kind)).collect();
            let b: Vec<f64> = pairs.iter().map(|(_, o)| o.get(kind)).collect();
            let outcome = match test {
                TestKind::RankSum => rank_sum_test(&a, &b, PValueMethod::Auto)?,
                TestKind::SignedRank => signed_rank_test(&a, &b, PValueMethod::Auto)?,
            };
            *slot = outcome.p_value;
        }
        out.push(Comparison {
            metric: m,
            p_values,
            datasets: pairs.len(),
        });
    }
    Ok(out)
}
