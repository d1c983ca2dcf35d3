//! Aggregation of run records into per-dataset means, overall tables and
//! rankings.

use distbench::{rank_distances, Metric, RankTable};

use crate::runner::RunRecord;

/// Published top list (ties in the overall table make it 13 entries).
pub const PUBLISHED_TOP: [Metric; 13] = [
    Metric::Hassanat,
    Metric::Lorentzian,
    Metric::Canberra,
    Metric::SquaredChiSquared,
    Metric::Clark,
    Metric::Divergence,
    Metric::Whittaker,
    Metric::Manhattan,
    Metric::AverageL1LInf,
    Metric::Cosine,
    Metric::Correlation,
    Metric::Dice,
    Metric::Euclidean,
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScoreKind {
    Accuracy,
    Precision,
    Recall,
}

impl ScoreKind {
    pub const ALL: [ScoreKind; 3] = [ScoreKind::Accuracy, ScoreKind::Precision, ScoreKind::Recall];

    pub fn name(self) -> &'static str {
        match self {
            ScoreKind::Accuracy => "accuracy",
            ScoreKind::Precision => "precision",
            ScoreKind::Recall => "recall",
        }
    }
}

/// Mean scores of one metric on one dataset at one level, over the
/// repetitions that ran.
#[derive(Debug, Clone, PartialEq)]
pub struct DatasetMean {
    pub dataset: String,
    pub metric: Metric,
    pub noise_level: f64,
    pub accuracy: f64,
    pub precision: f64,
    pub recall: f64,
    pub repetitions: usize,
}

impl DatasetMean {
    pub fn get(&self, kind: ScoreKind) -> f64 {
        match kind {
            ScoreKind::Accuracy => self.accuracy,
            ScoreKind::Precision => self.precision,
            ScoreKind::Recall => self.recall,
        }
    }
}

/// Overall row: means over datasets of the per-dataset means.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricSummary {
    pub metric: Metric,
    pub noise_level: f64,
    pub accuracy: f64,
    pub precision: f64,
    pub recall: f64,
    /// Sample standard deviations of the per-dataset means (0 with one dataset).
    pub accuracy_std: f64,
    pub precision_std: f64,
    pub recall_std: f64,
    pub datasets: usize,
    /// Datasets on which every repetition was skipped.
    pub skipped: usize,
}

impl MetricSummary {
    pub fn get(&self, kind: ScoreKind) -> f64 {
        match kind {
            ScoreKind::Accuracy => self.accuracy,
            ScoreKind::Precision => self.precision,
            ScoreKind::Recall => self.recall,
        }
    }

    pub fn std(&self, kind: ScoreKind) -> f64 {
        match kind {
            ScoreKind::Accuracy => self.accuracy_std,
            ScoreKind::Precision => self.precision_std,
            ScoreKind::Recall => self.recall_std,
        }
    }
}

fn unique_in_order<T: PartialEq + Clone>(items: impl Iterator<Item = T>) -> Vec<T> {
    let mut out: Vec<T> = Vec::new();
    for item in items {
        if !out.contains(&item) {
            out.push(item);
        }
    }
    out
}

pub fn datasets(records: &[RunRecord]) -> Vec<String> {
    unique_in_order(records.iter().map(|r| r.dataset.clone()))
}

pub fn metrics(records: &[RunRecord]) -> Vec<Metric> {
    unique_in_order(records.iter().map(|r| r.metric))
}

/// Distinct noise levels, ascending.
pub fn levels(records: &[RunRecord]) -> Vec<f64> {
    let mut out = unique_in_order(records.iter().map(|r| r.noise_level));
    out.sort_by(f64::total_cmp);
    out
}

/// Per-dataset means at `level`; cells where every repetition was skipped
/// produce no entry.
pub fn dataset_means(records: &[RunRecord], level: f64) -> Vec<DatasetMean> {
    let at_level: Vec<&RunRecord> = records.iter().filter(|r| r.noise_level == level).collect();
    let mut out = Vec::new();
    for ds in unique_in_order(at_level.iter().map(|r| r.dataset.as_str())) {
        for m in unique_in_order(at_level.iter().map(|r| r.metric)) {
            let scores: Vec<_> = at_level
                .iter()
                .filter(|r| r.dataset == ds && r.metric == m)
                .filter_map(|r| r.scores)
                .collect();
            if scores.is_empty() {
                continue;
            }
            let n = scores.len() as f64;
            out.push(DatasetMean {
                dataset: ds.to_string(),
                metric: m,
                noise_level: level,
                accuracy: scores.iter().map(|s| s.accuracy).sum::<f64>() / n,
                precision: scores.iter().map(|s| s.macro_precision).sum::<f64>() / n,
                recall: scores.iter().map(|s| s.macro_recall).sum::<f64>() / n,
                repetitions: scores.len(),
            });
        }
    }
    out
}

fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// Overall table at `level`, sorted by mean accuracy (descending, stable
/// in record order). Metrics skipped on every dataset come last with NaN.
pub fn summarize(records: &[RunRecord], level: f64) -> Vec<MetricSummary> {
    let means = dataset_means(records, level);
    let all_datasets = unique_in_order(
        records
            .iter()
            .filter(|r| r.noise_level == level)
            .map(|r| r.dataset.as_str()),
    );
    let metric_order = unique_in_order(
        records
            .iter()
            .filter(|r| r.noise_level == level)
            .map(|r| r.metric),
    );
    let mut rows: Vec<MetricSummary> = metric_order
        .into_iter()
        .map(|m| {
            let rows: Vec<&DatasetMean> = means.iter().filter(|d| d.metric == m).collect();
            let collect =
                |k: ScoreKind| mean_std(&rows.iter().map(|d| d.get(k)).collect::<Vec<_>>());
            let (accuracy, accuracy_std) = collect(ScoreKind::Accuracy);
            let (precision, precision_std) = collect(ScoreKind::Precision);
            let (recall, recall_std) = collect(ScoreKind::Recall);
            MetricSummary {
                metric: m,
                noise_level: level,
                accuracy,
                precision,
                recall,
                accuracy_std,
                precision_std,
                recall_std,
                datasets: rows.len(),
                skipped: all_datasets.len() - rows.len(),
            }
        })
        .collect();
    rows.sort_by(|a, b| match (a.accuracy.is_nan(), b.accuracy.is_nan()) {
        (false, false) => b.accuracy.total_cmp(&a.accuracy),
        (x, y) => x.cmp(&y),
    });
    rows
}

/// Ranking of metrics by the mean of their per-dataset `kind` scores.
pub fn rank_table(records: &[RunRecord], level: f64, kind: ScoreKind) -> RankTable {
    let means = dataset_means(records, level);
    let metric_order = unique_in_order(
        records
            .iter()
            .filter(|r| r.noise_level == level)
            .map(|r| r.metric),
    );
    let scores: Vec<(&str, Vec<f64>)> = metric_order
        .iter()
        .map(|m| {
            let values = means
                .iter()
                .filter(|d| d.metric == *m)
                .map(|d| d.get(kind))
                .collect();
            (m.abbrev(), values)
        })
        .collect();
    rank_distances(&scores, level)
}

/// The `n` best metrics by clean mean accuracy.
pub fn top_metrics(records: &[RunRecord], n: usize) -> Vec<Metric> {
    summarize(records, 0.0)
        .into_iter()
        .filter(|s| !s.accuracy.is_nan())
        .take(n)
        .map(|s| s.metric)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use distbench::ScoreTriple;

    pub(crate) fn rec(ds: &str, m: Metric, level: f64, rep: usize, acc: Option<f64>) -> RunRecord {
        RunRecord {
            dataset: ds.into(),
            metric: m,
            noise_level: level,
            repetition: rep,
            scores: acc.map(|a| ScoreTriple {
                accuracy: a,
                macro_precision: a / 2.0,
                macro_recall: a / 4.0,
            }),
        }
    }

    #[test]
    fn overall_is_mean_of_dataset_means() {
        let records = vec![
            rec("a", Metric::Euclidean, 0.0, 0, Some(1.0)),
            rec("a", Metric::Euclidean, 0.0, 1, Some(0.5)),
            rec("b", Metric::Euclidean, 0.0, 0, Some(0.25)),
            rec("a", Metric::Hassanat, 0.0, 0, Some(0.9)),
            rec("b", Metric::Hassanat, 0.0, 0, Some(0.8)),
        ];
        let s = summarize(&records, 0.0);
        assert_eq!(s[0].metric, Metric::Hassanat);
        assert!((s[0].accuracy - 0.85).abs() < 1e-15);
        // dataset means 0.75 and 0.25, not the per-record mean 0.5833
        assert_eq!(s[1].accuracy, 0.5);
        assert_eq!(s[1].precision, 0.25);
        assert!((s[1].accuracy_std - (0.125f64).sqrt()).abs() < 1e-15);
        assert_eq!(top_metrics(&records, 1), vec![Metric::Hassanat]);
    }

    #[test]
    fn skipped_datasets_leave_the_denominator() {
        let records = vec![
            rec("a", Metric::KullbackLeibler, 0.0, 0, Some(0.6)),
            rec("b", Metric::KullbackLeibler, 0.0, 0, None),
            rec("b", Metric::Euclidean, 0.0, 0, Some(0.2)),
            rec("c", Metric::Bhattacharyya, 0.0, 0, None),
        ];
        let s = summarize(&records, 0.0);
        let kld = s
            .iter()
            .find(|r| r.metric == Metric::KullbackLeibler)
            .unwrap();
        assert_eq!((kld.accuracy, kld.datasets, kld.skipped), (0.6, 1, 2));
        assert!(s.last().unwrap().accuracy.is_nan());
        assert_eq!(top_metrics(&records, 5).len(), 2);
    }

    #[test]
    fn rank_tables_per_level() {
        let mut records = Vec::new();
        for (level, hasd, ed) in [(0.0, 0.9, 0.8), (0.5, 0.6, 0.7)] {
            records.push(rec("a", Metric::Hassanat, level, 0, Some(hasd)));
            records.push(rec("a", Metric::Euclidean, level, 0, Some(ed)));
        }
        assert_eq!(levels(&records), vec![0.0, 0.5]);
        let t0 = rank_table(&records, 0.0, ScoreKind::Accuracy);
        let t5 = rank_table(&records, 0.5, ScoreKind::Recall);
        assert_eq!(t0.rows.len(), 2);
        assert_eq!(t0.rank_of("HasD"), Some(1));
        assert_eq!(t5.rank_of("ED"), Some(1));
        assert!((t5.rows[0].mean - 0.175).abs() < 1e-15);
    }
}
