/// Means closer than this share a rank.
pub const TIE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct RankRow {
    pub metric: String,
    /// Mean of the supplied per-dataset scores; NaN when there were none.
    pub mean: f64,
    /// Competition rank: ties share a rank and the next rank is skipped.
    pub rank: usize,
}

/// Metrics ordered best-first at one noise level.
#[derive(Debug, Clone, PartialEq)]
pub struct RankTable {
    pub noise_level: f64,
    pub rows: Vec<RankRow>,
}

impl RankTable {
    pub fn rank_of(&self, metric: &str) -> Option<usize> {
        self.rows
            .iter()
            .find(|r| r.metric == metric)
            .map(|r| r.rank)
    }

    pub fn top(&self, n: usize) -> impl Iterator<Item = &RankRow> {
        self.rows.iter().take(n)
    }
}

/// Ranks metrics by the mean of their per-dataset scores, highest first.
///
/// Equal means keep input order. Metrics with no scores sort last.
pub fn rank_distances<S: AsRef<str>>(scores: &[(S, Vec<f64>)], noise_level: f64) -> RankTable {
    let mut rows: Vec<RankRow> = scores
        .iter()
        .map(|(name, values)| RankRow {
            metric: name.as_ref().to_string(),
            mean: if values.is_empty() {
                f64::NAN
            } else {
                values.iter().sum::<f64>() / values.len() as f64
            },
            rank: 0,
        })
        .collect();
    rows.sort_by(|a, b| match (a.mean.is_nan(), b.mean.is_nan()) {
        (false, false) => b.mean.total_cmp(&a.mean),
        (x, y) => x.cmp(&y),
    });
    let mut leader: Option<(f64, usize)> = None;
    for (i, row) in rows.iter_mut().enumerate() {
        row.rank = match leader {
            Some((mean, rank)) if (mean - row.mean).abs() <= TIE_TOLERANCE => rank,
            Some((mean, rank)) if mean.is_nan() && row.mean.is_nan() => rank,
            _ => {
                leader = Some((row.mean, i + 1));
                i + 1
            }
        };
    }
    RankTable { noise_level, rows }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_by_mean_descending() {
        let t = rank_distances(
            &[
                ("ED", vec![0.8, 0.9]),
                ("HasD", vec![0.9, 0.95]),
                ("MD", vec![0.7]),
            ],
            0.0,
        );
        let names: Vec<_> = t.rows.iter().map(|r| r.metric.as_str()).collect();
        assert_eq!(names, ["HasD", "ED", "MD"]);
        assert_eq!(t.rows.iter().map(|r| r.rank).collect::<Vec<_>>(), [1, 2, 3]);
        assert!((t.rows[0].mean - 0.925).abs() < 1e-15);
        assert_eq!(t.rank_of("MD"), Some(3));
        assert_eq!(t.rank_of("XX"), None);
    }

    #[test]
    fn ties_share_rank_and_skip() {
        let t = rank_distances(
            &[
                ("A", vec![0.5]),
                ("B", vec![0.9]),
                ("C", vec![0.9 + 1e-12]),
                ("D", vec![0.1]),
            ],
            0.1,
        );
        let ranks: Vec<_> = t.rows.iter().map(|r| (r.metric.as_str(), r.rank)).collect();
        assert_eq!(ranks, [("C", 1), ("B", 1), ("A", 3), ("D", 4)]);
    }

    #[test]
    fn equal_means_keep_input_order() {
        let t = rank_distances(&[("X", vec![0.5]), ("Y", vec![0.5])], 0.0);
        assert_eq!(t.rows[0].metric, "X");
        assert_eq!(t.rows[1].rank, 1);
    }

    #[test]
    fn empty_scores_sort_last() {
        let t = rank_distances(&[("E", vec![]), ("A", vec![0.2]), ("F", vec![])], 0.0);
        assert_eq!(t.rows[0].metric, "A");
        assert_eq!(t.rows[1].rank, 2);
        assert_eq!(t.rows[2].rank, 2);
        assert_eq!(t.top(1).count(), 1);
    }
}
