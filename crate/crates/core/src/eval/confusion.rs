use crate::dataset::ClassId;
use crate::error::{Error, Result};

/// Square count matrix; rows are actual classes, columns predicted classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfusionMatrix {
    n_classes: usize,
    counts: Vec<u64>,
}

/// One-vs-rest counts for a single class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassCounts {
    pub tp: u64,
    pub fp: u64,
    pub fn_: u64,
    pub tn: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScoreTriple {
    pub accuracy: f64,
    pub macro_precision: f64,
    pub macro_recall: f64,
}

impl ConfusionMatrix {
    pub fn new(n_classes: usize) -> Self {
        Self {
            n_classes,
            counts: vec![0; n_classes * n_classes],
        }
    }

    /// Builds a matrix from explicit rows. Panics if the rows are not square.
    pub fn from_rows(rows: &[Vec<u64>]) -> Self {
        let n = rows.len();
        assert!(
            rows.iter().all(|r| r.len() == n),
            "confusion rows must be square"
        );
        Self {
            n_classes: n,
            counts: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn n_classes(&self) -> usize {
        self.n_classes
    }

    pub fn get(&self, actual: ClassId, predicted: ClassId) -> u64 {
        self.counts[actual * self.n_classes + predicted]
    }

    pub fn record(&mut self, actual: ClassId, predicted: ClassId) -> Result<()> {
        for class in [actual, predicted] {
            if class >= self.n_classes {
                return Err(Error::ClassOutOfRange {
                    class,
                    n_classes: self.n_classes,
                });
            }
        }
        self.counts[actual * self.n_classes + predicted] += 1;
        Ok(())
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.counts
            .chunks(self.n_classes.max(1))
            .map(<[u64]>::to_vec)
            .collect()
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn trace(&self) -> u64 {
        (0..self.n_classes).map(|i| self.get(i, i)).sum()
    }

    pub fn class_counts(&self, class: ClassId) -> ClassCounts {
        let tp = self.get(class, class);
        let row: u64 = (0..self.n_classes).map(|p| self.get(class, p)).sum();
        let col: u64 = (0..self.n_classes).map(|a| self.get(a, class)).sum();
        let (fp, fn_) = (col - tp, row - tp);
        ClassCounts {
            tp,
            fp,
            fn_,
            tn: self.total() - tp - fp - fn_,
        }
    }

    /// `tp / (tp + fp)`, or 0 when the class was never predicted.
    pub fn precision(&self, class: ClassId) -> f64 {
        let c = self.class_counts(class);
        ratio(c.tp, c.tp + c.fp)
    }

    /// `tp / (tp + fn)`, or 0 when the class never occurs.
    pub fn recall(&self, class: ClassId) -> f64 {
        let c = self.class_counts(class);
        ratio(c.tp, c.tp + c.fn_)
    }

    pub fn accuracy(&self) -> f64 {
        ratio(self.trace(), self.total())
    }

    /// Unweighted mean of per-class precision over all classes.
    pub fn macro_precision(&self) -> f64 {
        self.macro_mean(|c| self.precision(c))
    }

    pub fn macro_recall(&self) -> f64 {
        self.macro_mean(|c| self.recall(c))
    }

    fn macro_mean(&self, per_class: impl Fn(ClassId) -> f64) -> f64 {
        if self.n_classes == 0 {
            return 0.0;
        }
        (0..self.n_classes).map(per_class).sum::<f64>() / self.n_classes as f64
    }

    pub fn scores(&self) -> ScoreTriple {
        ScoreTriple {
            accuracy: self.accuracy(),
            macro_precision: self.macro_precision(),
            macro_recall: self.macro_recall(),
        }
    }
}

fn ratio(num: u64, den: u64) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

/// Tallies paired actual/predicted labels.
pub fn confusion(
    actual: &[ClassId],
    predicted: &[ClassId],
    n_classes: usize,
) -> Result<ConfusionMatrix> {
    if actual.is_empty() && predicted.is_empty() {
        return Err(Error::EmptySample);
    }
    if actual.len() != predicted.len() {
        return Err(Error::LengthMismatch {
            actual: actual.len(),
            predicted: predicted.len(),
        });
    }
    let mut cm = ConfusionMatrix::new(n_classes);
    for (&a, &p) in actual.iter().zip(predicted) {
        cm.record(a, p)?;
    }
    Ok(cm)
}

pub fn accuracy(cm: &ConfusionMatrix) -> f64 {
    cm.accuracy()
}

pub fn macro_precision(cm: &ConfusionMatrix) -> f64 {
    cm.macro_precision()
}

pub fn macro_recall(cm: &ConfusionMatrix) -> f64 {
    cm.macro_recall()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn direct_count() {
        let cm = confusion(&[0, 0, 1], &[0, 1, 1], 2).unwrap();
        assert_eq!(cm.rows(), vec![vec![1, 1], vec![0, 1]]);
        assert!((accuracy(&cm) - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(macro_precision(&cm), 0.75);
        assert_eq!(macro_recall(&cm), 0.75);
    }

    #[test]
    fn perfect_and_inverted() {
        let cm = confusion(&[0, 1, 2, 2], &[0, 1, 2, 2], 3).unwrap();
        assert_eq!(cm.rows(), vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 2]]);
        assert_eq!(
            cm.scores(),
            ScoreTriple {
                accuracy: 1.0,
                macro_precision: 1.0,
                macro_recall: 1.0
            }
        );

        let cm = confusion(&[0, 1], &[1, 0], 2).unwrap();
        assert_eq!(cm.trace(), 0);
        assert_eq!(cm.accuracy(), 0.0);
    }

    #[test]
    fn unseen_class_contributes_zero() {
        // class 2 never occurs and is never predicted
        let cm = confusion(&[0, 1, 1], &[0, 1, 1], 3).unwrap();
        assert_eq!(cm.precision(2), 0.0);
        assert_eq!(cm.recall(2), 0.0);
        assert!((cm.macro_precision() - 2.0 / 3.0).abs() < 1e-15);
        assert!((cm.macro_recall() - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn class_counts_from_columns_and_rows() {
        let cm = ConfusionMatrix::from_rows(&[vec![5, 2, 0], vec![1, 3, 1], vec![0, 4, 6]]);
        assert_eq!(
            cm.class_counts(1),
            ClassCounts {
                tp: 3,
                fp: 6,
                fn_: 2,
                tn: 11
            }
        );
    }

    #[test]
    fn errors() {
        assert!(matches!(
            confusion(&[0], &[0, 1], 2),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(matches!(confusion(&[], &[], 2), Err(Error::EmptySample)));
        assert!(matches!(
            confusion(&[0, 2], &[0, 1], 2),
            Err(Error::ClassOutOfRange { class: 2, .. })
        ));
    }

    // Independent macro average: per-class from raw label lists.
    fn reference_macro(actual: &[usize], predicted: &[usize], n: usize) -> (f64, f64) {
        let mut p_sum = 0.0;
        let mut r_sum = 0.0;
        for c in 0..n {
            let tp = actual
                .iter()
                .zip(predicted)
                .filter(|(a, p)| **a == c && **p == c)
                .count();
            let pred_c = predicted.iter().filter(|p| **p == c).count();
            let act_c = actual.iter().filter(|a| **a == c).count();
            p_sum += if pred_c == 0 {
                0.0
            } else {
                tp as f64 / pred_c as f64
            };
            r_sum += if act_c == 0 {
                0.0
            } else {
                tp as f64 / act_c as f64
            };
        }
        (p_sum / n as f64, r_sum / n as f64)
    }

    proptest! {
        #[test]
        fn scores_match_reference_and_stay_in_unit_interval(
            n in 1usize..6,
            pairs in prop::collection::vec((0usize..6, 0usize..6), 1..80),
        ) {
            let actual: Vec<_> = pairs.iter().map(|p| p.0 % n).collect();
            let predicted: Vec<_> = pairs.iter().map(|p| p.1 % n).collect();
            let cm = confusion(&actual, &predicted, n).unwrap();
            prop_assert_eq!(cm.total(), actual.len() as u64);
            let s = cm.scores();
            for v in [s.accuracy, s.macro_precision, s.macro_recall] {
                prop_assert!((0.0..=1.0).contains(&v));
            }
            let (p, r) = reference_macro(&actual, &predicted, n);
            prop_assert!((p - s.macro_precision).abs() < 1e-12);
            prop_assert!((r - s.macro_recall).abs() < 1e-12);
            for c in 0..n {
                let k = cm.class_counts(c);
                prop_assert_eq!(k.tp + k.fp + k.fn_ + k.tn, cm.total());
            }
            if n == 2 {
                let mean_p = (cm.precision(0) + cm.precision(1)) / 2.0;
                prop_assert!((mean_p - s.macro_precision).abs() < 1e-15);
            }
        }
    }
}
