//! Attribute noise: a chosen fraction of examples gets every attribute
//! replaced by a uniform draw between that attribute's observed min and max.
//! Labels are never touched.

use rand::seq::index;
use rand::Rng;

use crate::dataset::{round_half_up_count, Dataset};
use crate::error::{Error, Result};
use crate::seed;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseSpec {
    /// Fraction of examples to corrupt, in `[0, 1)`.
    pub level: f64,
    pub seed: u64,
}

impl NoiseSpec {
    pub fn new(level: f64, seed: u64) -> Self {
        Self { level, seed }
    }

    /// `round(level * n)`, halves up.
    pub fn corrupted_count(&self, n: usize) -> usize {
        round_half_up_count(self.level, n)
    }
}

/// A noisy copy of a dataset plus the rows that were corrupted.
#[derive(Debug, Clone)]
pub struct NoisyDataset {
    pub dataset: Dataset,
    /// Corrupted row indices, ascending.
    pub corrupted: Vec<usize>,
}

/// Corrupts `round(level * |ds|)` distinct examples.
pub fn inject(ds: &Dataset, spec: &NoiseSpec) -> Result<Dataset> {
    inject_with_rows(ds, spec).map(|n| n.dataset)
}

pub fn inject_with_rows(ds: &Dataset, spec: &NoiseSpec) -> Result<NoisyDataset> {
    if ds.is_empty() {
        return Err(Error::EmptyDataset);
    }
    if !(0.0..1.0).contains(&spec.level) {
        return Err(Error::InvalidNoiseLevel(spec.level));
    }
    let n = spec.corrupted_count(ds.len());
    if n == 0 {
        return Ok(NoisyDataset {
            dataset: ds.clone(),
            corrupted: Vec::new(),
        });
    }

    let mut rng = seed::rng(spec.seed);
    let mut corrupted = index::sample(&mut rng, ds.len(), n).into_vec();
    corrupted.sort_unstable();

    let (lo, hi) = (ds.attr_min(), ds.attr_max());
    let mut examples = ds.examples().to_vec();
    for &row in &corrupted {
        for (i, v) in examples[row].features.iter_mut().enumerate() {
            *v = if lo[i] < hi[i] {
                rng.gen_range(lo[i]..=hi[i])
            } else {
                lo[i]
            };
        }
    }
    Ok(NoisyDataset {
        dataset: ds.with_examples(examples)?,
        corrupted,
    })
}
