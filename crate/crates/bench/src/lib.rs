//! Deterministic synthetic inputs for the benchmarks.

use distbench::{Dataset, LabeledExample};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Two strictly positive vectors of length `dim`.
pub fn vector_pair(dim: usize, seed: u64) -> (Vec<f64>, Vec<f64>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = || {
        (0..dim)
            .map(|_| rng.gen_range(0.01..10.0))
            .collect::<Vec<f64>>()
    };
    (draw(), draw())
}

/// Gaussian-ish blobs: class `c` is centred at `c` on every axis.
pub fn blobs(rows: usize, dim: usize, classes: usize, seed: u64) -> Dataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let examples = (0..rows)
        .map(|i| {
            let class = i % classes;
            let features = (0..dim)
                .map(|_| 1.0 + class as f64 + rng.gen_range(-0.6..0.6))
                .collect();
            LabeledExample { features, class }
        })
        .collect();
    let names = (0..classes).map(|c| c.to_string()).collect();
    Dataset::new("blobs", examples, names).expect("generated dataset is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_deterministic() {
        assert_eq!(vector_pair(8, 1), vector_pair(8, 1));
        let ds = blobs(30, 4, 3, 2);
        assert_eq!(ds.len(), 30);
        assert_eq!(ds.n_classes(), 3);
        assert!(!ds.has_negative_features());
    }
}
