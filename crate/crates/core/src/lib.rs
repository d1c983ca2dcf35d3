//! Distance measures, a brute-force KNN classifier, attribute-noise
//! injection and the evaluation statistics used to compare them.
//!
//! ```
//! use distbench::metrics::Metric;
//!
//! let v1 = [5.1, 3.5, 1.4, 0.3];
//! let v2 = [5.4, 3.4, 1.7, 0.2];
//! let d = Metric::Hassanat.distance(&v1, &v2).unwrap();
//! assert!((d - 0.2571).abs() < 1e-4);
//! ```

pub mod dataset;
pub mod error;
pub mod eval;
pub mod knn;
pub mod metrics;
pub mod noise;
pub mod seed;

pub use dataset::{
    load_csv, read_csv, split, ClassColumn, ClassId, CsvSchema, Dataset, DatasetView, HeaderMode,
    LabeledExample, SplitIndices, SplitPlan,
};
pub use error::{Error, Result};
pub use eval::{
    accuracy, confusion, macro_precision, macro_recall, rank_distances, wilcoxon_rank_sum,
    ConfusionMatrix, RankTable, ScoreTriple,
};
pub use knn::{KnnModel, Neighbor, NeighborList};
pub use metrics::{describe, evaluate, registry, Family, GuardPolicy, Metric, MetricDescriptor};
pub use noise::{inject, NoiseSpec};
