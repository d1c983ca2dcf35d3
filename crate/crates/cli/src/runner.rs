//! Executes (dataset, metric, noise level, repetition) cells.
//!
//! Randomness never depends on the metric, so every metric in a cell sees
//! the same partition and the same corrupted rows:
//! - the train/test partition of repetition `r` is keyed by
//!   (master seed, dataset name, r) and reused at every noise level;
//! - the noisy copy of a dataset is keyed by (master seed, dataset name,
//!   level) and shared by all repetitions at that level.

use std::time::Instant;

use anyhow::{bail, Context};
use distbench::noise::inject;
use distbench::seed::{fraction_key, hash_str, mix};
use distbench::{
    confusion, load_csv, ClassId, CsvSchema, Dataset, KnnModel, Metric, NoiseSpec, ScoreTriple,
    SplitIndices, SplitPlan,
};
use log::{debug, info};
use rayon::prelude::*;

use crate::config::ExperimentConfig;

const SPLIT_STREAM: u64 = 1;
const NOISE_STREAM: u64 = 2;

/// One evaluated cell. `scores` is `None` when the metric cannot run on
/// the dataset's domain (e.g. negative features for a log-based metric).
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub dataset: String,
    pub metric: Metric,
    pub noise_level: f64,
    pub repetition: usize,
    pub scores: Option<ScoreTriple>,
}

impl RunRecord {
    pub fn is_skipped(&self) -> bool {
        self.scores.is_none()
    }
}

pub fn split_seed(master: u64, dataset: &str) -> u64 {
    mix(mix(mix(master, hash_str(dataset)), SPLIT_STREAM), 0)
}

pub fn noise_seed(master: u64, dataset: &str, level: f64) -> u64 {
    mix(
        mix(mix(master, hash_str(dataset)), NOISE_STREAM),
        fraction_key(level),
    )
}

/// Loads every configured dataset; names must be unique because seeds are
/// keyed by name.
pub fn load_datasets(cfg: &ExperimentConfig) -> anyhow::Result<Vec<Dataset>> {
    let schema = CsvSchema {
        class_column: cfg.class_column,
        ..CsvSchema::default()
    };
    let mut out: Vec<Dataset> = Vec::with_capacity(cfg.datasets.len());
    for path in &cfg.datasets {
        let ds = load_csv(path, &schema).with_context(|| format!("loading {}", path.display()))?;
        if out.iter().any(|d| d.name() == ds.name()) {
            bail!(
                "duplicate dataset name `{}` ({})",
                ds.name(),
                path.display()
            );
        }
        info!(
            "loaded {} ({} examples, {} features, {} classes)",
            ds.name(),
            ds.len(),
            ds.n_features(),
            ds.n_classes()
        );
        out.push(ds);
    }
    Ok(out)
}

/// Clean sweep: every configured metric at noise level 0.
pub fn run_clean_phase(
    cfg: &ExperimentConfig,
    datasets: &[Dataset],
) -> anyhow::Result<Vec<RunRecord>> {
    run_levels(cfg, datasets, &cfg.metrics, &[0.0])
}

/// Noise sweep over `metrics`. Level 0 is always included as the baseline
/// and reproduces the clean phase exactly.
pub fn run_noise_phase(
    cfg: &ExperimentConfig,
    datasets: &[Dataset],
    metrics: &[Metric],
) -> anyhow::Result<Vec<RunRecord>> {
    let mut levels = vec![0.0];
    levels.extend(cfg.noise_levels().iter().copied().filter(|l| *l != 0.0));
    run_levels(cfg, datasets, metrics, &levels)
}

struct Prepared {
    dataset: usize,
    level: f64,
    data: Dataset,
}

/// Runs the full grid. Output is ordered by dataset, metric, level and
/// repetition (configuration order), regardless of scheduling.
pub fn run_levels(
    cfg: &ExperimentConfig,
    datasets: &[Dataset],
    metrics: &[Metric],
    levels: &[f64],
) -> anyhow::Result<Vec<RunRecord>> {
    if metrics.is_empty() {
        bail!("no metrics to run");
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .context("building worker pool")?;
    let started = Instant::now();
    let records = pool.install(|| run_grid(cfg, datasets, metrics, levels))?;
    info!(
        "{} cells over {} datasets finished in {:.2?}",
        records.len(),
        datasets.len(),
        started.elapsed()
    );
    Ok(records)
}

fn run_grid(
    cfg: &ExperimentConfig,
    datasets: &[Dataset],
    metrics: &[Metric],
    levels: &[f64],
) -> anyhow::Result<Vec<RunRecord>> {
    let splits: Vec<Vec<SplitIndices>> = datasets
        .iter()
        .map(|ds| {
            let plan = SplitPlan {
                test_fraction: cfg.test_fraction,
                repetitions: cfg.repetitions,
                seed: split_seed(cfg.master_seed, ds.name()),
            };
            (0..cfg.repetitions)
                .map(|r| plan.split_indices(ds.len(), r))
                .collect::<Result<_, _>>()
                .with_context(|| format!("splitting {}", ds.name()))
        })
        .collect::<anyhow::Result<_>>()?;

    let prepared: Vec<Prepared> = datasets
        .par_iter()
        .enumerate()
        .flat_map_iter(|(d, ds)| levels.iter().map(move |&level| (d, ds, level)))
        .map(|(d, ds, level)| {
            let data = if level == 0.0 {
                ds.clone()
            } else {
                inject(
                    ds,
                    &NoiseSpec::new(level, noise_seed(cfg.master_seed, ds.name(), level)),
                )
                .with_context(|| format!("injecting noise into {}", ds.name()))?
            };
            Ok(Prepared {
                dataset: d,
                level,
                data,
            })
        })
        .collect::<anyhow::Result<_>>()?;

    let jobs: Vec<(usize, Metric, usize, usize)> = (0..datasets.len())
        .flat_map(|d| {
            metrics.iter().flat_map(move |&m| {
                (0..levels.len()).flat_map(move |l| (0..cfg.repetitions).map(move |r| (d, m, l, r)))
            })
        })
        .collect();

    jobs.par_iter()
        .map(|&(d, metric, l, rep)| {
            let prep = &prepared[d * levels.len() + l];
            debug_assert_eq!(prep.dataset, d);
            let scores =
                run_cell(&prep.data, &splits[d][rep], metric, cfg.k).with_context(|| {
                    format!(
                        "{} / {} / level {} / repetition {rep}",
                        prep.data.name(),
                        metric.abbrev(),
                        prep.level
                    )
                })?;
            Ok(RunRecord {
                dataset: datasets[d].name().to_string(),
                metric,
                noise_level: prep.level,
                repetition: rep,
                scores,
            })
        })
        .collect()
}

/// Trains on `split.train`, scores predictions on `split.test`.
pub fn run_cell(
    data: &Dataset,
    split: &SplitIndices,
    metric: Metric,
    k: usize,
) -> distbench::Result<Option<ScoreTriple>> {
    let desc = metric.descriptor();
    if desc.flags.requires_nonneg_inputs && data.has_negative_features() {
        debug!(
            "{}: {} skipped (negative features)",
            data.name(),
            desc.abbrev
        );
        return Ok(None);
    }
    let started = Instant::now();
    let train = data.view(split.train.clone());
    let test = data.view(split.test.clone());
    let model = KnnModel::new(train, desc, k)?;
    let predicted = model.classify_all(&test)?;
    let actual: Vec<ClassId> = test.iter().map(|e| e.class).collect();
    let cm = confusion(&actual, &predicted, data.n_classes())?;
    debug!(
        "{}: {} in {:.2?}",
        data.name(),
        desc.abbrev,
        started.elapsed()
    );
    Ok(Some(cm.scores()))
}
