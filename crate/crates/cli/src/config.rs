//! Flat `key = value` experiment configuration.
//!
//! ```text
//! # comments and blank lines are ignored
//! datasets = data/iris.csv, data/wine.csv
//! metrics = all
//! k = 1
//! test_fraction = 0.34
//! repetitions = 10
//! noise_levels = 0.1, 0.5, 0.9
//! top_n = 10
//! master_seed = 42
//! output_dir = results
//! workers = 0
//! ```
//!
//! Relative paths resolve against the config file's directory.

use std::path::{Path, PathBuf};

use distbench::{ClassColumn, Metric};

/// Environment variable that overrides `workers`.
pub const WORKERS_ENV: &str = "BENCH_WORKERS";

/// Default noise sweep: 0.1 to 0.9 in steps of 0.1.
pub const DEFAULT_NOISE_LEVELS: [f64; 9] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9];

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("line {line}: expected `key = value`")]
    Syntax { line: usize },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: key `{key}` given twice")]
    DuplicateKey { line: usize, key: String },
    #[error("invalid value for `{key}`: {reason}")]
    Invalid { key: &'static str, reason: String },
    #[error("no datasets configured")]
    NoDatasets,
    #[error("cannot read config {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub datasets: Vec<PathBuf>,
    /// Registry order unless listed explicitly.
    pub metrics: Vec<Metric>,
    pub k: usize,
    pub test_fraction: f64,
    pub repetitions: usize,
    /// Empty means [`DEFAULT_NOISE_LEVELS`].
    pub noise_levels: Vec<f64>,
    pub top_n: usize,
    pub master_seed: u64,
    pub output_dir: PathBuf,
    /// 0 lets the thread pool pick.
    pub workers: usize,
    pub class_column: ClassColumn,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            datasets: Vec::new(),
            metrics: Metric::all().collect(),
            k: 1,
            test_fraction: 0.34,
            repetitions: 10,
            noise_levels: Vec::new(),
            top_n: 10,
            master_seed: 0,
            output_dir: PathBuf::from("results"),
            workers: 0,
            class_column: ClassColumn::Last,
        }
    }
}

impl ExperimentConfig {
    pub fn load(path: impl AsRef<Path>) -> Result<Self, ConfigError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let base = path.parent().unwrap_or(Path::new(""));
        Self::parse(&text, base)
    }

    pub fn parse(text: &str, base_dir: &Path) -> Result<Self, ConfigError> {
        let mut cfg = Self::default();
        let mut seen: Vec<String> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let (key, value) = trimmed
                .split_once('=')
                .ok_or(ConfigError::Syntax { line })?;
            let (key, value) = (key.trim(), value.trim());
            if seen.iter().any(|k| k == key) {
                return Err(ConfigError::DuplicateKey {
                    line,
                    key: key.into(),
                });
            }
            seen.push(key.into());
            match key {
                "datasets" => {
                    cfg.datasets = list(value).map(|p| base_dir.join(p)).collect();
                }
                "metrics" => cfg.metrics = parse_metrics(value)?,
                "k" => cfg.k = number("k", value)?,
                "test_fraction" => cfg.test_fraction = number("test_fraction", value)?,
                "repetitions" => cfg.repetitions = number("repetitions", value)?,
                "noise_levels" => {
                    cfg.noise_levels = list(value)
                        .map(|v| number("noise_levels", v))
                        .collect::<Result<_, _>>()?;
                }
                "top_n" => cfg.top_n = number("top_n", value)?,
                "master_seed" => cfg.master_seed = number("master_seed", value)?,
                "output_dir" => cfg.output_dir = base_dir.join(value),
                "workers" => cfg.workers = number("workers", value)?,
                "class_column" => {
                    cfg.class_column = match value {
                        "last" => ClassColumn::Last,
                        v => ClassColumn::Index(number("class_column", v)?),
                    }
                }
                _ => {
                    return Err(ConfigError::UnknownKey {
                        line,
                        key: key.into(),
                    })
                }
            }
        }
        if let Ok(v) = std::env::var(WORKERS_ENV) {
            cfg.workers = number("workers", v.trim())?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.datasets.is_empty() {
            return Err(ConfigError::NoDatasets);
        }
        if self.metrics.is_empty() {
            return invalid("metrics", "empty list");
        }
        if self.k == 0 {
            return invalid("k", "must be at least 1");
        }
        if !(self.test_fraction > 0.0 && self.test_fraction < 1.0) {
            return invalid(
                "test_fraction",
                format!("{} not in (0, 1)", self.test_fraction),
            );
        }
        if self.repetitions == 0 {
            return invalid("repetitions", "must be at least 1");
        }
        if let Some(l) = self.noise_levels.iter().find(|l| !(**l > 0.0 && **l < 1.0)) {
            return invalid("noise_levels", format!("{l} not in (0, 1)"));
        }
        if self.top_n == 0 {
            return invalid("top_n", "must be at least 1");
        }
        Ok(())
    }

    pub fn noise_levels(&self) -> &[f64] {
        if self.noise_levels.is_empty() {
            &DEFAULT_NOISE_LEVELS
        } else {
            &self.noise_levels
        }
    }
}

fn invalid<T>(key: &'static str, reason: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError::Invalid {
        key,
        reason: reason.into(),
    })
}

fn list(value: &str) -> impl Iterator<Item = &str> {
    value.split(',').map(str::trim).filter(|s| !s.is_empty())
}

fn number<T: std::str::FromStr>(key: &'static str, value: &str) -> Result<T, ConfigError>
where
    T::Err: std::fmt::Display,
{
    value.parse().map_err(|e: T::Err| ConfigError::Invalid {
        key,
        reason: format!("`{value}`: {e}"),
    })
}

/// `all` or a comma-separated list of abbreviations, deduplicated in order.
pub fn parse_metrics(value: &str) -> Result<Vec<Metric>, ConfigError> {
    if value.trim().eq_ignore_ascii_case("all") {
        return Ok(Metric::all().collect());
    }
    let mut out: Vec<Metric> = Vec::new();
    for name in list(value) {
        let m: Metric = name.parse().map_err(|_| ConfigError::Invalid {
            key: "metrics",
            reason: format!("unknown metric `{name}`"),
        })?;
        if !out.contains(&m) {
            out.push(m);
        }
    }
    Ok(out)
}
