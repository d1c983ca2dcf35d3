//! Numeric classification datasets: CSV ingestion, attribute statistics and
//! seeded repeated train/test splits.

use std::collections::HashMap;
use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use csv::{ReaderBuilder, Trim};
use rand::seq::index;

use crate::error::{Error, Result};
use crate::seed;

/// Dense class identifier, assigned in order of first appearance.
pub type ClassId = usize;

#[derive(Debug, Clone, PartialEq)]
pub struct LabeledExample {
    pub features: Vec<f64>,
    pub class: ClassId,
}

/// An immutable set of labelled examples with per-attribute bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    name: String,
    examples: Vec<LabeledExample>,
    n_features: usize,
    class_names: Vec<String>,
    attr_min: Vec<f64>,
    attr_max: Vec<f64>,
}

/// Which CSV column carries the class label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ClassColumn {
    #[default]
    Last,
    Index(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HeaderMode {
    /// Row 1 is a header iff one of its feature cells does not parse as a number.
    #[default]
    Auto,
    Present,
    Absent,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct CsvSchema {
    pub class_column: ClassColumn,
    pub header: HeaderMode,
}

impl Dataset {
    /// Builds a dataset and computes attribute bounds over every example.
    pub fn new(
        name: impl Into<String>,
        examples: Vec<LabeledExample>,
        class_names: Vec<String>,
    ) -> Result<Self> {
        let first = examples.first().ok_or(Error::EmptyDataset)?;
        let n_features = first.features.len();
        if n_features == 0 {
            return Err(Error::EmptyDataset);
        }
        let mut attr_min = vec![f64::INFINITY; n_features];
        let mut attr_max = vec![f64::NEG_INFINITY; n_features];
        for (row, ex) in examples.iter().enumerate() {
            if ex.features.len() != n_features {
                return Err(Error::InconsistentArity {
                    line: row + 1,
                    expected: n_features,
                    found: ex.features.len(),
                });
            }
            if ex.class >= class_names.len() {
                return Err(Error::ClassOutOfRange {
                    class: ex.class,
                    n_classes: class_names.len(),
                });
            }
            for (i, &v) in ex.features.iter().enumerate() {
                if !v.is_finite() {
                    return Err(Error::NonNumeric {
                        line: row + 1,
                        column: i + 1,
                        value: v.to_string(),
                    });
                }
                attr_min[i] = attr_min[i].min(v);
                attr_max[i] = attr_max[i].max(v);
            }
        }
        Ok(Self {
            name: name.into(),
            examples,
            n_features,
            class_names,
            attr_min,
            attr_max,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn examples(&self) -> &[LabeledExample] {
        &self.examples
    }

    pub fn len(&self) -> usize {
        self.examples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.examples.is_empty()
    }

    pub fn n_features(&self) -> usize {
        self.n_features
    }

    pub fn n_classes(&self) -> usize {
        self.class_names.len()
    }

    /// Class ids `0..n_classes`, in order of first appearance in the source.
    pub fn classes(&self) -> std::ops::Range<ClassId> {
        0..self.class_names.len()
    }

    pub fn class_names(&self) -> &[String] {
        &self.class_names
    }

    pub fn attr_min(&self) -> &[f64] {
        &self.attr_min
    }

    pub fn attr_max(&self) -> &[f64] {
        &self.attr_max
    }

    /// True when some attribute value is negative.
    pub fn has_negative_features(&self) -> bool {
        self.attr_min.iter().any(|&m| m < 0.0)
    }

    /// Replaces the examples, keeping name and class alphabet, and recomputes bounds.
    pub fn with_examples(&self, examples: Vec<LabeledExample>) -> Result<Self> {
        Self::new(self.name.clone(), examples, self.class_names.clone())
    }

    /// Min-max scaling of every attribute into `[0, 1]`. Constant columns map to 0.
    pub fn normalized(&self) -> Self {
        let examples = self
            .examples
            .iter()
            .map(|ex| LabeledExample {
                features: ex
                    .features
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| {
                        let span = self.attr_max[i] - self.attr_min[i];
                        if span > 0.0 {
                            (v - self.attr_min[i]) / span
                        } else {
                            0.0
                        }
                    })
                    .collect(),
                class: ex.class,
            })
            .collect();
        Self::new(self.name.clone(), examples, self.class_names.clone())
            .expect("scaling preserves shape")
    }

    pub fn view(&self, indices: Vec<usize>) -> DatasetView<'_> {
        debug_assert!(indices.iter().all(|&i| i < self.len()));
        DatasetView {
            dataset: self,
            indices,
        }
    }

    pub fn full_view(&self) -> DatasetView<'_> {
        self.view((0..self.len()).collect())
    }

    /// Writes the dataset back as header-less CSV, class label last.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for ex in &self.examples {
            for v in &ex.features {
                write!(out, "{v},")?;
            }
            writeln!(out, "{}", self.class_names[ex.class])?;
        }
        Ok(())
    }
}

/// Reads a dataset from a CSV file; the name is the file stem.
pub fn load_csv(path: impl AsRef<Path>, schema: &CsvSchema) -> Result<Dataset> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    read_csv(name, file, schema)
}

/// Parses CSV from any reader. Cells are trimmed; blank lines are skipped.
pub fn read_csv<R: Read>(
    name: impl Into<String>,
    reader: R,
    schema: &CsvSchema,
) -> Result<Dataset> {
    let mut rdr = ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(Trim::All)
        .from_reader(reader);

    let mut arity: Option<usize> = None;
    let mut examples = Vec::new();
    let mut class_names: Vec<String> = Vec::new();
    let mut class_ids: HashMap<String, ClassId> = HashMap::new();
    let mut first_row = true;

    for record in rdr.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        if record.iter().all(str::is_empty) {
            continue;
        }
        let expected = *arity.get_or_insert(record.len());
        if record.len() != expected {
            return Err(Error::InconsistentArity {
                line,
                expected,
                found: record.len(),
            });
        }
        let class_col = match schema.class_column {
            ClassColumn::Last => expected - 1,
            ClassColumn::Index(c) if c < expected => c,
            ClassColumn::Index(c) => {
                return Err(Error::BadClassColumn {
                    column: c,
                    columns: expected,
                })
            }
        };
        if expected < 2 {
            return Err(Error::BadClassColumn {
                column: class_col,
                columns: expected,
            });
        }

        if first_row {
            first_row = false;
            let is_header = match schema.header {
                HeaderMode::Present => true,
                HeaderMode::Absent => false,
                HeaderMode::Auto => record
                    .iter()
                    .enumerate()
                    .any(|(c, cell)| c != class_col && cell.parse::<f64>().is_err()),
            };
            if is_header {
                continue;
            }
        }

        let mut features = Vec::with_capacity(expected - 1);
        let mut label = "";
        for (c, cell) in record.iter().enumerate() {
            if cell.is_empty() {
                return Err(Error::MissingValue {
                    line,
                    column: c + 1,
                });
            }
            if c == class_col {
                label = cell;
                continue;
            }
            match parse_cell(cell) {
                Some(v) => features.push(v),
                None => {
                    return Err(Error::NonNumeric {
                        line,
                        column: c + 1,
                        value: cell.to_string(),
                    })
                }
            }
        }
        let class = *class_ids.entry(label.to_string()).or_insert_with(|| {
            class_names.push(label.to_string());
            class_names.len() - 1
        });
        examples.push(LabeledExample { features, class });
    }

    if examples.is_empty() {
        return Err(Error::EmptyDataset);
    }
    Dataset::new(name, examples, class_names)
}

fn parse_cell(cell: &str) -> Option<f64> {
    cell.parse::<f64>().ok().filter(|v| v.is_finite())
}

/// `round(fraction * count)` with halves rounded up.
///
/// A tiny bias keeps products like `0.35 * 10 = 3.4999999999999996` on the
/// intended side of the half.
pub fn round_half_up_count(fraction: f64, count: usize) -> usize {
    (fraction * count as f64 + 0.5 + 1e-9).floor() as usize
}

/// A borrowed subset of a dataset's rows, in ascending row order.
#[derive(Debug, Clone)]
pub struct DatasetView<'a> {
    dataset: &'a Dataset,
    indices: Vec<usize>,
}

impl<'a> DatasetView<'a> {
    pub fn dataset(&self) -> &'a Dataset {
        self.dataset
    }

    /// Row indices into the parent dataset.
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn n_features(&self) -> usize {
        self.dataset.n_features
    }

    /// The `i`-th example of the view.
    pub fn get(&self, i: usize) -> &'a LabeledExample {
        &self.dataset.examples[self.indices[i]]
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &'a LabeledExample> + '_ {
        let examples = &self.dataset.examples;
        self.indices.iter().map(move |&i| &examples[i])
    }
}

/// Repeated random hold-out configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitPlan {
    pub test_fraction: f64,
    pub repetitions: usize,
    pub seed: u64,
}

impl Default for SplitPlan {
    fn default() -> Self {
        Self {
            test_fraction: 0.34,
            repetitions: 10,
            seed: 0,
        }
    }
}

/// Disjoint, sorted train/test row indices covering `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitIndices {
    pub train: Vec<usize>,
    pub test: Vec<usize>,
}

impl SplitPlan {
    pub fn validate(&self) -> Result<()> {
        if !(self.test_fraction > 0.0 && self.test_fraction < 1.0) {
            return Err(Error::InvalidPlan(format!(
                "test_fraction {} not in (0, 1)",
                self.test_fraction
            )));
        }
        if self.repetitions == 0 {
            return Err(Error::InvalidPlan("repetitions must be positive".into()));
        }
        Ok(())
    }

    pub fn test_size(&self, n: usize) -> usize {
        round_half_up_count(self.test_fraction, n)
    }

    /// Seed of one repetition's stream.
    pub fn repetition_seed(&self, repetition: usize) -> u64 {
        seed::mix(self.seed, repetition as u64)
    }

    /// Draws a uniformly random test subset of size `test_size(n)`.
    pub fn split_indices(&self, n: usize, repetition: usize) -> Result<SplitIndices> {
        self.validate()?;
        if repetition >= self.repetitions {
            return Err(Error::RepetitionOutOfRange {
                repetition,
                repetitions: self.repetitions,
            });
        }
        let n_test = self.test_size(n);
        if n < 2 || n_test == 0 || n_test >= n {
            return Err(Error::TooSmall {
                examples: n,
                test_fraction: self.test_fraction,
            });
        }
        let mut rng = seed::rng(self.repetition_seed(repetition));
        let mut in_test = vec![false; n];
        for i in index::sample(&mut rng, n, n_test) {
            in_test[i] = true;
        }
        let (test, train): (Vec<usize>, Vec<usize>) = (0..n).partition(|&i| in_test[i]);
        Ok(SplitIndices { train, test })
    }

    pub fn split<'a>(
        &self,
        ds: &'a Dataset,
        repetition: usize,
    ) -> Result<(DatasetView<'a>, DatasetView<'a>)> {
        let SplitIndices { train, test } = self.split_indices(ds.len(), repetition)?;
        Ok((ds.view(train), ds.view(test)))
    }
}

/// Free-function form of [`SplitPlan::split`].
pub fn split<'a>(
    ds: &'a Dataset,
    plan: &SplitPlan,
    repetition: usize,
) -> Result<(DatasetView<'a>, DatasetView<'a>)> {
    plan.split(ds, repetition)
}
