//! Brute-force k-nearest-neighbour classification under any registered measure.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::dataset::{ClassId, DatasetView};
use crate::error::{Error, Result};
use crate::metrics::{self, MetricDescriptor};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Neighbor {
    /// Position within the training view.
    pub index: usize,
    pub distance: f64,
}

impl Neighbor {
    fn key_cmp(&self, other: &Self) -> Ordering {
        self.distance
            .total_cmp(&other.distance)
            .then(self.index.cmp(&other.index))
    }
}

// Heap entries order by (distance, index) so the heap top is the current worst.
#[derive(Debug, Clone, Copy)]
struct HeapEntry(Neighbor);

impl PartialEq for HeapEntry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for HeapEntry {}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.key_cmp(&other.0)
    }
}

/// The `k` closest training rows, ascending by distance, ties by index.
#[derive(Debug, Clone, PartialEq)]
pub struct NeighborList(Vec<Neighbor>);

impl NeighborList {
    pub fn as_slice(&self) -> &[Neighbor] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn indices(&self) -> Vec<usize> {
        self.0.iter().map(|n| n.index).collect()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Neighbor> {
        self.0.iter()
    }
}

impl std::ops::Index<usize> for NeighborList {
    type Output = Neighbor;

    fn index(&self, i: usize) -> &Neighbor {
        &self.0[i]
    }
}

/// A lazy learner: stores the training view verbatim.
#[derive(Debug, Clone)]
pub struct KnnModel<'a> {
    training: DatasetView<'a>,
    metric: MetricDescriptor,
    k: usize,
}

impl<'a> KnnModel<'a> {
    /// Fails if `k` is not in `1..=|training|` or a training row lies outside
    /// the metric's input domain.
    pub fn new(training: DatasetView<'a>, metric: &MetricDescriptor, k: usize) -> Result<Self> {
        if k == 0 || k > training.len() {
            return Err(Error::InvalidK {
                k,
                available: training.len(),
            });
        }
        for ex in training.iter() {
            metrics::check_domain(metric, &ex.features)?;
        }
        Ok(Self {
            training,
            metric: *metric,
            k,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn metric(&self) -> &MetricDescriptor {
        &self.metric
    }

    pub fn training(&self) -> &DatasetView<'a> {
        &self.training
    }

    fn check_query(&self, query: &[f64]) -> Result<()> {
        if query.len() != self.training.n_features() {
            return Err(Error::DimensionMismatch {
                left: query.len(),
                right: self.training.n_features(),
            });
        }
        metrics::check_domain(&self.metric, query)
    }

    /// Distance from `query` to every training row, in training order.
    pub fn distances(&self, query: &[f64]) -> Result<Vec<f64>> {
        self.check_query(query)?;
        Ok(self
            .training
            .iter()
            .map(|ex| metrics::evaluate_unchecked(&self.metric, query, &ex.features))
            .collect())
    }

    pub fn neighbors(&self, query: &[f64]) -> Result<NeighborList> {
        self.check_query(query)?;
        Ok(self.select(query))
    }

    fn select(&self, query: &[f64]) -> NeighborList {
        let scored = self
            .training
            .iter()
            .enumerate()
            .map(|(index, ex)| Neighbor {
                index,
                distance: metrics::evaluate_unchecked(&self.metric, query, &ex.features),
            });

        if self.k == 1 {
            let best = scored
                .reduce(|best, n| if n.key_cmp(&best).is_lt() { n } else { best })
                .expect("training view is non-empty");
            return NeighborList(vec![best]);
        }

        if 2 * self.k >= self.training.len() {
            let mut all: Vec<Neighbor> = scored.collect();
            all.sort_unstable_by(Neighbor::key_cmp);
            all.truncate(self.k);
            return NeighborList(all);
        }

        let mut heap = BinaryHeap::with_capacity(self.k + 1);
        for n in scored {
            if heap.len() < self.k {
                heap.push(HeapEntry(n));
            } else if let Some(top) = heap.peek() {
                if n.key_cmp(&top.0).is_lt() {
                    heap.pop();
                    heap.push(HeapEntry(n));
                }
            }
        }
        NeighborList(heap.into_sorted_vec().into_iter().map(|e| e.0).collect())
    }

    /// Majority class among the `k` neighbours. A vote tie goes to the tied
    /// class whose member is nearest.
    pub fn classify(&self, query: &[f64]) -> Result<ClassId> {
        let neighbors = self.neighbors(query)?;
        Ok(self.vote(&neighbors))
    }

    fn vote(&self, neighbors: &NeighborList) -> ClassId {
        let class_of = |n: &Neighbor| self.training.get(n.index).class;
        if neighbors.len() == 1 {
            return class_of(&neighbors[0]);
        }
        let n_classes = self.training.dataset().n_classes();
        let mut counts = vec![0usize; n_classes];
        for n in neighbors.iter() {
            counts[class_of(n)] += 1;
        }
        let top = counts.iter().copied().max().unwrap_or(0);
        neighbors
            .iter()
            .map(class_of)
            .find(|&c| counts[c] == top)
            .expect("some neighbour carries the top count")
    }

    /// Classifies every row of `queries`.
    pub fn classify_all(&self, queries: &DatasetView<'_>) -> Result<Vec<ClassId>> {
        queries
            .iter()
            .map(|ex| self.classify(&ex.features))
            .collect()
    }
}
