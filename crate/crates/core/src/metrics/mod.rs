//! The 54 distance/similarity measures, grouped into eight families.
//!
//! Every measure is a pure kernel over two equal-length slices. A static
//! registry maps each [`Metric`] to a [`MetricDescriptor`] carrying its
//! abbreviation, family, axiom flags and the [`GuardPolicy`] that keeps the
//! kernel finite on degenerate inputs (zero denominators, logs of zero).
//!
//! Use [`evaluate`] (or [`Metric::distance`]) for validated calls. The
//! `*_unchecked` entry points skip dimension and domain checks and are meant
//! for hot loops whose inputs were validated once up front.

mod guard;
mod inner_product;
mod l1;
mod minkowski;
mod other;
mod registry;
mod shannon;
mod squared_chord;
mod squared_l2;
mod vicissitude;

pub use guard::{GuardPolicy, LogNonPositive, ZeroDenominator};
pub use other::{hassanat_term, pearson_r};
pub use registry::{describe, registry, Family, Flags, Metric, MetricDescriptor};

use crate::error::{Error, Result};

/// Two equal-length, non-empty feature vectors.
#[derive(Debug, Clone, Copy)]
pub struct VectorPair<'a> {
    pub x: &'a [f64],
    pub y: &'a [f64],
}

impl<'a> VectorPair<'a> {
    pub fn new(x: &'a [f64], y: &'a [f64]) -> Result<Self> {
        if x.len() != y.len() || x.is_empty() {
            return Err(Error::DimensionMismatch {
                left: x.len(),
                right: y.len(),
            });
        }
        Ok(Self { x, y })
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }
}

/// Checks that every component is non-negative when the metric demands it.
pub fn check_domain(metric: &MetricDescriptor, v: &[f64]) -> Result<()> {
    if metric.flags.requires_nonneg_inputs {
        if let Some((index, &value)) = v.iter().enumerate().find(|(_, &v)| v < 0.0) {
            return Err(Error::DomainViolation {
                metric: metric.abbrev,
                index,
                value,
            });
        }
    }
    Ok(())
}

/// Dissimilarity of `x` and `y` under `metric`.
pub fn evaluate(metric: &MetricDescriptor, x: &[f64], y: &[f64]) -> Result<f64> {
    let pair = VectorPair::new(x, y)?;
    check_domain(metric, pair.x)?;
    check_domain(metric, pair.y)?;
    Ok(evaluate_unchecked(metric, pair.x, pair.y))
}

/// Kernel dispatch without validation. Slices must have equal, non-zero
/// length and satisfy the metric's input domain.
#[inline]
pub fn evaluate_unchecked(metric: &MetricDescriptor, x: &[f64], y: &[f64]) -> f64 {
    debug_assert_eq!(x.len(), y.len());
    let g = &metric.guard;
    let m = metric.metric;
    match metric.family {
        Family::Minkowski => minkowski::kernel(m, x, y),
        Family::L1 => l1::kernel(m, x, y, g),
        Family::InnerProduct => inner_product::kernel(m, x, y, g),
        Family::SquaredChord => squared_chord::kernel(m, x, y, g),
        Family::SquaredL2 => squared_l2::kernel(m, x, y, g),
        Family::ShannonEntropy => shannon::kernel(m, x, y, g),
        Family::Vicissitude => vicissitude::kernel(m, x, y, g),
        Family::Other => other::kernel(m, x, y, g),
    }
}

fn family_op(family: Family, which: Metric, x: &[f64], y: &[f64]) -> Result<f64> {
    let desc = which.descriptor();
    if desc.family != family {
        return Err(Error::WrongFamily {
            metric: desc.abbrev,
            family: family.name(),
        });
    }
    evaluate(desc, x, y)
}

/// MD, CD, ED.
pub fn minkowski_family(which: Metric, x: &[f64], y: &[f64]) -> Result<f64> {
    family_op(Family::Minkowski, which, x, y)
}

/// LD, CanD, SD, SoD, KD, MCD, NID.
pub fn l1_family(which: Metric, x: &[f64], y: &[f64]) -> Result<f64> {
    family_op(Family::L1, which, x, y)
}

/// JacD, CosD, DicD, ChoD.
pub fn inner_product_family(which: Metric, x: &[f64], y: &[f64]) -> Result<f64> {
    family_op(Family::InnerProduct, which, x, y)
}

/// BD, SCD, MatD, HeD. Inputs must be non-negative.
pub fn squared_chord_family(which: Metric, x: &[f64], y: &[f64]) -> Result<f64> {
    family_op(Family::SquaredChord, which, x, y)
}

/// SED, ClaD, NCSD, PCSD, SquD, PSCSD, DivD, ASCSD, AD, MCED, SCSD.
pub fn squared_l2_family(which: Metric, x: &[f64], y: &[f64]) -> Result<f64> {
    family_op(Family::SquaredL2, which, x, y)
}

/// KLD, JefD, KDD, TopD, JSD, JDD. Inputs must be non-negative.
pub fn shannon_family(which: Metric, x: &[f64], y: &[f64]) -> Result<f64> {
    family_op(Family::ShannonEntropy, which, x, y)
}

/// VWHD, VSDF1-3, MSCD, MiSCSD.
pub fn vicissitude_family(which: Metric, x: &[f64], y: &[f64]) -> Result<f64> {
    family_op(Family::Vicissitude, which, x, y)
}

/// AvgD, KJD, TanD, PeaD, CorD, SPeaD, HamD, HauD, CSSD, WIAD, MeeD, MotD, HasD.
pub fn other_family(which: Metric, x: &[f64], y: &[f64]) -> Result<f64> {
    family_op(Family::Other, which, x, y)
}

#[inline]
pub(crate) fn sum_abs_diff(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| (a - b).abs()).sum()
}

#[inline]
pub(crate) fn sum_sq_diff(x: &[f64], y: &[f64]) -> f64 {
    x.iter()
        .zip(y)
        .map(|(a, b)| {
            let d = a - b;
            d * d
        })
        .sum()
}
