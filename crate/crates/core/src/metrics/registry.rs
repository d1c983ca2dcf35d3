use std::fmt;
use std::str::FromStr;

use super::guard::GuardPolicy;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Minkowski,
    L1,
    InnerProduct,
    SquaredChord,
    SquaredL2,
    ShannonEntropy,
    Vicissitude,
    Other,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Minkowski => "Minkowski",
            Family::L1 => "L1",
            Family::InnerProduct => "InnerProduct",
            Family::SquaredChord => "SquaredChord",
            Family::SquaredL2 => "SquaredL2",
            Family::ShannonEntropy => "ShannonEntropy",
            Family::Vicissitude => "Vicissitude",
            Family::Other => "Other",
        }
    }
}

/// Axiom and domain properties of a measure.
///
/// `zero_self` and `nonneg_output` hold for every input in the metric's
/// domain (all reals, or the non-negative orthant when
/// `requires_nonneg_inputs` is set), not only on typical data.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Flags {
    pub symmetric: bool,
    pub zero_self: bool,
    pub nonneg_output: bool,
    pub full_metric: bool,
    pub requires_nonneg_inputs: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricDescriptor {
    pub metric: Metric,
    pub abbrev: &'static str,
    pub name: &'static str,
    pub family: Family,
    pub flags: Flags,
    pub guard: GuardPolicy,
}

impl MetricDescriptor {
    /// Same measure under a different guard policy.
    pub fn with_guard(mut self, guard: GuardPolicy) -> Self {
        self.guard = guard;
        self
    }

    pub fn distance(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        super::evaluate(self, x, y)
    }
}

impl fmt::Display for MetricDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.abbrev)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Metric {
    // Minkowski
    Manhattan,
    Chebyshev,
    Euclidean,
    // L1
    Lorentzian,
    Canberra,
    Sorensen,
    Soergel,
    Kulczynski,
    MeanCharacter,
    NonIntersection,
    // inner product
    Jaccard,
    Cosine,
    Dice,
    Chord,
    // squared chord
    Bhattacharyya,
    SquaredChord,
    Matusita,
    Hellinger,
    // squared L2
    SquaredEuclidean,
    Clark,
    NeymanChiSquare,
    PearsonChiSquare,
    SquaredChiSquare,
    ProbabilisticSymmetricChiSquare,
    Divergence,
    AdditiveSymmetricChiSquare,
    Average,
    MeanCensoredEuclidean,
    SquaredChiSquared,
    // Shannon entropy
    KullbackLeibler,
    Jeffreys,
    KDivergence,
    Topsoe,
    JensenShannon,
    JensenDifference,
    // vicissitude
    VicisWaveHedges,
    VicisSymmetric1,
    VicisSymmetric2,
    VicisSymmetric3,
    MaxSymmetricChiSquare,
    MinSymmetricChiSquare,
    // other
    AverageL1LInf,
    KumarJohnson,
    Taneja,
    Pearson,
    Correlation,
    SquaredPearson,
    Hamming,
    Hausdorff,
    ChiSquareStatistic,
    Whittaker,
    Meehl,
    Motyka,
    Hassanat,
}

const fn flags(
    symmetric: bool,
    zero_self: bool,
    nonneg_output: bool,
    full_metric: bool,
    requires_nonneg_inputs: bool,
) -> Flags {
    Flags {
        symmetric,
        zero_self,
        nonneg_output,
        full_metric,
        requires_nonneg_inputs,
    }
}

// sym, zero_self, nonneg, metric, nonneg inputs
const METRIC: Flags = flags(true, true, true, true, false);
const SYM_NONNEG: Flags = flags(true, true, true, false, false);
const SYM_SIGNED: Flags = flags(true, true, false, false, false);
const ASYM_SIGNED: Flags = flags(false, true, false, false, false);
const POSITIVE_ONLY: Flags = flags(true, true, true, false, true);

const fn entry(
    metric: Metric,
    abbrev: &'static str,
    name: &'static str,
    family: Family,
    flags: Flags,
) -> MetricDescriptor {
    MetricDescriptor {
        metric,
        abbrev,
        name,
        family,
        flags,
        guard: GuardPolicy::DEFAULT,
    }
}

use Family as F;
use Metric as M;

static REGISTRY: [MetricDescriptor; 54] = [
    entry(M::Manhattan, "MD", "Manhattan", F::Minkowski, METRIC),
    entry(M::Chebyshev, "CD", "Chebyshev", F::Minkowski, METRIC),
    entry(M::Euclidean, "ED", "Euclidean", F::Minkowski, METRIC),
    entry(M::Lorentzian, "LD", "Lorentzian", F::L1, METRIC),
    entry(M::Canberra, "CanD", "Canberra", F::L1, METRIC),
    entry(M::Sorensen, "SD", "Sorensen", F::L1, SYM_SIGNED),
    entry(M::Soergel, "SoD", "Soergel", F::L1, SYM_SIGNED),
    entry(M::Kulczynski, "KD", "Kulczynski", F::L1, SYM_SIGNED),
    entry(M::MeanCharacter, "MCD", "Mean Character", F::L1, METRIC),
    entry(M::NonIntersection, "NID", "Non Intersection", F::L1, METRIC),
    entry(M::Jaccard, "JacD", "Jaccard", F::InnerProduct, SYM_NONNEG),
    entry(M::Cosine, "CosD", "Cosine", F::InnerProduct, SYM_NONNEG),
    entry(M::Dice, "DicD", "Dice", F::InnerProduct, SYM_NONNEG),
    entry(M::Chord, "ChoD", "Chord", F::InnerProduct, SYM_NONNEG),
    entry(
        M::Bhattacharyya,
        "BD",
        "Bhattacharyya",
        F::SquaredChord,
        flags(true, false, false, false, true),
    ),
    entry(
        M::SquaredChord,
        "SCD",
        "Squared Chord",
        F::SquaredChord,
        POSITIVE_ONLY,
    ),
    entry(
        M::Matusita,
        "MatD",
        "Matusita",
        F::SquaredChord,
        flags(true, true, true, true, true),
    ),
    entry(
        M::Hellinger,
        "HeD",
        "Hellinger",
        F::SquaredChord,
        flags(true, true, true, true, true),
    ),
    entry(
        M::SquaredEuclidean,
        "SED",
        "Squared Euclidean",
        F::SquaredL2,
        SYM_NONNEG,
    ),
    entry(M::Clark, "ClaD", "Clark", F::SquaredL2, SYM_NONNEG),
    entry(
        M::NeymanChiSquare,
        "NCSD",
        "Neyman chi-square",
        F::SquaredL2,
        ASYM_SIGNED,
    ),
    entry(
        M::PearsonChiSquare,
        "PCSD",
        "Pearson chi-square",
        F::SquaredL2,
        ASYM_SIGNED,
    ),
    entry(
        M::SquaredChiSquare,
        "SquD",
        "Squared chi-square",
        F::SquaredL2,
        SYM_SIGNED,
    ),
    entry(
        M::ProbabilisticSymmetricChiSquare,
        "PSCSD",
        "Probabilistic Symmetric chi-square",
        F::SquaredL2,
        SYM_SIGNED,
    ),
    entry(
        M::Divergence,
        "DivD",
        "Divergence",
        F::SquaredL2,
        SYM_NONNEG,
    ),
    entry(
        M::AdditiveSymmetricChiSquare,
        "ASCSD",
        "Additive Symmetric chi-square",
        F::SquaredL2,
        SYM_SIGNED,
    ),
    entry(M::Average, "AD", "Average", F::SquaredL2, METRIC),
    entry(
        M::MeanCensoredEuclidean,
        "MCED",
        "Mean Censored Euclidean",
        F::SquaredL2,
        SYM_NONNEG,
    ),
    entry(
        M::SquaredChiSquared,
        "SCSD",
        "Squared Chi-Squared",
        F::SquaredL2,
        SYM_NONNEG,
    ),
    entry(
        M::KullbackLeibler,
        "KLD",
        "Kullback-Leibler",
        F::ShannonEntropy,
        flags(false, true, false, false, true),
    ),
    entry(
        M::Jeffreys,
        "JefD",
        "Jeffreys",
        F::ShannonEntropy,
        POSITIVE_ONLY,
    ),
    entry(
        M::KDivergence,
        "KDD",
        "K divergence",
        F::ShannonEntropy,
        flags(false, true, false, false, true),
    ),
    entry(
        M::Topsoe,
        "TopD",
        "Topsoe",
        F::ShannonEntropy,
        POSITIVE_ONLY,
    ),
    entry(
        M::JensenShannon,
        "JSD",
        "Jensen-Shannon",
        F::ShannonEntropy,
        POSITIVE_ONLY,
    ),
    entry(
        M::JensenDifference,
        "JDD",
        "Jensen difference",
        F::ShannonEntropy,
        POSITIVE_ONLY,
    ),
    entry(
        M::VicisWaveHedges,
        "VWHD",
        "Vicis-Wave Hedges",
        F::Vicissitude,
        SYM_SIGNED,
    ),
    entry(
        M::VicisSymmetric1,
        "VSDF1",
        "Vicis Symmetric 1",
        F::Vicissitude,
        SYM_NONNEG,
    ),
    entry(
        M::VicisSymmetric2,
        "VSDF2",
        "Vicis Symmetric 2",
        F::Vicissitude,
        SYM_SIGNED,
    ),
    entry(
        M::VicisSymmetric3,
        "VSDF3",
        "Vicis Symmetric 3",
        F::Vicissitude,
        SYM_SIGNED,
    ),
    entry(
        M::MaxSymmetricChiSquare,
        "MSCD",
        "Max Symmetric chi-square",
        F::Vicissitude,
        SYM_SIGNED,
    ),
    entry(
        M::MinSymmetricChiSquare,
        "MiSCSD",
        "Min Symmetric chi-square",
        F::Vicissitude,
        SYM_SIGNED,
    ),
    entry(
        M::AverageL1LInf,
        "AvgD",
        "Average (L1, Linf)",
        F::Other,
        METRIC,
    ),
    entry(
        M::KumarJohnson,
        "KJD",
        "Kumar-Johnson",
        F::Other,
        flags(true, false, true, false, true),
    ),
    entry(M::Taneja, "TanD", "Taneja", F::Other, POSITIVE_ONLY),
    entry(
        M::Pearson,
        "PeaD",
        "Pearson",
        F::Other,
        flags(true, false, true, false, false),
    ),
    entry(
        M::Correlation,
        "CorD",
        "Correlation",
        F::Other,
        flags(true, false, true, false, false),
    ),
    entry(
        M::SquaredPearson,
        "SPeaD",
        "Squared Pearson",
        F::Other,
        flags(true, false, true, false, false),
    ),
    entry(M::Hamming, "HamD", "Hamming", F::Other, METRIC),
    entry(M::Hausdorff, "HauD", "Hausdorff", F::Other, SYM_NONNEG),
    entry(
        M::ChiSquareStatistic,
        "CSSD",
        "chi-square statistic",
        F::Other,
        ASYM_SIGNED,
    ),
    entry(
        M::Whittaker,
        "WIAD",
        "Whittaker's index of association",
        F::Other,
        SYM_NONNEG,
    ),
    entry(M::Meehl, "MeeD", "Meehl", F::Other, SYM_NONNEG),
    entry(
        M::Motyka,
        "MotD",
        "Motyka",
        F::Other,
        flags(true, false, false, false, false),
    ),
    entry(M::Hassanat, "HasD", "Hassanat", F::Other, METRIC),
];

impl Metric {
    pub const COUNT: usize = 54;

    /// All measures in registry order.
    pub fn all() -> impl ExactSizeIterator<Item = Metric> {
        REGISTRY.iter().map(|d| d.metric)
    }

    pub fn descriptor(self) -> &'static MetricDescriptor {
        &REGISTRY[self as usize]
    }

    pub fn abbrev(self) -> &'static str {
        self.descriptor().abbrev
    }

    pub fn from_abbrev(abbrev: &str) -> Result<Self> {
        describe(abbrev).map(|d| d.metric)
    }

    /// Validated evaluation with the default guard policy.
    pub fn distance(self, x: &[f64], y: &[f64]) -> Result<f64> {
        super::evaluate(self.descriptor(), x, y)
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.abbrev())
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Metric::from_abbrev(s)
    }
}

/// Every descriptor, in registry order.
pub fn registry() -> &'static [MetricDescriptor] {
    &REGISTRY
}

/// Looks a measure up by its exact abbreviation. `MSCSD` is accepted as an
/// alias of `MSCD`.
pub fn describe(abbrev: &str) -> Result<&'static MetricDescriptor> {
    let key = if abbrev == "MSCSD" { "MSCD" } else { abbrev };
    REGISTRY
        .iter()
        .find(|d| d.abbrev == key)
        .ok_or_else(|| Error::UnknownMetric(abbrev.to_string()))
}
