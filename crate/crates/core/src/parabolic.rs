//! Exact-rational calculus of parabolic weight systems.
//!
//! A parabolic bundle is represented by its combinatorial shadow: rank,
//! integer degree, and for each marked point of the divisor a strictly
//! increasing list of weights in `[0, 1)` with positive multiplicities
//! summing to the rank. The parabolic degree is
//!
//! ```text
//! pardeg(E) = deg E + sum_x sum_i k_i(x) * a_i(x)
//! ```
//!
//! and every operation below preserves the corresponding exact identity
//! (`pardeg(dual) = -pardeg`, additivity under direct sum, the product rule
//! under tensor by a line). Weights leaving `[0, 1)` are reduced mod 1 with
//! the integer part pushed into the underlying degree.

use std::fmt;

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational scalar used throughout the crate.
pub type Rat = Ratio<i64>;

/// Convenience constructor for an exact rational.
///
/// Panics on a zero denominator; use [`Weight::new`] for fallible parsing.
pub fn rat(num: i64, den: i64) -> Rat {
    Ratio::new(num, den)
}

/// A parabolic weight: a rational in `[0, 1)`, stored reduced.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Weight(Rat);

impl Weight {
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::ZeroDenominator);
        }
        Self::from_ratio(Ratio::new(num, den))
    }

    pub fn from_ratio(value: Rat) -> Result<Self> {
        if value.is_negative() || value >= Rat::from_integer(1) {
            return Err(Error::WeightOutOfRange {
                num: *value.numer(),
                den: *value.denom(),
            });
        }
        Ok(Weight(value))
    }

    pub fn zero() -> Self {
        Weight(Rat::zero())
    }

    pub fn value(&self) -> Rat {
        self.0
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Serde adapter rendering a rational as `{"num": .., "den": ..}`.
pub mod rat_serde {
    use super::Rat;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct RatWire {
        num: i64,
        den: i64,
    }

    pub fn serialize<S: Serializer>(value: &Rat, ser: S) -> Result<S::Ok, S::Error> {
        RatWire {
            num: *value.numer(),
            den: *value.denom(),
        }
        .serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Rat, D::Error> {
        let w = RatWire::deserialize(de)?;
        if w.den == 0 {
            return Err(serde::de::Error::custom("zero denominator"));
        }
        Ok(Rat::new(w.num, w.den))
    }

    /// Same rendering for `Option<Rat>`.
    pub mod opt {
        use super::*;

        pub fn serialize<S: Serializer>(value: &Option<Rat>, ser: S) -> Result<S::Ok, S::Error> {
            match value {
                Some(r) => super::serialize(r, ser),
                None => ser.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Option<Rat>, D::Error> {
            Option::<RatWire>::deserialize(de)?
                .map(|w| {
                    if w.den == 0 {
                        return Err(serde::de::Error::custom("zero denominator"));
                    }
                    Ok(Rat::new(w.num, w.den))
                })
                .transpose()
        }
    }
}

/// Reduce a rational mod 1 into a [`Weight`], returning the integer carry.
pub(crate) fn normalize_weight(value: Rat) -> (Weight, i64) {
    let carry = value.floor().to_integer();
    let reduced = value - Rat::from_integer(carry);
    (Weight(reduced), carry)
}

/// One weight step of a flag: the weight and its multiplicity
/// `k_i = dim(E_{x,i} / E_{x,i+1})`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "WeightEntryWire", into = "WeightEntryWire")]
pub struct WeightEntry {
    pub weight: Weight,
    pub multiplicity: u32,
}

impl WeightEntry {
    pub fn new(weight: Weight, multiplicity: u32) -> Result<Self> {
        if multiplicity == 0 {
            return Err(Error::ZeroMultiplicity);
        }
        Ok(WeightEntry {
            weight,
            multiplicity,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct WeightEntryWire {
    num: i64,
    den: i64,
    mult: u32,
}

impl TryFrom<WeightEntryWire> for WeightEntry {
    type Error = Error;
    fn try_from(w: WeightEntryWire) -> Result<Self> {
        WeightEntry::new(Weight::new(w.num, w.den)?, w.mult)
    }
}

impl From<WeightEntry> for WeightEntryWire {
    fn from(e: WeightEntry) -> Self {
        WeightEntryWire {
            num: e.weight.numer(),
            den: e.weight.denom(),
            mult: e.multiplicity,
        }
    }
}

/// The weighted flag data at one marked point: strictly increasing weights
/// with positive multiplicities.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "PointWeightsWire", into = "PointWeightsWire")]
pub struct PointWeights {
    entries: Vec<WeightEntry>,
}

#[derive(Serialize, Deserialize)]
struct PointWeightsWire {
    weights: Vec<WeightEntryWire>,
}

impl TryFrom<PointWeightsWire> for PointWeights {
    type Error = Error;
    fn try_from(w: PointWeightsWire) -> Result<Self> {
        let entries = w
            .weights
            .into_iter()
            .map(WeightEntry::try_from)
            .collect::<Result<Vec<_>>>()?;
        PointWeights::new(entries)
    }
}

impl From<PointWeights> for PointWeightsWire {
    fn from(p: PointWeights) -> Self {
        PointWeightsWire {
            weights: p.entries.into_iter().map(Into::into).collect(),
        }
    }
}

impl PointWeights {
    /// Validates that weights arrive strictly increasing; no silent sorting.
    pub fn new(entries: Vec<WeightEntry>) -> Result<Self> {
        for pair in entries.windows(2) {
            if pair[0].weight >= pair[1].weight {
                return Err(Error::WeightsNotSorted);
            }
        }
        if entries.iter().any(|e| e.multiplicity == 0) {
            return Err(Error::ZeroMultiplicity);
        }
        Ok(PointWeights { entries })
    }

    /// Builds from `(num, den, multiplicity)` triples.
    pub fn from_triples(triples: &[(i64, i64, u32)]) -> Result<Self> {
        let entries = triples
            .iter()
            .map(|&(n, d, m)| WeightEntry::new(Weight::new(n, d)?, m))
            .collect::<Result<Vec<_>>>()?;
        Self::new(entries)
    }

    /// Collects an unsorted weight multiset into normal form, merging
    /// multiplicities at exactly equal rationals.
    pub fn from_multiset(weights: impl IntoIterator<Item = (Weight, u32)>) -> Result<Self> {
        let mut items: Vec<(Weight, u32)> = weights.into_iter().collect();
        items.sort_by_key(|(w, _)| *w);
        let mut entries: Vec<WeightEntry> = Vec::new();
        for (w, m) in items {
            if m == 0 {
                return Err(Error::ZeroMultiplicity);
            }
            match entries.last_mut() {
                Some(last) if last.weight == w => last.multiplicity += m,
                _ => entries.push(WeightEntry {
                    weight: w,
                    multiplicity: m,
                }),
            }
        }
        Ok(PointWeights { entries })
    }

    pub fn entries(&self) -> &[WeightEntry] {
        &self.entries
    }

    /// Number of distinct weights, `r(x)`.
    pub fn num_steps(&self) -> usize {
        self.entries.len()
    }

    pub fn total_multiplicity(&self) -> u32 {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    /// `sum_i k_i * a_i` at this point.
    pub fn weight_sum(&self) -> Rat {
        self.entries
            .iter()
            .map(|e| e.weight.value() * Rat::from_integer(i64::from(e.multiplicity)))
            .sum()
    }

    /// The weights expanded with multiplicity, non-decreasing.
    pub fn expanded(&self) -> Vec<Weight> {
        let mut out = Vec::with_capacity(self.total_multiplicity() as usize);
        for e in &self.entries {
            for _ in 0..e.multiplicity {
                out.push(e.weight);
            }
        }
        out
    }
}

/// Combinatorial data of a parabolic bundle: rank, underlying degree, and
/// the weighted flag at each marked point of the divisor.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "BundleWire", into = "BundleWire")]
pub struct ParabolicBundleData {
    rank: u32,
    degree: i64,
    points: Vec<PointWeights>,
}

#[derive(Serialize, Deserialize)]
struct BundleWire {
    rank: u32,
    degree: i64,
    points: Vec<PointWeightsWire>,
}

impl TryFrom<BundleWire> for ParabolicBundleData {
    type Error = Error;
    fn try_from(w: BundleWire) -> Result<Self> {
        let points = w
            .points
            .into_iter()
            .map(PointWeights::try_from)
            .collect::<Result<Vec<_>>>()?;
        ParabolicBundleData::new(w.rank, w.degree, points)
    }
}

impl From<ParabolicBundleData> for BundleWire {
    fn from(b: ParabolicBundleData) -> Self {
        BundleWire {
            rank: b.rank,
            degree: b.degree,
            points: b.points.into_iter().map(Into::into).collect(),
        }
    }
}

impl ParabolicBundleData {
    pub fn new(rank: u32, degree: i64, points: Vec<PointWeights>) -> Result<Self> {
        if rank == 0 {
            return Err(Error::ZeroRank);
        }
        for (i, p) in points.iter().enumerate() {
            let sum = p.total_multiplicity();
            if sum != rank {
                return Err(Error::MultiplicitySum {
                    point: i,
                    sum,
                    rank,
                });
            }
        }
        Ok(ParabolicBundleData {
            rank,
            degree,
            points,
        })
    }

    /// A parabolic line bundle: one weight of multiplicity one per point.
    pub fn line(degree: i64, weights: Vec<Weight>) -> Result<Self> {
        let points = weights
            .into_iter()
            .map(|w| {
                PointWeights::new(vec![WeightEntry {
                    weight: w,
                    multiplicity: 1,
                }])
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(1, degree, points)
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn points(&self) -> &[PointWeights] {
        &self.points
    }

    /// Number of marked points `s`.
    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    /// `pardeg(E) = deg E + sum_x sum_i k_i(x) a_i(x)`, exact.
    pub fn pardeg(&self) -> Rat {
        self.points
            .iter()
            .map(PointWeights::weight_sum)
            .fold(Rat::from_integer(self.degree), |acc, w| acc + w)
    }

    /// Parabolic slope `pardeg / rank`.
    pub fn par_slope(&self) -> Rat {
        self.pardeg() / Rat::from_integer(i64::from(self.rank))
    }

    /// Parabolic dual. Per point the weights become `1 - a_i` reduced into
    /// `[0, 1)` (weight 0 stays 0) and the underlying degree absorbs one
    /// carry of -1 for each unit of nonzero-weight multiplicity, so that
    /// `pardeg(dual) = -pardeg` holds exactly.
    pub fn dual(&self) -> ParabolicBundleData {
        let mut degree = -self.degree;
        let points = self
            .points
            .iter()
            .map(|p| {
                let mut entries = Vec::with_capacity(p.num_steps());
                // Reversed order: 1 - a_r < ... < 1 - a_1, with a zero
                // weight staying in front.
                let mut zero_entry = None;
                for e in p.entries() {
                    if e.weight.is_zero() {
                        zero_entry = Some(*e);
                    } else {
                        degree -= i64::from(e.multiplicity);
                        entries.push(WeightEntry {
                            weight: Weight(Rat::from_integer(1) - e.weight.value()),
                            multiplicity: e.multiplicity,
                        });
                    }
                }
                entries.reverse();
                if let Some(z) = zero_entry {
                    entries.insert(0, z);
                }
                PointWeights { entries }
            })
            .collect();
        ParabolicBundleData {
            rank: self.rank,
            degree,
            points,
        }
    }

    /// Parabolic direct sum: ranks and degrees add, per-point weight
    /// multisets merge with multiplicities combined at equal weights.
    pub fn direct_sum(&self, other: &ParabolicBundleData) -> Result<ParabolicBundleData> {
        if self.num_points() != other.num_points() {
            return Err(Error::PointCountMismatch {
                left: self.num_points(),
                right: other.num_points(),
            });
        }
        let points = self
            .points
            .iter()
            .zip(&other.points)
            .map(|(a, b)| {
                PointWeights::from_multiset(
                    a.entries()
                        .iter()
                        .chain(b.entries())
                        .map(|e| (e.weight, e.multiplicity)),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        ParabolicBundleData::new(self.rank + other.rank, self.degree + other.degree, points)
    }

    /// Tensor with a parabolic line bundle. Per point every weight becomes
    /// `a_i + b` reduced mod 1; each unit of multiplicity with `a_i + b >= 1`
    /// contributes +1 to the underlying degree, on top of
    /// `deg + rank * deg(l)`. This makes
    /// `pardeg(E (x) L) = pardeg(E) + rank(E) * pardeg(L)` exact.
    pub fn tensor_line(&self, line: &ParabolicBundleData) -> Result<ParabolicBundleData> {
        if line.rank != 1 {
            return Err(Error::NotALine { rank: line.rank });
        }
        if self.num_points() != line.num_points() {
            return Err(Error::PointCountMismatch {
                left: self.num_points(),
                right: line.num_points(),
            });
        }
        let mut degree = self.degree + i64::from(self.rank) * line.degree;
        let points = self
            .points
            .iter()
            .zip(&line.points)
            .map(|(p, lp)| {
                let beta = lp.entries()[0].weight.value();
                let shifted = p.entries().iter().map(|e| {
                    let (w, carry) = normalize_weight(e.weight.value() + beta);
                    degree += carry * i64::from(e.multiplicity);
                    (w, e.multiplicity)
                });
                PointWeights::from_multiset(shifted)
            })
            .collect::<Result<Vec<_>>>()?;
        ParabolicBundleData::new(self.rank, degree, points)
    }
}

/// Parabolic degree of the tensor product of two bundles of any ranks,
/// `rk(F) pardeg(E) + rk(E) pardeg(F)`.
///
/// The full weight data of a higher-rank tensor product is not modeled;
/// only the line-bundle case ([`ParabolicBundleData::tensor_line`]) refines
/// this to the weight level.
pub fn tensor_pardeg(a: &ParabolicBundleData, b: &ParabolicBundleData) -> Result<Rat> {
    if a.num_points() != b.num_points() {
        return Err(Error::PointCountMismatch {
            left: a.num_points(),
            right: b.num_points(),
        });
    }
    Ok(Rat::from_integer(i64::from(b.rank())) * a.pardeg()
        + Rat::from_integer(i64::from(a.rank())) * b.pardeg())
}

/// Weights induced on a sub-flag from an ambient point.
///
/// `incidence[i]` is the largest ambient flag index `j` (1-based) such that
/// the i-th sub-flag step is contained in the ambient step `j`; sub-flag
/// steps are listed from the deepest subspace outward, so the indices must
/// be weakly decreasing. Each incidence entry contributes one unit of
/// multiplicity at the ambient weight it selects.
pub fn induced_sub_weights(ambient: &PointWeights, incidence: &[usize]) -> Result<PointWeights> {
    let steps = ambient.num_steps();
    for pair in incidence.windows(2) {
        if pair[0] < pair[1] {
            return Err(Error::IncidenceNotMonotone);
        }
    }
    let picks = incidence
        .iter()
        .map(|&j| {
            if j == 0 || j > steps {
                return Err(Error::IncidenceOutOfRange { index: j, steps });
            }
            Ok((ambient.entries()[j - 1].weight, 1))
        })
        .collect::<Result<Vec<_>>>()?;
    PointWeights::from_multiset(picks)
}

/// Which graded blocks of a morphism may be nonzero.
///
/// Entry `(i, j)` is true iff a component from the weight-`a_i` graded piece
/// of `src` to the weight-`a'_j` graded piece of `dst` is allowed:
/// `a_i <= a'_j` for parabolic morphisms, `a_i < a'_j` for strongly
/// parabolic ones.
pub fn allowed_block_pattern(
    src: &PointWeights,
    dst: &PointWeights,
    strong: bool,
) -> Vec<Vec<bool>> {
    src.entries()
        .iter()
        .map(|a| {
            dst.entries()
                .iter()
                .map(|b| {
                    if strong {
                        a.weight < b.weight
                    } else {
                        a.weight <= b.weight
                    }
                })
                .collect()
        })
        .collect()
}

/// True iff some boolean power of the square matrix up to its dimension
/// vanishes (reachability by paths of that length dies out).
pub fn bool_matrix_nilpotent(matrix: &[Vec<bool>]) -> bool {
    let n = matrix.len();
    if n == 0 {
        return true;
    }
    let mut power: Vec<Vec<bool>> = matrix.to_vec();
    for _ in 1..n {
        if power.iter().all(|row| row.iter().all(|&x| !x)) {
            return true;
        }
        let mut next = vec![vec![false; n]; n];
        for i in 0..n {
            for (j, out) in next[i].iter_mut().enumerate() {
                *out = (0..n).any(|k| power[i][k] && matrix[k][j]);
            }
        }
        power = next;
    }
    power.iter().all(|row| row.iter().all(|&x| !x))
}

/// Slope comparison of candidate sub-data against ambient data.
///
/// Returns true iff the sub-data violates stability (`semistable = false`,
/// violation at slope >=) or semistability (`semistable = true`, violation
/// only at slope >). This compares the supplied data; it does not search
/// for subbundles.
pub fn destabilizing_check(
    ambient: &ParabolicBundleData,
    sub: &ParabolicBundleData,
    semistable: bool,
) -> Result<bool> {
    if sub.rank == 0 || sub.rank >= ambient.rank {
        return Err(Error::SubRankInvalid {
            sub: sub.rank,
            ambient: ambient.rank,
        });
    }
    let ambient_slope = ambient.par_slope();
    let sub_slope = sub.par_slope();
    Ok(if semistable {
        sub_slope > ambient_slope
    } else {
        sub_slope >= ambient_slope
    })
}
