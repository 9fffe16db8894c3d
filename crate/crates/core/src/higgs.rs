//! The Sp(2n,R) layer: Toledo invariant and bound, Cayley partner,
//! classification of the minima of the Hitchin functional, Morse index, and
//! the local sparsity pattern of an equivariant Higgs field.
//!
//! A triple `(V, beta, gamma)` is carried as the weight data of `V`, the
//! matching orbifold signature (orders are the weight denominators), and
//! presence flags for the two symmetric morphisms — the case analysis never
//! needs more than block shapes.

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::parabolic::{rat, ParabolicBundleData, Rat};
use crate::vgeom::{LineVBundle, OrbifoldSignature};

/// Data of a parabolic Sp(2n,R)-Higgs triple `(V, beta, gamma)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SpHiggsWire", into = "SpHiggsWire")]
pub struct SpHiggsData {
    n: u32,
    bundle: ParabolicBundleData,
    signature: OrbifoldSignature,
    beta_present: bool,
    gamma_present: bool,
}

#[derive(Serialize, Deserialize)]
struct SpHiggsWire {
    n: u32,
    genus: u32,
    orders: Vec<u32>,
    #[serde(flatten)]
    bundle: ParabolicBundleData,
    beta: bool,
    gamma: bool,
}

impl TryFrom<SpHiggsWire> for SpHiggsData {
    type Error = Error;
    fn try_from(w: SpHiggsWire) -> Result<Self> {
        SpHiggsData::new(
            w.n,
            w.bundle,
            OrbifoldSignature::new(w.genus, w.orders)?,
            w.beta,
            w.gamma,
        )
    }
}

impl From<SpHiggsData> for SpHiggsWire {
    fn from(d: SpHiggsData) -> Self {
        SpHiggsWire {
            n: d.n,
            genus: d.signature.genus(),
            orders: d.signature.orders().to_vec(),
            bundle: d.bundle,
            beta: d.beta_present,
            gamma: d.gamma_present,
        }
    }
}

impl SpHiggsData {
    /// Validates that `V` has rank `n`, lives over the signature's divisor,
    /// and that every weight at point `i` is an integral multiple of
    /// `1/m_i`.
    pub fn new(
        n: u32,
        bundle: ParabolicBundleData,
        signature: OrbifoldSignature,
        beta_present: bool,
        gamma_present: bool,
    ) -> Result<Self> {
        if bundle.rank() != n {
            return Err(Error::RankMismatch {
                expected: n,
                found: bundle.rank(),
            });
        }
        if bundle.num_points() != signature.num_points() {
            return Err(Error::PointCountMismatch {
                left: bundle.num_points(),
                right: signature.num_points(),
            });
        }
        for (point, &m) in bundle.points().iter().zip(signature.orders()) {
            for entry in point.entries() {
                if i64::from(m) % entry.weight.denom() != 0 {
                    return Err(Error::DenominatorNotDividing {
                        num: entry.weight.numer(),
                        den: entry.weight.denom(),
                        order: m,
                    });
                }
            }
        }
        Ok(SpHiggsData {
            n,
            bundle,
            signature,
            beta_present,
            gamma_present,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn bundle(&self) -> &ParabolicBundleData {
        &self.bundle
    }

    pub fn signature(&self) -> &OrbifoldSignature {
        &self.signature
    }

    pub fn beta_present(&self) -> bool {
        self.beta_present
    }

    pub fn gamma_present(&self) -> bool {
        self.gamma_present
    }

    /// The symplectic bundle `E = V + V*`; its parabolic degree is zero by
    /// construction of the dual.
    pub fn associated_bundle(&self) -> ParabolicBundleData {
        self.bundle
            .direct_sum(&self.bundle.dual())
            .expect("V and its dual share the divisor")
    }

    /// Swaps the triple for its dual `(V*, gamma, beta)`.
    pub fn dualized(&self) -> SpHiggsData {
        SpHiggsData {
            n: self.n,
            bundle: self.bundle.dual(),
            signature: self.signature.clone(),
            beta_present: self.gamma_present,
            gamma_present: self.beta_present,
        }
    }
}

/// Toledo invariant, its bound, and maximality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ToledoReport {
    #[serde(with = "crate::parabolic::rat_serde")]
    pub toledo: Rat,
    #[serde(with = "crate::parabolic::rat_serde")]
    pub bound: Rat,
    pub maximal: bool,
}

/// `toledo = pardeg(V)`, bounded by `n(g - 1 + s/2)`; the triple is maximal
/// exactly at the bound. Data beyond the bound is inconsistent with
/// semistability and rejected.
pub fn toledo_and_bound(data: &SpHiggsData) -> Result<ToledoReport> {
    let toledo = data.bundle().pardeg();
    let g = i64::from(data.signature().genus());
    let s = i64::from(data.signature().num_points() as u32);
    let bound = rat(i64::from(data.n()) * (2 * g - 2 + s), 2);
    if toledo.abs() > bound {
        return Err(Error::ToledoBoundViolated {
            toledo: toledo.to_string(),
            bound: bound.to_string(),
        });
    }
    Ok(ToledoReport {
        maximal: toledo == bound,
        toledo,
        bound,
    })
}

/// Cayley partner `W = V (x) L0^{-1}` of a maximal triple, for `L0` a fixed
/// square root of the log-canonical class. Always has parabolic degree 0.
pub fn cayley_partner(data: &SpHiggsData, l0: &LineVBundle) -> Result<ParabolicBundleData> {
    let report = toledo_and_bound(data)?;
    if !report.maximal {
        return Err(Error::NotMaximal {
            toledo: report.toledo.to_string(),
            bound: report.bound.to_string(),
        });
    }
    let sig = data.signature();
    let square = l0.tensor(l0, sig)?;
    let target = sig.log_canonical_class();
    if square != target {
        return Err(Error::NotSquareRoot {
            got_degree: square.degree(),
            got_isotropy: square.isotropy().to_vec(),
            want_degree: target.degree(),
        });
    }
    let partner = data
        .bundle()
        .tensor_line(&l0.inverse(sig)?.to_parabolic_line(sig)?)?;
    debug_assert!(partner.pardeg() == Rat::from_integer(0));
    Ok(partner)
}

/// Morse index of the Hitchin functional at a rank-2 critical point of the
/// decomposed type: `dim H^1` of the positive-weight deformation complex,
/// `2g - 2 + s - pardeg V`. Zero exactly on the maximal locus.
pub fn morse_index_case_b(g: u32, s: u32, pardeg_v: Rat) -> Result<Rat> {
    let t = 2 * i64::from(g) - 2 + i64::from(s);
    if t <= 0 {
        return Err(Error::EulerDegenerate { value: t });
    }
    Ok(Rat::from_integer(t) - pardeg_v)
}

/// Shape tag of a local minimum of the Hitchin functional.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum MinimumCase {
    /// `pardeg V > 0` with `beta = 0`.
    Type1BetaZero,
    /// `pardeg V = 2g - 2 + s`: `V = L1 + L2` with `beta` supported in the
    /// lower diagonal block and `gamma` anti-diagonal.
    Type2Decomposition {
        beta_blocks: [[bool; 2]; 2],
        gamma_blocks: [[bool; 2]; 2],
    },
    NotMinimum,
}

/// Verdict of the rank-2 minimum classification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimumVerdict {
    pub is_minimum: bool,
    pub case: MinimumCase,
    /// Morse index `2g - 2 + s - pardeg V` in the decomposed branch; absent
    /// for type-1 minima.
    #[serde(with = "crate::parabolic::rat_serde::opt")]
    pub index: Option<Rat>,
}

/// Classifies a rank-2 triple as a local minimum of the Hitchin functional.
///
/// A minimum occurs exactly when `beta = 0` with `pardeg V > 0`, or when
/// `pardeg V = 2g - 2 + s` (the decomposed shape). Triples with negative
/// `pardeg V` are first normalized by `(V, beta, gamma) -> (V*, gamma,
/// beta)`.
pub fn classify_minimum_sp4(data: &SpHiggsData) -> Result<MinimumVerdict> {
    if data.n() != 2 {
        return Err(Error::RankUnsupported {
            n: data.n(),
            requirement: "= 2",
        });
    }
    let normalized = if data.bundle().pardeg() < Rat::from_integer(0) {
        data.dualized()
    } else {
        data.clone()
    };
    let pardeg_v = normalized.bundle().pardeg();
    let g = normalized.signature().genus();
    let s = normalized.signature().num_points() as u32;
    let t = 2 * i64::from(g) - 2 + i64::from(s);
    if t <= 0 {
        return Err(Error::EulerDegenerate { value: t });
    }
    // For n = 2 the Toledo bound is exactly t; beyond it the data cannot
    // be polystable and the case analysis does not apply.
    if pardeg_v > Rat::from_integer(t) {
        return Err(Error::ToledoBoundViolated {
            toledo: pardeg_v.to_string(),
            bound: Rat::from_integer(t).to_string(),
        });
    }

    if !normalized.beta_present() && pardeg_v > Rat::from_integer(0) {
        return Ok(MinimumVerdict {
            is_minimum: true,
            case: MinimumCase::Type1BetaZero,
            index: None,
        });
    }
    let index = morse_index_case_b(g, s, pardeg_v)?;
    if pardeg_v == Rat::from_integer(t) {
        return Ok(MinimumVerdict {
            is_minimum: true,
            case: MinimumCase::Type2Decomposition {
                beta_blocks: [[false, false], [false, true]],
                gamma_blocks: [[false, true], [true, false]],
            },
            index: Some(index),
        });
    }
    Ok(MinimumVerdict {
        is_minimum: false,
        case: MinimumCase::NotMinimum,
        index: Some(index),
    })
}

/// Summand parabolic degrees of the decomposed minima for rank `n >= 3`.
///
/// Writing `t = 2g - 2 + s`, the summand degrees follow the exponent
/// progression of the decomposition into line bundles: for odd `n` they are
/// `t/2 + e*t` over `e = -2[n/2], -2[n/2]+2, ..., 2[n/2]` and for even `n`
/// they are `-t/2 + e*t` over `e = 2-n, 4-n, ..., n`. The total is always
/// `n(g - 1 + s/2)`.
pub fn minima_decomposition_sp2n(n: u32, g: u32, s: u32) -> Result<Vec<Rat>> {
    if n < 3 {
        return Err(Error::RankUnsupported {
            n,
            requirement: ">= 3",
        });
    }
    let t = 2 * i64::from(g) - 2 + i64::from(s);
    if t <= 0 {
        return Err(Error::EulerDegenerate { value: t });
    }
    let half = rat(t, 2);
    let t = Rat::from_integer(t);
    let n_i = i64::from(n);
    let degrees: Vec<Rat> = if n % 2 == 1 {
        let top = 2 * (n_i / 2);
        (-top..=top)
            .step_by(2)
            .map(|e| half + Rat::from_integer(e) * t)
            .collect()
    } else {
        (2 - n_i..=n_i)
            .step_by(2)
            .map(|e| -half + Rat::from_integer(e) * t)
            .collect()
    };
    debug_assert_eq!(degrees.len(), n as usize);
    Ok(degrees)
}

/// One block of the local model of an equivariant Higgs field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LocalBlock {
    Forbidden,
    /// Leading exponent `k_i - k_j + twist_k` of the allowed local section.
    Allowed {
        exponent: u32,
    },
}

/// Local sparsity pattern of a twisted equivariant Higgs field at a point
/// of order `m`: block `(i, j)` can be nonzero only when `k_i >= k_j`, in
/// which case its local section has leading exponent `k_i - k_j + twist_k`.
pub fn allowed_local_pattern(
    isotropy: &[u32],
    m: u32,
    twist_k: u32,
) -> Result<Vec<Vec<LocalBlock>>> {
    if m < 2 {
        return Err(Error::InvalidOrder { order: m });
    }
    for &k in isotropy.iter().chain(std::iter::once(&twist_k)) {
        if k >= m {
            return Err(Error::IsotropyOutOfRange { value: k, order: m });
        }
    }
    Ok(isotropy
        .iter()
        .map(|&ki| {
            isotropy
                .iter()
                .map(|&kj| {
                    if ki >= kj {
                        LocalBlock::Allowed {
                            exponent: ki - kj + twist_k,
                        }
                    } else {
                        LocalBlock::Forbidden
                    }
                })
                .collect()
        })
        .collect())
}
