//! Spectral-cover bookkeeping for the correspondence between twisted Higgs
//! data on a pointed curve and line data on its spectral cover.
//!
//! Only degrees, genera, signatures and counts are computed here — no
//! section arithmetic. Regularity of the characteristic data (smooth cover,
//! branch locus disjoint from the marked points) is an assumption carried in
//! the reports, never verified.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::parabolic::Rat;
use crate::vgeom::OrbifoldSignature;

/// Derived numerics of a degree-`n` spectral cover twisted by a line bundle
/// of degree `twist_degree` over the base signature.
///
/// The branch degree is the generic discriminant degree `n(n-1) * l` and the
/// spectral genus comes from Riemann-Hurwitz,
/// `2g' - 2 = n(2g - 2) + branch_degree`. Each base marked point of order
/// `m_i` has `n` distinct preimages of the same order, so the spectral
/// signature has genus `g'` and `n * s` marked points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectralCoverData {
    pub base: OrbifoldSignature,
    pub rank: u32,
    pub twist_degree: i64,
    pub branch_degree: i64,
    pub spectral_genus: u32,
    pub spectral_signature: OrbifoldSignature,
    /// The construction assumes the cover is smooth with branch locus
    /// disjoint from the marked points; this is carried as a flag, not
    /// checked.
    pub regularity_assumed: bool,
}

/// Fills the derived fields for a degree-`n` cover.
pub fn spectral_cover_data(
    base: &OrbifoldSignature,
    n: u32,
    twist_degree: i64,
) -> Result<SpectralCoverData> {
    if n < 1 {
        return Err(Error::RankUnsupported {
            n,
            requirement: ">= 1",
        });
    }
    if twist_degree < 0 {
        return Err(Error::NegativeTwistDegree {
            value: twist_degree,
        });
    }
    let n_i = i64::from(n);
    let branch_degree = n_i * (n_i - 1) * twist_degree;
    // 2g' - 2 = n(2g - 2) + branch; n(n-1) is even so this is an integer.
    let doubled = n_i * (2 * i64::from(base.genus()) - 2) + branch_degree;
    let spectral_genus = (doubled + 2) / 2;
    if spectral_genus < 0 {
        return Err(Error::NegativeSpectralGenus {
            value: spectral_genus,
        });
    }
    let orders = base
        .orders()
        .iter()
        .flat_map(|&m| std::iter::repeat_n(m, n as usize))
        .collect();
    let spectral_signature = OrbifoldSignature::new(spectral_genus as u32, orders)?;
    Ok(SpectralCoverData {
        base: base.clone(),
        rank: n,
        twist_degree,
        branch_degree,
        spectral_genus: spectral_genus as u32,
        spectral_signature,
        regularity_assumed: true,
    })
}

/// Lifts base weight tuples to the spectral marked points.
///
/// `base_weights[x]` is the non-decreasing weight tuple `(a_1, ..., a_n)` at
/// the x-th point and `preimage_order[x]` a permutation of `0..n` choosing
/// which preimage receives which weight: preimage `j` of point `x` gets
/// `a[preimage_order[x][j]]`. Assumes every point has `n` distinct
/// preimages (branch locus disjoint from the divisor).
pub fn lift_weights(
    base_weights: &[Vec<Rat>],
    preimage_order: &[Vec<usize>],
    n: usize,
) -> Result<Vec<Vec<Rat>>> {
    if base_weights.len() != preimage_order.len() {
        return Err(Error::PointCountMismatch {
            left: base_weights.len(),
            right: preimage_order.len(),
        });
    }
    base_weights
        .iter()
        .zip(preimage_order)
        .enumerate()
        .map(|(point, (tuple, order))| {
            if tuple.len() != n {
                return Err(Error::TupleLengthMismatch {
                    point,
                    expected: n,
                    found: tuple.len(),
                });
            }
            let mut seen = vec![false; n];
            let lifted = order
                .iter()
                .map(|&idx| {
                    if idx >= n || seen[idx] {
                        return Err(Error::BadPreimageOrder { point, n });
                    }
                    seen[idx] = true;
                    Ok(tuple[idx])
                })
                .collect::<Result<Vec<_>>>()?;
            if lifted.len() != n {
                return Err(Error::BadPreimageOrder { point, n });
            }
            Ok(lifted)
        })
        .collect()
}

/// How many ordered lifts produce the same unordered weight data at one
/// point: the multinomial coefficient `n! / (k_1! ... k_l!)` over the
/// multiplicities of the distinct values in the tuple.
pub fn compatibility_multiplicity(weights: &[Rat]) -> u128 {
    let mut sorted = weights.to_vec();
    sorted.sort();
    // n! / prod k_j! computed without intermediate factorials: consume one
    // factor of i for each element, dividing by the running per-group count.
    let mut result: u128 = 1;
    let mut group_len: u128 = 0;
    let mut prev: Option<Rat> = None;
    for (i, w) in sorted.iter().enumerate() {
        if prev == Some(*w) {
            group_len += 1;
        } else {
            group_len = 1;
            prev = Some(*w);
        }
        result = result * (i as u128 + 1) / group_len;
    }
    result
}

/// Dimension of the Hitchin base for rank `n` data over a genus-`g` curve
/// with `s` marked points.
///
/// Coefficient `i` of the characteristic polynomial lives in sections of
/// the i-th power of the twist; Riemann-Roch with vanishing `h^1` (degree
/// above `2g - 2`) gives `i(2g-2+s) - g + 1` per summand. In the strong
/// case the i-th coefficient vanishes along the divisor, dropping each
/// degree by `s`, and the `i = 1` term sits exactly at degree `2g - 2`
/// where the shortcut fails and contributes `h^0(K) = g` instead.
pub fn hitchin_base_dim(g: u32, s: u32, n: u32, strong: bool) -> Result<i64> {
    if s < 1 {
        return Err(Error::NoMarkedPoints);
    }
    let t = 2 * i64::from(g) - 2 + i64::from(s);
    if t <= 0 {
        return Err(Error::EulerDegenerate { value: t });
    }
    if n < 1 {
        return Err(Error::RankUnsupported {
            n,
            requirement: ">= 1",
        });
    }
    let g = i64::from(g);
    let s = i64::from(s);
    let mut dim = 0;
    for i in 1..=i64::from(n) {
        dim += if strong {
            if i == 1 {
                g
            } else {
                i * t - s - g + 1
            }
        } else {
            i * t - g + 1
        };
    }
    Ok(dim)
}

/// Number of connected components of the V-Picard group of the spectral
/// cover — the regular Hitchin fiber: `prod m_i^n` over the `n * s`
/// spectral marked points.
pub fn hitchin_fiber_components(base: &OrbifoldSignature, n: u32) -> Result<u128> {
    if n < 1 {
        return Err(Error::RankUnsupported {
            n,
            requirement: ">= 1",
        });
    }
    base.orders().iter().try_fold(1u128, |acc, &m| {
        let mut acc = acc;
        for _ in 0..n {
            acc = acc.checked_mul(u128::from(m)).ok_or(Error::CountOverflow)?;
        }
        Ok(acc)
    })
}

/// Prym data of a degree-2 spectral cover.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrymData {
    /// Dimension of the classical Prym variety of the double cover,
    /// spectral genus minus base genus.
    pub dimension: u32,
    /// Connected components of the V-Prym group, `2^s`.
    pub component_count: u128,
    /// The number of Prym copies making up one Hitchin fiber depends on the
    /// weight data in a way these invariants do not determine; only the
    /// V-Prym component count above is computed.
    pub copies_resolved: bool,
}

/// Dimension and component count of the Prym of the degree-2 cover twisted
/// by degree `twist_degree`.
pub fn prym_data(base: &OrbifoldSignature, twist_degree: i64) -> Result<PrymData> {
    let cover = spectral_cover_data(base, 2, twist_degree)?;
    let s = base.num_points() as u32;
    if s >= 128 {
        return Err(Error::CountOverflow);
    }
    Ok(PrymData {
        dimension: cover.spectral_genus - base.genus(),
        component_count: 1u128 << s,
        copies_resolved: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parabolic::rat;
    use crate::vgeom::picard_component_count;

    fn sig(genus: u32, orders: &[u32]) -> OrbifoldSignature {
        OrbifoldSignature::new(genus, orders.to_vec()).unwrap()
    }

    #[test]
    fn cover_data_examples() {
        let c = spectral_cover_data(&sig(2, &[2]), 2, 3).unwrap();
        assert_eq!(c.branch_degree, 6);
        assert_eq!(c.spectral_genus, 6);
        assert_eq!(c.spectral_signature, sig(6, &[2, 2]));

        let c = spectral_cover_data(&sig(3, &[2, 5]), 1, 7).unwrap();
        assert_eq!(c.branch_degree, 0);
        assert_eq!(c.spectral_genus, 3);
        assert_eq!(c.spectral_signature, sig(3, &[2, 5]));

        let c = spectral_cover_data(&sig(0, &[2, 2, 2]), 2, 1).unwrap();
        assert_eq!(c.branch_degree, 2);
        assert_eq!(c.spectral_genus, 0);
        assert_eq!(c.spectral_signature, sig(0, &[2, 2, 2, 2, 2, 2]));
    }

    #[test]
    fn inadmissible_cover_is_rejected() {
        // Genus 0 base, trivial twist: Riemann-Hurwitz genus would be
        // negative.
        assert!(matches!(
            spectral_cover_data(&sig(0, &[3]), 3, 0),
            Err(Error::NegativeSpectralGenus { .. })
        ));
        assert!(spectral_cover_data(&sig(1, &[2]), 2, -1).is_err());
    }

    #[test]
    fn lift_follows_chosen_order() {
        let weights = vec![vec![rat(1, 3), rat(2, 3)]];
        let lifted = lift_weights(&weights, &[vec![0, 1]], 2).unwrap();
        assert_eq!(lifted, vec![vec![rat(1, 3), rat(2, 3)]]);

        let swapped = lift_weights(&weights, &[vec![1, 0]], 2).unwrap();
        assert_eq!(swapped, vec![vec![rat(2, 3), rat(1, 3)]]);
        assert_ne!(swapped, lifted);

        let sym = vec![vec![rat(1, 2), rat(1, 2)]];
        assert_eq!(
            lift_weights(&sym, &[vec![0, 1]], 2).unwrap(),
            lift_weights(&sym, &[vec![1, 0]], 2).unwrap()
        );
    }

    #[test]
    fn lift_forgets_back_to_the_base_multiset() {
        let weights = vec![
            vec![rat(0, 1), rat(1, 3), rat(2, 3)],
            vec![rat(1, 2), rat(1, 2), rat(5, 6)],
        ];
        for orders in [
            vec![vec![0, 1, 2], vec![0, 1, 2]],
            vec![vec![2, 0, 1], vec![1, 2, 0]],
            vec![vec![1, 2, 0], vec![2, 1, 0]],
        ] {
            let lifted = lift_weights(&weights, &orders, 3).unwrap();
            for (base, lift) in weights.iter().zip(&lifted) {
                let mut sorted = lift.clone();
                sorted.sort();
                assert_eq!(&sorted, base);
            }
        }
    }

    #[test]
    fn lift_rejects_bad_orders() {
        let weights = vec![vec![rat(1, 3), rat(2, 3)]];
        assert!(matches!(
            lift_weights(&weights, &[vec![0, 0]], 2),
            Err(Error::BadPreimageOrder { .. })
        ));
        assert!(matches!(
            lift_weights(&weights, &[vec![0, 2]], 2),
            Err(Error::BadPreimageOrder { .. })
        ));
        assert!(matches!(
            lift_weights(&[vec![rat(1, 3)]], &[vec![0, 1]], 2),
            Err(Error::TupleLengthMismatch { .. })
        ));
    }

    #[test]
    fn multiplicity_examples() {
        assert_eq!(
            compatibility_multiplicity(&[rat(1, 4), rat(1, 2), rat(3, 4)]),
            6
        );
        assert_eq!(
            compatibility_multiplicity(&[rat(1, 2), rat(1, 2), rat(1, 2)]),
            1
        );
        assert_eq!(
            compatibility_multiplicity(&[rat(0, 1), rat(0, 1), rat(1, 2), rat(1, 2)]),
            6
        );
    }

    #[test]
    fn multiplicity_matches_distinct_orderings() {
        use itertools::Itertools;
        use std::collections::HashSet;

        // Brute force: count distinct permutations of the tuple.
        let pool = [rat(0, 1), rat(1, 3), rat(1, 2), rat(2, 3)];
        for len in 1..=5usize {
            for tuple in std::iter::repeat_n(pool.iter().copied(), len).multi_cartesian_product() {
                let orderings: HashSet<Vec<Rat>> =
                    tuple.iter().copied().permutations(len).collect();
                assert_eq!(
                    compatibility_multiplicity(&tuple) as usize,
                    orderings.len(),
                    "{tuple:?}"
                );
            }
        }
    }

    #[test]
    fn hitchin_base_dims() {
        assert_eq!(hitchin_base_dim(2, 1, 2, false).unwrap(), 7);
        assert_eq!(hitchin_base_dim(2, 1, 2, true).unwrap(), 6);
        assert_eq!(hitchin_base_dim(2, 1, 1, false).unwrap(), 2);
        assert!(matches!(
            hitchin_base_dim(0, 2, 2, false),
            Err(Error::EulerDegenerate { .. })
        ));
        assert!(matches!(
            hitchin_base_dim(2, 0, 2, false),
            Err(Error::NoMarkedPoints)
        ));
    }

    #[test]
    fn fiber_components() {
        assert_eq!(hitchin_fiber_components(&sig(2, &[2]), 2).unwrap(), 4);
        assert_eq!(hitchin_fiber_components(&sig(1, &[2, 3]), 3).unwrap(), 216);
        // Degree 1 reduces to the V-Picard component count of the base.
        let base = sig(3, &[2, 3, 4]);
        assert_eq!(
            hitchin_fiber_components(&base, 1).unwrap(),
            picard_component_count(&base).unwrap()
        );
    }

    #[test]
    fn prym_examples() {
        let p = prym_data(&sig(2, &[2]), 3).unwrap();
        assert_eq!(p.dimension, 4);
        assert_eq!(p.component_count, 2);
        assert!(!p.copies_resolved);

        let p = prym_data(&sig(2, &[]), 2).unwrap();
        assert_eq!(p.component_count, 1);

        let p = prym_data(&sig(0, &[2, 2, 2]), 1).unwrap();
        assert_eq!(p.dimension, 0);
        assert_eq!(p.component_count, 8);
    }
}
