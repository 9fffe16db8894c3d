//! Topological invariant classes of maximal parabolic Sp(2n,R)-Higgs
//! bundles and the connected-component counts they label.
//!
//! Three families of classes occur, indexed by the Cayley partner's shape:
//!
//! - `UV`: a pair of Z2 V-cohomology classes, `u` of rank `2g + s0 - 1` and
//!   `v` of rank `s0` (with `u != 0` required in rank 2);
//! - `DW`: a background degree `d` together with an isotropy vector `w`,
//!   constrained to the window `0 <= d + sum w_i/m_i < 2g - 2 + s` (rank 2
//!   only);
//! - `SqrtKD`: square roots of the log-canonical class, labeled by a carry
//!   vector over the even-order points and a symbolic 2-torsion label of
//!   the Jacobian in `[0, 2^{2g})`.
//!
//! [`enumerate_invariant_classes`] materializes every class from these
//! definitions; [`count_components`] evaluates the closed forms. The two
//! routes are independent and are checked against each other in the test
//! suites.

use std::fmt;

use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::parabolic::Rat;
use crate::vgeom::{z2_cohomology_ranks, OrbifoldSignature};

/// Largest genus for which class lists are materialized; beyond this the
/// Jacobian factor `2^{2g}` makes lists pointlessly large and only the
/// closed forms are offered.
pub const MAX_ENUMERATION_GENUS: u32 = 3;

/// Which family structure a count runs over.
///
/// `WeightType` ranges over all isotropy vectors in the `DW` family;
/// `FixedHalf` pins the trivial flag with weight 1/2 (all orders must be
/// even); `NonReduced` pins one fixed structure whose enumerators are
/// coprime to the orders at every point. The modes only differ in the `DW`
/// family, so they coincide for n >= 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CountMode {
    WeightType,
    FixedHalf,
    NonReduced,
}

impl CountMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            CountMode::WeightType => "weight-type",
            CountMode::FixedHalf => "fixed-half",
            CountMode::NonReduced => "non-reduced",
        }
    }
}

impl fmt::Display for CountMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for CountMode {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "weight-type" => Ok(CountMode::WeightType),
            "fixed-half" => Ok(CountMode::FixedHalf),
            "non-reduced" => Ok(CountMode::NonReduced),
            other => Err(format!(
                "unknown mode `{other}` (expected weight-type, fixed-half or non-reduced)"
            )),
        }
    }
}

/// One topological invariant class. Bit vectors are stored as 0/1 bytes,
/// lowest index first.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum InvariantClass {
    UV {
        u: Vec<u8>,
        v: Vec<u8>,
        u_nonzero_required: bool,
    },
    DW {
        d: i64,
        w: Vec<u32>,
    },
    SqrtKD {
        carries: Vec<u8>,
        jacobian_label: u64,
    },
}

/// Per-family class counts; the three always sum to the weight-type total.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyCounts {
    pub uv: u128,
    pub dw: u128,
    pub sqrt: u128,
}

impl FamilyCounts {
    pub fn total(&self) -> Result<u128> {
        self.uv
            .checked_add(self.dw)
            .and_then(|x| x.checked_add(self.sqrt))
            .ok_or(Error::CountOverflow)
    }
}

fn pow2(exp: u32) -> Result<u128> {
    if exp >= 128 {
        return Err(Error::CountOverflow);
    }
    Ok(1u128 << exp)
}

fn check_regime(sig: &OrbifoldSignature, n: u32) -> Result<()> {
    if n < 2 {
        return Err(Error::RankUnsupported {
            n,
            requirement: ">= 2",
        });
    }
    if sig.num_points() == 0 {
        return Err(Error::NoMarkedPoints);
    }
    if sig.num_even() == 0 {
        return Err(Error::NoEvenOrders);
    }
    let t = sig.log_canonical_degree();
    if t <= 0 {
        return Err(Error::EulerDegenerate { value: t });
    }
    Ok(())
}

/// The isotropy vector pinned by the mode in the `DW` family, or `None`
/// when the mode ranges over all vectors.
fn fixed_dw_vector(sig: &OrbifoldSignature, mode: CountMode) -> Result<Option<Vec<u32>>> {
    match mode {
        CountMode::WeightType => Ok(None),
        CountMode::FixedHalf => {
            if sig.orders().iter().any(|&m| m % 2 != 0) {
                return Err(Error::EvenOrdersRequired);
            }
            Ok(Some(sig.orders().iter().map(|&m| m / 2).collect()))
        }
        CountMode::NonReduced => {
            // Canonical representative: enumerator 1 at every point, which
            // is coprime to any order.
            let w: Vec<u32> = vec![1; sig.num_points()];
            let lists: Vec<Vec<u32>> = w.iter().map(|&k| vec![k]).collect();
            debug_assert!(is_non_reduced(&lists, sig.orders())?);
            Ok(Some(w))
        }
    }
}

/// True iff at every point some enumerator is coprime to that point's
/// order.
pub fn is_non_reduced(enumerators: &[Vec<u32>], orders: &[u32]) -> Result<bool> {
    if enumerators.len() != orders.len() {
        return Err(Error::PointCountMismatch {
            left: enumerators.len(),
            right: orders.len(),
        });
    }
    for (ks, &m) in enumerators.iter().zip(orders) {
        if let Some(&k) = ks.iter().find(|&&k| k >= m) {
            return Err(Error::IsotropyOutOfRange { value: k, order: m });
        }
        if !ks.iter().any(|&k| k.gcd(&m) == 1) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn bits_of(mask: u64, len: usize) -> Vec<u8> {
    (0..len).map(|i| ((mask >> i) & 1) as u8).collect()
}

/// Materializes every invariant class over the signature.
///
/// Lists are only materialized for genus up to [`MAX_ENUMERATION_GENUS`];
/// the closed forms in [`count_components`] cover larger genus. The output
/// is sorted, and its length always equals the closed-form count.
pub fn enumerate_invariant_classes(
    sig: &OrbifoldSignature,
    n: u32,
    mode: CountMode,
) -> Result<Vec<InvariantClass>> {
    check_regime(sig, n)?;
    if sig.genus() > MAX_ENUMERATION_GENUS {
        return Err(Error::EnumerationTooLarge {
            genus: sig.genus(),
            max: MAX_ENUMERATION_GENUS,
        });
    }
    let (rk_h1, rk_h2) = z2_cohomology_ranks(sig)?;
    let t = sig.log_canonical_degree();
    let fixed_w = fixed_dw_vector(sig, mode)?;

    let mut classes = Vec::new();

    // UV family: u over H^1, v over H^2; u = 0 excluded in rank 2 where
    // the invariant comes with a nonvanishing first class.
    let u_nonzero_required = n == 2;
    for u_mask in 0..(1u64 << rk_h1) {
        if u_nonzero_required && u_mask == 0 {
            continue;
        }
        for v_mask in 0..(1u64 << rk_h2) {
            classes.push(InvariantClass::UV {
                u: bits_of(u_mask, rk_h1 as usize),
                v: bits_of(v_mask, rk_h2 as usize),
                u_nonzero_required,
            });
        }
    }

    // DW family (rank 2 only): every isotropy vector w admits exactly the
    // integers d in the half-open window 0 <= d + sum w_i/m_i < 2g-2+s.
    if n == 2 {
        let mut push_dw = |w: &[u32]| {
            let w_sum: Rat = w
                .iter()
                .zip(sig.orders())
                .map(|(&k, &m)| Rat::new(i64::from(k), i64::from(m)))
                .fold(Rat::zero(), |a, b| a + b);
            let mut d = (-w_sum).ceil().to_integer();
            while Rat::from_integer(d) + w_sum < Rat::from_integer(t) {
                classes.push(InvariantClass::DW { d, w: w.to_vec() });
                d += 1;
            }
        };
        match &fixed_w {
            Some(w) => push_dw(w),
            None => {
                let mut w = vec![0u32; sig.num_points()];
                loop {
                    push_dw(&w);
                    // Odometer over prod Z_{m_i}.
                    let mut pos = 0;
                    loop {
                        if pos == w.len() {
                            break;
                        }
                        w[pos] += 1;
                        if w[pos] < sig.orders()[pos] {
                            break;
                        }
                        w[pos] = 0;
                        pos += 1;
                    }
                    if pos == w.len() {
                        break;
                    }
                }
            }
        }
    }

    // Square roots of the log-canonical class: a carry bit per even-order
    // point, admissible iff the leftover degree t - sum(carries) is even,
    // each solution carrying 2^{2g} Jacobian labels.
    let s0 = sig.num_even() as u32;
    for carry_mask in 0..(1u64 << s0) {
        let carries = bits_of(carry_mask, s0 as usize);
        let leftover = t - i64::from(carry_mask.count_ones());
        if leftover % 2 != 0 {
            continue;
        }
        for jacobian_label in 0..(1u64 << (2 * sig.genus())) {
            classes.push(InvariantClass::SqrtKD {
                carries: carries.clone(),
                jacobian_label,
            });
        }
    }

    classes.sort();
    Ok(classes)
}

/// Closed-form per-family counts (weight-type `DW` window):
/// `uv = 2^{s0} (2^{2g+s0-1} - 1)` in rank 2 and `2^{s0} 2^{2g+s0-1}` for
/// n >= 3; `dw = (2g-2+s) prod m_i` in rank 2, empty otherwise;
/// `sqrt = 2^{2g+s0-1}`.
pub fn family_counts(sig: &OrbifoldSignature, n: u32) -> Result<FamilyCounts> {
    check_regime(sig, n)?;
    let s0 = sig.num_even() as u32;
    let half_torsion = pow2(2 * sig.genus() + s0 - 1)?;
    let uv_base = if n == 2 {
        half_torsion - 1
    } else {
        half_torsion
    };
    let uv = uv_base.checked_mul(pow2(s0)?).ok_or(Error::CountOverflow)?;
    let dw = if n == 2 {
        dw_count(sig, CountMode::WeightType)?
    } else {
        0
    };
    Ok(FamilyCounts {
        uv,
        dw,
        sqrt: half_torsion,
    })
}

fn dw_count(sig: &OrbifoldSignature, mode: CountMode) -> Result<u128> {
    let t = sig.log_canonical_degree() as u128;
    match fixed_dw_vector(sig, mode)? {
        Some(_) => Ok(t),
        None => sig
            .orders()
            .iter()
            .try_fold(t, |acc, &m| acc.checked_mul(u128::from(m)))
            .ok_or(Error::CountOverflow),
    }
}

/// Closed-form component count for the requested rank and mode; always
/// equal to the length of [`enumerate_invariant_classes`].
pub fn count_components(sig: &OrbifoldSignature, n: u32, mode: CountMode) -> Result<u128> {
    check_regime(sig, n)?;
    let families = family_counts(sig, n)?;
    let dw = if n == 2 { dw_count(sig, mode)? } else { 0 };
    families
        .uv
        .checked_add(dw)
        .and_then(|x| x.checked_add(families.sqrt))
        .ok_or(Error::CountOverflow)
}

/// Human-readable closed form for reports, in terms of `g`, `s`, the number
/// of even orders `s0`, and `prod(m_i)`.
pub fn closed_form_expression(n: u32, mode: CountMode) -> &'static str {
    if n == 2 {
        match mode {
            CountMode::WeightType => "(2^s0 + 1)*2^(2g+s0-1) - 2^s0 + (2g-2+s)*prod(m_i)",
            CountMode::FixedHalf | CountMode::NonReduced => {
                "(2^s0 + 1)*2^(2g+s0-1) - 2^s0 + (2g-2+s)"
            }
        }
    } else {
        "(2^s0 + 1)*2^(2g+s0-1)"
    }
}

/// Rank-2 count specialized to all orders equal to 2:
/// `(2^s + 1) 2^{2g+s-1} + (2g-3+s) 2^s`.
pub fn sp4_all_even_count(g: u32, s: u32) -> Result<u128> {
    let a = pow2(s)?.checked_add(1).ok_or(Error::CountOverflow)?;
    let b = pow2(2 * g + s - 1)?;
    let t3 = 2 * i64::from(g) - 3 + i64::from(s);
    if t3 < 0 {
        return Err(Error::EulerDegenerate { value: t3 + 1 });
    }
    a.checked_mul(b)
        .and_then(|x| x.checked_add((t3 as u128).checked_mul(pow2(s).ok()?)?))
        .ok_or(Error::CountOverflow)
}

/// Rank n >= 3 count specialized to all orders equal to 2:
/// `(2^s + 1) 2^{2g+s-1}`.
pub fn sp2n_all_even_count(g: u32, s: u32) -> Result<u128> {
    let a = pow2(s)?.checked_add(1).ok_or(Error::CountOverflow)?;
    a.checked_mul(pow2(2 * g + s - 1)?)
        .ok_or(Error::CountOverflow)
}

/// Rank-2 count with fixed trivial flag of weight 1/2, all orders 2:
/// `(2^s + 1) 2^{2g+s-1} + (2g-2+s) - 2^s`.
pub fn sp4_fixed_half_all_even_count(g: u32, s: u32) -> Result<u128> {
    let t = 2 * i64::from(g) - 2 + i64::from(s);
    if t <= 0 {
        return Err(Error::EulerDegenerate { value: t });
    }
    let base = sp2n_all_even_count(g, s)?;
    base.checked_add(t as u128)
        .and_then(|x| x.checked_sub(pow2(s).ok()?))
        .ok_or(Error::CountOverflow)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(genus: u32, orders: &[u32]) -> OrbifoldSignature {
        OrbifoldSignature::new(genus, orders.to_vec()).unwrap()
    }

    #[test]
    fn spot_counts() {
        let s = sig(2, &[2]);
        assert_eq!(count_components(&s, 2, CountMode::WeightType).unwrap(), 52);
        assert_eq!(count_components(&s, 3, CountMode::WeightType).unwrap(), 48);
        assert_eq!(count_components(&s, 2, CountMode::FixedHalf).unwrap(), 49);

        let s = sig(0, &[2, 2, 2]);
        assert_eq!(count_components(&s, 2, CountMode::WeightType).unwrap(), 36);

        let s = sig(1, &[2, 3]);
        assert_eq!(count_components(&s, 2, CountMode::WeightType).unwrap(), 22);
    }

    #[test]
    fn family_spot_counts() {
        let f = family_counts(&sig(2, &[2]), 2).unwrap();
        assert_eq!((f.uv, f.dw, f.sqrt), (30, 6, 16));
        assert_eq!(f.total().unwrap(), 52);

        let f = family_counts(&sig(0, &[2, 2, 2]), 2).unwrap();
        assert_eq!((f.uv, f.dw, f.sqrt), (24, 8, 4));
        assert_eq!(f.total().unwrap(), 36);

        let f = family_counts(&sig(2, &[2, 3]), 3).unwrap();
        assert_eq!(f.dw, 0);
    }

    #[test]
    fn enumeration_matches_closed_forms_on_spots() {
        for (s, n, mode, expect) in [
            (sig(2, &[2]), 2, CountMode::WeightType, 52),
            (sig(2, &[2]), 3, CountMode::WeightType, 48),
            (sig(0, &[2, 2, 2]), 2, CountMode::WeightType, 36),
            (sig(1, &[2, 3]), 2, CountMode::WeightType, 22),
            (sig(2, &[2]), 2, CountMode::FixedHalf, 49),
            (sig(1, &[2, 3]), 2, CountMode::NonReduced, 12),
        ] {
            let classes = enumerate_invariant_classes(&s, n, mode).unwrap();
            assert_eq!(classes.len() as u128, expect, "{s:?} n={n} {mode}");
            assert_eq!(
                count_components(&s, n, mode).unwrap(),
                expect,
                "{s:?} n={n} {mode}"
            );
        }
    }

    #[test]
    fn enumeration_is_sorted_and_distinct() {
        let classes =
            enumerate_invariant_classes(&sig(1, &[2, 3]), 2, CountMode::WeightType).unwrap();
        for pair in classes.windows(2) {
            assert!(pair[0] < pair[1]);
        }
    }

    #[test]
    fn dw_window_size_is_constant() {
        // Every w vector admits exactly 2g-2+s degrees.
        let s = sig(1, &[2, 3]);
        let t = s.log_canonical_degree() as usize;
        let classes = enumerate_invariant_classes(&s, 2, CountMode::WeightType).unwrap();
        let mut per_w = std::collections::BTreeMap::<Vec<u32>, usize>::new();
        for c in &classes {
            if let InvariantClass::DW { w, .. } = c {
                *per_w.entry(w.clone()).or_default() += 1;
            }
        }
        assert_eq!(per_w.len(), 6);
        assert!(per_w.values().all(|&count| count == t));
    }

    #[test]
    fn dw_classes_satisfy_window_invariant() {
        let s = sig(1, &[2, 3]);
        let t = Rat::from_integer(s.log_canonical_degree());
        let classes = enumerate_invariant_classes(&s, 2, CountMode::WeightType).unwrap();
        for c in classes {
            if let InvariantClass::DW { d, w } = c {
                let pardeg = w
                    .iter()
                    .zip(s.orders())
                    .map(|(&k, &m)| Rat::new(i64::from(k), i64::from(m)))
                    .fold(Rat::from_integer(d), |a, b| a + b);
                assert!(pardeg >= Rat::zero() && pardeg < t, "d={d} w={w:?}");
            }
        }
    }

    #[test]
    fn regime_errors() {
        assert!(matches!(
            count_components(&sig(0, &[3, 3]), 2, CountMode::WeightType),
            Err(Error::NoEvenOrders)
        ));
        assert!(matches!(
            count_components(&sig(0, &[2]), 2, CountMode::WeightType),
            Err(Error::EulerDegenerate { value: -1 })
        ));
        assert!(matches!(
            count_components(&sig(2, &[]), 2, CountMode::WeightType),
            Err(Error::NoMarkedPoints)
        ));
        assert!(matches!(
            count_components(&sig(2, &[2]), 1, CountMode::WeightType),
            Err(Error::RankUnsupported { .. })
        ));
        assert!(matches!(
            count_components(&sig(2, &[2, 3]), 2, CountMode::FixedHalf),
            Err(Error::EvenOrdersRequired)
        ));
        assert!(matches!(
            enumerate_invariant_classes(&sig(4, &[2]), 2, CountMode::WeightType),
            Err(Error::EnumerationTooLarge { .. })
        ));
    }

    #[test]
    fn non_reduced_predicate() {
        assert!(is_non_reduced(&[vec![1, 0]], &[2]).unwrap());
        assert!(!is_non_reduced(&[vec![0, 2]], &[4]).unwrap());
        assert!(is_non_reduced(&[vec![1, 1], vec![0, 2]], &[2, 3]).unwrap());
        assert!(is_non_reduced(&[vec![3]], &[2]).is_err());
    }

    #[test]
    fn all_even_specializations() {
        assert_eq!(sp4_all_even_count(2, 1).unwrap(), 52);
        assert_eq!(sp2n_all_even_count(2, 1).unwrap(), 48);
        assert_eq!(sp4_fixed_half_all_even_count(2, 1).unwrap(), 49);
    }
}
