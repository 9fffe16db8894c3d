//! Orbifold signatures, line V-bundle arithmetic and Z2 V-cohomology ranks.
//!
//! A V-surface is determined by a genus and the cyclic isotropy orders
//! `m_i >= 2` at its marked points. A line V-bundle is classified by its
//! background degree `d` together with the isotropy exponents
//! `0 <= k_i < m_i`; its V-degree is `d + sum k_i / m_i` and tensor product
//! adds exponents mod `m_i` with a +1 degree carry per overflow, which keeps
//! the V-degree additive.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::parabolic::{ParabolicBundleData, PointWeights, Rat, Weight, WeightEntry};

/// Genus plus ordered isotropy orders of the marked points.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "SignatureWire", into = "SignatureWire")]
pub struct OrbifoldSignature {
    genus: u32,
    orders: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct SignatureWire {
    genus: u32,
    orders: Vec<u32>,
}

impl TryFrom<SignatureWire> for OrbifoldSignature {
    type Error = Error;
    fn try_from(w: SignatureWire) -> Result<Self> {
        OrbifoldSignature::new(w.genus, w.orders)
    }
}

impl From<OrbifoldSignature> for SignatureWire {
    fn from(s: OrbifoldSignature) -> Self {
        SignatureWire {
            genus: s.genus,
            orders: s.orders,
        }
    }
}

impl OrbifoldSignature {
    /// Orders below 2 are rejected; an unmarked point is simply absent.
    pub fn new(genus: u32, orders: Vec<u32>) -> Result<Self> {
        if let Some(&order) = orders.iter().find(|&&m| m < 2) {
            return Err(Error::InvalidOrder { order });
        }
        Ok(OrbifoldSignature { genus, orders })
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    /// Number of marked points `s`.
    pub fn num_points(&self) -> usize {
        self.orders.len()
    }

    /// Number of even orders, `s0`.
    pub fn num_even(&self) -> usize {
        self.orders.iter().filter(|&&m| m % 2 == 0).count()
    }

    /// Number of odd orders, `s1`.
    pub fn num_odd(&self) -> usize {
        self.num_points() - self.num_even()
    }

    /// Degree of the log-canonical bundle K(D): `2g - 2 + s`.
    pub fn log_canonical_degree(&self) -> i64 {
        2 * i64::from(self.genus) - 2 + self.orders.len() as i64
    }

    /// The class of K(D) in the V-Picard group: background degree
    /// `2g - 2 + s` with trivial isotropy (trivial monodromy at each point).
    pub fn log_canonical_class(&self) -> LineVBundle {
        LineVBundle::new(self.log_canonical_degree(), vec![0; self.num_points()])
    }
}

/// Topological type of a line V-bundle: `(d, k_1, ..., k_s)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct LineVBundle {
    degree: i64,
    isotropy: Vec<u32>,
}

impl LineVBundle {
    pub fn new(degree: i64, isotropy: Vec<u32>) -> Self {
        LineVBundle { degree, isotropy }
    }

    /// The neutral element over a signature with `s` points.
    pub fn trivial(num_points: usize) -> Self {
        LineVBundle {
            degree: 0,
            isotropy: vec![0; num_points],
        }
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn isotropy(&self) -> &[u32] {
        &self.isotropy
    }

    pub fn validate(&self, sig: &OrbifoldSignature) -> Result<()> {
        if self.isotropy.len() != sig.num_points() {
            return Err(Error::SignatureMismatch {
                expected: sig.num_points(),
                found: self.isotropy.len(),
            });
        }
        for (&k, &m) in self.isotropy.iter().zip(sig.orders()) {
            if k >= m {
                return Err(Error::IsotropyOutOfRange { value: k, order: m });
            }
        }
        Ok(())
    }

    /// V-degree `d + sum k_i / m_i`, exact.
    pub fn v_degree(&self, sig: &OrbifoldSignature) -> Result<Rat> {
        self.validate(sig)?;
        let mut total = Rat::from_integer(self.degree);
        for (&k, &m) in self.isotropy.iter().zip(sig.orders()) {
            total += Rat::new(i64::from(k), i64::from(m));
        }
        Ok(total)
    }

    /// Group law: exponents add mod `m_i`, every overflow carries +1 into
    /// the background degree, so V-degrees add exactly.
    pub fn tensor(&self, other: &LineVBundle, sig: &OrbifoldSignature) -> Result<LineVBundle> {
        self.validate(sig)?;
        other.validate(sig)?;
        let mut degree = self.degree + other.degree;
        let isotropy = self
            .isotropy
            .iter()
            .zip(&other.isotropy)
            .zip(sig.orders())
            .map(|((&a, &b), &m)| {
                let sum = a + b;
                if sum >= m {
                    degree += 1;
                    sum - m
                } else {
                    sum
                }
            })
            .collect();
        Ok(LineVBundle { degree, isotropy })
    }

    /// Group inverse: `k_i -> (m_i - k_i) mod m_i` with one -1 degree carry
    /// per nonzero exponent.
    pub fn inverse(&self, sig: &OrbifoldSignature) -> Result<LineVBundle> {
        self.validate(sig)?;
        let mut degree = -self.degree;
        let isotropy = self
            .isotropy
            .iter()
            .zip(sig.orders())
            .map(|(&k, &m)| {
                if k == 0 {
                    0
                } else {
                    degree -= 1;
                    m - k
                }
            })
            .collect();
        Ok(LineVBundle { degree, isotropy })
    }

    /// Integer power under the group law.
    pub fn pow(&self, exponent: i64, sig: &OrbifoldSignature) -> Result<LineVBundle> {
        self.validate(sig)?;
        let base = if exponent < 0 {
            self.inverse(sig)?
        } else {
            self.clone()
        };
        let mut out = LineVBundle::trivial(sig.num_points());
        for _ in 0..exponent.unsigned_abs() {
            out = out.tensor(&base, sig)?;
        }
        Ok(out)
    }

    /// The corresponding parabolic line bundle: underlying degree `d` and
    /// weight `k_i / m_i` at the i-th point.
    pub fn to_parabolic_line(&self, sig: &OrbifoldSignature) -> Result<ParabolicBundleData> {
        self.validate(sig)?;
        let weights = self
            .isotropy
            .iter()
            .zip(sig.orders())
            .map(|(&k, &m)| Weight::new(i64::from(k), i64::from(m)))
            .collect::<Result<Vec<_>>>()?;
        ParabolicBundleData::line(self.degree, weights)
    }
}

/// Euler characteristic `h0 - h1` of a line V-bundle by Riemann-Roch:
/// `1 - g + c1(L) - sum k_i/m_i`, in which the isotropy terms of
/// `c1(L) = d + sum k_i/m_i` cancel, leaving the integer `1 - g + d`.
pub fn euler_characteristic(line: &LineVBundle, sig: &OrbifoldSignature) -> Result<i64> {
    line.validate(sig)?;
    Ok(1 - i64::from(sig.genus()) + line.degree())
}

/// Ranks `(rk H^1, rk H^2)` of the Z2 V-cohomology of the signature:
/// `(2g + s0 - 1, s0)`.
///
/// The formulas presuppose at least one even order; a signature with
/// `s0 = 0` is refused rather than extrapolated.
pub fn z2_cohomology_ranks(sig: &OrbifoldSignature) -> Result<(u32, u32)> {
    let s0 = sig.num_even() as u32;
    if s0 == 0 {
        return Err(Error::NoEvenOrders);
    }
    Ok((2 * sig.genus() + s0 - 1, s0))
}

/// Group cohomology ranks `(h^0, h^1, h^2)` of the cyclic group of order
/// `m` with Z2 coefficients: `h^0 = 1`; `h^1` is the m-torsion of Z2 and
/// `h^2` the quotient Z2/mZ2, both rank 1 iff `m` is even.
pub fn zm_cohomology_z2_ranks(m: u32) -> (u32, u32, u32) {
    let even = u32::from(m.is_multiple_of(2));
    (1, even, even)
}

/// The nine ranks of the two-chart Mayer-Vietoris sequence for a signature,
/// with `chart_sum[i] = rk H^i(V1) + rk H^i(V2)` and
/// `intersection[i] = rk H^i(V1 n V2)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MayerVietorisReport {
    pub total: [u32; 3],
    pub chart_sum: [u32; 3],
    pub intersection: [u32; 3],
    pub alternating_sum: i64,
    pub exact: bool,
}

/// Assembles the Mayer-Vietoris ranks for the cover of the V-surface by the
/// punctured surface and the orbifold disk neighborhoods, and verifies that
/// the alternating sum vanishes.
///
/// Piece ranks: the punctured surface has `(1, 2g+s-1, 0)`, the disjoint
/// circles `(s, s, 0)`, and the s orbifold disks `(s, s0, s0)` by the
/// cyclic group cohomology above.
pub fn mv_alternating_check(sig: &OrbifoldSignature) -> Result<MayerVietorisReport> {
    let (h1, h2) = z2_cohomology_ranks(sig)?;
    let g = sig.genus();
    let s = sig.num_points() as u32;
    let disks: (u32, u32, u32) = sig.orders().iter().fold((0, 0, 0), |acc, &m| {
        let (a, b, c) = zm_cohomology_z2_ranks(m);
        (acc.0 + a, acc.1 + b, acc.2 + c)
    });

    let total = [1, h1, h2];
    let chart_sum = [1 + disks.0, (2 * g + s - 1) + disks.1, disks.2];
    let intersection = [s, s, 0];

    let mut alternating_sum: i64 = 0;
    for i in 0..3 {
        alternating_sum +=
            i64::from(total[i]) - i64::from(chart_sum[i]) + i64::from(intersection[i]);
    }
    Ok(MayerVietorisReport {
        total,
        chart_sum,
        intersection,
        alternating_sum,
        exact: alternating_sum == 0,
    })
}

/// Square roots of a trivial-isotropy target in the V-Picard group.
///
/// `solutions` lists every `(d, k)` with `2 k_i = 0 mod m_i` whose square
/// has the target background degree; each solution stands for a torsor of
/// `2^{2g}` square roots differing by a 2-torsion point of the Jacobian,
/// which is kept symbolic as `jacobian_exponent = 2g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SqrtSolutions {
    pub solutions: Vec<LineVBundle>,
    pub jacobian_exponent: u32,
}

impl SqrtSolutions {
    pub fn isotropy_count(&self) -> usize {
        self.solutions.len()
    }

    /// Total number of square roots, `|solutions| * 2^{2g}`.
    pub fn total(&self) -> Result<u128> {
        if self.jacobian_exponent >= 128 {
            return Err(Error::CountOverflow);
        }
        (self.solutions.len() as u128)
            .checked_mul(1u128 << self.jacobian_exponent)
            .ok_or(Error::CountOverflow)
    }
}

/// Enumerates the square roots of `target` over the signature.
///
/// The target must have trivial isotropy (the K(D)-type case). An exponent
/// `k_i` squares to zero isotropy iff `k_i = 0` or `k_i = m_i / 2` for even
/// `m_i`; the half-order entries each carry +1 into the squared degree, so
/// a candidate vector works iff the target degree minus its number of
/// half-order entries is even. An empty solution list (possible when
/// `s0 = 0` and the target degree is odd) is reported as count 0.
pub fn sqrt_solutions(target: &LineVBundle, sig: &OrbifoldSignature) -> Result<SqrtSolutions> {
    target.validate(sig)?;
    if target.isotropy().iter().any(|&k| k != 0) {
        return Err(Error::NontrivialTargetIsotropy);
    }

    let half_positions: Vec<usize> = sig
        .orders()
        .iter()
        .enumerate()
        .filter(|(_, &m)| m % 2 == 0)
        .map(|(i, _)| i)
        .collect();

    let mut solutions = Vec::new();
    for mask in 0u64..(1u64 << half_positions.len()) {
        let carries = mask.count_ones() as i64;
        let remainder = target.degree() - carries;
        if remainder % 2 != 0 {
            continue;
        }
        let mut isotropy = vec![0u32; sig.num_points()];
        for (bit, &pos) in half_positions.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                isotropy[pos] = sig.orders()[pos] / 2;
            }
        }
        solutions.push(LineVBundle::new(remainder / 2, isotropy));
    }
    solutions.sort_by(|a, b| (a.degree(), a.isotropy()).cmp(&(b.degree(), b.isotropy())));

    Ok(SqrtSolutions {
        solutions,
        jacobian_exponent: 2 * sig.genus(),
    })
}

/// Number of connected components of the V-Picard group: one per isotropy
/// class, `prod m_i`.
pub fn picard_component_count(sig: &OrbifoldSignature) -> Result<u128> {
    sig.orders()
        .iter()
        .try_fold(1u128, |acc, &m| acc.checked_mul(u128::from(m)))
        .ok_or(Error::CountOverflow)
}

/// Collects local isotropy exponents (all of order `m`) at one point into
/// sorted weight-multiplicity form, `k_j -> k_j / m`.
pub fn isotropy_to_weights(exponents: &[u32], m: u32) -> Result<PointWeights> {
    if m < 2 {
        return Err(Error::InvalidOrder { order: m });
    }
    let weights = exponents
        .iter()
        .map(|&k| {
            if k >= m {
                return Err(Error::IsotropyOutOfRange { value: k, order: m });
            }
            Ok((Weight::new(i64::from(k), i64::from(m))?, 1))
        })
        .collect::<Result<Vec<_>>>()?;
    PointWeights::from_multiset(weights)
}

/// Inverse of [`isotropy_to_weights`]: recovers the sorted exponent vector
/// from weights whose denominators divide `m`.
pub fn weights_to_isotropy(point: &PointWeights, m: u32) -> Result<Vec<u32>> {
    if m < 2 {
        return Err(Error::InvalidOrder { order: m });
    }
    let mut out = Vec::with_capacity(point.total_multiplicity() as usize);
    for WeightEntry {
        weight,
        multiplicity,
    } in point.entries()
    {
        if i64::from(m) % weight.denom() != 0 {
            return Err(Error::DenominatorNotDividing {
                num: weight.numer(),
                den: weight.denom(),
                order: m,
            });
        }
        let k = weight.numer() * (i64::from(m) / weight.denom());
        for _ in 0..*multiplicity {
            out.push(k as u32);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(genus: u32, orders: &[u32]) -> OrbifoldSignature {
        OrbifoldSignature::new(genus, orders.to_vec()).unwrap()
    }

    #[test]
    fn order_one_is_rejected() {
        assert!(matches!(
            OrbifoldSignature::new(1, vec![2, 1]),
            Err(Error::InvalidOrder { order: 1 })
        ));
    }

    #[test]
    fn tensor_carry_identity_inverse() {
        let s = sig(0, &[2]);
        let a = LineVBundle::new(0, vec![1]);
        assert_eq!(a.tensor(&a, &s).unwrap(), LineVBundle::new(1, vec![0]));

        let e = LineVBundle::trivial(1);
        assert_eq!(a.tensor(&e, &s).unwrap(), a);

        let inv = a.inverse(&s).unwrap();
        assert_eq!(inv, LineVBundle::new(-1, vec![1]));
        assert_eq!(a.tensor(&inv, &s).unwrap(), e);
    }

    #[test]
    fn v_degree_is_additive() {
        let s = sig(1, &[2, 3, 4]);
        let a = LineVBundle::new(2, vec![1, 2, 3]);
        let b = LineVBundle::new(-1, vec![1, 2, 2]);
        let prod = a.tensor(&b, &s).unwrap();
        assert_eq!(
            prod.v_degree(&s).unwrap(),
            a.v_degree(&s).unwrap() + b.v_degree(&s).unwrap()
        );
    }

    #[test]
    fn pow_matches_repeated_tensor() {
        let s = sig(2, &[4]);
        let a = LineVBundle::new(1, vec![3]);
        let sq = a.tensor(&a, &s).unwrap();
        assert_eq!(a.pow(2, &s).unwrap(), sq);
        assert_eq!(a.pow(0, &s).unwrap(), LineVBundle::trivial(1));
        assert_eq!(
            a.pow(-1, &s).unwrap().tensor(&a, &s).unwrap(),
            LineVBundle::trivial(1)
        );
    }

    #[test]
    fn euler_characteristic_instances() {
        assert_eq!(
            euler_characteristic(&LineVBundle::new(1, vec![1]), &sig(2, &[2])).unwrap(),
            0
        );
        assert_eq!(
            euler_characteristic(&LineVBundle::trivial(0), &sig(3, &[])).unwrap(),
            -2
        );
        assert_eq!(
            euler_characteristic(&LineVBundle::new(2, vec![1, 1]), &sig(0, &[2, 2])).unwrap(),
            3
        );
    }

    #[test]
    fn z2_ranks() {
        assert_eq!(z2_cohomology_ranks(&sig(2, &[2])).unwrap(), (4, 1));
        assert_eq!(z2_cohomology_ranks(&sig(1, &[2, 3])).unwrap(), (2, 1));
        assert!(matches!(
            z2_cohomology_ranks(&sig(1, &[3, 5])),
            Err(Error::NoEvenOrders)
        ));
        // All orders even: (2g+s-1, s).
        assert_eq!(z2_cohomology_ranks(&sig(3, &[2, 4, 2])).unwrap(), (8, 3));
    }

    #[test]
    fn cyclic_group_cohomology() {
        assert_eq!(zm_cohomology_z2_ranks(3), (1, 0, 0));
        assert_eq!(zm_cohomology_z2_ranks(4), (1, 1, 1));
    }

    #[test]
    fn mayer_vietoris_examples() {
        for s in [sig(2, &[2]), sig(0, &[2, 2, 2]), sig(1, &[2, 3])] {
            let report = mv_alternating_check(&s).unwrap();
            assert_eq!(report.alternating_sum, 0, "{s:?}");
            assert!(report.exact);
        }
        let report = mv_alternating_check(&sig(1, &[2, 3])).unwrap();
        assert_eq!(report.total, [1, 2, 1]);
        assert_eq!(report.chart_sum, [3, 4, 1]);
        assert_eq!(report.intersection, [2, 2, 0]);
    }

    #[test]
    fn sqrt_counting() {
        // K(D)-type target over g=2, m=(2): one isotropy solution, 16 total.
        let s = sig(2, &[2]);
        let out = sqrt_solutions(&s.log_canonical_class(), &s).unwrap();
        assert_eq!(out.isotropy_count(), 1);
        assert_eq!(out.solutions[0], LineVBundle::new(1, vec![1]));
        assert_eq!(out.total().unwrap(), 16);

        let s = sig(1, &[2, 2]);
        let out = sqrt_solutions(&LineVBundle::new(2, vec![0, 0]), &s).unwrap();
        assert_eq!(out.isotropy_count(), 2);
        assert_eq!(out.total().unwrap(), 8);

        // Odd order forces k = 0.
        let s = sig(0, &[3]);
        let out = sqrt_solutions(&LineVBundle::trivial(1), &s).unwrap();
        assert_eq!(out.solutions, vec![LineVBundle::trivial(1)]);
        assert_eq!(out.total().unwrap(), 1);

        // No solution: odd degree with no even order.
        let s = sig(1, &[3]);
        let out = sqrt_solutions(&LineVBundle::new(3, vec![0]), &s).unwrap();
        assert_eq!(out.isotropy_count(), 0);
        assert_eq!(out.total().unwrap(), 0);

        assert!(matches!(
            sqrt_solutions(&LineVBundle::new(3, vec![1]), &sig(1, &[3])),
            Err(Error::NontrivialTargetIsotropy)
        ));
    }

    #[test]
    fn picard_components() {
        assert_eq!(picard_component_count(&sig(5, &[2])).unwrap(), 2);
        assert_eq!(picard_component_count(&sig(0, &[])).unwrap(), 1);
        assert_eq!(picard_component_count(&sig(1, &[2, 3, 4])).unwrap(), 24);
    }

    #[test]
    fn isotropy_weight_round_trip() {
        let pw = isotropy_to_weights(&[1, 1], 2).unwrap();
        assert_eq!(pw, PointWeights::from_triples(&[(1, 2, 2)]).unwrap());

        let pw = isotropy_to_weights(&[0, 1, 2], 3).unwrap();
        assert_eq!(
            pw,
            PointWeights::from_triples(&[(0, 1, 1), (1, 3, 1), (2, 3, 1)]).unwrap()
        );
        assert_eq!(weights_to_isotropy(&pw, 3).unwrap(), vec![0, 1, 2]);

        // Denominator-m weights with m = 4: 2/4 reduces to 1/2 but still
        // divides 4.
        let pw = PointWeights::from_triples(&[(1, 2, 1), (3, 4, 2)]).unwrap();
        assert_eq!(weights_to_isotropy(&pw, 4).unwrap(), vec![2, 3, 3]);
        assert!(weights_to_isotropy(&pw, 5).is_err());
    }

    #[test]
    fn line_to_parabolic_degree_agrees() {
        let s = sig(2, &[2, 4]);
        let l = LineVBundle::new(3, vec![1, 3]);
        let p = l.to_parabolic_line(&s).unwrap();
        assert_eq!(p.pardeg(), l.v_degree(&s).unwrap());
    }
}
