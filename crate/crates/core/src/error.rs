use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Coarse classification of errors, used by front ends to pick exit codes.
///
/// `Validation` means the input data is malformed or violates a structural
/// precondition. `Regime` means the data is well-formed but lies outside the
/// regime in which the requested quantity is defined (for example a
/// signature with no even isotropy order asked for Z2-cohomology ranks).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Validation,
    Regime,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("weight {num}/{den} is outside [0, 1)")]
    WeightOutOfRange { num: i64, den: i64 },

    #[error("zero denominator in rational")]
    ZeroDenominator,

    #[error("weights at a marked point must be strictly increasing")]
    WeightsNotSorted,

    #[error("weight multiplicities must be positive")]
    ZeroMultiplicity,

    #[error("rank must be positive")]
    ZeroRank,

    #[error("multiplicities at point {point} sum to {sum}, expected rank {rank}")]
    MultiplicitySum { point: usize, sum: u32, rank: u32 },

    #[error("bundle rank {found} does not match the declared rank {expected}")]
    RankMismatch { expected: u32, found: u32 },

    #[error("operands are defined over different divisors ({left} vs {right} marked points)")]
    PointCountMismatch { left: usize, right: usize },

    #[error("expected a parabolic line bundle (rank 1), got rank {rank}")]
    NotALine { rank: u32 },

    #[error("candidate sub-data must have 1 <= rank < ambient rank (got {sub} vs {ambient})")]
    SubRankInvalid { sub: u32, ambient: u32 },

    #[error("incidence index {index} outside ambient flag range 1..={steps}")]
    IncidenceOutOfRange { index: usize, steps: usize },

    #[error("incidence indices must be weakly decreasing along the sub-flag")]
    IncidenceNotMonotone,

    #[error("isotropy order {order} is not allowed; orders must be >= 2")]
    InvalidOrder { order: u32 },

    #[error("isotropy exponent {value} out of range for order {order}")]
    IsotropyOutOfRange { value: u32, order: u32 },

    #[error("line V-bundle has {found} isotropy entries, signature has {expected} marked points")]
    SignatureMismatch { expected: usize, found: usize },

    #[error("weight {num}/{den} has denominator not dividing the point order {order}")]
    DenominatorNotDividing { num: i64, den: i64, order: u32 },

    #[error("square-root target must have trivial isotropy")]
    NontrivialTargetIsotropy,

    #[error("outside the formula regime: the signature has no even isotropy order (s0 = 0)")]
    NoEvenOrders,

    #[error("outside the formula regime: 2g-2+s = {value} must be positive")]
    EulerDegenerate { value: i64 },

    #[error("at least one marked point is required (s >= 1)")]
    NoMarkedPoints,

    #[error("rank n = {n} is not supported here (need n {requirement})")]
    RankUnsupported { n: u32, requirement: &'static str },

    #[error("spectral cover is inadmissible: Riemann-Hurwitz genus would be {value}")]
    NegativeSpectralGenus { value: i64 },

    #[error("twist degree must be non-negative, got {value}")]
    NegativeTwistDegree { value: i64 },

    #[error("preimage ordering at point {point} is not a permutation of 0..{n}")]
    BadPreimageOrder { point: usize, n: usize },

    #[error(
        "weight tuple at point {point} has {found} entries, expected the cover degree {expected}"
    )]
    TupleLengthMismatch {
        point: usize,
        expected: usize,
        found: usize,
    },

    #[error("Toledo invariant {toledo} violates the bound {bound} (data inconsistent with semistability)")]
    ToledoBoundViolated { toledo: String, bound: String },

    #[error("triple is not maximal: Toledo invariant {toledo} differs from the bound {bound}")]
    NotMaximal { toledo: String, bound: String },

    #[error("line V-bundle is not a square root of the twist class: its square is (d={got_degree}, k={got_isotropy:?}), expected (d={want_degree}, k=0)")]
    NotSquareRoot {
        got_degree: i64,
        got_isotropy: Vec<u32>,
        want_degree: i64,
    },

    #[error("fixed-half structure requires every isotropy order to be even")]
    EvenOrdersRequired,

    #[error("class enumeration is materialized only for genus <= {max}; use the closed-form count for genus {genus}")]
    EnumerationTooLarge { genus: u32, max: u32 },

    #[error("count overflow in exact arithmetic")]
    CountOverflow,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::NoEvenOrders | Error::EulerDegenerate { .. } => ErrorKind::Regime,
            _ => ErrorKind::Validation,
        }
    }
}
