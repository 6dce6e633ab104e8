//! Error type shared by every analysis in the crate.

use num_bigint::BigUint;
use thiserror::Error;

/// Everything that can go wrong when building groups, bundles or cover invariants.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed cycle notation at byte {position}: {message}")]
    MalformedCycle { position: usize, message: String },
    #[error("label {label} is outside 1..={degree}")]
    LabelOutOfRange { label: u64, degree: usize },
    #[error("label {0} appears more than once")]
    DuplicateLabel(u64),
    #[error("image list is not a bijection: {0}")]
    NotABijection(String),
    #[error("permutation degrees differ: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("a permutation group needs at least one generator")]
    NoGenerators,
    #[error("degree {degree} exceeds the configured cap {cap}")]
    DegreeTooLarge { degree: usize, cap: usize },
    #[error("group order {order} exceeds the enumeration cap {cap}")]
    OrderExceedsCap { order: BigUint, cap: u64 },
    #[error("invalid degree {degree}: need at least {min}")]
    InvalidDegree { degree: u64, min: u64 },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field size {q} exceeds the configured cap {cap}")]
    CapExceeded { q: u64, cap: u64 },
    #[error("group is intransitive ({orbits} orbits on points)")]
    IntransitiveGroup { orbits: usize },
    #[error("character sum and pair-orbit count disagree: sum {character_sum}, 2|G| {twice_order}, pair orbits {pair_orbits}")]
    OracleDisagreement {
        character_sum: u64,
        twice_order: u64,
        pair_orbits: usize,
    },
    #[error("no cover with r={r}, g={g}, h={h}: branch degree would be {b}")]
    NoSuchCover { r: u64, g: u64, h: u64, b: i128 },
    #[error("degree-1 cover: the Tschirnhausen bundle has rank 0")]
    DegenerateRank,
    #[error("factorization {r1}·{r2} is trivial")]
    TrivialFactorization { r1: u64, r2: u64 },
    #[error("splitting types have ranks {left} and {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("neither splitting type is perfectly balanced")]
    NeitherPerfectlyBalanced,
    #[error("a splitting type needs at least one entry")]
    EmptySplitting,
    #[error("a formal bundle needs at least one summand of positive rank")]
    EmptyBundle,
    #[error("invalid sheet pair ({q}, {q_prime}) for degree {r}")]
    InvalidPair { r: u64, q: u64, q_prime: u64 },
    #[error("r={r}, g={g}, h={h} gives an unbranched cover; use the étale criterion")]
    EmptyHurwitzSpace { r: u64, g: u64, h: u64 },
    #[error("characteristic {p} does not exceed the degree {r}")]
    CharacteristicTooSmall { p: u64, r: u64 },
    #[error("schema violation at {path}: {message}")]
    SchemaViolation { path: String, message: String },
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::MalformedCycle { .. } => "MalformedCycle",
            Error::LabelOutOfRange { .. } => "LabelOutOfRange",
            Error::DuplicateLabel(_) => "DuplicateLabel",
            Error::NotABijection(_) => "NotABijection",
            Error::DegreeMismatch { .. } => "DegreeMismatch",
            Error::NoGenerators => "NoGenerators",
            Error::DegreeTooLarge { .. } => "DegreeTooLarge",
            Error::OrderExceedsCap { .. } => "OrderExceedsCap",
            Error::InvalidDegree { .. } => "InvalidDegree",
            Error::NotPrimePower(_) => "NotPrimePower",
            Error::CapExceeded { .. } => "CapExceeded",
            Error::IntransitiveGroup { .. } => "IntransitiveGroup",
            Error::OracleDisagreement { .. } => "OracleDisagreement",
            Error::NoSuchCover { .. } => "NoSuchCover",
            Error::DegenerateRank => "DegenerateRank",
            Error::TrivialFactorization { .. } => "TrivialFactorization",
            Error::RankMismatch { .. } => "RankMismatch",
            Error::NeitherPerfectlyBalanced => "NeitherPerfectlyBalanced",
            Error::EmptySplitting => "EmptySplitting",
            Error::EmptyBundle => "EmptyBundle",
            Error::InvalidPair { .. } => "InvalidPair",
            Error::EmptyHurwitzSpace { .. } => "EmptyHurwitzSpace",
            Error::CharacteristicTooSmall { .. } => "CharacteristicTooSmall",
            Error::SchemaViolation { .. } => "SchemaViolation",
            Error::Overflow(_) => "Overflow",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
