use num_bigint::BigInt;
use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("quotient has positive free rank {free_rank}; only finite groups are modelled")]
    InfiniteQuotient { free_rank: usize },

    #[error("relation matrix has {found} columns, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid group literal {literal:?}: {reason}")]
    InvalidGroupLiteral { literal: String, reason: String },

    #[error("group order or cyclic factor {value} is too large for exact enumeration")]
    OrderTooLarge { value: String },

    #[error("element does not belong to the group: {0}")]
    NotAnElement(String),

    #[error("ill-defined homomorphism: {0}")]
    IllDefinedHomomorphism(String),

    #[error("cannot compare a profinite descriptor with a discrete torsion descriptor")]
    KindMismatch,

    #[error("malformed descriptor document: {0}")]
    MalformedDescriptor(String),

    #[error("{0} is not a fundamental discriminant of an imaginary quadratic field")]
    NotFundamental(BigInt),

    #[error("forms have different discriminants ({left} and {right})")]
    DiscriminantMismatch { left: BigInt, right: BigInt },

    #[error("discriminant {0} is excluded: the fields Q(i) and Q(sqrt(-2)) have no type here")]
    ExcludedField(BigInt),

    #[error("no split data available for discriminant {0}")]
    SplitDataUnavailable(BigInt),

    #[error("split group {split} does not embed into the class group {class_group} of discriminant {discriminant}")]
    SplitContainment {
        discriminant: BigInt,
        split: String,
        class_group: String,
    },

    #[error("split table line {line}: {reason}")]
    SplitTable { line: usize, reason: String },

    #[error("input line {line}: {reason}")]
    InputLine { line: usize, reason: String },

    #[error("search space of order {size} exceeds the enumeration bound {bound}")]
    BoundExceeded { size: String, bound: u64 },

    #[error("invalid truncation spec: {0}")]
    InvalidSpec(String),

    #[error("{0} is not a prime characteristic")]
    InvalidCharacteristic(u64),

    #[error("cannot read {path}: {reason}")]
    Io { path: String, reason: String },

    #[error("constant field exponent must be at least 1")]
    InvalidFieldExponent,
}

pub type Result<T> = std::result::Result<T, Error>;
