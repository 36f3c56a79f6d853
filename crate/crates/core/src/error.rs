use num_bigint::BigInt;
use thiserror::Error;

/// Errors shared across the library.
///
/// `ResourceCap` is kept separate from the domain errors so that callers
/// (notably the CLI) can map it to a distinct exit status.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("invalid semigroup: {0}")]
    InvalidSemigroup(String),

    #[error("negative argument: {0}")]
    NegativeArgument(BigInt),

    #[error("{what} needs {needed} but the cap is {cap}")]
    ResourceCap {
        what: &'static str,
        needed: String,
        cap: String,
    },

    #[error("arithmetic overflow in {0}; value exceeds the fixed-width fast path")]
    Overflow(&'static str),

    #[error("semigroup is symmetric or degenerate: no minimal-relation matrix in this framework ({0})")]
    SymmetricOrDegenerate(String),

    #[error("ambiguous minimal relations: {0} representation combinations satisfy the column identities")]
    Ambiguous(usize),

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),

    #[error("family table corruption in {case}: {detail}")]
    TableCorruption { case: String, detail: String },

    #[error("no family case covers k={k}, n={n}")]
    NoCase { k: u32, n: u64 },

    #[error("unsupported power k={0}; family tables cover k in {{2,3,4}}")]
    UnsupportedPower(u32),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("malformed lattice region: {0}")]
    MalformedRegion(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
