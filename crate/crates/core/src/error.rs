use thiserror::Error;

use crate::decomp::BlockKind;
use crate::hilbert::DeconvolveError;
use crate::levels::CongruenceGroup;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid congruence group: {0}")]
    InvalidGroup(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("weight-1 cusp form dimension unavailable for {0}")]
    Weight1Unavailable(CongruenceGroup),

    #[error("{group} is not supported for the {block} block")]
    UnsupportedGroup { group: CongruenceGroup, block: BlockKind },

    #[error("invalid decomposition of {group} into {block} blocks: {detail}")]
    DecompositionInvalid {
        group: CongruenceGroup,
        block: BlockKind,
        detail: String,
    },

    #[error(transparent)]
    Deconvolve(#[from] DeconvolveError),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("inhomogeneous input: {0}")]
    InhomogeneousInput(String),

    #[error("{0} is not an odd prime")]
    NotPrime(u64),

    #[error("character modulo {p} has 2-power order 2^{m}; need m >= 2")]
    OrderTooSmall { p: u64, m: u32 },

    #[error("q-expansion coefficient {index} is not 2-integral: {detail}")]
    IntegralityFailure { index: usize, detail: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit status for the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Weight1Unavailable(_) => 3,
            Error::DecompositionInvalid { .. } | Error::IntegralityFailure { .. } | Error::Deconvolve(_) => 1,
            _ => 2,
        }
    }
}
