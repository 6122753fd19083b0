use thiserror::Error;

use crate::ring::RingSpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring {0} is not a field")]
    NotAField(RingSpec),

    #[error("ring {0} is not euclidean")]
    NotEuclidean(RingSpec),

    #[error("operation `{op}` is not supported over {ring}")]
    UnsupportedRing { ring: RingSpec, op: &'static str },

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(RingSpec, RingSpec),

    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),

    #[error("cannot compose relations: first target differs from second source")]
    ChainMismatch,

    #[error("certificate does not verify")]
    UnverifiedCertificate,

    #[error("invalid entry: {0}")]
    InvalidEntry(String),

    #[error("index {index} out of range (0..{len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("unsupported ring homomorphism {from} -> {to}")]
    UnsupportedHom { from: RingSpec, to: RingSpec },

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("scale cap exceeded for {what}: {size} > {cap}")]
    ScaleCap { what: &'static str, size: u128, cap: u128 },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
