use thiserror::Error;

use crate::family::NodeState;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("radicand mismatch: sqrt({left}) combined with sqrt({right})")]
    RadicandMismatch { left: u64, right: u64 },

    #[error("polynomial division left a nonzero remainder")]
    NonzeroRemainder,

    #[error("divisor must be monic and nonzero")]
    DivisorNotMonic,

    #[error("block of size {0} is too small for the Householder reduction (need at least 2)")]
    BlockTooSmall(usize),

    #[error("invalid block: {0}")]
    InvalidBlock(String),

    #[error("matrix shape mismatch: {0}")]
    Shape(String),

    #[error("coefficient C[{k}][{p}][{q}] kept an irrational part {value}")]
    IrrationalCoefficient { k: usize, p: usize, q: usize, value: String },

    #[error("coefficient C[{k}][{p}][{q}] = {value} is negative")]
    NegativeCoefficient { k: usize, p: usize, q: usize, value: String },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid node: {0}")]
    InvalidNode(String),

    #[error("node is a leaf and has no children")]
    IsLeaf,

    #[error("node is not a leaf")]
    NotALeaf,

    #[error("graph is not {d}-regular: {detail}")]
    NotRegular { d: u64, detail: String },

    #[error("root polynomial already exceeds the bound sqrt({q})")]
    RootExceedsBound { q: u64 },

    #[error("no child of {node} passes the root test sqrt({q}); children: {children}")]
    NoPassingChild { node: NodeState, q: u64, children: String },

    #[error("parent polynomial {parent} differs from the average of its children {average}")]
    AveragingViolated { parent: String, average: String },

    #[error("enumeration of {size} completions exceeds the cap {cap}")]
    TooLarge { size: u128, cap: u128 },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors that can only come from a bug in this crate, never from
    /// bad user input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::NonzeroRemainder
                | Error::IrrationalCoefficient { .. }
                | Error::NegativeCoefficient { .. }
                | Error::NoPassingChild { .. }
                | Error::AveragingViolated { .. }
                | Error::RadicandMismatch { .. }
        )
    }
}
