use thiserror::Error;

use crate::transforms::MinorOp;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a set system needs at least one feasible set")]
    EmptyFamily,
    #[error("the ground set needs at least one element")]
    EmptyGroundSet,
    #[error("element {element} lies outside the ground set 1..={n}")]
    OutOfRange { element: u8, n: u8 },
    #[error("slide endpoints must be distinct (both are {element})")]
    SameElement { element: u8 },
    #[error("{op} at {element} would leave an empty family")]
    WouldBeEmpty { op: MinorOp, element: u8 },
    #[error("ground set of size {n} exceeds the cap of {cap} for this operation")]
    GroundSetTooLarge { n: u8, cap: u8 },
    #[error("relabeling acts on {got} elements but the system has {expected}")]
    SizeMismatch { expected: u8, got: u8 },
    #[error("images do not form a permutation of 1..={n}")]
    InvalidPermutation { n: u8 },
    #[error("matrix entry ({row},{col}) differs from ({col},{row})")]
    AsymmetricMatrix { row: u8, col: u8 },
    #[error("parse error at line {line}, column {col}: {message}")]
    Parse {
        line: usize,
        col: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
