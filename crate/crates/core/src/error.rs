use thiserror::Error;

use crate::block::BlockId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed intersection array {input:?}: {reason}")]
    ParseArray { input: String, reason: String },

    #[error("invalid intersection array: {0}")]
    InvalidArray(String),

    #[error("k{index} = {numerator}/{denominator} is not an integer")]
    NonIntegralMultiplicity {
        index: usize,
        numerator: i64,
        denominator: i64,
    },

    #[error("infeasible intersection array: {0}")]
    InfeasibleArray(String),

    #[error("{what} {value} is out of range")]
    OutOfRange { what: &'static str, value: i64 },

    #[error("malformed block label {0:?}")]
    ParseBlock(String),

    #[error("block {0} is not admissible")]
    InadmissibleBlock(BlockId),

    #[error("block {block}: right-hand side row {row} is negative ({value})")]
    NegativeRhs { block: BlockId, row: usize, value: i64 },

    #[error("vector is not in the null space of the coefficient matrix")]
    NotInNullSpace,

    #[error("block {0}: the linear system has no integer solution")]
    Inconsistent(BlockId),

    #[error("block {0}: no solution satisfies the constraints")]
    Infeasible(BlockId),

    #[error("block {block}: coefficient {coefficient} is not bounded by the constraints")]
    UnboundedLattice {
        block: BlockId,
        coefficient: &'static str,
    },

    #[error("variable {index} is fixed to both {first} and {second}")]
    ConflictingFixedValue { index: u8, first: i64, second: i64 },

    #[error("pattern {pattern} cannot be placed: {reason}")]
    Unrealizable { pattern: String, reason: String },

    #[error("invalid permutation system: {0}")]
    InvalidPermSystem(String),

    #[error("invalid graph operation: {0}")]
    Graph(String),

    #[error("malformed data: {0}")]
    Data(String),
}
