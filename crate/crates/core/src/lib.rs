//! Triple intersection numbers for the hypothetical degree-57 Moore graph,
//! and a permutation-based existence search for diameter-2 Moore graphs.

pub mod block;
pub mod constraints;
pub mod drg;
pub mod error;
pub mod expect;
pub mod graph;
pub mod grid;
pub mod linalg;
pub mod nullspace;
pub mod perm;
pub mod solver;

pub use block::{BlockId, BlockSystem, VarIndex, Vector27, NUM_VARS};
pub use constraints::{Constraint, ConstraintSet};
pub use drg::{IntersectionArray, IntersectionNumbers, Multiplicities};
pub use error::{Error, Result};
pub use graph::SimpleGraph;
pub use grid::GridModel;
pub use nullspace::{NullBasis, NullCoefficients};
pub use perm::{Perm, PermSystem, SearchBudget, SearchOptions, SearchOutcome};
pub use solver::{EnumerationResult, Solution};
