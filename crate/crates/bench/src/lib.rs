//! Shared inputs for the benchmarks.

use moorelab_core::block::canonical_blocks;
use moorelab_core::{BlockId, BlockSystem, ConstraintSet};

/// Built systems and constraint sets for every canonical block.
pub fn canonical_systems() -> Vec<(BlockId, BlockSystem, ConstraintSet)> {
    canonical_blocks()
        .into_iter()
        .map(|b| {
            let (sys, cons) = moorelab_core::solver::moore57_block(b).expect("canonical block builds");
            (b, sys, cons)
        })
        .collect()
}
