//! Per-block constraint sets beyond the linear equations.
//!
//! Two families of constraints come from the grid structure of the
//! distance-3 graph (a rook's graph on an `n x n` grid, `n = 56` for the
//! degree-57 instance): the value of variable `(3,3,3)` is fixed in every
//! block, and two blocks carry extra sporadic constraints.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::block::{forced_zero_variables, var_index, BlockId, VarIndex, NUM_VARS};
use crate::error::{Error, Result};

/// Grid size for the degree-57 instance.
pub const MOORE57_GRID: i64 = 56;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Constraint {
    FixedValue { index: VarIndex, value: i64 },
    UpperBound { index: VarIndex, value: i64 },
    NonNegative { index: VarIndex },
}

impl Constraint {
    pub fn index(&self) -> VarIndex {
        match *self {
            Self::FixedValue { index, .. }
            | Self::UpperBound { index, .. }
            | Self::NonNegative { index } => index,
        }
    }

    pub fn is_satisfied_by(&self, value: i64) -> bool {
        match *self {
            Self::FixedValue { value: v, .. } => value == v,
            Self::UpperBound { value: v, .. } => value <= v,
            Self::NonNegative { .. } => value >= 0,
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::FixedValue { index, value } => write!(f, "x({index}) = {value}"),
            Self::UpperBound { index, value } => write!(f, "x({index}) <= {value}"),
            Self::NonNegative { index } => write!(f, "x({index}) >= 0"),
        }
    }
}

/// Lower and optional upper bound on one variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub lo: Option<i64>,
    pub hi: Option<i64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ConstraintSet {
    constraints: Vec<Constraint>,
}

impl ConstraintSet {
    pub fn new(constraints: Vec<Constraint>) -> Result<Self> {
        let mut set = Self::default();
        for c in constraints {
            set.push(c)?;
        }
        Ok(set)
    }

    /// Adds `c`; an identical duplicate is dropped, and a second fixed value
    /// for the same variable is rejected.
    pub fn push(&mut self, c: Constraint) -> Result<()> {
        if let Constraint::FixedValue { index, value } = c {
            if let Some(&Constraint::FixedValue { value: first, .. }) = self
                .constraints
                .iter()
                .find(|k| matches!(k, Constraint::FixedValue { index: i, .. } if *i == index))
            {
                if first != value {
                    return Err(Error::ConflictingFixedValue {
                        index: index.get(),
                        first,
                        second: value,
                    });
                }
                return Ok(());
            }
        }
        if !self.constraints.contains(&c) {
            self.constraints.push(c);
        }
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = &Constraint> {
        self.constraints.iter()
    }

    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    pub fn contains(&self, c: &Constraint) -> bool {
        self.constraints.contains(c)
    }

    pub fn fixed_values(&self) -> BTreeMap<VarIndex, i64> {
        self.constraints
            .iter()
            .filter_map(|c| match *c {
                Constraint::FixedValue { index, value } => Some((index, value)),
                _ => None,
            })
            .collect()
    }

    /// Tightest interval per variable implied by the set.
    pub fn bounds(&self) -> [Bounds; NUM_VARS] {
        let mut out = [Bounds { lo: None, hi: None }; NUM_VARS];
        let raise = |slot: &mut Option<i64>, v: i64| *slot = Some(slot.map_or(v, |s| s.max(v)));
        let lower = |slot: &mut Option<i64>, v: i64| *slot = Some(slot.map_or(v, |s| s.min(v)));
        for c in &self.constraints {
            let b = &mut out[c.index().position()];
            match *c {
                Constraint::FixedValue { value, .. } => {
                    raise(&mut b.lo, value);
                    lower(&mut b.hi, value);
                }
                Constraint::UpperBound { value, .. } => lower(&mut b.hi, value),
                Constraint::NonNegative { .. } => raise(&mut b.lo, 0),
            }
        }
        out
    }
}

impl<'a> IntoIterator for &'a ConstraintSet {
    type Item = &'a Constraint;
    type IntoIter = std::slice::Iter<'a, Constraint>;
    fn into_iter(self) -> Self::IntoIter {
        self.constraints.iter()
    }
}

/// Value of variable `(3,3,3)` on an `n x n` grid: the number of vertices
/// sharing a grid line with each of `u, v, w`.
pub fn lemma2_value_for_grid(block: BlockId, n: i64) -> i64 {
    match block.count_of(3) {
        1 => 1,
        3 => n - 3,
        _ => 0,
    }
}

/// Fixed value of variable 27 for the degree-57 instance.
pub fn lemma2_value(block: BlockId) -> i64 {
    lemma2_value_for_grid(block, MOORE57_GRID)
}

fn idx(t: [u8; 3]) -> VarIndex {
    var_index(t).expect("literal triple in range")
}

/// Sporadic constraints: `x(1,3,3) = 1` in block 322, and the six variables
/// with two 3s are at most 2 in block 222.
pub fn lemma3_constraints(block: BlockId) -> Vec<Constraint> {
    match block.distances() {
        [3, 2, 2] => vec![Constraint::FixedValue {
            index: idx([1, 3, 3]),
            value: 1,
        }],
        [2, 2, 2] => [[1, 3, 3], [2, 3, 3], [3, 1, 3], [3, 2, 3], [3, 3, 1], [3, 3, 2]]
            .into_iter()
            .map(|t| Constraint::UpperBound {
                index: idx(t),
                value: 2,
            })
            .collect(),
        _ => Vec::new(),
    }
}

/// Non-negativity everywhere, forced zeros, the fixed `(3,3,3)` value and
/// the sporadic constraints.
pub fn assemble(block: BlockId) -> ConstraintSet {
    assemble_for_grid(block, MOORE57_GRID)
}

pub fn assemble_for_grid(block: BlockId, n: i64) -> ConstraintSet {
    let mut set = ConstraintSet::default();
    let mut add = |c| {
        set.push(c)
            .unwrap_or_else(|e| panic!("block {block}: inconsistent built-in constraints: {e}"))
    };
    for p in 0..NUM_VARS {
        add(Constraint::NonNegative {
            index: VarIndex::from_position(p),
        });
    }
    for index in forced_zero_variables(block) {
        add(Constraint::FixedValue { index, value: 0 });
    }
    add(Constraint::FixedValue {
        index: idx([3, 3, 3]),
        value: lemma2_value_for_grid(block, n),
    });
    for c in lemma3_constraints(block) {
        add(c);
    }
    set
}
