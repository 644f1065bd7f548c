//! Block systems: one 27-variable linear system per admissible distance
//! triple `(U, V, W)`.
//!
//! For a fixed triple of vertices `u, v, w` with `U = d(v, w)`,
//! `V = d(u, w)` and `W = d(u, v)`, variable `(i1, i2, i3)` counts the
//! vertices `z` outside `{u, v, w}` with `d(z, u) = i1`, `d(z, v) = i2`,
//! `d(z, w) = i3`. Variables are ordered lexicographically, so `(1,3,3)` is
//! variable 9 and `(3,3,1)` is variable 25.
//!
//! Equations come in three families of nine. Family 1 sums over `i1` with
//! `(i2, i3)` fixed and equals `p(U, i2, i3)` less one if `u` itself has that
//! distance profile; families 2 and 3 do the same for `v` and `w`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::drg::IntersectionNumbers;
use crate::error::{Error, Result};

pub const NUM_VARS: usize = 27;

/// A vector indexed by the 27 block variables in lexicographic order.
pub type Vector27 = [i64; NUM_VARS];

/// The 27x27 zero-one coefficient matrix shared by every block.
pub type CoefficientMatrix = [[i64; NUM_VARS]; NUM_VARS];

/// Distance profile `(i1, i2, i3)` of a variable, each entry in `1..=3`.
pub type Triple = [u8; 3];

/// An ordered distance triple `U = d(v,w)`, `V = d(u,w)`, `W = d(u,v)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockId {
    pub u: u8,
    pub v: u8,
    pub w: u8,
}

impl BlockId {
    pub fn new(u: u8, v: u8, w: u8) -> Result<Self> {
        for d in [u, v, w] {
            if !(1..=3).contains(&d) {
                return Err(Error::OutOfRange {
                    what: "block distance",
                    value: i64::from(d),
                });
            }
        }
        Ok(Self { u, v, w })
    }

    pub fn distances(&self) -> [u8; 3] {
        [self.u, self.v, self.w]
    }

    fn from_distances(d: [u8; 3]) -> Self {
        Self {
            u: d[0],
            v: d[1],
            w: d[2],
        }
    }

    pub fn is_admissible(&self) -> bool {
        is_block_admissible(*self)
    }

    /// The representative of this block's orbit with `U >= V >= W`.
    pub fn canonical(&self) -> Self {
        let mut d = self.distances();
        d.sort_unstable_by(|a, b| b.cmp(a));
        Self::from_distances(d)
    }

    pub fn is_canonical(&self) -> bool {
        self.is_admissible() && self.canonical() == *self
    }

    /// How many of `U, V, W` equal `d`.
    pub fn count_of(&self, d: u8) -> usize {
        self.distances().iter().filter(|&&x| x == d).count()
    }
}

impl fmt::Display for BlockId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.u, self.v, self.w)
    }
}

impl FromStr for BlockId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let digits: Vec<u8> = s
            .trim()
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as u8))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::ParseBlock(s.to_string()))?;
        match digits[..] {
            [u, v, w] => Self::new(u, v, w).map_err(|_| Error::ParseBlock(s.to_string())),
            _ => Err(Error::ParseBlock(s.to_string())),
        }
    }
}

impl Serialize for BlockId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BlockId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A distance triple can be realized by three vertices of a graph of girth
/// at least five: triangle inequality holds and it is not a triangle.
fn triangle_ok(a: u8, b: u8, c: u8) -> bool {
    let max = a.max(b).max(c);
    let sum = a + b + c;
    max <= sum - max && (a, b, c) != (1, 1, 1)
}

pub fn is_block_admissible(block: BlockId) -> bool {
    triangle_ok(block.u, block.v, block.w)
}

/// The eight orbit representatives `211, 221, 222, 321, 322, 331, 332, 333`.
pub fn canonical_blocks() -> [BlockId; 8] {
    [
        (2, 1, 1),
        (2, 2, 1),
        (2, 2, 2),
        (3, 2, 1),
        (3, 2, 2),
        (3, 3, 1),
        (3, 3, 2),
        (3, 3, 3),
    ]
    .map(|(u, v, w)| BlockId { u, v, w })
}

/// Every admissible ordered block, lexicographically.
pub fn admissible_blocks() -> Vec<BlockId> {
    let mut out = Vec::new();
    for u in 1..=3 {
        for v in 1..=3 {
            for w in 1..=3 {
                let b = BlockId { u, v, w };
                if b.is_admissible() {
                    out.push(b);
                }
            }
        }
    }
    out
}

/// Images of `block` under all six relabelings of `u, v, w`.
pub fn orbit(block: BlockId) -> BTreeSet<BlockId> {
    S3.iter()
        .map(|sigma| {
            let d = block.distances();
            BlockId::from_distances([d[sigma[0]], d[sigma[1]], d[sigma[2]]])
        })
        .collect()
}

/// 1-based lexicographic position of a block variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct VarIndex(u8);

impl VarIndex {
    pub fn new(idx: u8) -> Result<Self> {
        if (1..=NUM_VARS as u8).contains(&idx) {
            Ok(Self(idx))
        } else {
            Err(Error::OutOfRange {
                what: "variable index",
                value: i64::from(idx),
            })
        }
    }

    pub fn get(self) -> u8 {
        self.0
    }

    /// 0-based position, for indexing a [`Vector27`].
    pub fn position(self) -> usize {
        usize::from(self.0 - 1)
    }

    pub fn from_position(pos: usize) -> Self {
        assert!(pos < NUM_VARS, "position {pos} out of range");
        Self(pos as u8 + 1)
    }

    pub fn triple(self) -> Triple {
        let p = self.0 - 1;
        [p / 9 + 1, (p / 3) % 3 + 1, p % 3 + 1]
    }
}

impl TryFrom<u8> for VarIndex {
    type Error = Error;
    fn try_from(v: u8) -> Result<Self> {
        Self::new(v)
    }
}

impl From<VarIndex> for u8 {
    fn from(v: VarIndex) -> u8 {
        v.0
    }
}

impl fmt::Display for VarIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub fn var_index(triple: Triple) -> Result<VarIndex> {
    for d in triple {
        if !(1..=3).contains(&d) {
            return Err(Error::OutOfRange {
                what: "triple component",
                value: i64::from(d),
            });
        }
    }
    let [a, b, c] = triple;
    Ok(VarIndex(9 * (a - 1) + 3 * (b - 1) + c))
}

pub fn var_triple(idx: u8) -> Result<Triple> {
    VarIndex::new(idx).map(VarIndex::triple)
}

/// 0-based position of a triple whose entries are known to be in range.
pub(crate) fn pos(i1: u8, i2: u8, i3: u8) -> usize {
    9 * usize::from(i1 - 1) + 3 * usize::from(i2 - 1) + usize::from(i3 - 1)
}

/// Row of the equation in `family` (0, 1 or 2) whose two fixed indices are
/// `(s, t)`.
pub(crate) fn row(family: usize, s: u8, t: u8) -> usize {
    9 * family + 3 * usize::from(s - 1) + usize::from(t - 1)
}

/// `[1 1 1] (x) I (x) I` stacked over `I (x) [1 1 1] (x) I` and
/// `I (x) I (x) [1 1 1]`.
pub fn coefficient_matrix() -> CoefficientMatrix {
    let mut m = [[0i64; NUM_VARS]; NUM_VARS];
    for i1 in 1..=3 {
        for i2 in 1..=3 {
            for i3 in 1..=3 {
                let col = pos(i1, i2, i3);
                m[row(0, i2, i3)][col] = 1;
                m[row(1, i1, i3)][col] = 1;
                m[row(2, i1, i2)][col] = 1;
            }
        }
    }
    m
}

pub fn mul(m: &CoefficientMatrix, x: &Vector27) -> Vector27 {
    let mut out = [0i64; NUM_VARS];
    for (o, r) in out.iter_mut().zip(m) {
        *o = r.iter().zip(x).map(|(a, b)| a * b).sum();
    }
    out
}

fn delta(a: u8, b: u8) -> i64 {
    i64::from(a == b)
}

/// Right-hand sides with the index-0 vertex (`u`, `v` or `w`) removed from
/// each family's count.
pub fn build_rhs(block: BlockId, p: &IntersectionNumbers) -> Result<Vector27> {
    if !block.is_admissible() {
        return Err(Error::InadmissibleBlock(block));
    }
    let BlockId { u, v, w } = block;
    let pz = |z: u8, x: u8, y: u8| p.get(usize::from(z), usize::from(x), usize::from(y));
    let mut rhs = [0i64; NUM_VARS];
    for s in 1..=3u8 {
        for t in 1..=3u8 {
            // z = u: d(u,v) = W, d(u,w) = V
            rhs[row(0, s, t)] = pz(u, s, t) - delta(s, w) * delta(t, v);
            // z = v: d(v,u) = W, d(v,w) = U
            rhs[row(1, s, t)] = pz(v, s, t) - delta(s, w) * delta(t, u);
            // z = w: d(w,u) = V, d(w,v) = U
            rhs[row(2, s, t)] = pz(w, s, t) - delta(s, v) * delta(t, u);
        }
    }
    if let Some((row, &value)) = rhs.iter().enumerate().find(|(_, &x)| x < 0) {
        return Err(Error::NegativeRhs { block, row, value });
    }
    Ok(rhs)
}

/// Variables that must vanish: some distance triangle through `z` fails the
/// triangle inequality or is a triangle, or some distance quadrilateral
/// through `z` is a square.
pub fn forced_zero_variables(block: BlockId) -> BTreeSet<VarIndex> {
    let BlockId { u, v, w } = block;
    let mut out = BTreeSet::new();
    for p in 0..NUM_VARS {
        let idx = VarIndex::from_position(p);
        let [i1, i2, i3] = idx.triple();
        let bad_triangle =
            !triangle_ok(i2, i3, u) || !triangle_ok(i1, i3, v) || !triangle_ok(i1, i2, w);
        let square = [(i1, i2, u, v), (i1, i3, u, w), (i2, i3, v, w)].contains(&(1, 1, 1, 1));
        if bad_triangle || square {
            out.insert(idx);
        }
    }
    out
}

/// The six permutations of `{0, 1, 2}`, identity first.
pub const S3: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// Relabels `u, v, w` by `sigma`: slot `k` of the result takes the pair
/// `(i_{sigma[k]}, D_{sigma[k]})` where `D = (U, V, W)`.
pub fn apply_symmetry(sigma: [usize; 3], block: BlockId, x: &Vector27) -> (BlockId, Vector27) {
    let d = block.distances();
    let image = BlockId::from_distances([d[sigma[0]], d[sigma[1]], d[sigma[2]]]);
    let mut y = [0i64; NUM_VARS];
    for (p, &value) in x.iter().enumerate() {
        let t = VarIndex::from_position(p).triple();
        y[pos(t[sigma[0]], t[sigma[1]], t[sigma[2]])] = value;
    }
    (image, y)
}

/// One block's linear system `M x = rhs` plus its structurally zero variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSystem {
    pub block: BlockId,
    pub matrix: CoefficientMatrix,
    pub rhs: Vector27,
    pub forced_zero: BTreeSet<VarIndex>,
}

impl BlockSystem {
    pub fn build(block: BlockId, p: &IntersectionNumbers) -> Result<Self> {
        Ok(Self {
            block,
            matrix: coefficient_matrix(),
            rhs: build_rhs(block, p)?,
            forced_zero: forced_zero_variables(block),
        })
    }

    /// `M x - rhs`.
    pub fn residual(&self, x: &Vector27) -> Vector27 {
        let mut r = mul(&self.matrix, x);
        for (a, b) in r.iter_mut().zip(&self.rhs) {
            *a -= b;
        }
        r
    }

    pub fn is_solved_by(&self, x: &Vector27) -> bool {
        self.residual(x).iter().all(|&r| r == 0)
    }
}
