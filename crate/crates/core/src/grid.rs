//! Exhaustive checks on the rook's-graph model of the distance-3 graph.
//!
//! Two distinct vertices of an `n x n` grid are line-mates when they share a
//! row or a column. In the degree-57 instance the distance-3 graph is this
//! relation with `n = 56`, so pairs at distance 3 are exactly the line-mates.

use serde::Serialize;

use crate::block::BlockId;
use crate::error::{Error, Result};

/// A grid vertex `(row, column)`, both 1-based.
pub type GridVertex = (usize, usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GridModel {
    pub n: usize,
}

impl GridModel {
    /// Smallest grid the lemma checks use.
    pub const MIN_SIZE: usize = 4;

    pub fn new(n: usize) -> Result<Self> {
        if n < Self::MIN_SIZE {
            return Err(Error::OutOfRange {
                what: "grid size",
                value: n as i64,
            });
        }
        Ok(Self { n })
    }

    pub fn vertices(&self) -> impl Iterator<Item = GridVertex> + '_ {
        (1..=self.n).flat_map(move |r| (1..=self.n).map(move |c| (r, c)))
    }

    pub fn is_linemate(&self, a: GridVertex, b: GridVertex) -> bool {
        a != b && (a.0 == b.0 || a.1 == b.1)
    }

    pub fn linemates(&self, a: GridVertex) -> usize {
        self.vertices().filter(|&z| self.is_linemate(a, z)).count()
    }

    /// Places `u, v, w` so that each pair shares a grid line exactly when the
    /// matching entry of `pattern` is 3 (`U` for `v,w`, `V` for `u,w`, `W` for
    /// `u,v`). Entries must be 2 or 3.
    pub fn place_pattern(&self, pattern: BlockId) -> Result<(GridVertex, GridVertex, GridVertex)> {
        let fail = |reason: &str| Error::Unrealizable {
            pattern: pattern.to_string(),
            reason: reason.to_string(),
        };
        if pattern.distances().iter().any(|&d| d != 2 && d != 3) {
            return Err(fail("entries must be 2 (off-line) or 3 (on a common line)"));
        }
        let [vw, uw, uv] = pattern.distances().map(|d| d == 3);
        let placed = match (vw, uw, uv) {
            (true, true, true) => ((1, 1), (1, 2), (1, 3)),
            (false, false, false) => ((1, 1), (2, 2), (3, 3)),
            // one collinear pair on row 1, the third vertex off both its columns
            (true, false, false) => ((2, 3), (1, 1), (1, 2)),
            (false, true, false) => ((1, 1), (2, 3), (1, 2)),
            (false, false, true) => ((1, 1), (1, 2), (2, 3)),
            // two collinear pairs meeting at the shared vertex, a corner
            (true, true, false) => ((2, 1), (1, 2), (1, 1)),
            (true, false, true) => ((2, 1), (1, 1), (1, 2)),
            (false, true, true) => ((1, 1), (1, 2), (2, 1)),
        };
        let (u, v, w) = placed;
        debug_assert_eq!(self.is_linemate(v, w), vw);
        debug_assert_eq!(self.is_linemate(u, w), uw);
        debug_assert_eq!(self.is_linemate(u, v), uv);
        Ok(placed)
    }

    /// Vertices outside `{u, v, w}` sharing a line with each of them.
    pub fn common_linemates(&self, u: GridVertex, v: GridVertex, w: GridVertex) -> usize {
        self.vertices()
            .filter(|&z| z != u && z != v && z != w)
            .filter(|&z| self.is_linemate(z, u) && self.is_linemate(z, v) && self.is_linemate(z, w))
            .count()
    }

    /// Vertices outside `{u, v}` sharing a line with both.
    pub fn lemma3b_candidates(&self, u: GridVertex, v: GridVertex) -> usize {
        self.vertices()
            .filter(|&z| z != u && z != v)
            .filter(|&z| self.is_linemate(z, u) && self.is_linemate(z, v))
            .count()
    }

    /// For `v, w` on a common line `L` and `u` off it: the vertices of `L`
    /// other than `v, w` that are not line-mates of `u`. The neighbour of `u`
    /// that the fixed-value constraint counts must be one of these; the model
    /// cannot say which, since it carries no adjacency.
    pub fn lemma3a_candidates(&self, u: GridVertex, v: GridVertex, w: GridVertex) -> usize {
        self.vertices()
            .filter(|&z| z != u && z != v && z != w)
            .filter(|&z| self.is_linemate(z, v) && self.is_linemate(z, w) && !self.is_linemate(z, u))
            .count()
    }

    /// Every row meets every column in exactly one vertex.
    pub fn lines_meet_once(&self) -> bool {
        (1..=self.n).all(|r| {
            (1..=self.n).all(|c| self.vertices().filter(|&(vr, vc)| vr == r && vc == c).count() == 1)
        })
    }
}

/// Expected value of `x(3,3,3)` on an `n x n` grid for a pattern with
/// `threes` entries equal to 3.
pub fn lemma2_expected(threes: usize, n: usize) -> i64 {
    match threes {
        1 => 1,
        3 => n as i64 - 3,
        _ => 0,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PatternCount {
    pub pattern: BlockId,
    pub n: usize,
    pub count: usize,
    pub expected: i64,
}

impl PatternCount {
    pub fn matches(&self) -> bool {
        self.count as i64 == self.expected
    }
}

/// Common line-mate counts for all eight patterns over `{2, 3}`.
pub fn lemma2_counts(grid: &GridModel) -> Result<Vec<PatternCount>> {
    let mut out = Vec::new();
    for u in [2, 3] {
        for v in [2, 3] {
            for w in [2, 3] {
                let pattern = BlockId::new(u, v, w)?;
                let (a, b, c) = grid.place_pattern(pattern)?;
                out.push(PatternCount {
                    pattern,
                    n: grid.n,
                    count: grid.common_linemates(a, b, c),
                    expected: lemma2_expected(pattern.count_of(3), grid.n),
                });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(s: &str) -> BlockId {
        s.parse().unwrap()
    }

    #[test]
    fn rook_degree() {
        for n in 4..=8 {
            let g = GridModel::new(n).unwrap();
            assert!(g.vertices().all(|v| g.linemates(v) == 2 * (n - 1)));
        }
    }

    #[test]
    fn placements_realize_patterns() {
        let g = GridModel::new(6).unwrap();
        for pattern in ["333", "332", "323", "233", "322", "232", "223", "222"] {
            let p = b(pattern);
            let (u, v, w) = g.place_pattern(p).unwrap();
            assert_eq!(g.is_linemate(v, w), p.u == 3, "{pattern}");
            assert_eq!(g.is_linemate(u, w), p.v == 3, "{pattern}");
            assert_eq!(g.is_linemate(u, v), p.w == 3, "{pattern}");
        }
        assert!(matches!(g.place_pattern(b("321")), Err(Error::Unrealizable { .. })));
    }

    #[test]
    fn lemma2_at_56() {
        let g = GridModel::new(56).unwrap();
        let count = |s: &str| {
            let (u, v, w) = g.place_pattern(b(s)).unwrap();
            g.common_linemates(u, v, w)
        };
        assert_eq!(count("333"), 53);
        assert_eq!(count("332"), 0);
        assert_eq!(count("322"), 1);
        assert_eq!(count("222"), 0);
    }

    #[test]
    fn lemma3b_counts() {
        let g = GridModel::new(56).unwrap();
        assert_eq!(g.lemma3b_candidates((1, 1), (2, 2)), 2);
        let g5 = GridModel::new(5).unwrap();
        assert_eq!(g5.lemma3b_candidates((1, 1), (3, 4)), 2);
        let g6 = GridModel::new(6).unwrap();
        assert_eq!(g6.lemma3b_candidates((1, 1), (1, 4)), 4);
    }

    #[test]
    fn lemma3a_partial() {
        let g = GridModel::new(7).unwrap();
        let (u, v, w) = g.place_pattern(b("322")).unwrap();
        assert_eq!(g.lemma3a_candidates(u, v, w), 7 - 3);
    }

    #[test]
    fn too_small_grid() {
        assert!(GridModel::new(3).is_err());
    }
}
