//! Multiplicities and intersection numbers of diameter-3 distance-regular
//! graphs, computed exactly from the intersection array.
//!
//! The intersection numbers `p(Z, X, Y)` count the vertices at distance `X`
//! from one endpoint and `Y` from the other of a pair at distance `Z`. They are
//! read off the regular representation of the distance algebra: `A_1` acts on
//! the basis `A_0..A_3` by the three-term recurrence
//! `A_1 A_j = b_{j-1} A_{j-1} + a_j A_j + c_{j+1} A_{j+1}`, the distance
//! polynomials give the matrices for `A_2` and `A_3`, and column `Y` of the
//! matrix for `A_X` holds the coordinates of `A_X A_Y`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Diameter handled throughout the crate.
pub const DIAMETER: usize = 3;

type Mat4 = [[i64; 4]; 4];

/// Parameters `(b0, b1, b2; c1, c2, c3)` of a diameter-3 distance-regular graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IntersectionArray {
    b: [i64; 3],
    c: [i64; 3],
}

impl IntersectionArray {
    pub fn new(b: [i64; 3], c: [i64; 3]) -> Result<Self> {
        let arr = Self { b, c };
        arr.validate()?;
        Ok(arr)
    }

    /// `[55, 54, 2; 1, 1, 54]`, the array of the subgraph at distance two from
    /// both ends of an edge in a degree-57 Moore graph.
    pub fn moore57() -> Self {
        Self {
            b: [55, 54, 2],
            c: [1, 1, 54],
        }
    }

    fn validate(&self) -> Result<()> {
        let [b0, b1, b2] = self.b;
        let [c1, c2, c3] = self.c;
        if !(b0 >= b1 && b1 >= b2 && b2 >= 1) {
            return Err(Error::InvalidArray(format!(
                "{self}: need b0 >= b1 >= b2 >= 1"
            )));
        }
        if !(c1 == 1 && c1 <= c2 && c2 <= c3 && c3 <= b0) {
            return Err(Error::InvalidArray(format!(
                "{self}: need 1 = c1 <= c2 <= c3 <= b0"
            )));
        }
        for i in 1..=DIAMETER {
            if self.a(i) < 0 {
                return Err(Error::InvalidArray(format!("{self}: a{i} is negative")));
            }
        }
        Ok(())
    }

    /// `b_i` for `i` in `0..=3`, with `b_3 = 0`.
    pub fn b(&self, i: usize) -> i64 {
        self.b.get(i).copied().unwrap_or(0)
    }

    /// `c_i` for `i` in `0..=3`, with `c_0 = 0`.
    pub fn c(&self, i: usize) -> i64 {
        if i == 0 {
            0
        } else {
            self.c.get(i - 1).copied().unwrap_or(0)
        }
    }

    /// `a_i = b_0 - b_i - c_i`, with `a_0 = 0`.
    pub fn a(&self, i: usize) -> i64 {
        if i == 0 {
            0
        } else {
            self.b[0] - self.b(i) - self.c(i)
        }
    }

    pub fn degree(&self) -> i64 {
        self.b[0]
    }
}

impl Default for IntersectionArray {
    fn default() -> Self {
        Self::moore57()
    }
}

impl fmt::Display for IntersectionArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [b0, b1, b2] = self.b;
        let [c1, c2, c3] = self.c;
        write!(f, "{b0},{b1},{b2};{c1},{c2},{c3}")
    }
}

impl FromStr for IntersectionArray {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let fail = |reason: &str| Error::ParseArray {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let (bs, cs) = s
            .split_once(';')
            .ok_or_else(|| fail("expected \"b0,b1,b2;c1,c2,c3\""))?;
        let parse3 = |part: &str| -> Result<[i64; 3]> {
            let vals = part
                .split(',')
                .map(|t| t.trim().parse::<i64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| fail(&e.to_string()))?;
            <[i64; 3]>::try_from(vals).map_err(|_| fail("expected three values on each side"))
        };
        let b = parse3(bs)?;
        let c = parse3(cs)?;
        Self::new(b, c)
    }
}

impl Serialize for IntersectionArray {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for IntersectionArray {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Vertex counts `k_0..k_3` at each distance from a base vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Multiplicities(pub [i64; 4]);

impl Multiplicities {
    pub fn get(&self, i: usize) -> i64 {
        self.0[i]
    }

    /// Number of vertices of the graph.
    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }
}

/// `k_0 = 1`, `k_{i+1} = k_i b_i / c_{i+1}`.
pub fn multiplicities(arr: &IntersectionArray) -> Result<Multiplicities> {
    let mut k = [1i64; 4];
    for i in 0..DIAMETER {
        let numerator = k[i]
            .checked_mul(arr.b(i))
            .ok_or_else(|| Error::InfeasibleArray(format!("{arr}: k{} overflows", i + 1)))?;
        let denominator = arr.c(i + 1);
        if numerator % denominator != 0 {
            return Err(Error::NonIntegralMultiplicity {
                index: i + 1,
                numerator,
                denominator,
            });
        }
        k[i + 1] = numerator / denominator;
    }
    Ok(Multiplicities(k))
}

/// `p(Z, X, Y)` for `Z, X, Y` in `0..=3`, index 0 included.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntersectionNumbers {
    p: [[[i64; 4]; 4]; 4],
    k: Multiplicities,
}

impl IntersectionNumbers {
    pub fn get(&self, z: usize, x: usize, y: usize) -> i64 {
        self.p[z][x][y]
    }

    /// The 3x3 matrix `p^Z` restricted to `X, Y` in `1..=3`.
    pub fn matrix(&self, z: usize) -> [[i64; 3]; 3] {
        let mut m = [[0; 3]; 3];
        for (x, row) in m.iter_mut().enumerate() {
            for (y, e) in row.iter_mut().enumerate() {
                *e = self.p[z][x + 1][y + 1];
            }
        }
        m
    }

    /// The full 4x4 matrix `p^Z` including the index-0 border.
    pub fn bordered_matrix(&self, z: usize) -> [[i64; 4]; 4] {
        self.p[z]
    }

    pub fn multiplicities(&self) -> Multiplicities {
        self.k
    }

    /// All invariant violations; empty when the numbers are consistent.
    pub fn invariant_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for z in 1..=DIAMETER {
            for x in 0..=DIAMETER {
                let border = i64::from(x == z);
                if self.p[z][x][0] != border {
                    out.push(format!("p({z},{x},0) = {} != {border}", self.p[z][x][0]));
                }
                let row: i64 = self.p[z][x].iter().sum();
                if row != self.k.get(x) {
                    out.push(format!("row sum of p^{z} row {x} is {row}, not k{x} = {}", self.k.get(x)));
                }
                for y in 0..=DIAMETER {
                    let v = self.p[z][x][y];
                    if v < 0 {
                        out.push(format!("p({z},{x},{y}) = {v} is negative"));
                    }
                    if v != self.p[z][y][x] {
                        out.push(format!("p^{z} is not symmetric at ({x},{y})"));
                    }
                    if (x.abs_diff(y) > z || x + y < z) && v != 0 {
                        out.push(format!("p({z},{x},{y}) = {v} violates the triangle inequality"));
                    }
                }
            }
        }
        out
    }
}

fn mat_mul(a: &Mat4, b: &Mat4) -> Option<Mat4> {
    let mut out = [[0i64; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            let mut acc = 0i64;
            for l in 0..4 {
                acc = acc.checked_add(a[i][l].checked_mul(b[l][j])?)?;
            }
            out[i][j] = acc;
        }
    }
    Some(out)
}

/// Exact intersection numbers for `arr`, checked against every invariant of
/// [`IntersectionNumbers`] before they are returned.
pub fn intersection_numbers(arr: &IntersectionArray) -> Result<IntersectionNumbers> {
    let k = multiplicities(arr)?;
    let infeasible = |msg: String| Error::InfeasibleArray(format!("{arr}: {msg}"));

    let mut a1: Mat4 = [[0; 4]; 4];
    for j in 0..=DIAMETER {
        if j > 0 {
            a1[j - 1][j] = arr.b(j - 1);
        }
        a1[j][j] = arr.a(j);
        if j < DIAMETER {
            a1[j + 1][j] = arr.c(j + 1);
        }
    }

    let mut identity: Mat4 = [[0; 4]; 4];
    for (i, row) in identity.iter_mut().enumerate() {
        row[i] = 1;
    }
    let mut reps: Vec<Mat4> = vec![identity, a1];
    for i in 1..DIAMETER {
        let prod = mat_mul(&a1, &reps[i]).ok_or_else(|| infeasible("overflow".into()))?;
        let divisor = arr.c(i + 1);
        let mut next = [[0; 4]; 4];
        for r in 0..4 {
            for s in 0..4 {
                let num = prod[r][s] - arr.a(i) * reps[i][r][s] - arr.b(i - 1) * reps[i - 1][r][s];
                if num % divisor != 0 {
                    return Err(infeasible(format!(
                        "distance-{} polynomial has non-integral entry {num}/{divisor}",
                        i + 1
                    )));
                }
                next[r][s] = num / divisor;
            }
        }
        reps.push(next);
    }

    // column Y of rep(X) is A_X A_Y, so p^Z_{XY} = rep(X)[Z][Y]
    let mut p = [[[0i64; 4]; 4]; 4];
    for (x, rep) in reps.iter().enumerate() {
        for z in 0..=DIAMETER {
            for y in 0..=DIAMETER {
                p[z][x][y] = rep[z][y];
            }
        }
    }

    let numbers = IntersectionNumbers { p, k };
    let violations = numbers.invariant_violations();
    if let Some(first) = violations.first() {
        return Err(infeasible(first.clone()));
    }
    Ok(numbers)
}

/// Externally supplied `p^1, p^2, p^3` matrices (indices `1..=3`) to compare
/// against computed values.
pub type ReferenceMatrices = [[[i64; 3]; 3]; 3];

/// An entry where a reference matrix disagrees with the computed numbers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReferenceMismatch {
    pub distance: usize,
    pub row: usize,
    pub col: usize,
    pub reference: i64,
    pub computed: i64,
    /// The reference entry differs from its own transpose entry.
    pub breaks_symmetry: bool,
    /// The reference row no longer sums to `k_row`.
    pub breaks_row_sum: bool,
}

impl ReferenceMismatch {
    /// Short stable name for scripting and test output.
    pub fn code(&self) -> &'static str {
        if self.breaks_symmetry {
            "asymmetric-reference-entry"
        } else {
            "reference-entry-mismatch"
        }
    }
}

impl fmt::Display for ReferenceMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: p^{} entry ({},{}) reference {} but computed {}",
            self.code(),
            self.distance,
            self.row,
            self.col,
            self.reference,
            self.computed
        )?;
        if self.breaks_symmetry {
            write!(f, "; reference is not symmetric there")?;
        }
        if self.breaks_row_sum {
            write!(f, "; reference row {} does not sum to k{}", self.row, self.row)?;
        }
        Ok(())
    }
}

pub fn compare_with_reference(
    numbers: &IntersectionNumbers,
    reference: &ReferenceMatrices,
) -> Vec<ReferenceMismatch> {
    let k = numbers.multiplicities();
    let mut out = Vec::new();
    for z in 1..=DIAMETER {
        let m = &reference[z - 1];
        for x in 1..=DIAMETER {
            for y in 1..=DIAMETER {
                let reference = m[x - 1][y - 1];
                let computed = numbers.get(z, x, y);
                if reference == computed {
                    continue;
                }
                let row_sum: i64 = numbers.get(z, x, 0) + m[x - 1].iter().sum::<i64>();
                out.push(ReferenceMismatch {
                    distance: z,
                    row: x,
                    col: y,
                    reference,
                    computed,
                    breaks_symmetry: reference != m[y - 1][x - 1],
                    breaks_row_sum: row_sum != k.get(x),
                });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moore57_multiplicities() {
        let k = multiplicities(&IntersectionArray::moore57()).unwrap();
        assert_eq!(k.0, [1, 55, 2970, 110]);
        assert_eq!(k.total(), 56 * 56);
    }

    #[test]
    fn cycle_multiplicities() {
        let c7: IntersectionArray = "2,1,1;1,1,1".parse().unwrap();
        assert_eq!(multiplicities(&c7).unwrap().0, [1, 2, 2, 2]);
        let c6: IntersectionArray = "2,1,1;1,1,2".parse().unwrap();
        assert_eq!(multiplicities(&c6).unwrap().0, [1, 2, 2, 1]);
    }

    #[test]
    fn non_integral_multiplicity() {
        // k3 = 3 * 1 / 2
        let arr = IntersectionArray::new([3, 2, 1], [1, 2, 2]).unwrap();
        let err = multiplicities(&arr).unwrap_err();
        assert!(matches!(err, Error::NonIntegralMultiplicity { index: 3, .. }), "{err}");
    }

    #[test]
    fn moore57_matrices() {
        let p = intersection_numbers(&IntersectionArray::moore57()).unwrap();
        assert_eq!(p.matrix(1), [[0, 54, 0], [54, 2808, 108], [0, 108, 2]]);
        assert_eq!(p.matrix(2), [[1, 52, 2], [52, 2811, 106], [2, 106, 2]]);
        assert_eq!(p.matrix(3), [[0, 54, 1], [54, 2862, 54], [1, 54, 54]]);
        assert!(p.invariant_violations().is_empty());
    }

    #[test]
    fn seeds_from_the_array() {
        let arr = IntersectionArray::moore57();
        let p = intersection_numbers(&arr).unwrap();
        for i in 1..=3 {
            assert_eq!(p.get(i, 1, i - 1), arr.c(i));
            assert_eq!(p.get(i, 1, i), arr.a(i));
            if i < 3 {
                assert_eq!(p.get(i, 1, i + 1), arr.b(i));
            }
        }
    }

    #[test]
    fn reference_mismatch_is_named() {
        let p = intersection_numbers(&IntersectionArray::moore57()).unwrap();
        let mut reference = [p.matrix(1), p.matrix(2), p.matrix(3)];
        reference[1][1][0] = 54;
        let diffs = compare_with_reference(&p, &reference);
        assert_eq!(diffs.len(), 1);
        let d = &diffs[0];
        assert_eq!((d.distance, d.row, d.col, d.reference, d.computed), (2, 2, 1, 54, 52));
        assert!(d.breaks_symmetry && d.breaks_row_sum);
        assert_eq!(d.code(), "asymmetric-reference-entry");
    }

    #[test]
    fn parse_round_trip_and_errors() {
        let arr: IntersectionArray = " 55, 54 ,2 ; 1,1, 54 ".parse().unwrap();
        assert_eq!(arr, IntersectionArray::moore57());
        assert_eq!(arr.to_string(), "55,54,2;1,1,54");
        assert!(matches!("55,54,2".parse::<IntersectionArray>(), Err(Error::ParseArray { .. })));
        assert!(matches!("55,54;1,1,54".parse::<IntersectionArray>(), Err(Error::ParseArray { .. })));
        assert!(matches!("5,x,2;1,1,5".parse::<IntersectionArray>(), Err(Error::ParseArray { .. })));
        assert!(matches!("2,3,1;1,1,1".parse::<IntersectionArray>(), Err(Error::InvalidArray(_))));
        assert!(matches!("3,2,1;2,2,2".parse::<IntersectionArray>(), Err(Error::InvalidArray(_))));
    }
}
