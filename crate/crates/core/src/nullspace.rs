//! The rank-8 integer null lattice of the block coefficient matrix.
//!
//! With `e1 = (1, 0, -1)` and `e2 = (0, 1, -1)`, the Kronecker products
//! `X_ijk = e_i (x) e_j (x) e_k` for `i, j, k` in `{1, 2}` form a lattice basis.
//! `X_ijk` is 1 at variable `(i, j, k)` and 0 at the other seven variables with
//! every index in `{1, 2}`, so those eight entries of a null vector are its
//! coordinates.

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::block::{coefficient_matrix, mul, pos, Vector27, NUM_VARS};
use crate::error::{Error, Result};

pub const NULL_DIM: usize = 8;

/// Coefficient names, in basis order `X111, X112, X121, X122, X211, X212,
/// X221, X222`.
pub const COEFFICIENT_NAMES: [&str; NULL_DIM] = ["a", "b", "c", "d", "a'", "b'", "c'", "d'"];

/// Index triples of the basis vectors, in coefficient order.
pub const BASIS_TRIPLES: [[u8; 3]; NULL_DIM] = [
    [1, 1, 1],
    [1, 1, 2],
    [1, 2, 1],
    [1, 2, 2],
    [2, 1, 1],
    [2, 1, 2],
    [2, 2, 1],
    [2, 2, 2],
];

/// Coordinates `(a, b, c, d, a', b', c', d')` of a null-lattice vector.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NullCoefficients(pub [i64; NULL_DIM]);

impl NullCoefficients {
    pub const ZERO: Self = Self([0; NULL_DIM]);

    pub fn unit(k: usize) -> Self {
        let mut n = [0; NULL_DIM];
        n[k] = 1;
        Self(n)
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl Index<usize> for NullCoefficients {
    type Output = i64;
    fn index(&self, k: usize) -> &i64 {
        &self.0[k]
    }
}

impl Add for NullCoefficients {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self(std::array::from_fn(|k| self.0[k] + rhs.0[k]))
    }
}

impl Sub for NullCoefficients {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self(std::array::from_fn(|k| self.0[k] - rhs.0[k]))
    }
}

impl Neg for NullCoefficients {
    type Output = Self;
    fn neg(self) -> Self {
        Self(self.0.map(|v| -v))
    }
}

impl fmt::Display for NullCoefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("\t")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Eight basis vectors; `vectors[k]` is the column of `C` for coefficient `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NullBasis {
    pub vectors: [Vector27; NULL_DIM],
}

impl NullBasis {
    /// Value of the `row`-th entry of `C n`, i.e. the affine part of the
    /// constraint on variable `row + 1`.
    pub fn row(&self, row: usize) -> [i64; NULL_DIM] {
        std::array::from_fn(|k| self.vectors[k][row])
    }

    pub fn expand(&self, n: &NullCoefficients) -> Vector27 {
        let mut out = [0i64; NUM_VARS];
        for (k, v) in self.vectors.iter().enumerate() {
            for (o, e) in out.iter_mut().zip(v) {
                *o += n.0[k] * e;
            }
        }
        out
    }
}

const EPS: [[i64; 3]; 2] = [[1, 0, -1], [0, 1, -1]];

pub fn null_basis() -> NullBasis {
    let vectors = BASIS_TRIPLES.map(|[i, j, k]| {
        let (ei, ej, ek) = (EPS[usize::from(i - 1)], EPS[usize::from(j - 1)], EPS[usize::from(k - 1)]);
        let mut v = [0i64; NUM_VARS];
        for (p, e) in v.iter_mut().enumerate() {
            *e = ei[p / 9] * ej[(p / 3) % 3] * ek[p % 3];
        }
        v
    });
    NullBasis { vectors }
}

/// `C n`.
pub fn expand(n: &NullCoefficients) -> Vector27 {
    null_basis().expand(n)
}

/// The unique `n` with `expand(n) = v`.
pub fn coefficients_of(v: &Vector27) -> Result<NullCoefficients> {
    if mul(&coefficient_matrix(), v).iter().any(|&r| r != 0) {
        return Err(Error::NotInNullSpace);
    }
    let n = NullCoefficients(BASIS_TRIPLES.map(|[i, j, k]| v[pos(i, j, k)]));
    debug_assert_eq!(&expand(&n), v);
    Ok(n)
}
