//! Small exact-integer matrix helpers.

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
///
/// Entries are widened to `i128`; every intermediate value is a minor of the
/// input, so this is exact for the small dense matrices used here.
pub fn rank<R: AsRef<[i64]>>(rows: &[R]) -> usize {
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.as_ref().iter().map(|&v| i128::from(v)).collect())
        .collect();
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev_pivot: i128 = 1;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(pivot_row) = (rank..nrows).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot_row);
        let pivot = m[rank][col];
        for r in rank + 1..nrows {
            let factor = m[r][col];
            for c in 0..ncols {
                m[r][c] = (pivot * m[r][c] - factor * m[rank][c]) / prev_pivot;
            }
        }
        prev_pivot = pivot;
        rank += 1;
    }
    rank
}

/// `m * x` for a row-major matrix.
pub fn mat_vec<R: AsRef<[i64]>>(m: &[R], x: &[i64]) -> Vec<i64> {
    m.iter()
        .map(|row| row.as_ref().iter().zip(x).map(|(a, b)| a * b).sum())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(rank(&[[1, 2], [2, 4]]), 1);
        assert_eq!(rank(&[[0, 1], [1, 0]]), 2);
        assert_eq!(rank(&[[0i64; 3]; 2]), 0);
        assert_eq!(rank(&[[1, 2, 3], [4, 5, 6], [7, 8, 9]]), 2);
        assert_eq!(rank(&[[2, 0, 0], [0, 3, 0], [0, 0, 5]]), 3);
        let empty: [[i64; 0]; 0] = [];
        assert_eq!(rank(&empty), 0);
    }

    #[test]
    fn rank_needs_a_row_swap() {
        assert_eq!(rank(&[[0, 0, 1], [0, 1, 1], [1, 1, 1]]), 3);
    }

    #[test]
    fn mat_vec_product() {
        assert_eq!(mat_vec(&[[1, 2], [3, 4]], &[1, -1]), vec![-1, -1]);
    }
}
