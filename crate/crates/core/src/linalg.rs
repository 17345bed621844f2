//! Exact integer linear algebra: rank by fraction-free Gaussian elimination.
//!
//! Inputs here are small 0/±1 matrices (incidence vectors and facet
//! coefficients), so intermediate Bareiss entries are minors of the input and
//! stay far below the i128 range for every dimension this crate guards.

/// Rank of an integer matrix, computed exactly with Bareiss' fraction-free
/// elimination. The input is consumed row-major as `rows` of equal length.
pub fn integer_rank(mut rows: Vec<Vec<i128>>) -> usize {
    let n_rows = rows.len();
    if n_rows == 0 {
        return 0;
    }
    let n_cols = rows[0].len();
    debug_assert!(rows.iter().all(|r| r.len() == n_cols));
    let mut rank = 0;
    let mut prev_pivot: i128 = 1;
    let mut col = 0;
    while rank < n_rows && col < n_cols {
        // Pick the first nonzero pivot in this column at/below `rank`.
        let Some(pivot_row) = (rank..n_rows).find(|&r| rows[r][col] != 0) else {
            col += 1;
            continue;
        };
        rows.swap(rank, pivot_row);
        let pivot = rows[rank][col];
        for r in rank + 1..n_rows {
            for c in col + 1..n_cols {
                let num = pivot * rows[r][c] - rows[r][col] * rows[rank][c];
                debug_assert_eq!(num % prev_pivot, 0, "Bareiss divisibility");
                rows[r][c] = num / prev_pivot;
            }
            rows[r][col] = 0;
        }
        prev_pivot = pivot;
        rank += 1;
        col += 1;
    }
    rank
}

/// Affine rank minus one of a point set: the dimension of its affine hull.
/// Returns -1 for the empty set.
pub fn affine_dimension(points: &[Vec<i64>]) -> i64 {
    let Some(base) = points.first() else {
        return -1;
    };
    let rows: Vec<Vec<i128>> = points[1..]
        .iter()
        .map(|p| {
            p.iter()
                .zip(base)
                .map(|(&a, &b)| a as i128 - b as i128)
                .collect()
        })
        .collect();
    integer_rank(rows) as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_simple_matrices() {
        assert_eq!(integer_rank(vec![]), 0);
        assert_eq!(integer_rank(vec![vec![0, 0], vec![0, 0]]), 0);
        assert_eq!(integer_rank(vec![vec![1, 0], vec![0, 1]]), 2);
        assert_eq!(integer_rank(vec![vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(
            integer_rank(vec![
                vec![1, 1, 0],
                vec![0, 1, 1],
                vec![1, 0, -1],
                vec![2, 1, -1]
            ]),
            2
        );
    }

    #[test]
    fn rank_survives_needing_row_swaps() {
        assert_eq!(integer_rank(vec![vec![0, 1], vec![1, 0]]), 2);
        assert_eq!(
            integer_rank(vec![vec![0, 0, 2], vec![0, 3, 0], vec![4, 0, 0]]),
            3
        );
    }

    #[test]
    fn affine_dimension_examples() {
        assert_eq!(affine_dimension(&[]), -1);
        assert_eq!(affine_dimension(&[vec![5, 5]]), 0);
        // Three collinear points.
        assert_eq!(affine_dimension(&[vec![0, 0], vec![1, 1], vec![2, 2]]), 1);
        // Unit simplex corners in R^3 span an affine plane.
        assert_eq!(
            affine_dimension(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]),
            2
        );
        assert_eq!(
            affine_dimension(&[vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]),
            3
        );
    }
}
