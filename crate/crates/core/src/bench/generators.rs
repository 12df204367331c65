use crate::error::{Error, Result};
use crate::linalg::SparseMatrix;
use crate::Scalar;

pub const DEFAULT_GRCAR_K: usize = 3;

/// Grcar matrix: `-1` on the subdiagonal, `1` on the diagonal and on the
/// first `k` superdiagonals.
pub fn gen_grcar<T: Scalar>(n: usize, k: usize) -> Result<SparseMatrix<T>> {
    if n < k + 2 {
        return Err(Error::invalid(format!("grcar needs n >= k + 2 (n = {n}, k = {k})")));
    }
    let mut trip = Vec::with_capacity(n * (k + 2));
    for i in 0..n {
        if i > 0 {
            trip.push((i, i - 1, -T::one()));
        }
        for j in i..=(i + k).min(n - 1) {
            trip.push((i, j, T::one()));
        }
    }
    SparseMatrix::from_triplets(n, n, trip)
}

/// `tridiag(-1, 2, -1)`.
pub fn gen_laplacian1d<T: Scalar>(n: usize) -> Result<SparseMatrix<T>> {
    if n < 2 {
        return Err(Error::invalid("laplacian1d needs n >= 2"));
    }
    let two = T::lit(2.0);
    let mut trip = Vec::with_capacity(3 * n);
    for i in 0..n {
        if i > 0 {
            trip.push((i, i - 1, -T::one()));
        }
        trip.push((i, i, two));
        if i + 1 < n {
            trip.push((i, i + 1, -T::one()));
        }
    }
    SparseMatrix::from_triplets(n, n, trip)
}
