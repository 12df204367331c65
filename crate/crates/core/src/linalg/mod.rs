//! Dense and sparse primitives, small solves and orthogonalization.

pub mod dense;
pub mod eigen;
pub mod lu;
pub mod ortho;
pub mod sparse;
pub mod vector;

pub use dense::DenseMatrix;
pub use eigen::SymmetricEigen;
pub use lu::{solve_small, LuFactor};
pub use ortho::{orthogonalize_against, orthonormalize_columns, Deflation};
pub use sparse::SparseMatrix;

use crate::error::Result;
use crate::Scalar;

/// Free-function form of [`SparseMatrix::spmv`].
pub fn spmv<T: Scalar>(a: &SparseMatrix<T>, x: &[T]) -> Result<Vec<T>> {
    a.spmv(x)
}
