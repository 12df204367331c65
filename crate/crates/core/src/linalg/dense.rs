use std::ops::{Index, IndexMut};

use crate::error::{check_dim, Result};
use crate::linalg::vector;
use crate::Scalar;

/// Column-major dense matrix. Columns are contiguous, so appending a column
/// to a growing basis is a plain `extend`.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix<T> {
    n_rows: usize,
    n_cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> DenseMatrix<T> {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        Self {
            n_rows,
            n_cols,
            data: vec![T::zero(); n_rows * n_cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_diagonal(diag: &[T]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn from_fn(n_rows: usize, n_cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(n_rows * n_cols);
        for j in 0..n_cols {
            for i in 0..n_rows {
                data.push(f(i, j));
            }
        }
        Self {
            n_rows,
            n_cols,
            data,
        }
    }

    pub fn from_col_major(n_rows: usize, n_cols: usize, data: Vec<T>) -> Result<Self> {
        check_dim("DenseMatrix::from_col_major", n_rows * n_cols, data.len())?;
        Ok(Self {
            n_rows,
            n_cols,
            data,
        })
    }

    /// Builds from row slices; convenient for literals in tests and examples.
    pub fn from_rows(rows: &[&[T]]) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, |r| r.len());
        for r in rows {
            check_dim("DenseMatrix::from_rows", n_cols, r.len())?;
        }
        Ok(Self::from_fn(n_rows, n_cols, |i, j| rows[i][j]))
    }

    /// An `n x 0` matrix ready to receive columns.
    pub fn with_rows(n_rows: usize) -> Self {
        Self {
            n_rows,
            n_cols: 0,
            data: Vec::new(),
        }
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn is_square(&self) -> bool {
        self.n_rows == self.n_cols
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [T] {
        &mut self.data
    }

    pub fn into_vec(self) -> Vec<T> {
        self.data
    }

    pub fn col(&self, j: usize) -> &[T] {
        &self.data[j * self.n_rows..(j + 1) * self.n_rows]
    }

    pub fn col_mut(&mut self, j: usize) -> &mut [T] {
        &mut self.data[j * self.n_rows..(j + 1) * self.n_rows]
    }

    pub fn push_col(&mut self, col: &[T]) -> Result<()> {
        check_dim("DenseMatrix::push_col", self.n_rows, col.len())?;
        self.data.extend_from_slice(col);
        self.n_cols += 1;
        Ok(())
    }

    pub fn row(&self, i: usize) -> Vec<T> {
        (0..self.n_cols).map(|j| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n_cols, self.n_rows, |i, j| self[(j, i)])
    }

    /// Copy of the block with rows `r0..r0+nr` and columns `c0..c0+nc`.
    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Self {
        assert!(r0 + nr <= self.n_rows && c0 + nc <= self.n_cols, "block out of range");
        Self::from_fn(nr, nc, |i, j| self[(r0 + i, c0 + j)])
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Self) {
        assert!(r0 + b.n_rows <= self.n_rows && c0 + b.n_cols <= self.n_cols, "block out of range");
        for j in 0..b.n_cols {
            let dst = (c0 + j) * self.n_rows + r0;
            self.data[dst..dst + b.n_rows].copy_from_slice(b.col(j));
        }
    }

    /// Leading `k` columns (all rows).
    pub fn leading_cols(&self, k: usize) -> Self {
        assert!(k <= self.n_cols);
        Self {
            n_rows: self.n_rows,
            n_cols: k,
            data: self.data[..k * self.n_rows].to_vec(),
        }
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        check_dim("DenseMatrix::matmul", self.n_cols, rhs.n_rows)?;
        let mut out = Self::zeros(self.n_rows, rhs.n_cols);
        T::gemm(
            self.n_rows,
            rhs.n_cols,
            self.n_cols,
            T::one(),
            &self.data,
            self.n_rows.max(1),
            &rhs.data,
            rhs.n_rows.max(1),
            T::zero(),
            &mut out.data,
            self.n_rows.max(1),
        );
        Ok(out)
    }

    pub fn matvec(&self, x: &[T]) -> Result<Vec<T>> {
        check_dim("DenseMatrix::matvec", self.n_cols, x.len())?;
        let mut y = vec![T::zero(); self.n_rows];
        for (j, &xj) in x.iter().enumerate() {
            if xj != T::zero() {
                vector::axpy(xj, self.col(j), &mut y);
            }
        }
        Ok(y)
    }

    /// `selfᵀ x`
    pub fn tr_matvec(&self, x: &[T]) -> Result<Vec<T>> {
        check_dim("DenseMatrix::tr_matvec", self.n_rows, x.len())?;
        Ok((0..self.n_cols).map(|j| vector::dot(self.col(j), x)).collect())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a - b)
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(T, T) -> T) -> Result<Self> {
        check_dim("DenseMatrix (rows)", self.n_rows, rhs.n_rows)?;
        check_dim("DenseMatrix (cols)", self.n_cols, rhs.n_cols)?;
        Ok(Self {
            n_rows: self.n_rows,
            n_cols: self.n_cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    pub fn scaled(&self, alpha: T) -> Self {
        Self {
            n_rows: self.n_rows,
            n_cols: self.n_cols,
            data: self.data.iter().map(|&a| alpha * a).collect(),
        }
    }

    /// `self + alpha * I` for square matrices.
    pub fn shifted(&self, alpha: T) -> Self {
        assert!(self.is_square(), "shift of a non-square matrix");
        let mut out = self.clone();
        for i in 0..self.n_rows {
            out[(i, i)] += alpha;
        }
        out
    }

    pub fn norm_fro(&self) -> T {
        vector::norm2(&self.data)
    }

    /// Maximum absolute column sum.
    pub fn norm_one(&self) -> T {
        (0..self.n_cols)
            .map(|j| self.col(j).iter().fold(T::zero(), |acc, &a| acc + a.abs()))
            .fold(T::zero(), T::max)
    }

    pub fn norm_max(&self) -> T {
        vector::norm_inf(&self.data)
    }

    pub fn all_finite(&self) -> bool {
        vector::all_finite(&self.data)
    }

    /// Symmetric to within `rel_tol * ‖self‖_max` entrywise.
    pub fn is_symmetric(&self, rel_tol: T) -> bool {
        if !self.is_square() {
            return false;
        }
        let tol = rel_tol * self.norm_max();
        for j in 0..self.n_cols {
            for i in j + 1..self.n_rows {
                if (self[(i, j)] - self[(j, i)]).abs() > tol {
                    return false;
                }
            }
        }
        true
    }

    /// Largest entrywise deviation from the identity.
    pub fn identity_deviation(&self) -> T {
        let mut worst = T::zero();
        for j in 0..self.n_cols {
            for i in 0..self.n_rows {
                let target = if i == j { T::one() } else { T::zero() };
                worst = worst.max((self[(i, j)] - target).abs());
            }
        }
        worst
    }
}

impl<T> Index<(usize, usize)> for DenseMatrix<T> {
    type Output = T;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.n_rows && j < self.n_cols);
        &self.data[j * self.n_rows + i]
    }
}

impl<T> IndexMut<(usize, usize)> for DenseMatrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.n_rows && j < self.n_cols);
        &mut self.data[j * self.n_rows + i]
    }
}
