use crate::error::Result;
use crate::linalg::{vector, DenseMatrix, SparseMatrix};
use crate::Scalar;

/// A standard Hessenberg decomposition `A V_m = V_{m+1} H̄_m`.
///
/// `V_{m+1}` has orthonormal columns and `H̄_m` is `(m+1) x m` upper
/// Hessenberg. Once the process finds an invariant subspace the decomposition
/// is *exhausted*: `A V_m = V_m H_m` holds, no `(m+1)`-th basis vector exists
/// and `h_{m+1,m} = 0`.
#[derive(Clone, Debug)]
pub struct HessDecomp<T> {
    basis: DenseMatrix<T>,
    /// Column `j` (0-based) holds rows `0..=j+1` of `H̄`.
    columns: Vec<Vec<T>>,
    exhausted: bool,
}

impl<T: Scalar> HessDecomp<T> {
    pub(crate) fn start(v1: Vec<T>) -> Self {
        let mut basis = DenseMatrix::with_rows(v1.len());
        basis.push_col(&v1).expect("row count matches");
        Self {
            basis,
            columns: Vec::new(),
            exhausted: false,
        }
    }

    /// Appends `h_m` (length `m+1`, last entry `h_{m+1,m}`) together with
    /// the new unit basis vector.
    pub(crate) fn extend(&mut self, column: Vec<T>, next: &[T]) -> Result<()> {
        debug_assert_eq!(column.len(), self.columns.len() + 2);
        self.basis.push_col(next)?;
        self.columns.push(column);
        Ok(())
    }

    /// Appends the final column of an invariant subspace; its subdiagonal
    /// entry is forced to zero.
    pub(crate) fn close(&mut self, mut column: Vec<T>) {
        debug_assert_eq!(column.len(), self.columns.len() + 2);
        *column.last_mut().expect("nonempty column") = T::zero();
        self.columns.push(column);
        self.exhausted = true;
    }

    /// Number of columns `m` of `H̄_m`.
    pub fn dim(&self) -> usize {
        self.columns.len()
    }

    pub fn n(&self) -> usize {
        self.basis.n_rows()
    }

    pub fn is_exhausted(&self) -> bool {
        self.exhausted
    }

    /// All stored basis vectors: `V_{m+1}`, or `V_m` once exhausted.
    pub fn basis(&self) -> &DenseMatrix<T> {
        &self.basis
    }

    pub fn basis_vector(&self, k: usize) -> &[T] {
        self.basis.col(k)
    }

    /// `v_{m+1}` (unit norm), absent once exhausted.
    pub fn next_vector(&self) -> Option<&[T]> {
        (!self.exhausted).then(|| self.basis.col(self.dim()))
    }

    /// `h_{m+1,m}`; zero for `m = 0` or an exhausted decomposition.
    pub fn subdiagonal(&self) -> T {
        self.columns.last().map_or(T::zero(), |c| *c.last().expect("nonempty"))
    }

    /// Column `j` of `H̄` (rows `0..=j+1`).
    pub fn column(&self, j: usize) -> &[T] {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[Vec<T>] {
        &self.columns
    }

    /// `H̄_m`, `(m+1) x m`.
    pub fn h_bar(&self) -> DenseMatrix<T> {
        let m = self.dim();
        let mut h = DenseMatrix::zeros(m + 1, m);
        for (j, col) in self.columns.iter().enumerate() {
            h.col_mut(j)[..col.len()].copy_from_slice(col);
        }
        h
    }

    /// `H_m`, the leading `m x m` block.
    pub fn h_square(&self) -> DenseMatrix<T> {
        let m = self.dim();
        let mut h = DenseMatrix::zeros(m, m);
        for (j, col) in self.columns.iter().enumerate() {
            let k = col.len().min(m);
            h.col_mut(j)[..k].copy_from_slice(&col[..k]);
        }
        h
    }

    /// `‖A V_m − V_{m+1} H̄_m‖_F`
    pub fn residual_norm(&self, a: &SparseMatrix<T>) -> Result<T> {
        let n = self.n();
        let stored = self.basis.n_cols();
        let mut ssq = Vec::with_capacity(n * self.dim());
        for (j, col) in self.columns.iter().enumerate() {
            let mut r = a.spmv(self.basis.col(j))?;
            for (k, &hkj) in col.iter().enumerate().take(stored) {
                vector::axpy(-hkj, self.basis.col(k), &mut r);
            }
            ssq.extend(r);
        }
        Ok(vector::norm2(&ssq))
    }

    /// `‖Vᵀ V − I‖_max` over the stored basis.
    pub fn orthonormality_error(&self) -> T {
        let v = &self.basis;
        let k = v.n_cols();
        let mut worst = T::zero();
        for i in 0..k {
            for j in i..k {
                let d = vector::dot(v.col(i), v.col(j));
                let target = if i == j { T::one() } else { T::zero() };
                worst = worst.max((d - target).abs());
            }
        }
        worst
    }
}
