//! LU factorization with partial (row) pivoting.
//!
//! Large matrices are factored panel by panel with the trailing update routed
//! through `Scalar::gemm`; small ones take the same path with a single panel.

use crate::error::{check_dim, Error, Result};
use crate::linalg::dense::DenseMatrix;
use crate::Scalar;

const PANEL: usize = 64;

/// Relative pivot threshold used by [`solve_small`].
pub const SMALL_SOLVE_PIVOT_TOL: f64 = 1e-14;

#[derive(Clone, Debug)]
pub struct LuFactor<T> {
    lu: DenseMatrix<T>,
    /// Row `k` was swapped with row `pivots[k]` at elimination step `k`.
    pivots: Vec<usize>,
    min_pivot: T,
}

impl<T: Scalar> LuFactor<T> {
    /// Factors `m`. Any pivot with magnitude `<= pivot_tol` (or a non-finite
    /// one) yields [`Error::SingularSystem`].
    pub fn new(m: &DenseMatrix<T>, pivot_tol: T) -> Result<Self> {
        check_dim("LuFactor (square)", m.n_rows(), m.n_cols())?;
        let n = m.n_rows();
        let mut lu = m.clone();
        let mut pivots = vec![0; n];
        let mut min_pivot = T::infinity();

        let mut k0 = 0;
        while k0 < n {
            let k1 = (k0 + PANEL).min(n);
            factor_panel(&mut lu, k0, k1, &mut pivots, pivot_tol, &mut min_pivot)?;
            if k1 < n {
                solve_u12(&mut lu, k0, k1);
                update_trailing(&mut lu, k0, k1);
            }
            k0 = k1;
        }
        Ok(Self {
            lu,
            pivots,
            min_pivot,
        })
    }

    pub fn dim(&self) -> usize {
        self.lu.n_rows()
    }

    /// Smallest pivot magnitude encountered.
    pub fn min_pivot(&self) -> T {
        self.min_pivot
    }

    pub fn solve_vec(&self, rhs: &[T]) -> Result<Vec<T>> {
        let n = self.dim();
        check_dim("LuFactor::solve_vec", n, rhs.len())?;
        let mut x = rhs.to_vec();
        for (k, &p) in self.pivots.iter().enumerate() {
            x.swap(k, p);
        }
        for j in 0..n {
            let xj = x[j];
            if xj != T::zero() {
                let col = self.lu.col(j);
                for i in j + 1..n {
                    x[i] -= col[i] * xj;
                }
            }
        }
        for j in (0..n).rev() {
            let col = self.lu.col(j);
            x[j] /= col[j];
            let xj = x[j];
            if xj != T::zero() {
                for i in 0..j {
                    x[i] -= col[i] * xj;
                }
            }
        }
        Ok(x)
    }

    pub fn solve_mat(&self, rhs: &DenseMatrix<T>) -> Result<DenseMatrix<T>> {
        let n = self.dim();
        check_dim("LuFactor::solve_mat", n, rhs.n_rows())?;
        let r = rhs.n_cols();
        let mut b = rhs.clone();
        if n == 0 || r == 0 {
            return Ok(b);
        }
        for c in 0..r {
            let col = b.col_mut(c);
            for (k, &p) in self.pivots.iter().enumerate() {
                col.swap(k, p);
            }
        }
        let lu = self.lu.as_slice();

        // forward: unit lower triangular
        let mut k0 = 0;
        while k0 < n {
            let k1 = (k0 + PANEL).min(n);
            for c in 0..r {
                let col = b.col_mut(c);
                for j in k0..k1 {
                    let xj = col[j];
                    if xj != T::zero() {
                        for i in j + 1..k1 {
                            col[i] -= lu[j * n + i] * xj;
                        }
                    }
                }
            }
            if k1 < n {
                let x1 = b.block(k0, 0, k1 - k0, r);
                T::gemm(
                    n - k1,
                    r,
                    k1 - k0,
                    -T::one(),
                    &lu[k0 * n + k1..],
                    n,
                    x1.as_slice(),
                    k1 - k0,
                    T::one(),
                    &mut b.as_mut_slice()[k1..],
                    n,
                );
            }
            k0 = k1;
        }

        // backward: upper triangular
        let mut k1 = n;
        while k1 > 0 {
            let k0 = k1.saturating_sub(PANEL);
            for c in 0..r {
                let col = b.col_mut(c);
                for j in (k0..k1).rev() {
                    col[j] /= lu[j * n + j];
                    let xj = col[j];
                    if xj != T::zero() {
                        for i in k0..j {
                            col[i] -= lu[j * n + i] * xj;
                        }
                    }
                }
            }
            if k0 > 0 {
                let x1 = b.block(k0, 0, k1 - k0, r);
                T::gemm(
                    k0,
                    r,
                    k1 - k0,
                    -T::one(),
                    &lu[k0 * n..],
                    n,
                    x1.as_slice(),
                    k1 - k0,
                    T::one(),
                    b.as_mut_slice(),
                    n,
                );
            }
            k1 = k0;
        }
        Ok(b)
    }
}

fn factor_panel<T: Scalar>(
    lu: &mut DenseMatrix<T>,
    k0: usize,
    k1: usize,
    pivots: &mut [usize],
    pivot_tol: T,
    min_pivot: &mut T,
) -> Result<()> {
    let n = lu.n_rows();
    for j in k0..k1 {
        let col = lu.col(j);
        let (p, pmax) = (j..n).fold((j, -T::one()), |(bi, bv), i| {
            let a = col[i].abs();
            if a > bv {
                (i, a)
            } else {
                (bi, bv)
            }
        });
        if !(pmax > pivot_tol) || !pmax.is_finite() {
            return Err(Error::SingularSystem {
                column: j,
                pivot: pmax.to_f64().unwrap_or(f64::NAN),
            });
        }
        *min_pivot = min_pivot.min(pmax);
        pivots[j] = p;
        if p != j {
            let data = lu.as_mut_slice();
            for c in 0..n {
                data.swap(c * n + j, c * n + p);
            }
        }
        let data = lu.as_mut_slice();
        let inv = data[j * n + j].recip();
        for i in j + 1..n {
            data[j * n + i] *= inv;
        }
        for c in j + 1..k1 {
            let ujc = data[c * n + j];
            if ujc != T::zero() {
                for i in j + 1..n {
                    data[c * n + i] -= data[j * n + i] * ujc;
                }
            }
        }
    }
    Ok(())
}

/// Rows `k0..k1` of the trailing columns: `U12 = L11⁻¹ A12`.
fn solve_u12<T: Scalar>(lu: &mut DenseMatrix<T>, k0: usize, k1: usize) {
    let n = lu.n_rows();
    let data = lu.as_mut_slice();
    for c in k1..n {
        for j in k0..k1 {
            let x = data[c * n + j];
            if x != T::zero() {
                for i in j + 1..k1 {
                    data[c * n + i] -= data[j * n + i] * x;
                }
            }
        }
    }
}

/// `A22 -= L21 U12`
fn update_trailing<T: Scalar>(lu: &mut DenseMatrix<T>, k0: usize, k1: usize) {
    let n = lu.n_rows();
    let w = k1 - k0;
    let l21 = lu.block(k1, k0, n - k1, w);
    let u12 = lu.block(k0, k1, w, n - k1);
    T::gemm(
        n - k1,
        n - k1,
        w,
        -T::one(),
        l21.as_slice(),
        n - k1,
        u12.as_slice(),
        w,
        T::one(),
        &mut lu.as_mut_slice()[k1 * n + k1..],
        n,
    );
}

/// Solves the small dense system `m c = rhs` by pivoted elimination.
///
/// A pivot below `1e-14 · ‖m‖_F` is reported as [`Error::SingularSystem`].
pub fn solve_small<T: Scalar>(m: &DenseMatrix<T>, rhs: &[T]) -> Result<Vec<T>> {
    let tol = T::lit(SMALL_SOLVE_PIVOT_TOL) * m.norm_fro();
    LuFactor::new(m, tol)?.solve_vec(rhs)
}
