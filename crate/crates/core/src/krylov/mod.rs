//! Incremental builders of standard Hessenberg decompositions.

mod arnoldi;
mod decomp;
mod idr;

pub use arnoldi::ArnoldiProcess;
pub use decomp::HessDecomp;
pub use idr::{hessenberg_column, select_mu, IdrProcess, DEFAULT_KAPPA};

use crate::error::{check_dim, Error, Result};
use crate::linalg::{vector, SparseMatrix};
use crate::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepOutcome {
    /// One more column and basis vector were appended.
    Extended,
    /// An invariant subspace was reached (happy breakdown); the
    /// decomposition is exact and cannot grow further.
    Exhausted,
}

/// A process that grows `A V_m = V_{m+1} H̄_m` one column at a time.
pub trait KrylovBuilder<T: Scalar> {
    fn decomposition(&self) -> &HessDecomp<T>;

    fn step(&mut self, a: &SparseMatrix<T>) -> Result<StepOutcome>;

    /// Size `m` of the decomposition handed over by initialization.
    fn initial_dim(&self) -> usize;
}

/// Validates `v` against `A` and returns `(v / ‖v‖, ‖v‖)`.
pub(crate) fn start_vector<T: Scalar>(a: &SparseMatrix<T>, v: &[T]) -> Result<(Vec<T>, T)> {
    if a.n_rows() != a.n_cols() {
        return Err(Error::invalid("Krylov process needs a square matrix"));
    }
    check_dim("start vector", a.n_cols(), v.len())?;
    if !vector::all_finite(v) {
        return Err(Error::invalid("start vector has non-finite entries"));
    }
    let beta = vector::norm2(v);
    if beta == T::zero() {
        return Err(Error::invalid("start vector is zero"));
    }
    let mut v1 = v.to_vec();
    vector::scale(beta.recip(), &mut v1);
    Ok((v1, beta))
}
