use crate::error::Result;
use crate::krylov::{start_vector, HessDecomp, KrylovBuilder, StepOutcome};
use crate::linalg::{orthogonalize_against, Deflation, SparseMatrix};
use crate::Scalar;

/// Arnoldi process with modified Gram–Schmidt and one reorthogonalization
/// pass.
#[derive(Clone, Debug)]
pub struct ArnoldiProcess<T> {
    decomp: HessDecomp<T>,
}

impl<T: Scalar> ArnoldiProcess<T> {
    /// Starts from `v / ‖v‖`.
    pub fn new(a: &SparseMatrix<T>, v: &[T]) -> Result<Self> {
        let (v1, _) = start_vector(a, v)?;
        Ok(Self {
            decomp: HessDecomp::start(v1),
        })
    }

    pub fn into_decomposition(self) -> HessDecomp<T> {
        self.decomp
    }
}

/// One Arnoldi step on an existing decomposition.
pub(crate) fn arnoldi_extend<T: Scalar>(decomp: &mut HessDecomp<T>, a: &SparseMatrix<T>) -> Result<StepOutcome> {
    if decomp.is_exhausted() {
        return Ok(StepOutcome::Exhausted);
    }
    let last = decomp.basis().n_cols() - 1;
    let w = a.spmv(decomp.basis_vector(last))?;
    match orthogonalize_against(&w, decomp.basis())? {
        Deflation::Independent { mut coeffs, norm, unit } => {
            coeffs.push(norm);
            decomp.extend(coeffs, &unit)?;
            Ok(StepOutcome::Extended)
        }
        Deflation::Dependent { mut coeffs, .. } => {
            coeffs.push(T::zero());
            decomp.close(coeffs);
            Ok(StepOutcome::Exhausted)
        }
    }
}

impl<T: Scalar> KrylovBuilder<T> for ArnoldiProcess<T> {
    fn decomposition(&self) -> &HessDecomp<T> {
        &self.decomp
    }

    fn step(&mut self, a: &SparseMatrix<T>) -> Result<StepOutcome> {
        arnoldi_extend(&mut self.decomp, a)
    }

    fn initial_dim(&self) -> usize {
        0
    }
}
