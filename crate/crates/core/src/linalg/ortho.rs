use crate::error::{check_dim, Result};
use crate::linalg::dense::DenseMatrix;
use crate::linalg::vector::{axpy, dot, norm2, scale};
use crate::Scalar;

/// Relative size below which a deflated vector counts as dependent.
pub const DEFLATION_TOL: f64 = 1e-14;

/// Result of deflating a vector against an orthonormal basis.
#[derive(Clone, Debug, PartialEq)]
pub enum Deflation<T> {
    /// `w = basis · coeffs + norm · unit`, with `unit` orthogonal to the basis.
    Independent { coeffs: Vec<T>, norm: T, unit: Vec<T> },
    /// `w` lies in the span of the basis to working precision (happy
    /// breakdown). `norm` is the size of what was left over.
    Dependent { coeffs: Vec<T>, norm: T },
}

impl<T> Deflation<T> {
    pub fn coeffs(&self) -> &[T] {
        match self {
            Deflation::Independent { coeffs, .. } | Deflation::Dependent { coeffs, .. } => coeffs,
        }
    }

    pub fn is_dependent(&self) -> bool {
        matches!(self, Deflation::Dependent { .. })
    }
}

/// Modified Gram–Schmidt against the columns of `basis`, followed by one full
/// reorthogonalization pass. Columns of `basis` are assumed orthonormal.
pub fn orthogonalize_against<T: Scalar>(w: &[T], basis: &DenseMatrix<T>) -> Result<Deflation<T>> {
    check_dim("orthogonalize_against", basis.n_rows(), w.len())?;
    let k = basis.n_cols();
    let input_norm = norm2(w);
    let mut r = w.to_vec();
    let mut coeffs = vec![T::zero(); k];
    for _pass in 0..2 {
        for (j, c) in coeffs.iter_mut().enumerate() {
            let q = basis.col(j);
            let h = dot(q, &r);
            axpy(-h, q, &mut r);
            *c += h;
        }
    }
    let norm = norm2(&r);
    // a full-rank basis of R^n leaves nothing to extend
    if k >= w.len() || !(norm > T::lit(DEFLATION_TOL) * input_norm) {
        return Ok(Deflation::Dependent { coeffs, norm });
    }
    scale(norm.recip(), &mut r);
    Ok(Deflation::Independent {
        coeffs,
        norm,
        unit: r,
    })
}

/// Orthonormalizes the columns of `m` in place (two-pass MGS). Returns
/// `false` if a column was numerically dependent on its predecessors.
pub fn orthonormalize_columns<T: Scalar>(m: &mut DenseMatrix<T>) -> bool {
    let mut out = DenseMatrix::with_rows(m.n_rows());
    for j in 0..m.n_cols() {
        match orthogonalize_against(m.col(j), &out) {
            Ok(Deflation::Independent { unit, .. }) => out.push_col(&unit).expect("same row count"),
            _ => return false,
        }
    }
    *m = out;
    true
}
