//! Functions of small dense matrices: `f(H)` and the divided-difference
//! functions `φ_j(H)` over a confluent point sequence.

mod cosm;
mod expm;
mod function;

pub use cosm::cosm;
pub use expm::{expm, THETA_13};
pub use function::ScalarFunction;

use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, LuFactor, SymmetricEigen};
use crate::Scalar;

/// Relative asymmetry below which `funm` switches to the spectral path.
pub const SYMMETRY_TOL: f64 = 1e-12;
/// Pivot threshold (relative to `‖H‖_F`) for the shifted solves in `phi1`
/// and `phi_stack`; below it the augmented-matrix evaluation is used.
pub const PHI_PIVOT_TOL: f64 = 1e-10;

/// `f(H)`.
///
/// Symmetric inputs go through an eigendecomposition with `f` applied to the
/// eigenvalues. Otherwise the exponential kind uses `expm(-hH)`, the cosine
/// kind `cosm(hH)`, and polynomials are evaluated by Horner's rule.
pub fn funm<T: Scalar>(h: &DenseMatrix<T>, f: &ScalarFunction<T>) -> Result<DenseMatrix<T>> {
    f.validate()?;
    if !h.is_square() {
        return Err(Error::invalid("funm of a non-square matrix"));
    }
    if !h.all_finite() {
        return Err(Error::invalid("funm: non-finite entries"));
    }
    if h.n_rows() > 0 && h.is_symmetric(T::lit(SYMMETRY_TOL)) {
        return funm_spectral(h, f);
    }
    funm_direct(h, f)
}

/// `f(H)` without the symmetric shortcut.
pub fn funm_direct<T: Scalar>(h: &DenseMatrix<T>, f: &ScalarFunction<T>) -> Result<DenseMatrix<T>> {
    f.validate()?;
    match f {
        ScalarFunction::ExpScaled { h: s } => expm(&h.scaled(-*s)),
        ScalarFunction::CosScaled { h: s } => cosm(&h.scaled(*s)),
        ScalarFunction::Monomial { degree } => {
            let mut out = DenseMatrix::identity(h.n_rows());
            for _ in 0..*degree {
                out = out.matmul(h)?;
            }
            Ok(out)
        }
        ScalarFunction::Polynomial { coeffs } => {
            let n = h.n_rows();
            let mut out = DenseMatrix::identity(n).scaled(*coeffs.last().expect("validated"));
            for &c in coeffs.iter().rev().skip(1) {
                out = out.matmul(h)?.shifted(c);
            }
            Ok(out)
        }
    }
}

/// `f(H)` from the eigendecomposition of the symmetric part of `H`.
pub fn funm_spectral<T: Scalar>(h: &DenseMatrix<T>, f: &ScalarFunction<T>) -> Result<DenseMatrix<T>> {
    let sym = h.add(&h.transpose())?.scaled(T::lit(0.5));
    let eig = SymmetricEigen::new(&sym)?;
    Ok(eig.apply(|lam| f.eval(lam)))
}

/// `φ₁(H)` with `f(H) = f(t0) I + (H − t0 I) φ₁(H)`.
///
/// Solved directly from that identity; when `H − t0 I` is numerically
/// singular, `f` is evaluated on `[[H, I], [0, t0 I]]` instead and `φ₁(H)`
/// read from the top-right block.
pub fn phi1<T: Scalar>(h: &DenseMatrix<T>, f: &ScalarFunction<T>, t0: T) -> Result<DenseMatrix<T>> {
    let fh = funm(h, f)?;
    phi1_with(h, f, t0, &fh)
}

/// [`phi1`] reusing an already computed `f(H)`.
pub fn phi1_with<T: Scalar>(
    h: &DenseMatrix<T>,
    f: &ScalarFunction<T>,
    t0: T,
    fh: &DenseMatrix<T>,
) -> Result<DenseMatrix<T>> {
    let rhs = fh.shifted(-f.eval(t0));
    match shifted_factor(h, t0) {
        Some(lu) => lu.solve_mat(&rhs),
        None => Ok(phi_augmented(h, f, t0, 1)?.remove(0)),
    }
}

/// `[φ₁(H), …, φ_J(H)]` for the confluent sequence `t_j ≡ t0`.
///
/// Read off one evaluation of `f` on the augmented block matrix. The
/// recurrence `(H − t0 I) φ_{j+1}(H) = φ_j(H) − φ_j(t0) I` loses roughly a
/// factor `j / ‖(H − t0 I)‖` per level to cancellation and is only used to
/// check the result.
pub fn phi_stack<T: Scalar>(
    h: &DenseMatrix<T>,
    f: &ScalarFunction<T>,
    t0: T,
    count: usize,
) -> Result<Vec<DenseMatrix<T>>> {
    f.validate()?;
    if !h.is_square() || !h.all_finite() {
        return Err(Error::invalid("phi_stack needs a finite square matrix"));
    }
    phi_augmented(h, f, t0, count)
}

/// Evaluates `f` on the block upper bidiagonal matrix with `H, t0 I, …, t0 I`
/// on the diagonal and identities above it; block `(0, j)` of the result is
/// `φ_j(H)`.
pub fn phi_augmented<T: Scalar>(
    h: &DenseMatrix<T>,
    f: &ScalarFunction<T>,
    t0: T,
    count: usize,
) -> Result<Vec<DenseMatrix<T>>> {
    let m = h.n_rows();
    let size = m * (count + 1);
    let mut aug = DenseMatrix::zeros(size, size);
    aug.set_block(0, 0, h);
    for k in 0..count {
        for i in 0..m {
            aug[(k * m + i, (k + 1) * m + i)] = T::one();
            aug[((k + 1) * m + i, (k + 1) * m + i)] = t0;
        }
    }
    let fa = funm_direct(&aug, f)?;
    Ok((1..=count).map(|k| fa.block(0, k * m, m, m)).collect())
}

fn shifted_factor<T: Scalar>(h: &DenseMatrix<T>, t0: T) -> Option<LuFactor<T>> {
    let tol = T::lit(PHI_PIVOT_TOL) * h.norm_fro();
    LuFactor::new(&h.shifted(-t0), tol).ok()
}
