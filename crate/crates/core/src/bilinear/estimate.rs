use crate::error::{check_dim, Error, Result};
use crate::krylov::HessDecomp;
use crate::linalg::{vector, SparseMatrix};
use crate::matfun::{funm, phi1_with, phi_stack, ScalarFunction};
use crate::Scalar;

/// Largest order accepted by [`exact_dense`].
pub const MAX_DENSE_DIM: usize = 4000;

/// `F_m = β uᵀ V_m f(H_m) e₁`
pub fn project_value<T: Scalar>(decomp: &HessDecomp<T>, u: &[T], beta: T, f: &ScalarFunction<T>) -> Result<T> {
    check_dim("project_value (u)", decomp.n(), u.len())?;
    let m = decomp.dim();
    if m == 0 {
        return Err(Error::invalid("projection needs at least one Hessenberg column"));
    }
    let fh = funm(&decomp.h_square(), f)?;
    let proj: Vec<T> = (0..m).map(|k| vector::dot(u, decomp.basis_vector(k))).collect();
    Ok(beta * vector::dot(&proj, fh.col(0)))
}

/// Leading term of the error expansion and its size relative to `|F_m|`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate<T> {
    /// `F_m`
    pub value: T,
    /// `ξ₁ = β h_{m+1,m} |e_mᵀ φ₁(H_m) e₁| |uᵀ v_{m+1}|`
    pub xi1: T,
    /// `ξ₁ / |F_m|`, `+∞` when `F_m = 0`.
    pub xi_rel: T,
}

/// Evaluates `F_m` and the leading-term estimate at expansion point `t0`.
///
/// `v_{m+1}` enters through the residual `h_{m+1,m} v_{m+1}` of the
/// decomposition, so `ξ₁` vanishes on an invariant subspace.
pub fn leading_term_estimate<T: Scalar>(
    decomp: &HessDecomp<T>,
    u: &[T],
    beta: T,
    f: &ScalarFunction<T>,
    t0: T,
) -> Result<Estimate<T>> {
    check_dim("leading_term_estimate (u)", decomp.n(), u.len())?;
    let m = decomp.dim();
    if m == 0 {
        return Err(Error::invalid("estimate needs at least one Hessenberg column"));
    }
    let h = decomp.h_square();
    let fh = funm(&h, f)?;
    let proj: Vec<T> = (0..m).map(|k| vector::dot(u, decomp.basis_vector(k))).collect();
    let value = beta * vector::dot(&proj, fh.col(0));

    let xi1 = match decomp.next_vector() {
        None => T::zero(),
        Some(next) => {
            let p1 = phi1_with(&h, f, t0, &fh)?;
            let utv = vector::dot(u, next) * decomp.subdiagonal();
            beta * p1[(m - 1, 0)].abs() * utv.abs()
        }
    };
    let xi_rel = if value == T::zero() {
        T::infinity()
    } else {
        xi1 / value.abs()
    };
    Ok(Estimate { value, xi1, xi_rel })
}

/// Reference value `uᵀ f(A) v` from a dense evaluation of `f(A)`.
pub fn exact_dense<T: Scalar>(a: &SparseMatrix<T>, u: &[T], v: &[T], f: &ScalarFunction<T>) -> Result<T> {
    let n = a.n_rows();
    if a.n_cols() != n {
        return Err(Error::invalid("exact_dense needs a square matrix"));
    }
    if n > MAX_DENSE_DIM {
        return Err(Error::invalid(format!(
            "exact_dense limited to n <= {MAX_DENSE_DIM}, got {n}"
        )));
    }
    check_dim("exact_dense (u)", n, u.len())?;
    check_dim("exact_dense (v)", n, v.len())?;
    let fa = funm(&a.to_dense(), f)?;
    Ok(vector::dot(u, &fa.matvec(v)?))
}

/// Partial sums `S_1 … S_J` of the error expansion of `uᵀ e^{−hA} v` over
/// the null point sequence:
///
/// `S_J = β Σ_{j=1..J} e_mᵀ φ_j(H_m) e₁ · uᵀ A^{j−1} (h_{m+1,m} v_{m+1})`,
///
/// where `φ_j` are the divided-difference functions of `f(t) = e^{−ht}` at
/// zero. Each term equals `−hβ e_mᵀ φ_j^{exp}(−hH_m) e₁ · uᵀ(−hA)^{j−1} v_{m+1}`
/// with the classical exponential-integrator functions.
pub fn expansion_partial_sums<T: Scalar>(
    a: &SparseMatrix<T>,
    decomp: &HessDecomp<T>,
    u: &[T],
    beta: T,
    h: T,
    count: usize,
) -> Result<Vec<T>> {
    check_dim("expansion_partial_sums (u)", decomp.n(), u.len())?;
    let m = decomp.dim();
    if m == 0 {
        return Err(Error::invalid("expansion needs at least one Hessenberg column"));
    }
    let Some(next) = decomp.next_vector() else {
        return Ok(vec![T::zero(); count]);
    };
    let f = ScalarFunction::exp_scaled(h);
    let stack = phi_stack(&decomp.h_square(), &f, T::zero(), count)?;
    let mut p = next.to_vec();
    vector::scale(decomp.subdiagonal(), &mut p);
    let mut sums = Vec::with_capacity(count);
    let mut acc = T::zero();
    for (j, phi) in stack.iter().enumerate() {
        if j > 0 {
            p = a.spmv(&p)?;
        }
        acc += beta * phi[(m - 1, 0)] * vector::dot(u, &p);
        sums.push(acc);
    }
    Ok(sums)
}
