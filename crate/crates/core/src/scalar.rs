//! The floating-point element type shared by every routine in the crate.

use std::fmt::{Debug, Display, LowerExp};

use num_traits::{Float, FromPrimitive, NumAssignOps};

/// Real floating-point scalar.
///
/// Implemented for `f32` and `f64`. The `gemm` hook lets the concrete types
/// route dense products through an optimized kernel while the generic code
/// stays scalar-agnostic.
pub trait Scalar:
    Float + FromPrimitive + NumAssignOps + Default + Debug + Display + LowerExp + Send + Sync + 'static
{
    /// Converts an `f64` literal, panicking only if the type cannot represent
    /// finite values of that magnitude.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("scalar literal out of range")
    }

    /// Spacing of the type near 1, used to pick truncation and convergence
    /// thresholds. Overridden where `Float::epsilon` is not that spacing.
    fn machine_epsilon() -> f64 {
        Self::epsilon().to_f64().unwrap_or(f64::EPSILON)
    }

    /// `C <- alpha * A * B + beta * C` on column-major slices with leading
    /// dimensions `lda`, `ldb`, `ldc`. `A` is `m x k`, `B` is `k x n`.
    #[allow(clippy::too_many_arguments)]
    fn gemm(
        m: usize,
        n: usize,
        k: usize,
        alpha: Self,
        a: &[Self],
        lda: usize,
        b: &[Self],
        ldb: usize,
        beta: Self,
        c: &mut [Self],
        ldc: usize,
    ) {
        gemm_reference(m, n, k, alpha, a, lda, b, ldb, beta, c, ldc);
    }
}

#[allow(clippy::too_many_arguments)]
fn check_gemm_bounds(
    m: usize,
    n: usize,
    k: usize,
    a_len: usize,
    lda: usize,
    b_len: usize,
    ldb: usize,
    c_len: usize,
    ldc: usize,
) {
    if m == 0 || n == 0 {
        return;
    }
    assert!(ldc >= m && c_len >= (n - 1) * ldc + m, "gemm: C out of bounds");
    if k > 0 {
        assert!(lda >= m && a_len >= (k - 1) * lda + m, "gemm: A out of bounds");
        assert!(ldb >= k && b_len >= (n - 1) * ldb + k, "gemm: B out of bounds");
    }
}

/// Plain column-oriented triple loop; the fallback for scalar types without
/// an optimized kernel.
#[allow(clippy::too_many_arguments)]
pub(crate) fn gemm_reference<T: Float + NumAssignOps>(
    m: usize,
    n: usize,
    k: usize,
    alpha: T,
    a: &[T],
    lda: usize,
    b: &[T],
    ldb: usize,
    beta: T,
    c: &mut [T],
    ldc: usize,
) {
    check_gemm_bounds(m, n, k, a.len(), lda, b.len(), ldb, c.len(), ldc);
    for j in 0..n {
        let cj = &mut c[j * ldc..j * ldc + m];
        if beta == T::zero() {
            cj.iter_mut().for_each(|x| *x = T::zero());
        } else if beta != T::one() {
            cj.iter_mut().for_each(|x| *x *= beta);
        }
        for p in 0..k {
            let s = alpha * b[j * ldb + p];
            if s == T::zero() {
                continue;
            }
            let ap = &a[p * lda..p * lda + m];
            for (ci, &ai) in cj.iter_mut().zip(ap) {
                *ci += s * ai;
            }
        }
    }
}

macro_rules! impl_scalar {
    ($t:ty, $kernel:ident) => {
        impl Scalar for $t {
            fn gemm(
                m: usize,
                n: usize,
                k: usize,
                alpha: Self,
                a: &[Self],
                lda: usize,
                b: &[Self],
                ldb: usize,
                beta: Self,
                c: &mut [Self],
                ldc: usize,
            ) {
                check_gemm_bounds(m, n, k, a.len(), lda, b.len(), ldb, c.len(), ldc);
                if m == 0 || n == 0 {
                    return;
                }
                // SAFETY: the bounds check above guarantees every strided
                // access stays inside the three slices, and `c` is borrowed
                // mutably so it cannot alias `a` or `b`.
                unsafe {
                    matrixmultiply::$kernel(
                        m,
                        k,
                        n,
                        alpha,
                        a.as_ptr(),
                        1,
                        lda as isize,
                        b.as_ptr(),
                        1,
                        ldb as isize,
                        beta,
                        c.as_mut_ptr(),
                        1,
                        ldc as isize,
                    );
                }
            }
        }
    };
}

impl_scalar!(f32, sgemm);
impl_scalar!(f64, dgemm);
