//! Matrix cosine by halving, a truncated Taylor series in `X²`, and the
//! double-angle recurrence `cos 2X = 2 cos²X − I`.

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::Scalar;

/// After scaling, `‖X‖₁ ≤ 1`, so `‖X²‖₁ ≤ 1`.
const SCALED_NORM: f64 = 1.0;

/// Number of terms of `Σ (−1)^i B^i / (2i)!` after which the first dropped
/// term, at most `1/(2K)!`, is below `eps/100`. Ten terms in double precision.
fn taylor_terms<T: Scalar>() -> usize {
    let target = 100.0 / T::machine_epsilon();
    let mut fact = 1.0f64;
    let mut k = 0;
    while fact < target {
        k += 1;
        fact *= ((2 * k - 1) * (2 * k)) as f64;
    }
    k.max(1)
}

/// `cos(H)`
pub fn cosm<T: Scalar>(h: &DenseMatrix<T>) -> Result<DenseMatrix<T>> {
    if !h.is_square() {
        return Err(Error::invalid("cosm of a non-square matrix"));
    }
    if !h.all_finite() {
        return Err(Error::invalid("cosm: non-finite entries"));
    }
    let n = h.n_rows();
    if n == 0 {
        return Ok(h.clone());
    }
    let norm = h.norm_one().to_f64().unwrap_or(f64::INFINITY);
    let halvings = if norm > SCALED_NORM {
        (norm / SCALED_NORM).log2().ceil() as i32
    } else {
        0
    };
    let x = h.scaled(T::lit(0.5f64.powi(halvings)));
    let b = x.matmul(&x)?;

    // coefficients (−1)^i / (2i)!
    let terms = taylor_terms::<T>();
    let mut coeffs = Vec::with_capacity(terms);
    let mut c = T::one();
    for i in 0..terms {
        if i > 0 {
            c = -c / T::lit(((2 * i - 1) * (2 * i)) as f64);
        }
        coeffs.push(c);
    }
    let mut cos = DenseMatrix::identity(n).scaled(coeffs[terms - 1]);
    for &ci in coeffs[..terms - 1].iter().rev() {
        cos = cos.matmul(&b)?.shifted(ci);
    }

    let two = T::lit(2.0);
    for _ in 0..halvings {
        cos = cos.matmul(&cos)?.scaled(two).shifted(-T::one());
    }
    Ok(cos)
}
