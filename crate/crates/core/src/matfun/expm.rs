//! Matrix exponential by scaling and squaring with the [13/13] Padé
//! approximant.

use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, LuFactor};
use crate::Scalar;

/// Largest 1-norm for which the unscaled [13/13] approximant is accurate to
/// double precision.
pub const THETA_13: f64 = 5.371920351148152;

const PADE_13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

/// `e^H`
pub fn expm<T: Scalar>(h: &DenseMatrix<T>) -> Result<DenseMatrix<T>> {
    if !h.is_square() {
        return Err(Error::invalid("expm of a non-square matrix"));
    }
    if !h.all_finite() {
        return Err(Error::invalid("expm: non-finite entries"));
    }
    let n = h.n_rows();
    if n == 0 {
        return Ok(h.clone());
    }
    let norm = h.norm_one().to_f64().unwrap_or(f64::INFINITY);
    let theta = scaling_threshold::<T>();
    let squarings = if norm > theta {
        (norm / theta).log2().ceil().max(0.0) as i32
    } else {
        0
    };
    let a = h.scaled(T::lit(0.5f64.powi(squarings)));
    let mut r = pade13(&a)?;
    for _ in 0..squarings {
        r = r.matmul(&r)?;
    }
    Ok(r)
}

/// `THETA_13` is tuned to double precision. The truncation error of the
/// approximant scales like `‖A‖^27`, so finer types get a proportionally
/// smaller threshold.
fn scaling_threshold<T: Scalar>() -> f64 {
    let ratio = T::machine_epsilon() / f64::EPSILON;
    if ratio < 1.0 {
        THETA_13 * ratio.powf(1.0 / 27.0)
    } else {
        THETA_13
    }
}

fn pade13<T: Scalar>(a: &DenseMatrix<T>) -> Result<DenseMatrix<T>> {
    let n = a.n_rows();
    let b: Vec<T> = PADE_13.iter().map(|&c| T::lit(c)).collect();
    let ident = DenseMatrix::identity(n);
    let a2 = a.matmul(a)?;
    let a4 = a2.matmul(&a2)?;
    let a6 = a4.matmul(&a2)?;

    let comb = |c6: T, c4: T, c2: T, c0: T| -> DenseMatrix<T> {
        let mut out = DenseMatrix::zeros(n, n);
        for (o, (((x6, x4), x2), x0)) in out.as_mut_slice().iter_mut().zip(
            a6.as_slice()
                .iter()
                .zip(a4.as_slice())
                .zip(a2.as_slice())
                .zip(ident.as_slice()),
        ) {
            *o = c6 * *x6 + c4 * *x4 + c2 * *x2 + c0 * *x0;
        }
        out
    };

    let u_inner = a6
        .matmul(&comb(b[13], b[11], b[9], T::zero()))?
        .add(&comb(b[7], b[5], b[3], b[1]))?;
    let u = a.matmul(&u_inner)?;
    let v = a6
        .matmul(&comb(b[12], b[10], b[8], T::zero()))?
        .add(&comb(b[6], b[4], b[2], b[0]))?;

    let p = v.add(&u)?;
    let q = v.sub(&u)?;
    LuFactor::new(&q, T::zero())?.solve_mat(&p)
}
