#![allow(dead_code)]

pub mod dd;

use dd::Dd;
use idrbf::random::NormalSampler;
use idrbf::{DenseMatrix, SparseMatrix};
use num_traits::{Float, Zero};

/// Naive row-major square matrix in double-double.
pub type DdMat = Vec<Vec<Dd>>;

pub fn to_dd(h: &DenseMatrix<f64>) -> DdMat {
    (0..h.n_rows())
        .map(|i| (0..h.n_cols()).map(|j| Dd::from(h[(i, j)])).collect())
        .collect()
}

pub fn dd_matmul(a: &DdMat, b: &DdMat) -> DdMat {
    let n = a.len();
    let m = b[0].len();
    let mut c = vec![vec![Dd::zero(); m]; n];
    for i in 0..n {
        for (p, bp) in b.iter().enumerate() {
            let aip = a[i][p];
            for j in 0..m {
                c[i][j] += aip * bp[j];
            }
        }
    }
    c
}

fn dd_identity(n: usize) -> DdMat {
    (0..n)
        .map(|i| (0..n).map(|j| Dd::from(if i == j { 1.0 } else { 0.0 })).collect())
        .collect()
}

/// `Σ_{k<terms} c_k X^k` in double-double.
pub fn dd_taylor(x: &DenseMatrix<f64>, terms: usize, coeff: impl Fn(usize) -> Dd) -> DdMat {
    let xd = to_dd(x);
    let n = xd.len();
    let mut power = dd_identity(n);
    let mut sum = vec![vec![Dd::zero(); n]; n];
    for k in 0..terms {
        let c = coeff(k);
        for i in 0..n {
            for j in 0..n {
                sum[i][j] += c * power[i][j];
            }
        }
        power = dd_matmul(&power, &xd);
    }
    sum
}

/// `1/k!` in double-double.
pub fn inv_factorial(k: usize) -> Dd {
    let mut c = Dd::from(1.0);
    for i in 1..=k {
        c /= Dd::from(i as f64);
    }
    c
}

/// `exp(X)` by a 60-term Taylor sum in double-double.
pub fn expm_oracle(x: &DenseMatrix<f64>) -> DdMat {
    dd_taylor(x, 60, inv_factorial)
}

/// `cos(X)` by a 60-term Taylor sum in double-double.
pub fn cosm_oracle(x: &DenseMatrix<f64>) -> DdMat {
    dd_taylor(x, 60, |k| match k % 4 {
        0 => inv_factorial(k),
        2 => -inv_factorial(k),
        _ => Dd::zero(),
    })
}

/// `max |X − O| / max |O|`.
pub fn rel_max_err(x: &DenseMatrix<f64>, oracle: &DdMat) -> f64 {
    let mut err = 0.0f64;
    let mut scale = 0.0f64;
    for (i, row) in oracle.iter().enumerate() {
        for (j, o) in row.iter().enumerate() {
            err = err.max((Dd::from(x[(i, j)]) - *o).abs().hi());
            scale = scale.max(o.abs().hi());
        }
    }
    err / scale
}

/// `A x` in double-double straight from the stored triplets.
pub fn dd_spmv(a: &SparseMatrix<f64>, x: &[Dd]) -> Vec<Dd> {
    let mut y = vec![Dd::zero(); a.n_rows()];
    for (i, j, v) in a.triplets() {
        y[i] += Dd::from(v) * x[j];
    }
    y
}

/// `uᵀ (Σ_{k<terms} c_k A^k) v` in double-double, one product with `A` per
/// term.
pub fn dd_series_bilinear(
    a: &SparseMatrix<f64>,
    u: &[f64],
    v: &[f64],
    terms: usize,
    coeff: impl Fn(usize) -> Dd,
) -> f64 {
    let ud: Vec<Dd> = u.iter().map(|&x| Dd::from(x)).collect();
    let mut p: Vec<Dd> = v.iter().map(|&x| Dd::from(x)).collect();
    let mut acc = Dd::zero();
    for k in 0..terms {
        let dot = ud.iter().zip(&p).fold(Dd::zero(), |s, (&x, &y)| s + x * y);
        acc += coeff(k) * dot;
        p = dd_spmv(a, &p);
    }
    acc.hi()
}

/// Taylor coefficients `(−h)^k / k!` of `e^{−ht}`.
pub fn exp_coeff(h: f64) -> impl Fn(usize) -> Dd {
    move |k| {
        let mut c = inv_factorial(k);
        for _ in 0..k {
            c *= Dd::from(-h);
        }
        c
    }
}

/// Taylor coefficients of `cos(ht)`.
pub fn cos_coeff(h: f64) -> impl Fn(usize) -> Dd {
    move |k| {
        if k % 2 == 1 {
            return Dd::zero();
        }
        let mut c = inv_factorial(k);
        for _ in 0..k {
            c *= Dd::from(h);
        }
        if k % 4 == 2 {
            -c
        } else {
            c
        }
    }
}

/// Random square matrix with `‖X‖₁ = norm`.
pub fn random_with_norm(rng: &mut NormalSampler, n: usize, norm: f64) -> DenseMatrix<f64> {
    let x = DenseMatrix::from_fn(n, n, |_, _| rng.normal());
    let scale = norm / x.norm_one();
    x.scaled(scale)
}

/// Random upper Hessenberg matrix with standard-normal nonzeros.
pub fn random_hessenberg(rng: &mut NormalSampler, n: usize) -> DenseMatrix<f64> {
    DenseMatrix::from_fn(n, n, |i, j| if i <= j + 1 { rng.normal() } else { 0.0 })
}

pub fn dense_matvec_oracle(a: &DenseMatrix<f64>, x: &[f64]) -> Vec<f64> {
    (0..a.n_rows())
        .map(|i| (0..a.n_cols()).map(|j| a[(i, j)] * x[j]).sum())
        .collect()
}

pub fn rel_diff(x: f64, y: f64) -> f64 {
    (x - y).abs() / y.abs()
}
