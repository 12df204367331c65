//! The IDR(s) process, producing a standard Hessenberg decomposition.
//!
//! After an `s`-step Arnoldi warm-up, every step forms
//!
//! ```text
//! v_{i+1} = (A − μ_j I)(v_i − Σ_{ℓ=1..s} c_ℓ v_{i−ℓ}),
//! ```
//!
//! where `c` makes the bracket orthogonal to the shadow space `P`, i.e.
//! `Pᵀ[v_{i−s} … v_{i−1}] c = Pᵀ v_i`. Rearranged, this gives `A v_i` in
//! terms of the basis, so column `h_i` of `H̄` is the stencil
//! `(−μc_s, …, −μc_1, μ, 1)` at rows `i−s … i+1` plus `Σ c_ℓ h_{i−ℓ}`. The new
//! vector is then orthogonalized against every previous basis vector and the
//! coefficients folded into `h_i`. A fresh shift `μ_j` is chosen whenever `i`
//! is a multiple of `s + 1`.

use crate::error::{Error, Result};
use crate::krylov::arnoldi::arnoldi_extend;
use crate::krylov::{start_vector, HessDecomp, KrylovBuilder, StepOutcome};
use crate::linalg::{
    orthogonalize_against, orthonormalize_columns, solve_small, vector, Deflation, DenseMatrix, SparseMatrix,
};
use crate::random::{NormalSampler, STREAM_SHADOW};
use crate::Scalar;

/// Angle safeguard for the shift selection.
pub const DEFAULT_KAPPA: f64 = 0.7;

#[derive(Clone, Debug)]
pub struct IdrProcess<T> {
    decomp: HessDecomp<T>,
    shadow: DenseMatrix<T>,
    s: usize,
    mu: T,
    kappa: T,
    /// Index of the current Sonneveld space.
    cycle: usize,
    seed: u64,
    warmup: usize,
}

impl<T: Scalar> IdrProcess<T> {
    /// Warm-up with `s` Arnoldi steps and a seeded random shadow matrix.
    pub fn new(a: &SparseMatrix<T>, v: &[T], s: usize, seed: u64) -> Result<Self> {
        let n = a.n_rows();
        if s == 0 || s + 1 > n {
            return Err(Error::invalid(format!("IDR(s) needs 1 <= s < n, got s = {s}, n = {n}")));
        }
        let mut shadow = DenseMatrix::from_col_major(n, s, NormalSampler::new(seed, STREAM_SHADOW).normals(n * s))?;
        if !orthonormalize_columns(&mut shadow) {
            return Err(Error::invalid("random shadow matrix is rank deficient"));
        }
        let mut p = Self::with_shadow(a, v, shadow)?;
        p.seed = seed;
        Ok(p)
    }

    /// Warm-up with an explicit shadow matrix (its columns are
    /// orthonormalized first).
    pub fn with_shadow(a: &SparseMatrix<T>, v: &[T], mut shadow: DenseMatrix<T>) -> Result<Self> {
        let n = a.n_rows();
        let s = shadow.n_cols();
        if shadow.n_rows() != n || s == 0 || s + 1 > n {
            return Err(Error::invalid("shadow matrix must be n x s with 1 <= s < n"));
        }
        if !orthonormalize_columns(&mut shadow) {
            return Err(Error::invalid("shadow matrix is rank deficient"));
        }
        let (v1, _) = start_vector(a, v)?;
        let mut decomp = HessDecomp::start(v1);
        for _ in 0..s {
            if arnoldi_extend(&mut decomp, a)? == StepOutcome::Exhausted {
                break;
            }
        }
        let warmup = decomp.dim();
        Ok(Self {
            decomp,
            shadow,
            s,
            mu: T::zero(),
            kappa: T::lit(DEFAULT_KAPPA),
            cycle: 0,
            seed: 0,
            warmup,
        })
    }

    pub fn with_kappa(mut self, kappa: T) -> Self {
        self.kappa = kappa;
        self
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn shadow(&self) -> &DenseMatrix<T> {
        &self.shadow
    }

    /// Current shift `μ_j`.
    pub fn mu(&self) -> T {
        self.mu
    }

    /// Sonneveld-space index `j`.
    pub fn cycle(&self) -> usize {
        self.cycle
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

impl<T: Scalar> KrylovBuilder<T> for IdrProcess<T> {
    fn decomposition(&self) -> &HessDecomp<T> {
        &self.decomp
    }

    fn initial_dim(&self) -> usize {
        self.warmup
    }

    fn step(&mut self, a: &SparseMatrix<T>) -> Result<StepOutcome> {
        if self.decomp.is_exhausted() {
            return Ok(StepOutcome::Exhausted);
        }
        let s = self.s;
        // 1-based index of the newest basis vector v_i
        let i = self.decomp.dim() + 1;
        let last = i - 1;
        let basis = self.decomp.basis();

        // Pᵀ [v_{i−s} … v_{i−1}] c = Pᵀ v_i
        let window = DenseMatrix::from_fn(s, s, |r, c| vector::dot(self.shadow.col(r), basis.col(last - s + c)));
        let rhs = self.shadow.tr_matvec(basis.col(last))?;
        let sol = solve_small(&window, &rhs).map_err(|e| match e {
            Error::SingularSystem { .. } => Error::IdrBreakdown {
                index: i,
                reason: format!("shadow-space system is singular ({e})"),
            },
            other => other,
        })?;
        // c_ℓ multiplies v_{i−ℓ}; the window is ordered oldest first
        let c: Vec<T> = (1..=s).map(|l| sol[s - l]).collect();

        let mut w = basis.col(last).to_vec();
        for (l, &cl) in c.iter().enumerate() {
            vector::axpy(-cl, basis.col(last - 1 - l), &mut w);
        }
        let mut t = a.spmv(&w)?;
        if i.is_multiple_of(s + 1) {
            self.mu = select_mu(&t, &w, self.kappa);
            self.cycle += 1;
        }
        vector::axpy(-self.mu, &w, &mut t);

        let prior: Vec<&[T]> = (1..=s).rev().map(|l| self.decomp.column(i - l - 1)).collect();
        let mut column = hessenberg_column(&c, self.mu, &prior, i);

        match orthogonalize_against(&t, self.decomp.basis())? {
            Deflation::Independent { coeffs, norm, unit } => {
                for (h, b) in column.iter_mut().zip(&coeffs) {
                    *h += *b;
                }
                column[i] = norm;
                self.decomp.extend(column, &unit)?;
                Ok(StepOutcome::Extended)
            }
            Deflation::Dependent { coeffs, .. } => {
                for (h, b) in column.iter_mut().zip(&coeffs) {
                    *h += *b;
                }
                self.decomp.close(column);
                Ok(StepOutcome::Exhausted)
            }
        }
    }
}

/// Shift for the next Sonneveld space from `t = A w`.
///
/// `ω = tᵀw / tᵀt`; when `|cos∠(t, w)| < κ`, `ω` is scaled by
/// `κ / |cos∠(t, w)|`. Returns `1/ω`, or `1` when `ω` is negligible.
pub fn select_mu<T: Scalar>(t: &[T], w: &[T], kappa: T) -> T {
    let tt = vector::dot(t, t);
    let tw = vector::dot(t, w);
    let nt = tt.sqrt();
    let nw = vector::norm2(w);
    if !(nt > T::zero()) || !(nw > T::zero()) {
        return T::one();
    }
    let mut omega = tw / tt;
    let rho = tw / (nt * nw);
    if rho.abs() < kappa {
        omega = if rho == T::zero() {
            T::zero()
        } else {
            omega * kappa / rho.abs()
        };
    }
    if !(omega.abs() >= T::lit(1e-12) * nw / nt) || !omega.is_finite() {
        return T::one();
    }
    omega.recip()
}

/// Column `h_i` of `H̄` before orthogonalization (length `i + 1`).
///
/// `c[ℓ−1]` is `c_ℓ` and `prior[k]` is `h_{i−s+k}` for `k = 0..s`; `i` is the
/// 1-based index of the vector whose image `A v_i` the column describes.
pub fn hessenberg_column<T: Scalar>(c: &[T], mu: T, prior: &[&[T]], i: usize) -> Vec<T> {
    let s = c.len();
    assert!(prior.len() == s && i > s, "hessenberg_column: need s prior columns and i > s");
    let mut col = vec![T::zero(); i + 1];
    col[i] = T::one();
    col[i - 1] = mu;
    for (l, &cl) in (1..=s).zip(c) {
        col[i - 1 - l] -= mu * cl;
        let h = prior[s - l];
        debug_assert!(h.len() <= i);
        for (dst, &src) in col.iter_mut().zip(h) {
            *dst += cl * src;
        }
    }
    col
}
