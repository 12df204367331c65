//! Bilinear forms `uᵀ f(A) v` of large sparse matrices.
//!
//! `A` is projected onto a Krylov basis built either by the IDR(s) process or
//! by Arnoldi, `f` is evaluated on the small Hessenberg projection, and the
//! iteration stops once the leading term of the error expansion, relative to
//! the current approximation, falls below a tolerance.
//!
//! Everything is generic over [`Scalar`] (`f32` or `f64`); the aliases below
//! fix the usual double-precision instantiation.

// `!(x > y)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bench;
pub mod bilinear;
pub mod error;
pub mod krylov;
pub mod linalg;
pub mod matfun;
pub mod random;
mod scalar;
pub mod selftest;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub use bilinear::{
    exact_dense, expansion_partial_sums, leading_term_estimate, project_value, solve, solve_observed,
    ConvergenceReport, Method, SolveOptions, StepRecord, T0Rule, Termination,
};
pub use krylov::{ArnoldiProcess, HessDecomp, IdrProcess, KrylovBuilder, StepOutcome};
pub use linalg::{DenseMatrix, SparseMatrix};
pub use matfun::ScalarFunction;

pub type SparseMatrixF64 = linalg::SparseMatrix<f64>;
pub type DenseMatrixF64 = linalg::DenseMatrix<f64>;
pub type HessDecompF64 = krylov::HessDecomp<f64>;
pub type ScalarFunctionF64 = matfun::ScalarFunction<f64>;
pub type SolveOptionsF64 = bilinear::SolveOptions<f64>;
pub type ConvergenceReportF64 = bilinear::ConvergenceReport<f64>;

pub type SparseMatrixF32 = linalg::SparseMatrix<f32>;
pub type DenseMatrixF32 = linalg::DenseMatrix<f32>;
