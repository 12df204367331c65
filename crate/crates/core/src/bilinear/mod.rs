//! Projected approximations of `uᵀ f(A) v`, the leading-term error estimate
//! and the stopping loop.

mod driver;
mod estimate;

pub use driver::{solve, solve_observed, ConvergenceReport, Method, SolveOptions, StepRecord, T0Rule, Termination};
pub use estimate::{exact_dense, expansion_partial_sums, leading_term_estimate, project_value, Estimate, MAX_DENSE_DIM};
