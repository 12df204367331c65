use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use crate::bilinear::estimate::leading_term_estimate;
use crate::error::{check_dim, Error, Result};
use crate::krylov::{ArnoldiProcess, HessDecomp, IdrProcess, KrylovBuilder, StepOutcome};
use crate::linalg::{vector, SparseMatrix};
use crate::matfun::ScalarFunction;
use crate::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Idr,
    Arnoldi,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Idr => "idr",
            Method::Arnoldi => "arnoldi",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "idr" => Ok(Method::Idr),
            "arnoldi" => Ok(Method::Arnoldi),
            _ => Err(Error::invalid(format!("unknown method '{s}'"))),
        }
    }
}

/// Expansion point `t0` for the divided differences.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum T0Rule {
    Zero,
    /// `h_{1,1}` of the current Hessenberg matrix.
    H11,
}

impl FromStr for T0Rule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "zero" => Ok(T0Rule::Zero),
            "h11" => Ok(T0Rule::H11),
            _ => Err(Error::invalid(format!("unknown t0 rule '{s}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveOptions<T> {
    pub s: usize,
    /// Stop once the relative estimate drops below this.
    pub tol: T,
    /// Largest basis size `m`.
    pub maxit: usize,
    pub method: Method,
    pub t0_rule: T0Rule,
    pub seed: u64,
    /// Basis-growth steps between estimator evaluations.
    pub check_every: usize,
}

impl<T: Scalar> Default for SolveOptions<T> {
    fn default() -> Self {
        Self {
            s: 6,
            tol: T::lit(1e-8),
            maxit: 300,
            method: Method::Idr,
            t0_rule: T0Rule::H11,
            seed: 42,
            check_every: 1,
        }
    }
}

impl<T: Scalar> SolveOptions<T> {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol > T::zero()) {
            return Err(Error::invalid("tol must be positive"));
        }
        if self.s == 0 {
            return Err(Error::invalid("s must be at least 1"));
        }
        if self.check_every == 0 {
            return Err(Error::invalid("check_every must be at least 1"));
        }
        if self.maxit == 0 {
            return Err(Error::invalid("maxit must be at least 1"));
        }
        if self.method == Method::Idr && self.maxit < self.s {
            return Err(Error::invalid("maxit must be at least s for IDR(s)"));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Termination {
    Tolerance,
    MaxIt,
    HappyBreakdown,
    IdrBreakdown,
}

impl fmt::Display for Termination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Termination::Tolerance => "tolerance",
            Termination::MaxIt => "maxit",
            Termination::HappyBreakdown => "happy_breakdown",
            Termination::IdrBreakdown => "idr_breakdown",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StepRecord<T> {
    /// Basis-growth steps since initialization.
    pub iter: usize,
    /// Basis size.
    pub m: usize,
    pub value: T,
    pub xi_rel: T,
    /// `|uᵀf(A)v − F_m| / |uᵀf(A)v|`, when a reference value was supplied.
    pub xi_true_rel: Option<T>,
    /// Wall-clock seconds since the solve started.
    pub cpu_seconds: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceReport<T> {
    pub method: Method,
    pub steps: Vec<StepRecord<T>>,
    pub final_value: T,
    pub converged: bool,
    pub termination: Termination,
    /// Basis size produced by initialization (0 for Arnoldi, `s` for IDR).
    pub initial_dim: usize,
    /// Shadow-matrix seed of the run that produced the report.
    pub seed: u64,
}

impl<T: Scalar> ConvergenceReport<T> {
    pub fn last(&self) -> Option<&StepRecord<T>> {
        self.steps.last()
    }

    /// Steps after initialization at termination.
    pub fn iterations(&self) -> usize {
        self.last().map_or(0, |r| r.iter)
    }

    pub fn cpu_seconds(&self) -> f64 {
        self.last().map_or(0.0, |r| r.cpu_seconds)
    }
}

/// Approximates `uᵀ f(A) v`, stopping on the leading-term estimate.
pub fn solve<T: Scalar>(
    a: &SparseMatrix<T>,
    u: &[T],
    v: &[T],
    f: &ScalarFunction<T>,
    opts: &SolveOptions<T>,
    exact: Option<T>,
) -> Result<ConvergenceReport<T>> {
    solve_observed(a, u, v, f, opts, exact, |_| {})
}

/// [`solve`] with a callback invoked on the decomposition after
/// initialization and after every basis-growth step.
pub fn solve_observed<T: Scalar>(
    a: &SparseMatrix<T>,
    u: &[T],
    v: &[T],
    f: &ScalarFunction<T>,
    opts: &SolveOptions<T>,
    exact: Option<T>,
    mut observe: impl FnMut(&HessDecomp<T>),
) -> Result<ConvergenceReport<T>> {
    opts.validate()?;
    f.validate()?;
    let n = a.n_rows();
    if a.n_cols() != n {
        return Err(Error::invalid("solve needs a square matrix"));
    }
    check_dim("solve (u)", n, u.len())?;
    check_dim("solve (v)", n, v.len())?;
    if !vector::all_finite(u) || vector::norm2(u) == T::zero() {
        return Err(Error::invalid("u must be finite and nonzero"));
    }
    let beta = vector::norm2(v);
    if !beta.is_finite() || beta == T::zero() {
        return Err(Error::invalid("v must be finite and nonzero"));
    }

    match opts.method {
        Method::Arnoldi => {
            let mut p = ArnoldiProcess::new(a, v)?;
            Ok(run(&mut p, a, u, beta, f, opts, exact, opts.seed, &mut observe)?.report)
        }
        Method::Idr => {
            let mut seed = opts.seed;
            let mut retried = false;
            loop {
                let mut p = IdrProcess::new(a, v, opts.s, seed)?;
                let outcome = run(&mut p, a, u, beta, f, opts, exact, seed, &mut observe)?;
                if outcome.report.termination == Termination::IdrBreakdown && !retried {
                    retried = true;
                    seed = seed.wrapping_add(1);
                    continue;
                }
                return Ok(outcome.report);
            }
        }
    }
}

struct RunOutcome<T> {
    report: ConvergenceReport<T>,
}

#[allow(clippy::too_many_arguments)]
fn run<T: Scalar, B: KrylovBuilder<T>>(
    builder: &mut B,
    a: &SparseMatrix<T>,
    u: &[T],
    beta: T,
    f: &ScalarFunction<T>,
    opts: &SolveOptions<T>,
    exact: Option<T>,
    seed: u64,
    observe: &mut impl FnMut(&HessDecomp<T>),
) -> Result<RunOutcome<T>> {
    let start = Instant::now();
    let init = builder.initial_dim();
    let method = if init > 0 || opts.method == Method::Idr {
        Method::Idr
    } else {
        Method::Arnoldi
    };
    let mut steps: Vec<StepRecord<T>> = Vec::new();
    observe(builder.decomposition());

    let record = |decomp: &HessDecomp<T>, steps: &mut Vec<StepRecord<T>>| -> Result<T> {
        let t0 = match opts.t0_rule {
            T0Rule::Zero => T::zero(),
            T0Rule::H11 => decomp.column(0)[0],
        };
        let est = leading_term_estimate(decomp, u, beta, f, t0)?;
        let xi_true_rel = exact.map(|x| (x - est.value).abs() / x.abs());
        let m = decomp.dim();
        if steps.last().is_some_and(|r| r.m == m) {
            steps.pop();
        }
        steps.push(StepRecord {
            iter: m - init,
            m,
            value: est.value,
            xi_rel: est.xi_rel,
            xi_true_rel,
            cpu_seconds: start.elapsed().as_secs_f64(),
        });
        Ok(est.xi_rel)
    };

    let finish = |steps: Vec<StepRecord<T>>, termination: Termination| {
        let final_value = steps.last().map_or(T::nan(), |r| r.value);
        let converged = matches!(termination, Termination::Tolerance | Termination::HappyBreakdown);
        RunOutcome {
            report: ConvergenceReport {
                method,
                steps,
                final_value,
                converged,
                termination,
                initial_dim: init,
                seed,
            },
        }
    };

    let decomp = builder.decomposition();
    if decomp.is_exhausted() {
        record(decomp, &mut steps)?;
        return Ok(finish(steps, Termination::HappyBreakdown));
    }
    if decomp.dim() > 0 {
        let xi = record(decomp, &mut steps)?;
        if xi < opts.tol {
            return Ok(finish(steps, Termination::Tolerance));
        }
    }

    loop {
        let m = builder.decomposition().dim();
        if m >= opts.maxit {
            if steps.last().is_none_or(|r| r.m != m) {
                record(builder.decomposition(), &mut steps)?;
            }
            return Ok(finish(steps, Termination::MaxIt));
        }
        let outcome = match builder.step(a) {
            Ok(o) => o,
            Err(Error::IdrBreakdown { .. }) => {
                if builder.decomposition().dim() > 0 {
                    record(builder.decomposition(), &mut steps)?;
                }
                return Ok(finish(steps, Termination::IdrBreakdown));
            }
            Err(e) => return Err(e),
        };
        let decomp = builder.decomposition();
        observe(decomp);
        if outcome == StepOutcome::Exhausted {
            record(decomp, &mut steps)?;
            return Ok(finish(steps, Termination::HappyBreakdown));
        }
        if (decomp.dim() - init) % opts.check_every == 0 {
            let xi = record(decomp, &mut steps)?;
            if xi < opts.tol {
                return Ok(finish(steps, Termination::Tolerance));
            }
        }
    }
}
