//! Quick numerical self-checks run by `idrbf selftest`.

use crate::bench::{gen_grcar, gen_laplacian1d};
use crate::bilinear::project_value;
use crate::error::Result;
use crate::krylov::{ArnoldiProcess, IdrProcess, KrylovBuilder, StepOutcome};
use crate::linalg::{vector, DenseMatrix, SparseMatrix};
use crate::matfun::{funm, phi1, ScalarFunction};
use crate::random::{random_unit_vector, NormalSampler};

#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub suite: &'static str,
    pub name: String,
    pub measured: f64,
    pub bound: f64,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.measured <= self.bound
    }
}

/// Runs all suites; an `Err` means a check could not be carried out.
pub fn run_all() -> Result<Vec<CheckResult>> {
    let mut out = phi_identity()?;
    out.extend(decomposition_residual()?);
    out.extend(polynomial_exactness()?);
    Ok(out)
}

/// `‖(H − t0 I) φ₁(H) − f(H) + f(t0) I‖_F / ‖f(H)‖_F` on random Hessenberg
/// matrices.
pub fn phi_identity() -> Result<Vec<CheckResult>> {
    let mut rng = NormalSampler::new(2024, 7);
    let mut out = Vec::new();
    let fns = [
        ("exp", ScalarFunction::exp_scaled(0.5)),
        ("cos", ScalarFunction::cos_scaled(1.0)),
    ];
    for trial in 0..10 {
        let m = 4 + trial;
        let h = DenseMatrix::from_fn(m, m, |i, j| if i <= j + 1 { rng.normal() } else { 0.0 });
        for (name, f) in &fns {
            for t0 in [0.0, h[(0, 0)]] {
                let fh = funm(&h, f)?;
                let p = phi1(&h, f, t0)?;
                let resid = h.shifted(-t0).matmul(&p)?.sub(&fh.shifted(-f.eval(t0)))?;
                out.push(CheckResult {
                    suite: "phi-identity",
                    name: format!("{name} m={m} t0={t0:.3}"),
                    measured: resid.norm_fro() / fh.norm_fro().max(1.0),
                    bound: 1e-10,
                });
            }
        }
    }
    Ok(out)
}

/// `‖A V_m − V_{m+1} H̄_m‖_F ≤ 1e-10 ‖A‖_F m` and orthonormality of the basis
/// along both builders.
pub fn decomposition_residual() -> Result<Vec<CheckResult>> {
    let a = gen_grcar::<f64>(200, 3)?;
    let v = random_unit_vector::<f64>(200, 1);
    let mut out = Vec::new();
    let mut idr = IdrProcess::new(&a, &v, 6, 42)?;
    check_builder("idr", &mut idr, &a, 40, &mut out)?;
    let mut arn = ArnoldiProcess::new(&a, &v)?;
    check_builder("arnoldi", &mut arn, &a, 40, &mut out)?;
    Ok(out)
}

fn check_builder(
    name: &str,
    b: &mut impl KrylovBuilder<f64>,
    a: &SparseMatrix<f64>,
    steps: usize,
    out: &mut Vec<CheckResult>,
) -> Result<()> {
    let scale = a.norm_fro();
    let mut worst_res: f64 = 0.0;
    let mut worst_orth: f64 = 0.0;
    for _ in 0..steps {
        let done = b.step(a)? == StepOutcome::Exhausted;
        let d = b.decomposition();
        worst_res = worst_res.max(d.residual_norm(a)? / (scale * d.dim() as f64));
        worst_orth = worst_orth.max(d.orthonormality_error());
        if done {
            break;
        }
    }
    out.push(CheckResult {
        suite: "decomposition",
        name: format!("{name} residual"),
        measured: worst_res,
        bound: 1e-10,
    });
    out.push(CheckResult {
        suite: "decomposition",
        name: format!("{name} orthonormality"),
        measured: worst_orth,
        bound: 1e-10,
    });
    Ok(())
}

/// `F_m = uᵀ A^d v` once `m ≥ d + 1`.
pub fn polynomial_exactness() -> Result<Vec<CheckResult>> {
    let n = 100;
    let a = gen_laplacian1d::<f64>(n)?;
    let u = random_unit_vector::<f64>(n, 3);
    let v = random_unit_vector::<f64>(n, 4);
    let beta = vector::norm2(&v);
    let mut out = Vec::new();
    for d in 0..=6u32 {
        let mut akv = v.clone();
        for _ in 0..d {
            akv = a.spmv(&akv)?;
        }
        let want = vector::dot(&u, &akv);
        let f = ScalarFunction::Monomial { degree: d };
        let mut arn = ArnoldiProcess::new(&a, &v)?;
        let mut idr = IdrProcess::new(&a, &v, 2, 42)?;
        let builders: [(&str, &mut dyn KrylovBuilder<f64>); 2] = [("arnoldi", &mut arn), ("idr", &mut idr)];
        for (name, b) in builders {
            while b.decomposition().dim() < d as usize + 1 {
                b.step(&a)?;
            }
            let got = project_value(b.decomposition(), &u, beta, &f)?;
            out.push(CheckResult {
                suite: "polynomial",
                name: format!("{name} degree {d}"),
                measured: (got - want).abs() / (1.0 + want.abs()),
                bound: 1e-10,
            });
        }
    }
    Ok(out)
}
