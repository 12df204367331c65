use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use idrbf::bench::{run_experiment, ExperimentConfig, ExperimentOutput, FunctionFamily, MatrixSource, SummaryRow};
use idrbf::{Method, SolveOptions, T0Rule, Termination};

/// Bilinear forms uᵀ f(A) v by IDR(s) and Arnoldi projection.
#[derive(Parser, Debug)]
#[command(name = "idrbf", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Approximate uᵀ f(A) v and print the final values.
    Solve(RunArgs),
    /// Run an experiment and print a per-run summary table.
    Bench(RunArgs),
    /// Run the built-in numerical self-checks.
    Selftest,
}

#[derive(Args, Debug)]
struct RunArgs {
    /// grcar:N[:K], lap1d:N or mm:PATH
    #[arg(long, value_parser = parse_matrix)]
    matrix: MatrixSource,
    /// exp (e^{-ht}), cos (cos ht) or poly:c0,c1,...
    #[arg(long, value_parser = parse_function, default_value = "exp")]
    function: FunctionFamily<f64>,
    /// Step h; repeat for several values.
    #[arg(long = "h", value_parser = parse_positive, default_values_t = [1.0])]
    h: Vec<f64>,
    #[arg(long, default_value_t = 6)]
    s: usize,
    #[arg(long, value_parser = parse_positive, default_value = "1e-8")]
    tol: f64,
    #[arg(long, default_value_t = 300)]
    maxit: usize,
    #[arg(long, value_enum, default_value_t = MethodArg::Idr)]
    method: MethodArg,
    #[arg(long, value_enum, default_value_t = T0Arg::H11)]
    t0: T0Arg,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = ExactArg::None)]
    exact: ExactArg,
    /// Write per-step rows as CSV.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Idr,
    Arnoldi,
    Both,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum T0Arg {
    Zero,
    H11,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ExactArg {
    Dense,
    None,
}

fn parse_matrix(s: &str) -> Result<MatrixSource, String> {
    s.parse().map_err(|e: idrbf::Error| e.to_string())
}

fn parse_function(s: &str) -> Result<FunctionFamily<f64>, String> {
    s.parse().map_err(|e: idrbf::Error| e.to_string())
}

fn parse_positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x.is_finite() && x > 0.0 => Ok(x),
        _ => Err(format!("expected a positive number, found '{s}'")),
    }
}

impl RunArgs {
    fn config(&self) -> ExperimentConfig<f64> {
        let methods = match self.method {
            MethodArg::Idr => vec![Method::Idr],
            MethodArg::Arnoldi => vec![Method::Arnoldi],
            MethodArg::Both => vec![Method::Arnoldi, Method::Idr],
        };
        ExperimentConfig {
            matrix_source: self.matrix.clone(),
            function: self.function.clone(),
            h_values: self.h.clone(),
            methods,
            opts: SolveOptions {
                s: self.s,
                tol: self.tol,
                maxit: self.maxit,
                method: Method::Idr,
                t0_rule: match self.t0 {
                    T0Arg::Zero => T0Rule::Zero,
                    T0Arg::H11 => T0Rule::H11,
                },
                seed: self.seed,
                check_every: 1,
            },
            output_path: self.out.clone(),
            compute_exact: matches!(self.exact, ExactArg::Dense),
        }
    }
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map_or_else(|| "-".to_owned(), |v| format!("{v:.3e}"))
}

fn print_solve(out: &ExperimentOutput<f64>) {
    for r in &out.summary {
        println!("method={} h={}", r.method, r.h);
        println!("  value        = {:.16e}", r.value);
        println!("  iter         = {} (m = {})", r.iter, r.m);
        println!("  xi_rel       = {:.3e}", r.xi_rel);
        if let Some(t) = r.xi_true_rel {
            println!("  xi_true_rel  = {t:.3e}");
        }
        println!("  termination  = {}", r.termination);
        println!("  seconds      = {:.4}", r.cpu_seconds);
    }
}

fn print_table(out: &ExperimentOutput<f64>) {
    println!(
        "{:<8} {:>6} {:>6} {:>6} {:>24} {:>10} {:>12} {:>10} {:<16}",
        "method", "h", "iter", "m", "F_m", "xi_rel", "xi_true_rel", "seconds", "termination"
    );
    for r in &out.summary {
        println!(
            "{:<8} {:>6} {:>6} {:>6} {:>24.16e} {:>10.3e} {:>12} {:>10.4} {:<16}",
            r.method.to_string(),
            r.h,
            r.iter,
            r.m,
            r.value,
            r.xi_rel,
            fmt_opt(r.xi_true_rel),
            r.cpu_seconds,
            r.termination.to_string()
        );
    }
}

/// 0 when every run converged, 3 if any hit an IDR breakdown, otherwise 2 if
/// any stopped at maxit.
fn exit_code(summary: &[SummaryRow<f64>]) -> u8 {
    if summary.iter().any(|r| r.termination == Termination::IdrBreakdown) {
        3
    } else if summary.iter().any(|r| r.termination == Termination::MaxIt) {
        2
    } else {
        0
    }
}

fn run(args: &RunArgs, table: bool) -> ExitCode {
    match run_experiment(&args.config()) {
        Ok(out) => {
            if table {
                print_table(&out);
            } else {
                print_solve(&out);
            }
            ExitCode::from(exit_code(&out.summary))
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn selftest() -> ExitCode {
    match idrbf::selftest::run_all() {
        Ok(checks) => {
            let mut failed = 0;
            for c in &checks {
                let tag = if c.passed() { "PASS" } else { "FAIL" };
                failed += usize::from(!c.passed());
                println!("{tag} {:<14} {:<28} {:.3e} (bound {:.0e})", c.suite, c.name, c.measured, c.bound);
            }
            println!("{} checks, {} failed", checks.len(), failed);
            ExitCode::from(u8::from(failed > 0))
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match &cli.command {
        Command::Solve(args) => run(args, false),
        Command::Bench(args) => run(args, true),
        Command::Selftest => selftest(),
    }
}
