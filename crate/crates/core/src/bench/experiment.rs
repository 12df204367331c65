use std::fmt;
use std::fs::File;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use crate::bench::{gen_grcar, gen_laplacian1d, load_matrix_market, DEFAULT_GRCAR_K};
use crate::bilinear::{exact_dense, solve, ConvergenceReport, Method, SolveOptions, Termination};
use crate::error::{Error, Result};
use crate::linalg::SparseMatrix;
use crate::matfun::ScalarFunction;
use crate::random::random_unit_vector;
use crate::Scalar;

pub const CSV_HEADER: &str = "method,h,iter,m,F_m,xi_rel,xi_true_rel,cpu_seconds";

#[derive(Clone, Debug, PartialEq)]
pub enum MatrixSource {
    Grcar { n: usize, k: usize },
    Laplacian1d { n: usize },
    MatrixMarket { path: PathBuf },
}

impl MatrixSource {
    pub fn build<T: Scalar>(&self) -> Result<SparseMatrix<T>> {
        match self {
            MatrixSource::Grcar { n, k } => gen_grcar(*n, *k),
            MatrixSource::Laplacian1d { n } => gen_laplacian1d(*n),
            MatrixSource::MatrixMarket { path } => load_matrix_market(path),
        }
    }
}

/// Accepts `grcar:N[:K]`, `lap1d:N` and `mm:PATH`.
impl FromStr for MatrixSource {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let count = |x: &str| {
            x.parse::<usize>()
                .map_err(|_| Error::invalid(format!("bad size '{x}' in matrix spec '{s}'")))
        };
        let (kind, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::invalid(format!("matrix spec '{s}' needs a ':'")))?;
        match kind {
            "grcar" => {
                let mut parts = rest.split(':');
                let n = count(parts.next().unwrap_or_default())?;
                let k = parts.next().map(count).transpose()?.unwrap_or(DEFAULT_GRCAR_K);
                if parts.next().is_some() {
                    return Err(Error::invalid(format!("too many fields in '{s}'")));
                }
                Ok(MatrixSource::Grcar { n, k })
            }
            "lap1d" => Ok(MatrixSource::Laplacian1d { n: count(rest)? }),
            "mm" if !rest.is_empty() => Ok(MatrixSource::MatrixMarket { path: rest.into() }),
            _ => Err(Error::invalid(format!("unknown matrix spec '{s}'"))),
        }
    }
}

impl fmt::Display for MatrixSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixSource::Grcar { n, k } => write!(f, "grcar:{n}:{k}"),
            MatrixSource::Laplacian1d { n } => write!(f, "lap1d:{n}"),
            MatrixSource::MatrixMarket { path } => write!(f, "mm:{}", path.display()),
        }
    }
}

/// A function family indexed by the step `h`.
#[derive(Clone, Debug, PartialEq)]
pub enum FunctionFamily<T> {
    /// `exp(-h t)`
    Exp,
    /// `cos(h t)`
    Cos,
    /// Fixed polynomial; `h` is ignored.
    Polynomial(Vec<T>),
}

impl<T: Scalar> FunctionFamily<T> {
    pub fn at(&self, h: T) -> ScalarFunction<T> {
        match self {
            FunctionFamily::Exp => ScalarFunction::exp_scaled(h),
            FunctionFamily::Cos => ScalarFunction::cos_scaled(h),
            FunctionFamily::Polynomial(c) => ScalarFunction::Polynomial { coeffs: c.clone() },
        }
    }
}

/// Accepts `exp`, `cos` and `poly:c0,c1,...`.
impl<T: Scalar> FromStr for FunctionFamily<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exp" => Ok(FunctionFamily::Exp),
            "cos" => Ok(FunctionFamily::Cos),
            _ => {
                let coeffs = s
                    .strip_prefix("poly:")
                    .ok_or_else(|| Error::invalid(format!("unknown function '{s}'")))?;
                let coeffs = coeffs
                    .split(',')
                    .map(|c| {
                        c.trim()
                            .parse::<f64>()
                            .ok()
                            .filter(|x| x.is_finite())
                            .map(T::lit)
                            .ok_or_else(|| Error::invalid(format!("bad coefficient '{c}'")))
                    })
                    .collect::<Result<Vec<T>>>()?;
                Ok(FunctionFamily::Polynomial(coeffs))
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct ExperimentConfig<T> {
    pub matrix_source: MatrixSource,
    pub function: FunctionFamily<T>,
    pub h_values: Vec<T>,
    pub methods: Vec<Method>,
    /// `opts.method` is overridden by each entry of `methods`.
    pub opts: SolveOptions<T>,
    pub output_path: Option<PathBuf>,
    pub compute_exact: bool,
}

impl<T: Scalar> ExperimentConfig<T> {
    pub fn new(matrix_source: MatrixSource, function: FunctionFamily<T>, h_values: Vec<T>) -> Self {
        Self {
            matrix_source,
            function,
            h_values,
            methods: vec![Method::Arnoldi, Method::Idr],
            opts: SolveOptions::default(),
            output_path: None,
            compute_exact: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CsvRow<T> {
    pub method: Method,
    pub h: T,
    pub iter: usize,
    pub m: usize,
    pub f_m: T,
    pub xi_rel: T,
    pub xi_true_rel: Option<T>,
    pub cpu_seconds: f64,
}

/// Final record of one run: iterations, time and how it stopped.
#[derive(Clone, Debug, PartialEq)]
pub struct SummaryRow<T> {
    pub method: Method,
    pub h: T,
    pub iter: usize,
    pub m: usize,
    pub value: T,
    pub xi_rel: T,
    pub xi_true_rel: Option<T>,
    pub cpu_seconds: f64,
    pub termination: Termination,
}

#[derive(Clone, Debug)]
pub struct ExperimentOutput<T> {
    pub rows: Vec<CsvRow<T>>,
    pub summary: Vec<SummaryRow<T>>,
    pub reports: Vec<(Method, T, ConvergenceReport<T>)>,
}

/// Runs every `(h, method)` pair on shared seeded vectors `u` (seed) and
/// `v` (seed + 1). When `output_path` is set the CSV is written as runs
/// finish; on failure it ends with a `# error:` line.
pub fn run_experiment<T: Scalar>(cfg: &ExperimentConfig<T>) -> Result<ExperimentOutput<T>> {
    let mut sink = match &cfg.output_path {
        Some(p) => Some(CsvSink::create(p)?),
        None => None,
    };
    let result = run_inner(cfg, sink.as_mut());
    if let Some(sink) = sink {
        sink.finish(result.as_ref().err())?;
    }
    result
}

fn run_inner<T: Scalar>(cfg: &ExperimentConfig<T>, mut sink: Option<&mut CsvSink>) -> Result<ExperimentOutput<T>> {
    if cfg.h_values.is_empty() {
        return Err(Error::invalid("h_values must be nonempty"));
    }
    if cfg.methods.is_empty() {
        return Err(Error::invalid("methods must be nonempty"));
    }
    cfg.opts.validate()?;
    let a = cfg.matrix_source.build::<T>()?;
    let n = a.n_rows();
    if a.n_cols() != n {
        return Err(Error::invalid("experiment needs a square matrix"));
    }
    if cfg.methods.contains(&Method::Idr) && n < cfg.opts.s + 2 {
        return Err(Error::invalid(format!("n = {n} too small for s = {}", cfg.opts.s)));
    }
    let u = random_unit_vector::<T>(n, cfg.opts.seed);
    let v = random_unit_vector::<T>(n, cfg.opts.seed.wrapping_add(1));

    let mut out = ExperimentOutput {
        rows: Vec::new(),
        summary: Vec::new(),
        reports: Vec::new(),
    };
    for &h in &cfg.h_values {
        let f = cfg.function.at(h);
        f.validate()?;
        let exact = if cfg.compute_exact {
            Some(exact_dense(&a, &u, &v, &f)?)
        } else {
            None
        };
        for &method in &cfg.methods {
            let opts = SolveOptions { method, ..cfg.opts.clone() };
            let report = solve(&a, &u, &v, &f, &opts, exact)?;
            let rows: Vec<CsvRow<T>> = report
                .steps
                .iter()
                .map(|r| CsvRow {
                    method,
                    h,
                    iter: r.iter,
                    m: r.m,
                    f_m: r.value,
                    xi_rel: r.xi_rel,
                    xi_true_rel: r.xi_true_rel,
                    cpu_seconds: r.cpu_seconds,
                })
                .collect();
            if let Some(sink) = sink.as_deref_mut() {
                sink.write_rows(&rows)?;
            }
            if let Some(last) = report.last() {
                out.summary.push(SummaryRow {
                    method,
                    h,
                    iter: last.iter,
                    m: last.m,
                    value: last.value,
                    xi_rel: last.xi_rel,
                    xi_true_rel: last.xi_true_rel,
                    cpu_seconds: last.cpu_seconds,
                    termination: report.termination,
                });
            }
            out.rows.extend(rows);
            out.reports.push((method, h, report));
        }
    }
    Ok(out)
}

struct CsvSink {
    writer: csv::Writer<File>,
}

impl CsvSink {
    fn create(path: &PathBuf) -> Result<Self> {
        let mut writer = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_path(path)?;
        writer.write_record(CSV_HEADER.split(','))?;
        Ok(Self { writer })
    }

    fn write_rows<T: Scalar>(&mut self, rows: &[CsvRow<T>]) -> Result<()> {
        for r in rows {
            self.writer.write_record(record(r))?;
        }
        self.writer.flush()?;
        Ok(())
    }

    fn finish(self, err: Option<&Error>) -> Result<()> {
        let mut file = self.writer.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        if let Some(e) = err {
            let msg = e.to_string().replace('\n', " ");
            writeln!(file, "# error: {msg}")?;
        }
        file.flush()?;
        Ok(())
    }
}

fn num<T: Scalar>(x: T) -> String {
    format!("{:.16e}", x.to_f64().unwrap_or(f64::NAN))
}

fn record<T: Scalar>(r: &CsvRow<T>) -> [String; 8] {
    [
        r.method.to_string(),
        num(r.h),
        r.iter.to_string(),
        r.m.to_string(),
        num(r.f_m),
        num(r.xi_rel),
        r.xi_true_rel.map(num).unwrap_or_default(),
        format!("{:.16e}", r.cpu_seconds),
    ]
}

/// Writes `rows` with the standard header to any writer.
pub fn write_csv<T: Scalar, W: Write>(rows: &[CsvRow<T>], w: W) -> Result<()> {
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w);
    writer.write_record(CSV_HEADER.split(','))?;
    for r in rows {
        writer.write_record(record(r))?;
    }
    writer.flush()?;
    Ok(())
}
