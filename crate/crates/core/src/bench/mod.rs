//! Test matrices, Matrix Market I/O and the experiment runner behind the CLI.

mod experiment;
mod generators;
mod market;

pub use experiment::{
    run_experiment, write_csv, CsvRow, ExperimentConfig, ExperimentOutput, FunctionFamily, MatrixSource,
    SummaryRow, CSV_HEADER,
};
pub use generators::{gen_grcar, gen_laplacian1d, DEFAULT_GRCAR_K};
pub use market::{load_matrix_market, parse_matrix_market, write_matrix_market};
pub use crate::random::random_unit_vector;
