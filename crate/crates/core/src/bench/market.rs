use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::linalg::SparseMatrix;
use crate::Scalar;

/// Reads a `coordinate real general|symmetric` Matrix Market file.
pub fn load_matrix_market<T: Scalar>(path: impl AsRef<Path>) -> Result<SparseMatrix<T>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)
        .map_err(|e| Error::parse(0, format!("cannot read {}: {e}", path.display())))?;
    parse_matrix_market(&text)
}

/// Parses Matrix Market text. Line numbers in errors are 1-based.
pub fn parse_matrix_market<T: Scalar>(text: &str) -> Result<SparseMatrix<T>> {
    let mut lines = text.lines().enumerate().map(|(k, l)| (k + 1, l));

    let (_, header) = lines.next().ok_or_else(|| Error::parse(1, "empty file"))?;
    let symmetric = parse_header(header)?;

    let mut size = None;
    let mut trip = Vec::new();
    let mut entries = 0;
    let mut last_line = 1;
    for (line, raw) in lines {
        last_line = line;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('%') {
            continue;
        }
        let fields: Vec<&str> = l.split_whitespace().collect();
        let Some((n_rows, n_cols, nnz)) = size else {
            if fields.len() != 3 {
                return Err(Error::parse(line, "size line must hold rows, columns and entry count"));
            }
            let n_rows = parse_index(fields[0], line)?;
            let n_cols = parse_index(fields[1], line)?;
            let nnz = parse_index(fields[2], line)?;
            if symmetric && n_rows != n_cols {
                return Err(Error::parse(line, "symmetric matrix must be square"));
            }
            size = Some((n_rows, n_cols, nnz));
            trip.reserve(if symmetric { 2 * nnz } else { nnz });
            continue;
        };
        if fields.len() != 3 {
            return Err(Error::parse(line, format!("expected 'row col value', found '{l}'")));
        }
        let i = parse_index(fields[0], line)?;
        let j = parse_index(fields[1], line)?;
        if i == 0 || j == 0 || i > n_rows || j > n_cols {
            return Err(Error::parse(line, format!("index ({i}, {j}) outside {n_rows}x{n_cols}")));
        }
        let v: f64 = fields[2]
            .parse()
            .map_err(|_| Error::parse(line, format!("bad value '{}'", fields[2])))?;
        if !v.is_finite() {
            return Err(Error::parse(line, "non-finite value"));
        }
        if entries == nnz {
            return Err(Error::parse(line, format!("more than {nnz} entries")));
        }
        entries += 1;
        let v = T::lit(v);
        trip.push((i - 1, j - 1, v));
        if symmetric && i != j {
            trip.push((j - 1, i - 1, v));
        }
    }

    let Some((n_rows, n_cols, nnz)) = size else {
        return Err(Error::parse(last_line, "missing size line"));
    };
    if entries != nnz {
        return Err(Error::parse(last_line, format!("expected {nnz} entries, found {entries}")));
    }
    SparseMatrix::from_triplets(n_rows, n_cols, trip)
}

fn parse_header(header: &str) -> Result<bool> {
    let tokens: Vec<String> = header.split_whitespace().map(str::to_ascii_lowercase).collect();
    if tokens.len() != 5 || tokens[0] != "%%matrixmarket" {
        return Err(Error::parse(1, "missing '%%MatrixMarket' banner"));
    }
    if tokens[1] != "matrix" || tokens[2] != "coordinate" {
        return Err(Error::parse(1, format!("unsupported format '{} {}'", tokens[1], tokens[2])));
    }
    if tokens[3] != "real" {
        return Err(Error::parse(1, format!("unsupported field type '{}'", tokens[3])));
    }
    match tokens[4].as_str() {
        "general" => Ok(false),
        "symmetric" => Ok(true),
        other => Err(Error::parse(1, format!("unsupported symmetry '{other}'"))),
    }
}

fn parse_index(s: &str, line: usize) -> Result<usize> {
    s.parse().map_err(|_| Error::parse(line, format!("bad integer '{s}'")))
}

/// Writes `a` as a `coordinate real general` file with round-trip exact values.
pub fn write_matrix_market<T: Scalar>(a: &SparseMatrix<T>, path: impl AsRef<Path>) -> Result<()> {
    let mut w = BufWriter::new(fs::File::create(path)?);
    writeln!(w, "%%MatrixMarket matrix coordinate real general")?;
    writeln!(w, "{} {} {}", a.n_rows(), a.n_cols(), a.nnz())?;
    for (i, j, v) in a.triplets() {
        writeln!(w, "{} {} {:e}", i + 1, j + 1, v.to_f64().unwrap_or(f64::NAN))?;
    }
    w.flush()?;
    Ok(())
}
