//! Text formats for site matrices.
//!
//! Dense: one matrix row per line, `re,im` pairs separated by commas, so a
//! row of an `N × N` matrix has `2N` fields. Edge list: `u v weight` per line
//! with integer site labels; the adjacency is symmetrized. In both formats
//! blank lines and lines starting with `#` are ignored.

use nalgebra::DMatrix;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn number(line: usize, field: &str) -> Result<f64> {
    field
        .trim()
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| Error::Parse { line, message: format!("`{}` is not a finite number", field.trim()) })
}

pub fn parse_dense_matrix<T: Real>(text: &str) -> Result<DMatrix<Complex<T>>> {
    let mut rows: Vec<Vec<Complex<T>>> = Vec::new();
    let mut last_line = 0;
    for (line, body) in content_lines(text) {
        last_line = line;
        let fields: Vec<&str> = body.split(',').collect();
        if !fields.len().is_multiple_of(2) {
            return Err(Error::Parse { line, message: format!("odd number of fields ({})", fields.len()) });
        }
        let row = fields
            .chunks(2)
            .map(|pair| Ok(Complex::new(T::lit(number(line, pair[0])?), T::lit(number(line, pair[1])?))))
            .collect::<Result<Vec<_>>>()?;
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(Error::Parse {
                    line,
                    message: format!("row has {} entries, expected {}", row.len(), first.len()),
                });
            }
        }
        rows.push(row);
    }
    let n = rows.len();
    if n == 0 {
        return Err(Error::Parse { line: 1, message: "matrix is empty".into() });
    }
    if rows[0].len() != n {
        return Err(Error::Parse {
            line: last_line,
            message: format!("matrix has {n} rows of {} entries; it must be square", rows[0].len()),
        });
    }
    Ok(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
}

/// Returns the sorted site labels and the symmetric adjacency matrix over them.
pub fn parse_edge_list<T: Real>(text: &str) -> Result<(Vec<u64>, DMatrix<T>)> {
    let mut edges = Vec::new();
    for (line, body) in content_lines(text) {
        let fields: Vec<&str> = body.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::Parse { line, message: format!("expected `u v weight`, found {} fields", fields.len()) });
        }
        let label = |f: &str| {
            f.parse::<u64>()
                .map_err(|_| Error::Parse { line, message: format!("`{f}` is not a site label") })
        };
        edges.push((line, label(fields[0])?, label(fields[1])?, number(line, fields[2])?));
    }
    if edges.is_empty() {
        return Err(Error::Parse { line: 1, message: "edge list is empty".into() });
    }
    let mut sites: Vec<u64> = edges.iter().flat_map(|&(_, u, v, _)| [u, v]).collect();
    sites.sort_unstable();
    sites.dedup();
    let pos = |s: u64| sites.binary_search(&s).expect("label collected above");
    let n = sites.len();
    let mut a = DMatrix::from_element(n, n, T::zero());
    let mut set = vec![None; n * n];
    for &(line, u, v, w) in &edges {
        let (i, j) = (pos(u), pos(v));
        for (x, y) in [(i, j), (j, i)] {
            if let Some(prev) = set[x * n + y] {
                if prev != w {
                    return Err(Error::Parse { line, message: format!("conflicting weight for edge {u}-{v}") });
                }
            }
            set[x * n + y] = Some(w);
            a[(x, y)] = T::lit(w);
        }
    }
    Ok((sites, a))
}
