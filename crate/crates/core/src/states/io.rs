//! CSV serialization of window states.
//!
//! ```text
//! # p=3 R=1 K=2 domain=3^-1Z_3 basis=grid
//! index,re,im
//! 0,1e0,0e0
//! ```
//!
//! Grid files list cosets in Monna order; spectral files list the constant
//! mode as index 0 followed by the wavelets in canonical order.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_complex::Complex;

use super::grid::GridState;
use super::spectral::SpectralState;
use super::window::Window;
use crate::error::{Error, Result};
use crate::scalar::Real;

fn header(window: Window, basis: &str) -> String {
    let p = window.prime();
    format!(
        "# p={p} R={} K={} domain={p}^-{}Z_{p} basis={basis}\nindex,re,im\n",
        window.top(),
        window.resolution(),
        window.top()
    )
}

fn push_row<T: Real>(out: &mut String, index: usize, v: Complex<T>) {
    let re = v.re.to_f64().unwrap_or(f64::NAN);
    let im = v.im.to_f64().unwrap_or(f64::NAN);
    writeln!(out, "{index},{re:e},{im:e}").expect("writing to a String");
}

pub fn grid_to_csv<T: Real>(state: &GridState<T>) -> String {
    let mut out = header(state.window(), "grid");
    for (i, &v) in state.values().iter().enumerate() {
        push_row(&mut out, i, v);
    }
    out
}

pub fn spectral_to_csv<T: Real>(state: &SpectralState<T>) -> String {
    let window = state.window();
    let mut out = header(window, "spectral");
    push_row(&mut out, 0, state.constant_mode());
    for (i, idx) in window.wavelet_indices().iter().enumerate() {
        push_row(&mut out, i + 1, state.coefficient(idx));
    }
    out
}

fn parse_header(line: &str) -> Result<(Window, String)> {
    let err = |m: &str| Error::Parse { line: 1, message: m.to_string() };
    let body = line.strip_prefix('#').ok_or_else(|| err("missing `#` header line"))?;
    let mut fields = BTreeMap::new();
    for tok in body.split_whitespace() {
        let (k, v) = tok.split_once('=').ok_or_else(|| err("header fields must be key=value"))?;
        fields.insert(k, v);
    }
    let get = |k: &str| -> Result<i64> {
        fields
            .get(k)
            .ok_or_else(|| err(&format!("header lacks `{k}`")))?
            .parse::<i64>()
            .map_err(|_| err(&format!("header field `{k}` is not an integer")))
    };
    let window = Window::new(get("p")? as u32, get("R")? as i32, get("K")? as i32)?;
    let basis = fields.get("basis").copied().unwrap_or("grid").to_string();
    Ok((window, basis))
}

fn parse_rows<T: Real>(text: &str, expected: usize) -> Result<(Window, String, Vec<Complex<T>>)> {
    let mut lines = text.lines();
    let (window, basis) = parse_header(lines.next().unwrap_or(""))?;
    if lines.next().map(str::trim) != Some("index,re,im") {
        return Err(Error::Parse { line: 2, message: "expected `index,re,im` column header".into() });
    }
    let dim = if expected == 0 { window.dimension() } else { expected };
    let mut values = vec![Complex::new(T::zero(), T::zero()); dim];
    let mut seen = 0usize;
    for (n, line) in lines.enumerate() {
        let line_no = n + 3;
        if line.trim().is_empty() {
            continue;
        }
        let err = |m: String| Error::Parse { line: line_no, message: m };
        let cols: Vec<&str> = line.split(',').map(str::trim).collect();
        if cols.len() != 3 {
            return Err(err(format!("expected 3 columns, found {}", cols.len())));
        }
        let idx: usize = cols[0].parse().map_err(|_| err(format!("bad index `{}`", cols[0])))?;
        if idx != seen {
            return Err(err(format!("expected index {seen}, found {idx}")));
        }
        let re: f64 = cols[1].parse().map_err(|_| err(format!("bad number `{}`", cols[1])))?;
        let im: f64 = cols[2].parse().map_err(|_| err(format!("bad number `{}`", cols[2])))?;
        if idx >= dim {
            return Err(err(format!("index {idx} exceeds dimension {dim}")));
        }
        values[idx] = Complex::new(T::lit(re), T::lit(im));
        seen += 1;
    }
    if seen != dim {
        return Err(Error::Parse { line: seen + 3, message: format!("expected {dim} rows, found {seen}") });
    }
    Ok((window, basis, values))
}

pub fn grid_from_csv<T: Real>(text: &str) -> Result<GridState<T>> {
    let (window, basis, values) = parse_rows(text, 0)?;
    if basis != "grid" {
        return Err(Error::Parse { line: 1, message: format!("basis `{basis}` is not `grid`") });
    }
    GridState::new(window, values)
}

pub fn spectral_from_csv<T: Real>(text: &str) -> Result<SpectralState<T>> {
    let (window, basis, values) = parse_rows(text, 0)?;
    if basis != "spectral" {
        return Err(Error::Parse { line: 1, message: format!("basis `{basis}` is not `spectral`") });
    }
    let coefficients = window.wavelet_indices().into_iter().zip(values[1..].iter().copied()).collect();
    SpectralState::new(window, coefficients, values[0])
}
