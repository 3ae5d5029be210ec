//! Line-oriented text formats.
//!
//! Subspace file:
//!
//! ```text
//! q N
//! <row of N residues>
//! ...
//! ```
//!
//! A lone header is the zero subspace. Rows may be any generating set; they
//! are canonicalized on load and written back as the RREF basis.
//!
//! Code file: header `q N count`, then `count` blocks separated by blank
//! lines, each a `dim` line followed by `dim` basis rows.

use std::collections::HashSet;

use crate::codes::Code;
use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::lattice::{Atom, Subspace};

pub fn format_row(row: &[u32]) -> String {
    let parts: Vec<String> = row.iter().map(u32::to_string).collect();
    parts.join(" ")
}

pub fn format_subspace(s: &Subspace) -> String {
    let mut out = format!("{} {}\n", s.spec().p(), s.ambient_dim());
    for r in s.basis().row_iter() {
        out.push_str(&format_row(r));
        out.push('\n');
    }
    out
}

fn numbers(line: &str, lineno: usize) -> Result<Vec<u64>> {
    line.split_whitespace()
        .map(|tok| tok.parse::<u64>().map_err(|_| Error::parse(lineno, format!("not an integer: {tok:?}"))))
        .collect()
}

fn parse_row(spec: FieldSpec, n: usize, line: &str, lineno: usize) -> Result<Vec<u32>> {
    let vals = numbers(line, lineno)?;
    if vals.len() != n {
        return Err(Error::parse(lineno, format!("expected {n} entries, found {}", vals.len())));
    }
    vals.into_iter()
        .map(|v| spec.check(v).map_err(|e| Error::parse(lineno, e.to_string())))
        .collect()
}

fn parse_field(q: u64, lineno: usize) -> Result<FieldSpec> {
    FieldSpec::new(q).map_err(|e| Error::parse(lineno, e.to_string()))
}

pub fn parse_subspace(text: &str) -> Result<Subspace> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
    let (hl, header) = lines.next().ok_or_else(|| Error::parse(1, "missing header `q N`"))?;
    let h = numbers(header, hl)?;
    if h.len() != 2 {
        return Err(Error::parse(hl, "header must be `q N`"));
    }
    let spec = parse_field(h[0], hl)?;
    let n = h[1] as usize;
    let rows = lines.map(|(i, l)| parse_row(spec, n, l, i)).collect::<Result<Vec<_>>>()?;
    Subspace::from_rows(spec, n, &rows)
}

pub fn format_code(c: &Code) -> String {
    let mut out = format!("{} {} {}\n", c.spec().p(), c.ambient_dim(), c.len());
    for (i, w) in c.codewords().iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        out.push_str(&format!("{}\n", w.dim()));
        for r in w.basis().row_iter() {
            out.push_str(&format_row(r));
            out.push('\n');
        }
    }
    out
}

pub fn parse_code(text: &str) -> Result<Code> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
    let (hl, header) = lines.next().ok_or_else(|| Error::parse(1, "missing header `q N count`"))?;
    let h = numbers(header, hl)?;
    if h.len() != 3 {
        return Err(Error::parse(hl, "header must be `q N count`"));
    }
    let spec = parse_field(h[0], hl)?;
    let n = h[1] as usize;
    let count = h[2] as usize;
    let mut words = Vec::with_capacity(count);
    let mut seen = HashSet::new();
    for _ in 0..count {
        let (dl, dline) = lines.next().ok_or_else(|| Error::parse(hl, format!("expected {count} codeword blocks")))?;
        let dv = numbers(dline, dl)?;
        if dv.len() != 1 {
            return Err(Error::parse(dl, "block must start with a single `dim` line"));
        }
        let dim = dv[0] as usize;
        let mut rows = Vec::with_capacity(dim);
        for _ in 0..dim {
            let (rl, r) = lines.next().ok_or_else(|| Error::parse(dl, "truncated codeword block"))?;
            rows.push(parse_row(spec, n, r, rl)?);
        }
        let w = Subspace::from_rows(spec, n, &rows)?;
        if w.dim() != dim {
            return Err(Error::parse(dl, format!("block declares dim {dim} but its rows span dim {}", w.dim())));
        }
        if !seen.insert(w.clone()) {
            return Err(Error::parse(dl, "duplicate codeword"));
        }
        words.push(w);
    }
    if let Some((l, _)) = lines.next() {
        return Err(Error::parse(l, "trailing content after the last codeword block"));
    }
    Code::new(spec, n, words)
}

/// Semicolon-separated vectors, e.g. `"1 0 0 0; 0 1 0 0"`.
pub fn parse_atom_list(spec: FieldSpec, n: usize, text: &str) -> Result<Vec<Atom>> {
    text.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|chunk| Atom::new(spec, parse_row(spec, n, chunk, 1)?))
        .collect()
}
