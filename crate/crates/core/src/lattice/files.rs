//! Text formats for Gram matrices and vector sets.
//!
//! Gram file: optional `#` comment lines, then `n`, then `n` rows of `n` rationals (`p/q` or integer).
//! Vector-set file: header `rank N min_norm`, then `N` rows of `rank` integers.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::exact::{parse_rational, GramMatrix, Rational};

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn relabel(line: usize) -> impl Fn(Error) -> Error {
    move |e| match e {
        Error::Parse { msg, .. } => Error::Parse { line, msg },
        other => other,
    }
}

pub fn parse_gram(text: &str) -> Result<GramMatrix> {
    let mut lines = data_lines(text);
    let (line, header) = lines.next().ok_or_else(|| parse_err(0, "empty gram file"))?;
    let n: usize = header
        .parse()
        .map_err(|_| parse_err(line, format!("expected dimension, found {header:?}")))?;
    if n == 0 {
        return Err(parse_err(line, "dimension must be positive"));
    }
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let (line, text) = lines
            .next()
            .ok_or_else(|| parse_err(0, format!("expected {n} rows, found {}", rows.len())))?;
        let row = text
            .split_whitespace()
            .map(|tok| parse_rational(tok).map_err(relabel(line)))
            .collect::<Result<Vec<Rational>>>()?;
        if row.len() != n {
            return Err(parse_err(line, format!("expected {n} entries, found {}", row.len())));
        }
        rows.push(row);
    }
    if let Some((line, _)) = lines.next() {
        return Err(parse_err(line, "trailing data after gram matrix"));
    }
    GramMatrix::from_rows(rows)
}

pub fn write_gram(gram: &GramMatrix, comments: &[&str]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
    let n = gram.dim();
    let _ = writeln!(out, "{n}");
    for i in 0..n {
        let row: Vec<String> = (0..n).map(|j| gram.get(i, j).to_string()).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

/// Raw contents of a vector-set file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorFile {
    pub rank: usize,
    pub min_norm: Rational,
    pub vectors: Vec<Vec<i64>>,
}

pub fn parse_vectors(text: &str) -> Result<VectorFile> {
    let mut lines = data_lines(text);
    let (line, header) = lines.next().ok_or_else(|| parse_err(0, "empty vector file"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let [rank, count, min_norm] = fields[..] else {
        return Err(parse_err(line, "header must be `rank N min_norm`"));
    };
    let rank: usize = rank.parse().map_err(|_| parse_err(line, "bad rank"))?;
    let count: usize = count.parse().map_err(|_| parse_err(line, "bad count"))?;
    let min_norm = parse_rational(min_norm).map_err(relabel(line))?;
    let mut vectors = Vec::with_capacity(count);
    for (line, text) in lines {
        let v = text
            .split_whitespace()
            .map(|t| t.parse::<i64>().map_err(|_| parse_err(line, format!("bad integer {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        if v.len() != rank {
            return Err(parse_err(line, format!("expected {rank} coordinates, found {}", v.len())));
        }
        vectors.push(v);
    }
    if vectors.len() != count {
        return Err(parse_err(0, format!("header announces {count} vectors, found {}", vectors.len())));
    }
    Ok(VectorFile {
        rank,
        min_norm,
        vectors,
    })
}

pub fn write_vectors<'a>(rank: usize, min_norm: &Rational, vectors: impl ExactSizeIterator<Item = &'a [i64]>) -> String {
    let mut out = format!("{rank} {} {min_norm}\n", vectors.len());
    for v in vectors {
        let row: Vec<String> = v.iter().map(i64::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}
