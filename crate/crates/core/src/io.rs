//! File formats: Matrix Market (read), plain edge lists and partition files.
//!
//! Edge list:
//!
//! ```text
//! # optional comments
//! n m
//! u v        (m lines, 0-based, written with u < v in sorted order)
//! ```
//!
//! Partition file:
//!
//! ```text
//! n n_half
//! v side     (one line per vertex, side is A or B)
//! ```

use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{Bisection, Graph};

/// Reads a Matrix Market coordinate matrix as the adjacency structure of an
/// undirected graph. Values and diagonal entries are ignored, and `(i, j)`
/// and `(j, i)` collapse to one edge whatever the declared symmetry.
pub fn read_matrix_market<R: BufRead>(reader: R) -> Result<Graph> {
    let mut lines = reader.lines().enumerate().map(|(i, l)| (i + 1, l));

    let (lineno, header) = match lines.next() {
        Some((no, line)) => (no, line?),
        None => return Err(Error::parse(1, "empty input")),
    };
    let tokens: Vec<String> = header
        .split_whitespace()
        .map(|t| t.to_ascii_lowercase())
        .collect();
    if tokens.len() != 5 || tokens[0] != "%%matrixmarket" {
        return Err(Error::parse(
            lineno,
            "expected '%%MatrixMarket matrix coordinate <field> <symmetry>'",
        ));
    }
    if tokens[1] != "matrix" {
        return Err(Error::parse(
            lineno,
            format!("unsupported object '{}'", tokens[1]),
        ));
    }
    if tokens[2] != "coordinate" {
        return Err(Error::parse(
            lineno,
            format!("only coordinate format is supported, got '{}'", tokens[2]),
        ));
    }
    if !matches!(
        tokens[3].as_str(),
        "real" | "integer" | "pattern" | "complex"
    ) {
        return Err(Error::parse(
            lineno,
            format!("unknown field '{}'", tokens[3]),
        ));
    }
    if !matches!(
        tokens[4].as_str(),
        "general" | "symmetric" | "skew-symmetric" | "hermitian"
    ) {
        return Err(Error::parse(
            lineno,
            format!("unknown symmetry '{}'", tokens[4]),
        ));
    }

    let mut size: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut seen_entries = 0usize;
    for (lineno, line) in lines {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('%') {
            continue;
        }
        let mut fields = trimmed.split_whitespace();
        match size {
            None => {
                let rows = parse_count(fields.next(), lineno, "row count")?;
                let cols = parse_count(fields.next(), lineno, "column count")?;
                let nnz = parse_count(fields.next(), lineno, "entry count")?;
                if rows != cols {
                    return Err(Error::parse(
                        lineno,
                        format!("matrix is {rows} x {cols}, expected a square matrix"),
                    ));
                }
                if rows == 0 {
                    return Err(Error::parse(lineno, "matrix has order 0"));
                }
                size = Some((rows, nnz));
                edges.reserve(nnz);
            }
            Some((order, nnz)) => {
                if seen_entries == nnz {
                    return Err(Error::parse(
                        lineno,
                        format!("more entries than the declared {nnz}"),
                    ));
                }
                let i = parse_count(fields.next(), lineno, "row index")?;
                let j = parse_count(fields.next(), lineno, "column index")?;
                for idx in [i, j] {
                    if idx == 0 || idx > order {
                        return Err(Error::parse(
                            lineno,
                            format!("index {idx} outside 1..={order}"),
                        ));
                    }
                }
                seen_entries += 1;
                if i != j {
                    edges.push((i - 1, j - 1));
                }
            }
        }
    }
    let Some((order, nnz)) = size else {
        return Err(Error::parse(lineno, "missing size line"));
    };
    if seen_entries != nnz {
        return Err(Error::parse(
            lineno,
            format!("declared {nnz} entries but found {seen_entries}"),
        ));
    }
    Graph::new(order, edges)
}

fn parse_count(token: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let token = token.ok_or_else(|| Error::parse(line, format!("missing {what}")))?;
    token
        .parse()
        .map_err(|_| Error::parse(line, format!("invalid {what} '{token}'")))
}

/// Data lines of a '#'-commented file, with 1-based line numbers.
fn data_lines<R: BufRead>(reader: R) -> impl Iterator<Item = Result<(usize, String)>> {
    reader
        .lines()
        .enumerate()
        .filter_map(|(i, line)| match line {
            Ok(l) => {
                let t = l.trim();
                if t.is_empty() || t.starts_with('#') {
                    None
                } else {
                    Some(Ok((i + 1, t.to_string())))
                }
            }
            Err(e) => Some(Err(e.into())),
        })
}

fn expect_end<'a>(mut fields: impl Iterator<Item = &'a str>, lineno: usize) -> Result<()> {
    match fields.next() {
        Some(extra) => Err(Error::parse(
            lineno,
            format!("unexpected trailing field '{extra}'"),
        )),
        None => Ok(()),
    }
}

pub fn read_edge_list<R: BufRead>(reader: R) -> Result<Graph> {
    let mut lines = data_lines(reader);
    let (lineno, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "missing 'n m' header"))??;
    let mut fields = header.split_whitespace();
    let n = parse_count(fields.next(), lineno, "vertex count")?;
    let m = parse_count(fields.next(), lineno, "edge count")?;
    expect_end(fields, lineno)?;
    let mut edges = Vec::with_capacity(m);
    for item in lines {
        let (lineno, line) = item?;
        if edges.len() == m {
            return Err(Error::parse(
                lineno,
                format!("more than the declared {m} edges"),
            ));
        }
        let mut fields = line.split_whitespace();
        let u = parse_count(fields.next(), lineno, "endpoint")?;
        let v = parse_count(fields.next(), lineno, "endpoint")?;
        expect_end(fields, lineno)?;
        if u >= n || v >= n {
            return Err(Error::parse(
                lineno,
                format!("edge ({u}, {v}) outside 0..{n}"),
            ));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(Error::parse(
            lineno,
            format!("declared {m} edges but found {}", edges.len()),
        ));
    }
    Graph::new(n, edges)
}

pub fn write_edge_list<W: Write>(g: &Graph, mut out: W) -> Result<()> {
    writeln!(out, "{} {}", g.n(), g.m())?;
    for &(u, v) in g.edges() {
        writeln!(out, "{u} {v}")?;
    }
    Ok(())
}

/// Reads either format, sniffing for the Matrix Market banner.
pub fn read_graph_file(path: &Path) -> Result<Graph> {
    let mut reader = BufReader::new(File::open(path)?);
    let is_mtx = reader.fill_buf()?.starts_with(b"%%MatrixMarket");
    if is_mtx {
        read_matrix_market(reader)
    } else {
        read_edge_list(reader)
    }
}

pub fn read_partition<R: BufRead>(reader: R, n: usize) -> Result<Bisection> {
    let mut lines = data_lines(reader);
    let (lineno, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "missing 'n n_half' header"))??;
    let mut fields = header.split_whitespace();
    let declared = parse_count(fields.next(), lineno, "vertex count")?;
    let half = parse_count(fields.next(), lineno, "half size")?;
    expect_end(fields, lineno)?;
    if declared != n {
        return Err(Error::parse(
            lineno,
            format!("partition is for {declared} vertices but the graph has {n}"),
        ));
    }
    if 2 * half != n {
        return Err(Error::parse(
            lineno,
            format!("half size {half} does not balance {n} vertices"),
        ));
    }
    let mut side: Vec<Option<bool>> = vec![None; n];
    for item in lines {
        let (lineno, line) = item?;
        let mut fields = line.split_whitespace();
        let v = parse_count(fields.next(), lineno, "vertex")?;
        let in_a = match fields.next() {
            Some("A") => true,
            Some("B") => false,
            other => {
                return Err(Error::parse(
                    lineno,
                    format!("side must be A or B, got {other:?}"),
                ))
            }
        };
        expect_end(fields, lineno)?;
        if v >= n {
            return Err(Error::parse(lineno, format!("vertex {v} outside 0..{n}")));
        }
        if side[v].replace(in_a).is_some() {
            return Err(Error::parse(lineno, format!("vertex {v} listed twice")));
        }
    }
    let mask: Vec<bool> = side
        .iter()
        .enumerate()
        .map(|(v, s)| s.ok_or_else(|| Error::input(format!("vertex {v} has no side"))))
        .collect::<Result<_>>()?;
    Bisection::from_mask(&mask)
}

pub fn write_partition<W: Write>(bis: &Bisection, mut out: W) -> Result<()> {
    writeln!(out, "{} {}", bis.n(), bis.n() / 2)?;
    for (v, in_a) in bis.mask().into_iter().enumerate() {
        writeln!(out, "{v} {}", if in_a { 'A' } else { 'B' })?;
    }
    Ok(())
}
