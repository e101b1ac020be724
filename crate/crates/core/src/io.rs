//! Edge-list text format, the interchange contract between all modules and the CLI.
//!
//! First line `n d`, then one `u v` pair per line, 0-indexed, whitespace-separated,
//! with `u < v`. Lines starting with `#` are comments.

use crate::graph::{GraphError, RegularGraph};
use std::io::{BufRead, Write};
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn parse_err(line: usize, msg: impl Into<String>) -> IoError {
    IoError::Parse {
        line,
        msg: msg.into(),
    }
}

/// Parses a graph from edge-list text.
pub fn read_edge_list<R: BufRead>(reader: R) -> Result<RegularGraph, IoError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut fields = content.split_whitespace();
        let a: usize = fields
            .next()
            .ok_or_else(|| parse_err(line_no, "missing field"))?
            .parse()
            .map_err(|e| parse_err(line_no, format!("bad integer: {e}")))?;
        let b: usize = fields
            .next()
            .ok_or_else(|| parse_err(line_no, "expected two integers"))?
            .parse()
            .map_err(|e| parse_err(line_no, format!("bad integer: {e}")))?;
        if fields.next().is_some() {
            return Err(parse_err(line_no, "trailing fields"));
        }
        if header.is_none() {
            header = Some((a, b));
        } else {
            if a >= b {
                return Err(parse_err(line_no, format!("edge must satisfy u < v, got {a} {b}")));
            }
            edges.push((a, b));
        }
    }
    let (n, d) = header.ok_or_else(|| parse_err(0, "empty input, expected `n d` header"))?;
    let g = RegularGraph::build(n, &edges)?;
    if g.d() != d {
        return Err(parse_err(
            1,
            format!("header declares d = {d} but edges give d = {}", g.d()),
        ));
    }
    Ok(g)
}

pub fn read_edge_list_path(path: impl AsRef<Path>) -> Result<RegularGraph, IoError> {
    let file = std::fs::File::open(path)?;
    read_edge_list(std::io::BufReader::new(file))
}

/// Writes a graph in edge-list format, edges ascending.
pub fn write_edge_list<W: Write>(g: &RegularGraph, mut w: W) -> Result<(), IoError> {
    writeln!(w, "{} {}", g.n(), g.d())?;
    for (u, v) in g.edges() {
        writeln!(w, "{u} {v}")?;
    }
    Ok(())
}

pub fn write_edge_list_path(g: &RegularGraph, path: impl AsRef<Path>) -> Result<(), IoError> {
    let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
    write_edge_list(g, &mut file)
}

/// Edge-list text as a string.
pub fn edge_list_string(g: &RegularGraph) -> String {
    let mut buf = Vec::new();
    write_edge_list(g, &mut buf).expect("write to Vec cannot fail");
    String::from_utf8(buf).expect("edge list is ascii")
}
