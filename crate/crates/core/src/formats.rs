//! Text encodings: graph6, a plain edge list, and DOT output.
//!
//! graph6 follows the public format description bit for bit: a size header
//! `N(n)` followed by the upper triangle of the adjacency matrix, column by
//! column (`x(0,1) x(0,2) x(1,2) x(0,3) ...`), packed six bits per printable
//! byte with value offset 63.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Graph, GraphError, MAX_VERTICES};

const GRAPH6_HEADER: &str = ">>graph6<<";
const SHORT_FORM_MAX: usize = 62;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("empty input")]
    Empty,
    #[error("byte {byte:#04x} at offset {offset} is outside the graph6 range 63..=126")]
    InvalidByte { offset: usize, byte: u8 },
    #[error("malformed graph6 size header")]
    BadHeader,
    #[error("graph6 payload truncated: expected {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("graph6 payload has {0} unexpected trailing bytes")]
    TrailingData(usize),
    #[error("graph6 padding bits are not zero")]
    NonZeroPadding,
    #[error("edge list line {line}: {msg}")]
    EdgeList { line: usize, msg: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Encodes `g` as a graph6 line (no header, no trailing newline).
pub fn emit_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = String::new();
    if n <= SHORT_FORM_MAX {
        out.push((n as u8 + 63) as char);
    } else {
        out.push('~');
        for shift in [12, 6, 0] {
            out.push((((n >> shift) & 0x3f) as u8 + 63) as char);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((acc << (6 - filled)) + 63) as char);
    }
    out
}

/// Decodes one graph6 line. An optional `>>graph6<<` prefix and surrounding
/// whitespace are accepted.
pub fn parse_graph6(text: &str) -> Result<Graph, FormatError> {
    let text = text.trim();
    let text = text.strip_prefix(GRAPH6_HEADER).unwrap_or(text);
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(FormatError::Empty);
    }
    if let Some((offset, &byte)) = bytes.iter().enumerate().find(|(_, b)| !(63..=126).contains(*b)) {
        return Err(FormatError::InvalidByte { offset, byte });
    }
    let (n, payload) = if bytes[0] != 126 {
        (bytes[0] as usize - 63, &bytes[1..])
    } else if bytes.len() >= 2 && bytes[1] == 126 {
        // 8-byte header: orders of at least 258048, far beyond the word cap.
        if bytes.len() < 8 {
            return Err(FormatError::BadHeader);
        }
        let n = bytes[2..8].iter().fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
        return Err(GraphError::TooManyVertices(n).into());
    } else {
        if bytes.len() < 4 {
            return Err(FormatError::BadHeader);
        }
        let n = bytes[1..4].iter().fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
        if n <= SHORT_FORM_MAX {
            return Err(FormatError::BadHeader);
        }
        (n, &bytes[4..])
    };
    if n > MAX_VERTICES {
        return Err(GraphError::TooManyVertices(n).into());
    }
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if payload.len() < expected {
        return Err(FormatError::Truncated { expected, found: payload.len() });
    }
    if payload.len() > expected {
        return Err(FormatError::TrailingData(payload.len() - expected));
    }
    let bit = |k: usize| (payload[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    if (bits..expected * 6).any(bit) {
        return Err(FormatError::NonZeroPadding);
    }
    let mut rows = vec![0u64; n];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                rows[i] |= 1 << j;
                rows[j] |= 1 << i;
            }
            k += 1;
        }
    }
    Ok(Graph::from_rows_unchecked(rows))
}

/// Edge-list text: a header line `n m`, then `m` lines `u v`.
pub fn emit_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.order(), g.size());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Parses the edge-list format. Blank lines and `#` comments are skipped.
pub fn parse_edge_list(text: &str) -> Result<Graph, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or(FormatError::Empty)?;
    let (n, m) = parse_pair(hline, header)?;
    let mut edges = Vec::with_capacity(m);
    for (line, l) in lines {
        edges.push(parse_pair(line, l)?);
    }
    if edges.len() != m {
        return Err(FormatError::EdgeList {
            line: hline,
            msg: format!("header announces {m} edges but {} follow", edges.len()),
        });
    }
    Ok(Graph::from_edge_list(n, &edges)?)
}

fn parse_pair(line: usize, l: &str) -> Result<(usize, usize), FormatError> {
    let err = |msg: &str| FormatError::EdgeList { line, msg: msg.to_string() };
    let mut it = l.split_whitespace();
    let mut num = || -> Result<usize, FormatError> {
        it.next()
            .ok_or_else(|| err("expected two integers"))?
            .parse()
            .map_err(|_| err("not a non-negative integer"))
    };
    let pair = (num()?, num()?);
    if it.next().is_some() {
        return Err(err("expected exactly two integers"));
    }
    Ok(pair)
}

/// Reads either format. Input whose first non-comment line is two integers
/// is taken as an edge list; anything else as graph6.
pub fn parse_graph(text: &str) -> Result<Graph, FormatError> {
    let first = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .ok_or(FormatError::Empty)?;
    let looks_numeric = first.split_whitespace().count() == 2
        && first.split_whitespace().all(|t| t.parse::<usize>().is_ok());
    if looks_numeric {
        parse_edge_list(text)
    } else {
        let rest: Vec<&str> = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty())
            .collect();
        if rest.len() > 1 {
            return Err(FormatError::TrailingData(rest.len() - 1));
        }
        parse_graph6(first)
    }
}

/// Undirected DOT. `labels`, when given, names each vertex.
pub fn emit_dot(g: &Graph, labels: Option<&[String]>) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..g.order() {
        match labels.and_then(|l| l.get(v)) {
            Some(name) => {
                let _ = writeln!(out, "  {v} [label=\"{}\"];", name.replace('"', "\\\""));
            }
            None => {
                let _ = writeln!(out, "  {v};");
            }
        }
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}
