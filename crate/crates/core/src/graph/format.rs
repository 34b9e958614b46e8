//! graph6 and plain edge-list serialization.
//!
//! graph6 follows McKay's layout: a size header (one byte `n + 63` for
//! `n < 63`, `~` plus three bytes up to 258047, `~~` plus six bytes beyond)
//! followed by the upper triangle read column by column, six bits per
//! printable byte, most significant bit first, zero padded.

use thiserror::Error;

use super::{Graph, GraphError};

const G6_SMALL: usize = 62;
const G6_MEDIUM: usize = 258_047;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("invalid graph6 byte {byte:#04x} at offset {offset}")]
    InvalidByte { byte: u8, offset: usize },
    #[error("graph6 string for {n} vertices needs {expected} data bytes, found {found}")]
    Length {
        n: usize,
        expected: usize,
        found: usize,
    },
    #[error("graph6 padding bits are not zero")]
    Padding,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EdgeListError {
    #[error("edge list is empty, expected a header line \"n m\"")]
    MissingHeader,
    #[error("line {line}: expected two non-negative integers, found {text:?}")]
    BadLine { line: usize, text: String },
    #[error("header announces {expected} edges, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error("line {line}: {source}")]
    Graph {
        line: usize,
        #[source]
        source: GraphError,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error(transparent)]
    Graph6(#[from] Graph6Error),
    #[error(transparent)]
    EdgeList(#[from] EdgeListError),
}

fn push_size(out: &mut Vec<u8>, n: usize) {
    if n <= G6_SMALL {
        out.push(n as u8 + 63);
    } else if n <= G6_MEDIUM {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

/// Decodes the size header; returns `n` and the header length in bytes.
fn parse_size(bytes: &[u8]) -> Result<(usize, usize), Graph6Error> {
    let fold = |b: &[u8]| b.iter().fold(0usize, |acc, &b| (acc << 6) | usize::from(b - 63));
    if bytes[0] != 126 {
        Ok((usize::from(bytes[0] - 63), 1))
    } else if bytes.len() >= 2 && bytes[1] != 126 {
        if bytes.len() < 4 {
            return Err(Graph6Error::Length { n: 0, expected: 3, found: bytes.len() - 1 });
        }
        Ok((fold(&bytes[1..4]), 4))
    } else {
        if bytes.len() < 8 {
            return Err(Graph6Error::Length { n: 0, expected: 6, found: bytes.len().saturating_sub(2) });
        }
        Ok((fold(&bytes[2..8]), 8))
    }
}

impl Graph {
    pub fn to_graph6(&self) -> String {
        let n = self.order();
        let mut out = Vec::new();
        push_size(&mut out, n);
        let mut acc = 0u8;
        let mut bits = 0;
        for j in 1..n {
            for i in 0..j {
                acc = (acc << 1) | u8::from(self.has_edge(i, j));
                bits += 1;
                if bits == 6 {
                    out.push(acc + 63);
                    acc = 0;
                    bits = 0;
                }
            }
        }
        if bits > 0 {
            out.push((acc << (6 - bits)) + 63);
        }
        String::from_utf8(out).expect("graph6 output is ASCII")
    }

    pub fn from_graph6(text: &str) -> Result<Graph, Graph6Error> {
        let bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
        // optional ">>graph6<<" header
        let bytes = bytes.strip_prefix(b">>graph6<<").unwrap_or(bytes);
        if bytes.is_empty() {
            return Err(Graph6Error::Empty);
        }
        for (offset, &byte) in bytes.iter().enumerate() {
            if !(63..=126).contains(&byte) {
                return Err(Graph6Error::InvalidByte { byte, offset });
            }
        }
        let (n, header) = parse_size(bytes)?;
        let data = &bytes[header..];
        let total_bits = n * n.saturating_sub(1) / 2;
        let expected = total_bits.div_ceil(6);
        if data.len() != expected {
            return Err(Graph6Error::Length { n, expected, found: data.len() });
        }
        let bit = |k: usize| (data[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
        for k in total_bits..expected * 6 {
            if bit(k) {
                return Err(Graph6Error::Padding);
            }
        }
        let mut g = Graph::empty(n);
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                if bit(k) {
                    g.rows[i].insert(j);
                    g.rows[j].insert(i);
                }
                k += 1;
            }
        }
        Ok(g)
    }

    /// Plain text: `"n m"` on the first line, then one `"u v"` line per edge.
    pub fn to_edge_list(&self) -> String {
        let edges = self.edges();
        let mut s = format!("{} {}\n", self.order(), edges.len());
        for (u, v) in edges {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    pub fn from_edge_list(text: &str) -> Result<Graph, EdgeListError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let pair = |line: usize, text: &str| -> Result<(usize, usize), EdgeListError> {
            let bad = || EdgeListError::BadLine { line, text: text.to_string() };
            let mut it = text.split_whitespace();
            let a = it.next().and_then(|t| t.parse().ok()).ok_or_else(bad)?;
            let b = it.next().and_then(|t| t.parse().ok()).ok_or_else(bad)?;
            if it.next().is_some() {
                return Err(bad());
            }
            Ok((a, b))
        };
        let (line, header) = lines.next().ok_or(EdgeListError::MissingHeader)?;
        let (n, m) = pair(line, header)?;
        let mut g = Graph::empty(n);
        let mut found = 0;
        for (line, text) in lines {
            let (u, v) = pair(line, text)?;
            let single = Graph::new(n, [(u, v)]).map_err(|source| EdgeListError::Graph { line, source })?;
            g.rows[u].union_with(&single.rows[u]);
            g.rows[v].union_with(&single.rows[v]);
            found += 1;
        }
        if found != m {
            return Err(EdgeListError::EdgeCount { expected: m, found });
        }
        Ok(g)
    }
}
