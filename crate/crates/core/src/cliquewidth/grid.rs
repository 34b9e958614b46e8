//! Grid partitions that certify clique-width lower bounds, and the
//! `H_n'` family built from the gem gadget of the `n × n` grid.

use std::fmt;

use thiserror::Error;

use crate::catalog::grid;
use crate::graph::Graph;
use crate::reductions::{reduce_gem_p1_2p2, PartClass, Role};

/// A partition of `V(G)` into cells `V_{i,j}` with `i, j ∈ 1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridPartitionCertificate {
    pub n: usize,
    pub m: usize,
    /// `cell[v] = (i, j)`, 1-based.
    pub cell: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertError {
    #[error("need m >= 1 and n > m + 1, got n = {n}, m = {m}")]
    Parameters { n: usize, m: usize },
    #[error("partition covers {found} vertices but the graph has {expected}")]
    WrongLength { expected: usize, found: usize },
    #[error("vertex {vertex} is assigned to cell ({i},{j}) outside 1..={n}")]
    CellOutOfRange { vertex: usize, i: usize, j: usize, n: usize },
    #[error("premise 1 violated: cell ({i},{j}) is empty")]
    EmptyCell { i: usize, j: usize },
    #[error("premise 2 violated: row {row} does not induce a connected graph")]
    RowDisconnected { row: usize },
    #[error("premise 3 violated: column {column} does not induce a connected graph")]
    ColumnDisconnected { column: usize },
    #[error("premise 4 violated: edge {u}-{v} joins cells {cu:?} and {cv:?}, more than m = {m} apart")]
    FarEdge {
        u: usize,
        v: usize,
        cu: (usize, usize),
        cv: (usize, usize),
        m: usize,
    },
}

impl CertError {
    /// Which of the four partition premises failed, if any.
    pub fn premise(&self) -> Option<u8> {
        match self {
            CertError::EmptyCell { .. } => Some(1),
            CertError::RowDisconnected { .. } => Some(2),
            CertError::ColumnDisconnected { .. } => Some(3),
            CertError::FarEdge { .. } => Some(4),
            _ => None,
        }
    }
}

/// Checks the four premises in order and returns `⌊(n−1)/(m+1)⌋ + 1`, a
/// lower bound on the clique-width of `g`.
pub fn verify_grid_certificate(g: &Graph, cert: &GridPartitionCertificate) -> Result<usize, CertError> {
    let (n, m) = (cert.n, cert.m);
    if m < 1 || n <= m + 1 {
        return Err(CertError::Parameters { n, m });
    }
    if cert.cell.len() != g.order() {
        return Err(CertError::WrongLength {
            expected: g.order(),
            found: cert.cell.len(),
        });
    }
    for (vertex, &(i, j)) in cert.cell.iter().enumerate() {
        if !(1..=n).contains(&i) || !(1..=n).contains(&j) {
            return Err(CertError::CellOutOfRange { vertex, i, j, n });
        }
    }
    let mut occupied = vec![vec![false; n + 1]; n + 1];
    for &(i, j) in &cert.cell {
        occupied[i][j] = true;
    }
    for i in 1..=n {
        for j in 1..=n {
            if !occupied[i][j] {
                return Err(CertError::EmptyCell { i, j });
            }
        }
    }
    let connected = |pick: &dyn Fn((usize, usize)) -> bool| {
        let set = (0..g.order()).filter(|&v| pick(cert.cell[v])).collect::<Vec<_>>();
        g.induced_sorted(&set).is_connected()
    };
    for row in 1..=n {
        if !connected(&|(i, _)| i == row) {
            return Err(CertError::RowDisconnected { row });
        }
    }
    for column in 1..=n {
        if !connected(&|(_, j)| j == column) {
            return Err(CertError::ColumnDisconnected { column });
        }
    }
    for (u, v) in g.edges() {
        let (cu, cv) = (cert.cell[u], cert.cell[v]);
        if cu.0.abs_diff(cv.0) > m || cu.1.abs_diff(cv.1) > m {
            return Err(CertError::FarEdge { u, v, cu, cv, m });
        }
    }
    Ok((n - 1) / (m + 1) + 1)
}

/// `H_n'`: the gem gadget of the `n × n` grid with both sides complemented,
/// so each grid vertex becomes a clique and each grid edge an anti-matched
/// pair. Cell `(i, j)` holds the clique of grid vertex `(i, j)` together
/// with the gadget vertices matched into it.
pub fn build_hn_prime(n: usize) -> Result<(Graph, GridPartitionCertificate), CertError> {
    if n < 3 {
        return Err(CertError::Parameters { n, m: 1 });
    }
    let q = reduce_gem_p1_2p2(&grid(n)).expect("grids with n >= 2 have no isolated vertex");
    let a = q.role_set(Role::A);
    let b = q.role_set(Role::B);
    let graph = q
        .graph
        .subgraph_complementation(&a)
        .and_then(|h| h.subgraph_complementation(&b))
        .expect("role sets are in range");
    let classes = q.classes.as_ref().expect("the gem gadget records classes");
    let grid_vertex_of = |v: usize| match classes[v] {
        PartClass::A(k) => k,
        PartClass::B(_) => {
            let partner = q
                .graph
                .neighbors(v)
                .find(|&w| q.roles[w] == Role::A)
                .expect("every B vertex is matched into A");
            match classes[partner] {
                PartClass::A(k) => k,
                PartClass::B(_) => unreachable!("partner is an A vertex"),
            }
        }
    };
    let cell = (0..graph.order())
        .map(|v| {
            let k = grid_vertex_of(v);
            (k / n + 1, k % n + 1)
        })
        .collect();
    Ok((graph, GridPartitionCertificate { n, m: 1, cell }))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionParseError {
    #[error("line {line}: expected \"vertex i j\", found {text:?}")]
    BadLine { line: usize, text: String },
    #[error("vertex {vertex} is listed twice")]
    Duplicate { vertex: usize },
    #[error("vertex {vertex} has no cell")]
    Missing { vertex: usize },
}

/// Renders a partition as lines `vertex i j`.
pub fn write_partition(cert: &GridPartitionCertificate) -> String {
    let mut out = String::new();
    for (v, (i, j)) in cert.cell.iter().enumerate() {
        out.push_str(&format!("{v} {i} {j}\n"));
    }
    out
}

/// Reads `vertex i j` lines for vertices `0..order`. The side length `n` is
/// the largest cell coordinate; blank lines and `#` comments are skipped.
pub fn parse_partition(text: &str, order: usize, m: usize) -> Result<GridPartitionCertificate, PartitionParseError> {
    let mut cell: Vec<Option<(usize, usize)>> = vec![None; order];
    let mut n = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = || PartitionParseError::BadLine {
            line: idx + 1,
            text: raw.to_string(),
        };
        let nums = line
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        let [v, i, j] = nums[..] else {
            return Err(bad());
        };
        if v >= order {
            return Err(bad());
        }
        if cell[v].replace((i, j)).is_some() {
            return Err(PartitionParseError::Duplicate { vertex: v });
        }
        n = n.max(i).max(j);
    }
    let cell = cell
        .into_iter()
        .enumerate()
        .map(|(vertex, c)| c.ok_or(PartitionParseError::Missing { vertex }))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GridPartitionCertificate { n, m, cell })
}

impl fmt::Display for GridPartitionCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&write_partition(self))
    }
}
