//! Clique-width: k-expressions, exact computation on tiny graphs and grid
//! partition lower-bound certificates.

mod exact;
mod grid;

use std::fmt;

use thiserror::Error;

use crate::graph::Graph;

pub use exact::{exact_cliquewidth, k_expression, CwOutcome, EXACT_CAP};
pub use grid::{
    build_hn_prime, parse_partition, verify_grid_certificate, write_partition, CertError,
    GridPartitionCertificate, PartitionParseError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CwError {
    #[error("join needs two different labels, got {label} twice")]
    JoinSameLabel { label: usize },
    #[error("label {label} is outside 1..={k}")]
    LabelOutOfRange { label: usize, k: usize },
    #[error("vertex {vertex} is created more than once")]
    DuplicateVertex { vertex: usize },
    #[error("created vertices are not exactly 0..{n}; vertex {missing} is missing")]
    MissingVertex { n: usize, missing: usize },
    #[error("exact clique-width is capped at {cap} vertices, graph has {n}")]
    TooLarge { n: usize, cap: usize },
}

/// A term over the four clique-width operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    /// A new vertex with the given label.
    Create { vertex: usize, label: usize },
    Union(Box<Term>, Box<Term>),
    /// Adds every edge between a vertex labelled `a` and one labelled `b`.
    Join { a: usize, b: usize, body: Box<Term> },
    /// Relabels every vertex labelled `from` to `to`.
    Rename { from: usize, to: usize, body: Box<Term> },
}

impl Term {
    pub fn create(vertex: usize, label: usize) -> Term {
        Term::Create { vertex, label }
    }

    pub fn union(self, other: Term) -> Term {
        Term::Union(Box::new(self), Box::new(other))
    }

    pub fn join(self, a: usize, b: usize) -> Term {
        Term::Join { a, b, body: Box::new(self) }
    }

    pub fn rename(self, from: usize, to: usize) -> Term {
        Term::Rename { from, to, body: Box::new(self) }
    }

    fn max_label(&self) -> usize {
        match self {
            Term::Create { label, .. } => *label,
            Term::Union(l, r) => l.max_label().max(r.max_label()),
            Term::Join { a, b, body } => (*a).max(*b).max(body.max_label()),
            Term::Rename { from, to, body } => (*from).max(*to).max(body.max_label()),
        }
    }
}

/// A k-expression: a term whose labels all lie in `1..=k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CwExpression {
    pub k: usize,
    pub term: Term,
}

impl CwExpression {
    /// Wraps `term`, taking `k` to be its largest label.
    pub fn new(term: Term) -> Self {
        CwExpression { k: term.max_label(), term }
    }

    /// The underlying simple graph. Vertices are the ids used by `Create`,
    /// which must be exactly `0..n`.
    pub fn evaluate(&self) -> Result<Graph, CwError> {
        self.evaluate_labelled().map(|(g, _)| g)
    }

    /// The graph together with the final label of every vertex.
    pub fn evaluate_labelled(&self) -> Result<(Graph, Vec<usize>), CwError> {
        let mut created = Vec::new();
        collect_vertices(&self.term, &mut created);
        let n = created.len();
        let mut seen = vec![false; n];
        for &v in &created {
            if v >= n {
                let missing = (0..n).find(|&u| !created.contains(&u)).unwrap_or(n);
                return Err(CwError::MissingVertex { n, missing });
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(CwError::DuplicateVertex { vertex: v });
            }
        }
        let mut edges = Vec::new();
        let labelled = self.eval(&self.term, &mut edges)?;
        let mut labels = vec![0; n];
        for (v, l) in labelled {
            labels[v] = l;
        }
        let g = Graph::new(n, edges).expect("edges join distinct created vertices");
        Ok((g, labels))
    }

    fn check(&self, label: usize) -> Result<(), CwError> {
        if (1..=self.k).contains(&label) {
            Ok(())
        } else {
            Err(CwError::LabelOutOfRange { label, k: self.k })
        }
    }

    fn eval(&self, t: &Term, edges: &mut Vec<(usize, usize)>) -> Result<Vec<(usize, usize)>, CwError> {
        match t {
            Term::Create { vertex, label } => {
                self.check(*label)?;
                Ok(vec![(*vertex, *label)])
            }
            Term::Union(l, r) => {
                let mut out = self.eval(l, edges)?;
                out.extend(self.eval(r, edges)?);
                Ok(out)
            }
            Term::Join { a, b, body } => {
                self.check(*a)?;
                self.check(*b)?;
                if a == b {
                    return Err(CwError::JoinSameLabel { label: *a });
                }
                let inner = self.eval(body, edges)?;
                for &(u, lu) in &inner {
                    if lu != *a {
                        continue;
                    }
                    edges.extend(inner.iter().filter(|&&(_, lv)| lv == *b).map(|&(v, _)| (u, v)));
                }
                Ok(inner)
            }
            Term::Rename { from, to, body } => {
                self.check(*from)?;
                self.check(*to)?;
                let mut inner = self.eval(body, edges)?;
                for (_, l) in inner.iter_mut() {
                    if *l == *from {
                        *l = *to;
                    }
                }
                Ok(inner)
            }
        }
    }
}

fn collect_vertices(t: &Term, out: &mut Vec<usize>) {
    match t {
        Term::Create { vertex, .. } => out.push(*vertex),
        Term::Union(l, r) => {
            collect_vertices(l, out);
            collect_vertices(r, out);
        }
        Term::Join { body, .. } | Term::Rename { body, .. } => collect_vertices(body, out),
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Create { vertex, label } => write!(f, "{label}({vertex})"),
            Term::Union(l, r) => write!(f, "({l} + {r})"),
            Term::Join { a, b, body } => write!(f, "join[{a},{b}]{body}"),
            Term::Rename { from, to, body } => write!(f, "rename[{from}->{to}]{body}"),
        }
    }
}

impl fmt::Display for CwExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.term)
    }
}
