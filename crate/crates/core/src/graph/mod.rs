//! Immutable simple undirected graphs.
//!
//! Vertices are always `0..n`. Every operation returns a new [`Graph`];
//! nothing mutates a value after construction. Equality is exact
//! adjacency equality, isomorphism-aware comparison lives in [`crate::iso`].

mod format;

use std::fmt;

use fixedbitset::FixedBitSet;
use thiserror::Error;

pub use format::{FormatError, EdgeListError, Graph6Error};

/// Errors raised when building or transforming a graph.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices (pair {pair:?})")]
    VertexOutOfRange {
        vertex: usize,
        n: usize,
        pair: Option<(usize, usize)>,
    },
    #[error("self-loop on vertex {vertex} (pair ({vertex}, {vertex}))")]
    SelfLoop { vertex: usize },
    #[error("vertex {vertex} occurs in both sets of a bipartite complementation")]
    OverlappingSets { vertex: usize },
}

/// A simple undirected graph on the vertex set `0..n`, stored as one
/// adjacency bitset per vertex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    rows: Vec<FixedBitSet>,
}

/// A connected component, as a sorted vertex list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub vertices: Vec<usize>,
}

impl Component {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// A component is trivial when it is a single vertex.
    pub fn is_trivial(&self) -> bool {
        self.vertices.len() == 1
    }
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            rows: vec![FixedBitSet::with_capacity(n); n],
        }
    }

    /// The complete graph on `n` vertices.
    pub fn complete(n: usize) -> Self {
        let mut rows = vec![FixedBitSet::with_capacity(n); n];
        for (v, row) in rows.iter_mut().enumerate() {
            row.insert_range(..);
            row.set(v, false);
        }
        Graph { rows }
    }

    /// Builds a graph from an edge list. Duplicate pairs collapse.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange {
                        vertex: w,
                        n,
                        pair: Some((u, v)),
                    });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop { vertex: u });
            }
            g.rows[u].insert(v);
            g.rows[v].insert(u);
        }
        Ok(g)
    }

    /// Builds a graph from an adjacency predicate evaluated on every pair `u < v`.
    pub fn from_fn(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in (u + 1)..n {
                if adjacent(u, v) {
                    g.rows[u].insert(v);
                    g.rows[v].insert(u);
                }
            }
        }
        g
    }

    pub fn order(&self) -> usize {
        self.rows.len()
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones(..)).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.rows[v].ones()
    }

    /// The open neighbourhood of `v` as a bitset.
    pub fn neighborhood(&self, v: usize) -> &FixedBitSet {
        &self.rows[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones(..)
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.order()).map(|v| self.degree(v)).collect()
    }

    /// Degree sequence in non-increasing order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d = self.degrees();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    /// All edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.order() {
            out.extend(self.rows[u].ones().filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    fn check_vertices(&self, set: &[usize]) -> Result<(), GraphError> {
        let n = self.order();
        match set.iter().find(|&&v| v >= n) {
            Some(&vertex) => Err(GraphError::VertexOutOfRange {
                vertex,
                n,
                pair: None,
            }),
            None => Ok(()),
        }
    }

    fn mask(&self, set: &[usize]) -> FixedBitSet {
        let mut m = FixedBitSet::with_capacity(self.order());
        for &v in set {
            m.insert(v);
        }
        m
    }

    pub fn complement(&self) -> Graph {
        let n = self.order();
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(v, row)| {
                let mut r = row.clone();
                r.toggle_range(..);
                r.set(v, false);
                r
            })
            .collect::<Vec<_>>();
        debug_assert!(rows.iter().all(|r| r.len() == n));
        Graph { rows }
    }

    /// `self + other`; the vertices of `other` are shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.order();
        let n = shift + other.order();
        let mut rows = Vec::with_capacity(n);
        for row in &self.rows {
            let mut r = row.clone();
            r.grow(n);
            rows.push(r);
        }
        for row in &other.rows {
            let mut r = FixedBitSet::with_capacity(n);
            for w in row.ones() {
                r.insert(w + shift);
            }
            rows.push(r);
        }
        Graph { rows }
    }

    /// `copies` disjoint copies of `self`.
    pub fn repeat(&self, copies: usize) -> Graph {
        (0..copies).fold(Graph::empty(0), |acc, _| acc.disjoint_union(self))
    }

    /// The subgraph induced by `set`. Vertices are renumbered `0..|set|`
    /// in ascending order of their original index; duplicates are ignored.
    pub fn induced(&self, set: &[usize]) -> Result<Graph, GraphError> {
        self.check_vertices(set)?;
        let mut keep = set.to_vec();
        keep.sort_unstable();
        keep.dedup();
        Ok(self.induced_sorted(&keep))
    }

    pub(crate) fn induced_sorted(&self, keep: &[usize]) -> Graph {
        let k = keep.len();
        let mut rows = vec![FixedBitSet::with_capacity(k); k];
        for (i, &u) in keep.iter().enumerate() {
            for (j, &v) in keep.iter().enumerate().skip(i + 1) {
                if self.rows[u].contains(v) {
                    rows[i].insert(j);
                    rows[j].insert(i);
                }
            }
        }
        Graph { rows }
    }

    /// Deletes `set`; equivalent to inducing on the remaining vertices.
    pub fn delete_vertices(&self, set: &[usize]) -> Result<Graph, GraphError> {
        self.check_vertices(set)?;
        let gone = self.mask(set);
        let keep = (0..self.order())
            .filter(|v| !gone.contains(*v))
            .collect::<Vec<_>>();
        Ok(self.induced_sorted(&keep))
    }

    /// Flips adjacency on every pair of distinct vertices inside `set`.
    pub fn subgraph_complementation(&self, set: &[usize]) -> Result<Graph, GraphError> {
        self.check_vertices(set)?;
        let inside = self.mask(set);
        let mut g = self.clone();
        for v in inside.ones() {
            g.rows[v].symmetric_difference_with(&inside);
            g.rows[v].set(v, false);
        }
        Ok(g)
    }

    /// Flips adjacency on every pair with one end in `s` and the other in `t`.
    pub fn bipartite_complementation(&self, s: &[usize], t: &[usize]) -> Result<Graph, GraphError> {
        self.check_vertices(s)?;
        self.check_vertices(t)?;
        let sm = self.mask(s);
        let tm = self.mask(t);
        if let Some(vertex) = sm.intersection(&tm).next() {
            return Err(GraphError::OverlappingSets { vertex });
        }
        let mut g = self.clone();
        for v in sm.ones() {
            g.rows[v].symmetric_difference_with(&tm);
        }
        for v in tm.ones() {
            g.rows[v].symmetric_difference_with(&sm);
        }
        Ok(g)
    }

    /// Adds `k` pairwise adjacent vertices that dominate the whole graph.
    /// The new vertices get the indices `n..n+k`.
    pub fn add_dominating_clique(&self, k: usize) -> Graph {
        let n = self.order();
        let total = n + k;
        let mut g = self.with_extra_vertices(k);
        for v in n..total {
            g.rows[v].insert_range(..);
            g.rows[v].set(v, false);
            for u in 0..n {
                g.rows[u].insert(v);
            }
            for u in n..total {
                if u != v {
                    g.rows[u].insert(v);
                }
            }
        }
        g
    }

    /// Adds one vertex adjacent to exactly `neighbors`; it gets index `n`.
    pub fn add_vertex(&self, neighbors: &[usize]) -> Result<Graph, GraphError> {
        self.check_vertices(neighbors)?;
        let n = self.order();
        let mut g = self.with_extra_vertices(1);
        for &u in neighbors {
            g.rows[u].insert(n);
            g.rows[n].insert(u);
        }
        Ok(g)
    }

    fn with_extra_vertices(&self, k: usize) -> Graph {
        let total = self.order() + k;
        let mut rows = self.rows.clone();
        for r in rows.iter_mut() {
            r.grow(total);
        }
        rows.extend(std::iter::repeat_n(FixedBitSet::with_capacity(total), k));
        Graph { rows }
    }

    /// Renames vertex `v` to `perm[v]`. `perm` must be a permutation of `0..n`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        let n = self.order();
        assert_eq!(perm.len(), n, "permutation length must equal the order");
        let mut rows = vec![FixedBitSet::with_capacity(n); n];
        for u in 0..n {
            for v in self.rows[u].ones() {
                rows[perm[u]].insert(perm[v]);
            }
        }
        Graph { rows }
    }

    /// Connected components, each sorted, listed by smallest vertex.
    pub fn components(&self) -> Vec<Component> {
        let n = self.order();
        let mut seen = FixedBitSet::with_capacity(n);
        let mut out = Vec::new();
        for start in 0..n {
            if seen.contains(start) {
                continue;
            }
            seen.insert(start);
            let mut stack = vec![start];
            let mut verts = Vec::new();
            while let Some(v) = stack.pop() {
                verts.push(v);
                for w in self.rows[v].ones() {
                    if !seen.contains(w) {
                        seen.insert(w);
                        stack.push(w);
                    }
                }
            }
            verts.sort_unstable();
            out.push(Component { vertices: verts });
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.order() <= 1 || self.components().len() == 1
    }

    pub fn is_clique(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }

    /// True when every vertex of `a` is adjacent to every vertex of `b`.
    pub fn is_complete_to(&self, a: &[usize], b: &[usize]) -> bool {
        a.iter().all(|&u| b.iter().all(|&v| u != v && self.has_edge(u, v)))
    }

    /// True when no vertex of `a` is adjacent to a vertex of `b`.
    pub fn is_anticomplete_to(&self, a: &[usize], b: &[usize]) -> bool {
        a.iter().all(|&u| b.iter().all(|&v| !self.has_edge(u, v)))
    }

    /// If the graph is complete multipartite, returns its (unique) partition
    /// into independent classes, each sorted and listed by smallest vertex.
    pub fn complete_multipartite_classes(&self) -> Option<Vec<Vec<usize>>> {
        // Non-adjacency must be an equivalence relation: the complement is a
        // disjoint union of cliques.
        let co = self.complement();
        let classes = co
            .components()
            .into_iter()
            .map(|c| c.vertices)
            .collect::<Vec<_>>();
        classes
            .iter()
            .all(|c| self.is_independent(c))
            .then_some(classes)
    }

    pub fn is_complete_multipartite(&self) -> bool {
        self.complete_multipartite_classes().is_some()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.order(), self.edges())
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_graph6())
    }
}
