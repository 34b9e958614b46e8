//! Gadget constructions that reduce general graph isomorphism to isomorphism
//! on `(diamond, 2P3)`-, `(diamond, P6)`- and `(gem, P1+2P2)`-free graphs.
//!
//! Every gadget keeps the role of each vertex so that callers can check
//! structural claims directly.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::catalog;
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("vertex {vertex} is isolated; the gem gadget needs every vertex to have degree at least 1")]
    IsolatedVertex { vertex: usize },
    #[error("edge order must be a permutation of 0..{edges}")]
    BadEdgeOrder { edges: usize },
    #[error("unknown reduction {0:?} (expected diamond-2p3, diamond-p6 or gem-p1-2p2)")]
    Unknown(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Reduction {
    Diamond2P3,
    DiamondP6,
    GemP1TwoP2,
}

impl Reduction {
    pub const ALL: [Reduction; 3] = [Reduction::Diamond2P3, Reduction::DiamondP6, Reduction::GemP1TwoP2];

    pub fn id(self) -> &'static str {
        match self {
            Reduction::Diamond2P3 => "diamond-2p3",
            Reduction::DiamondP6 => "diamond-p6",
            Reduction::GemP1TwoP2 => "gem-p1-2p2",
        }
    }

    /// Catalog names of the two graphs every gadget of this kind avoids.
    pub fn forbidden_names(self) -> [&'static str; 2] {
        match self {
            Reduction::Diamond2P3 => ["diamond", "2P3"],
            Reduction::DiamondP6 => ["diamond", "P6"],
            Reduction::GemP1TwoP2 => ["gem", "P1+2P2"],
        }
    }

    pub fn forbidden_pair(self) -> [Graph; 2] {
        self.forbidden_names()
            .map(|name| catalog::make(name).expect("static catalog name"))
    }

    /// Applies the bare construction `q` to `g`.
    pub fn apply(self, g: &Graph) -> Result<GadgetGraph, ReductionError> {
        match self {
            Reduction::Diamond2P3 => Ok(reduce_diamond_2p3(g)),
            Reduction::DiamondP6 => Ok(reduce_diamond_p6(g)),
            Reduction::GemP1TwoP2 => reduce_gem_p1_2p2(g),
        }
    }
}

impl fmt::Display for Reduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Reduction {
    type Err = ReductionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Reduction::ALL
            .into_iter()
            .find(|r| r.id() == s)
            .ok_or_else(|| ReductionError::Unknown(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    A,
    B,
    C,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Role::A => "A",
            Role::B => "B",
            Role::C => "C",
        })
    }
}

/// Class index inside the gem gadget: `A(i)` is the class of input vertex
/// `i`, `B(k)` the pair of input edge `k` (edges in ascending order).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PartClass {
    A(usize),
    B(usize),
}

impl fmt::Display for PartClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartClass::A(i) => write!(f, "A{i}"),
            PartClass::B(k) => write!(f, "B{k}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetGraph {
    pub reduction: Reduction,
    pub graph: Graph,
    pub roles: Vec<Role>,
    /// Present for the gem gadget only.
    pub classes: Option<Vec<PartClass>>,
}

impl GadgetGraph {
    pub fn role_set(&self, role: Role) -> Vec<usize> {
        (0..self.roles.len()).filter(|&v| self.roles[v] == role).collect()
    }

    /// One `vertex role [class]` line per vertex.
    pub fn role_map(&self) -> String {
        let mut out = String::new();
        for (v, role) in self.roles.iter().enumerate() {
            match &self.classes {
                Some(classes) => out.push_str(&format!("{v} {role} {}\n", classes[v])),
                None => out.push_str(&format!("{v} {role}\n")),
            }
        }
        out
    }
}

/// A clique on `V(G)`, and for every edge `vw` a path `v - v_w - w_v - w`.
///
/// Vertices `0..n` form `A`; edge `k` (ascending order) adds `v_w = n + 2k`
/// and `w_v = n + 2k + 1`.
pub fn reduce_diamond_2p3(g: &Graph) -> GadgetGraph {
    let n = g.order();
    let edges = g.edges();
    let total = n + 2 * edges.len();
    let mut list = Vec::with_capacity(n * n / 2 + 3 * edges.len());
    for u in 0..n {
        list.extend((u + 1..n).map(|v| (u, v)));
    }
    for (k, &(v, w)) in edges.iter().enumerate() {
        let (vw, wv) = (n + 2 * k, n + 2 * k + 1);
        list.extend([(v, vw), (vw, wv), (wv, w)]);
    }
    let mut roles = vec![Role::A; n];
    roles.resize(total, Role::B);
    GadgetGraph {
        reduction: Reduction::Diamond2P3,
        graph: Graph::new(total, list).expect("gadget edges are in range"),
        roles,
        classes: None,
    }
}

/// Independent sets `A = V(G)` and `C = E(G)` joined completely, and for every
/// edge `e = vw` a path `v - v_w - e - w_v - w`.
///
/// Vertices `0..n` form `A`, `n..n+m` form `C` (edge `k` is `n + k`), and
/// edge `k` adds `v_w = n + m + 2k` and `w_v = n + m + 2k + 1`.
pub fn reduce_diamond_p6(g: &Graph) -> GadgetGraph {
    let n = g.order();
    let edges = g.edges();
    let m = edges.len();
    let total = n + 3 * m;
    let mut list = Vec::with_capacity(n * m + 4 * m);
    for a in 0..n {
        list.extend((0..m).map(|k| (a, n + k)));
    }
    for (k, &(v, w)) in edges.iter().enumerate() {
        let e = n + k;
        let (vw, wv) = (n + m + 2 * k, n + m + 2 * k + 1);
        list.extend([(v, vw), (vw, e), (e, wv), (wv, w)]);
    }
    let mut roles = vec![Role::A; n];
    roles.resize(n + m, Role::C);
    roles.resize(total, Role::B);
    GadgetGraph {
        reduction: Reduction::DiamondP6,
        graph: Graph::new(total, list).expect("gadget edges are in range"),
        roles,
        classes: None,
    }
}

/// Complete multipartite `A` with `|A_i| = d(v_i)`, complete multipartite `B`
/// with one part of size 2 per edge, and a perfect matching between them in
/// which the pair of edge `v_i v_j` sends one vertex to `A_i` and one to `A_j`.
///
/// `A_i` occupies a contiguous block in vertex order, followed by `B`, where
/// edge `k` owns vertices `|A| + 2k` (matched into the smaller endpoint's
/// class) and `|A| + 2k + 1`. Edges are processed in ascending order and each
/// takes the next free slot of its classes.
pub fn reduce_gem_p1_2p2(g: &Graph) -> Result<GadgetGraph, ReductionError> {
    let m = g.edge_count();
    reduce_gem_p1_2p2_ordered(g, &(0..m).collect::<Vec<_>>())
}

/// As [`reduce_gem_p1_2p2`], but edges claim slots in the order given by
/// `edge_order`, a permutation of the edge indices.
pub fn reduce_gem_p1_2p2_ordered(g: &Graph, edge_order: &[usize]) -> Result<GadgetGraph, ReductionError> {
    let n = g.order();
    if let Some(vertex) = (0..n).find(|&v| g.degree(v) == 0) {
        return Err(ReductionError::IsolatedVertex { vertex });
    }
    let edges = g.edges();
    let m = edges.len();
    let mut seen = vec![false; m];
    if edge_order.len() != m || edge_order.iter().any(|&k| k >= m || std::mem::replace(&mut seen[k], true)) {
        return Err(ReductionError::BadEdgeOrder { edges: m });
    }
    let a_size = 2 * m;
    let mut offset = vec![0; n + 1];
    for i in 0..n {
        offset[i + 1] = offset[i] + g.degree(i);
    }
    let mut classes = Vec::with_capacity(4 * m);
    for i in 0..n {
        classes.extend(std::iter::repeat_n(PartClass::A(i), g.degree(i)));
    }
    for k in 0..m {
        classes.extend([PartClass::B(k), PartClass::B(k)]);
    }
    let mut next_slot = offset[..n].to_vec();
    let mut matching = Vec::with_capacity(a_size);
    for &k in edge_order {
        let (i1, i2) = edges[k];
        for (end, i) in [(0, i1), (1, i2)] {
            matching.push((next_slot[i], a_size + 2 * k + end));
            next_slot[i] += 1;
        }
    }
    let graph = Graph::from_fn(4 * m, |u, v| match (classes[u], classes[v]) {
        (PartClass::A(i), PartClass::A(j)) | (PartClass::B(i), PartClass::B(j)) => i != j,
        _ => false,
    });
    let graph = graph.union_edges(&matching);
    let mut roles = vec![Role::A; a_size];
    roles.resize(4 * m, Role::B);
    Ok(GadgetGraph {
        reduction: Reduction::GemP1TwoP2,
        graph,
        roles,
        classes: Some(classes),
    })
}

/// The instance used in the hardness argument for `which`: the bare
/// construction for `diamond-2p3`, and the construction applied to `G*`
/// (four new dominating clique vertices) for the other two.
pub fn hardness_instance(g: &Graph, which: Reduction) -> GadgetGraph {
    match which {
        Reduction::Diamond2P3 => reduce_diamond_2p3(g),
        Reduction::DiamondP6 => reduce_diamond_p6(&g.add_dominating_clique(4)),
        Reduction::GemP1TwoP2 => reduce_gem_p1_2p2(&g.add_dominating_clique(4))
            .expect("adding a dominating clique leaves no isolated vertex"),
    }
}

impl Graph {
    /// A copy with the extra edges `pairs` added.
    pub fn union_edges(&self, pairs: &[(usize, usize)]) -> Graph {
        let mut edges = self.edges();
        edges.extend_from_slice(pairs);
        Graph::new(self.order(), edges).expect("edges stay within the vertex range")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::make;
    use crate::iso::is_isomorphic;
    use crate::subiso::is_free;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn g(name: &str) -> Graph {
        make(name).unwrap()
    }

    #[test]
    fn diamond_2p3_counts() {
        let q = reduce_diamond_2p3(&g("K3"));
        assert_eq!((q.graph.order(), q.graph.edge_count()), (9, 12));
        for v in q.role_set(Role::A) {
            assert_eq!(q.graph.degree(v), 4);
        }
        for v in q.role_set(Role::B) {
            let nb = q.graph.neighbors(v).collect::<Vec<_>>();
            assert_eq!(nb.len(), 2);
            assert!(!q.graph.has_edge(nb[0], nb[1]));
        }
        let single = reduce_diamond_2p3(&g("P1"));
        assert_eq!(single.graph, g("P1"));
        assert!(single.role_set(Role::B).is_empty());
        let pet = reduce_diamond_2p3(&g("petersen"));
        assert!(is_free(&pet.graph, &Reduction::Diamond2P3.forbidden_pair()));
    }

    #[test]
    fn diamond_p6_counts() {
        let q = reduce_diamond_p6(&g("P2"));
        assert_eq!(q.graph.order(), 5);
        assert_eq!(q.graph.degree(q.role_set(Role::C)[0]), 4);
        assert!(is_free(&q.graph, &Reduction::DiamondP6.forbidden_pair()));
        for v in q.role_set(Role::B) {
            let nb = q.graph.neighbors(v).collect::<Vec<_>>();
            assert_eq!(nb.len(), 2);
            assert!(q.graph.has_edge(nb[0], nb[1]));
        }
        assert_eq!(reduce_diamond_p6(&Graph::empty(3)).graph, Graph::empty(3));
    }

    #[test]
    fn gem_counts_and_matching() {
        let q = reduce_gem_p1_2p2(&g("P3")).unwrap();
        assert_eq!(q.graph.order(), 8);
        assert_eq!((q.role_set(Role::A).len(), q.role_set(Role::B).len()), (4, 4));
        let q = reduce_gem_p1_2p2(&g("K3")).unwrap();
        assert_eq!(q.graph.order(), 12);
        let b = q.role_set(Role::B);
        for v in q.role_set(Role::A) {
            assert_eq!(q.graph.neighbors(v).filter(|w| b.contains(w)).count(), 1);
        }
        assert!(is_free(&q.graph, &Reduction::GemP1TwoP2.forbidden_pair()));
        assert_eq!(
            reduce_gem_p1_2p2(&g("P2+P1")),
            Err(ReductionError::IsolatedVertex { vertex: 2 })
        );
    }

    #[test]
    fn gem_pairs_reach_both_endpoint_classes() {
        let q = reduce_gem_p1_2p2(&g("C5")).unwrap();
        let classes = q.classes.as_ref().unwrap();
        for (k, (i, j)) in g("C5").edges().into_iter().enumerate() {
            let pair = (0..q.graph.order()).filter(|&v| classes[v] == PartClass::B(k)).collect::<Vec<_>>();
            let mut reached = pair
                .iter()
                .flat_map(|&b| q.graph.neighbors(b).filter_map(|a| match classes[a] {
                    PartClass::A(x) => Some(x),
                    PartClass::B(_) => None,
                }))
                .collect::<Vec<_>>();
            reached.sort_unstable();
            assert_eq!(reached, vec![i, j]);
        }
    }

    #[test]
    fn gem_slot_order_does_not_matter() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        let mut checked = 0;
        while checked < 10 {
            let h = Graph::from_fn(6, |_, _| rng.gen_bool(0.5));
            if (0..6).any(|v| h.degree(v) == 0) {
                continue;
            }
            let mut order = (0..h.edge_count()).collect::<Vec<_>>();
            order.shuffle(&mut rng);
            let a = reduce_gem_p1_2p2(&h).unwrap();
            let b = reduce_gem_p1_2p2_ordered(&h, &order).unwrap();
            assert!(is_isomorphic(&a.graph, &b.graph));
            checked += 1;
        }
        assert_eq!(
            reduce_gem_p1_2p2_ordered(&g("P3"), &[0, 0]),
            Err(ReductionError::BadEdgeOrder { edges: 2 })
        );
    }

    #[test]
    fn hardness_instance_sizes() {
        assert_eq!(hardness_instance(&g("P2"), Reduction::DiamondP6).graph.order(), 51);
        let q = hardness_instance(&Graph::empty(3), Reduction::GemP1TwoP2);
        assert_eq!(q.graph.order(), 72);
        let p = g("P4");
        assert_eq!(hardness_instance(&p, Reduction::Diamond2P3), reduce_diamond_2p3(&p));
    }

    #[test]
    fn ids_roundtrip() {
        for r in Reduction::ALL {
            assert_eq!(r.id().parse::<Reduction>().unwrap(), r);
        }
        assert!(matches!("gem".parse::<Reduction>(), Err(ReductionError::Unknown(_))));
    }
}
