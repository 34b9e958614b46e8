//! Canonical labelling and isomorphism testing.
//!
//! The search is classic individualization-refinement. Each node of the
//! search tree is an ordered equitable partition. Children are obtained by
//! individualizing one vertex of the first smallest non-singleton cell and
//! refining again. Leaves are discrete partitions, i.e. orderings of the vertex
//! set, and the canonical labelling is the leaf with the largest key
//! `(trace, relabelled adjacency)`.
//!
//! Three kinds of pruning keep the tree small:
//!
//! * invariant pruning discards a node whose trace prefix is already smaller
//!   than the best leaf's,
//! * automorphisms found by comparing leaves prune equivalent siblings and
//!   let the search jump straight back to the common ancestor,
//! * vertices with identical open or closed neighbourhoods are swapped by an
//!   automorphism anyway, so at most one of them is individualized per cell.

use std::cmp::Ordering;
use std::collections::hash_map::DefaultHasher;
use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::graph::Graph;

pub const DEFAULT_MAX_ORDER: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsoError {
    #[error("graph has {n} vertices, above the canonical-form limit of {limit}")]
    TooLarge { n: usize, limit: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CanonConfig {
    pub max_order: usize,
}

impl Default for CanonConfig {
    fn default() -> Self {
        CanonConfig {
            max_order: DEFAULT_MAX_ORDER,
        }
    }
}

/// The graph6 bytes of the canonically relabelled graph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Certificate(Vec<u8>);

impl Certificate {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// The canonical representative itself.
    pub fn graph(&self) -> Graph {
        let text = std::str::from_utf8(&self.0).expect("certificate is ASCII graph6");
        Graph::from_graph6(text).expect("certificate is valid graph6")
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Canon {
    /// `canonical_order[i]` is the input vertex that receives label `i`.
    pub canonical_order: Vec<usize>,
    pub certificate: Certificate,
}

pub fn canonical_form(g: &Graph) -> Result<Canon, IsoError> {
    canonical_form_with(g, &CanonConfig::default())
}

pub fn canonical_form_with(g: &Graph, config: &CanonConfig) -> Result<Canon, IsoError> {
    let n = g.order();
    if n > config.max_order {
        return Err(IsoError::TooLarge {
            n,
            limit: config.max_order,
        });
    }
    Ok(canonize(g))
}

/// The canonical representative of the isomorphism class of `g`.
pub fn canonical_graph(g: &Graph) -> Graph {
    canonize(g).certificate.graph()
}

/// An isomorphism `f` from `g` to `h` (as `f[u]`), or `None`.
///
/// There is no size limit here; every returned map is checked edge by edge.
pub fn are_isomorphic(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    if g.order() != h.order()
        || g.edge_count() != h.edge_count()
        || g.degree_sequence() != h.degree_sequence()
    {
        return None;
    }
    let cg = canonize(g);
    let ch = canonize(h);
    if cg.certificate != ch.certificate {
        return None;
    }
    let mut f = vec![0; g.order()];
    for (&u, &v) in cg.canonical_order.iter().zip(&ch.canonical_order) {
        f[u] = v;
    }
    assert!(is_isomorphism(g, h, &f), "canonical labelling produced an invalid map");
    Some(f)
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    are_isomorphic(g, h).is_some()
}

/// Checks that `f` is a bijection preserving adjacency and non-adjacency.
pub fn is_isomorphism(g: &Graph, h: &Graph, f: &[usize]) -> bool {
    let n = g.order();
    if h.order() != n || f.len() != n || g.edge_count() != h.edge_count() {
        return false;
    }
    let mut seen = FixedBitSet::with_capacity(n);
    for &v in f {
        if v >= n || seen.put(v) {
            return false;
        }
    }
    // equal edge counts plus edge preservation give a bijection on edges
    g.edges().into_iter().all(|(u, v)| h.has_edge(f[u], f[v]))
}

fn canonize(g: &Graph) -> Canon {
    let n = g.order();
    let mut root = Partition::unit(n);
    let root_trace = root.refine(g, &[0]);
    let mut search = Search {
        g,
        first: None,
        best: None,
        autos: Vec::new(),
        twin_class: twin_classes(g),
        path: Vec::new(),
        traces: vec![root_trace],
    };
    search.explore(&root, 0);
    let best = search.best.expect("the search reaches at least one leaf");
    Canon {
        canonical_order: best.lab,
        certificate: Certificate(best.cert),
    }
}

/// Open-twin and closed-twin class ids. Swapping two twins is an automorphism.
fn twin_classes(g: &Graph) -> Vec<(usize, usize)> {
    let n = g.order();
    let mut open: HashMap<&FixedBitSet, usize> = HashMap::new();
    let mut closed: HashMap<FixedBitSet, usize> = HashMap::new();
    (0..n)
        .map(|v| {
            let o = *open.entry(g.neighborhood(v)).or_insert(v);
            let mut nv = g.neighborhood(v).clone();
            nv.insert(v);
            let c = *closed.entry(nv).or_insert(v);
            (o, c)
        })
        .collect()
}

#[derive(Clone)]
struct Partition {
    lab: Vec<usize>,
    pos: Vec<usize>,
    /// Start index of the cell containing each vertex.
    cell_of: Vec<usize>,
    /// Cell length, meaningful at cell starts only.
    cell_len: Vec<usize>,
    cells: usize,
}

impl Partition {
    fn unit(n: usize) -> Self {
        let mut cell_len = vec![0; n];
        if n > 0 {
            cell_len[0] = n;
        }
        Partition {
            lab: (0..n).collect(),
            pos: (0..n).collect(),
            cell_of: vec![0; n],
            cell_len,
            cells: usize::from(n > 0),
        }
    }

    fn is_discrete(&self) -> bool {
        self.cells == self.lab.len()
    }

    /// Start of the first smallest non-singleton cell.
    fn target_cell(&self) -> usize {
        let mut best: Option<usize> = None;
        let mut s = 0;
        while s < self.lab.len() {
            let len = self.cell_len[s];
            if len > 1 && best.is_none_or(|b| len < self.cell_len[b]) {
                best = Some(s);
            }
            s += len;
        }
        best.expect("partition is not discrete")
    }

    fn cell(&self, start: usize) -> &[usize] {
        &self.lab[start..start + self.cell_len[start]]
    }

    /// Moves `v` to the front of its cell as a singleton and refines.
    fn individualize(&mut self, g: &Graph, v: usize) -> u64 {
        let s = self.cell_of[v];
        let len = self.cell_len[s];
        let p = self.pos[v];
        let u = self.lab[s];
        self.lab.swap(s, p);
        self.pos[u] = p;
        self.pos[v] = s;
        self.cell_len[s] = 1;
        self.cell_len[s + 1] = len - 1;
        for &w in &self.lab[s + 1..s + len] {
            self.cell_of[w] = s + 1;
        }
        self.cells += 1;
        let mut h = DefaultHasher::new();
        (s, len).hash(&mut h);
        self.refine(g, &[s]).hash(&mut h);
        h.finish()
    }

    /// Equitable refinement driven by a queue of splitter cells (processed
    /// smallest start first). Returns a hash of the refinement history, which
    /// depends only on isomorphism-invariant data.
    fn refine(&mut self, g: &Graph, initial: &[usize]) -> u64 {
        let n = self.lab.len();
        let mut trace = DefaultHasher::new();
        let mut queued = vec![false; n];
        let mut queue = BinaryHeap::new();
        for &s in initial {
            if s < n && !queued[s] {
                queued[s] = true;
                queue.push(Reverse(s));
            }
        }
        let mut count = vec![0usize; n];
        let mut touched_cells = Vec::new();
        while let Some(Reverse(splitter)) = queue.pop() {
            if self.is_discrete() {
                break;
            }
            queued[splitter] = false;
            let members = self.cell(splitter).to_vec();
            let mut touched = Vec::new();
            for &w in &members {
                for v in g.neighbors(w) {
                    if count[v] == 0 {
                        touched.push(v);
                    }
                    count[v] += 1;
                }
            }
            touched_cells.clear();
            touched_cells.extend(touched.iter().map(|&v| self.cell_of[v]));
            touched_cells.sort_unstable();
            touched_cells.dedup();
            splitter.hash(&mut trace);
            touched.len().hash(&mut trace);
            for &s in &touched_cells {
                let len = self.cell_len[s];
                if len == 1 {
                    continue;
                }
                let mut verts = self.lab[s..s + len].to_vec();
                verts.sort_by_key(|&v| count[v]);
                if count[verts[0]] == count[verts[len - 1]] {
                    continue;
                }
                // write back and carve out subcells
                let mut pieces = Vec::new();
                let mut start = s;
                for (k, &v) in verts.iter().enumerate() {
                    self.lab[s + k] = v;
                    self.pos[v] = s + k;
                    if k > 0 && count[v] != count[verts[k - 1]] {
                        pieces.push((start, s + k - start, count[verts[k - 1]]));
                        start = s + k;
                    }
                }
                pieces.push((start, s + len - start, count[verts[len - 1]]));
                (s, &pieces).hash(&mut trace);
                for &(ps, pl, _) in &pieces {
                    self.cell_len[ps] = pl;
                    for &v in &self.lab[ps..ps + pl] {
                        self.cell_of[v] = ps;
                    }
                }
                self.cells += pieces.len() - 1;
                if queued[s] {
                    for &(ps, _, _) in &pieces[1..] {
                        queued[ps] = true;
                        queue.push(Reverse(ps));
                    }
                } else {
                    let largest = pieces
                        .iter()
                        .enumerate()
                        .max_by(|a, b| a.1 .1.cmp(&b.1 .1).then(b.0.cmp(&a.0)))
                        .map(|(i, _)| i)
                        .expect("at least two pieces");
                    for (i, &(ps, _, _)) in pieces.iter().enumerate() {
                        if i != largest {
                            queued[ps] = true;
                            queue.push(Reverse(ps));
                        }
                    }
                }
            }
            for v in touched {
                count[v] = 0;
            }
        }
        trace.finish()
    }
}

#[derive(Clone)]
struct Leaf {
    lab: Vec<usize>,
    path: Vec<usize>,
    traces: Vec<u64>,
    cert: Vec<u8>,
}

enum Flow {
    Continue,
    /// Abandon everything below the node at this depth.
    Backtrack(usize),
}

struct Search<'a> {
    g: &'a Graph,
    first: Option<Leaf>,
    best: Option<Leaf>,
    autos: Vec<Vec<usize>>,
    twin_class: Vec<(usize, usize)>,
    path: Vec<usize>,
    traces: Vec<u64>,
}

impl Search<'_> {
    fn explore(&mut self, node: &Partition, depth: usize) -> Flow {
        if node.is_discrete() {
            return self.leaf(node);
        }
        let target = node.target_cell();
        let mut cell = node.cell(target).to_vec();
        cell.sort_unstable();
        // orbit representative per cell index, refreshed when new automorphisms appear
        let mut orbits: Option<(usize, Vec<usize>)> = None;
        let mut tried_roots: Vec<usize> = Vec::new();
        let mut tried: Vec<usize> = Vec::new();
        for (i, &v) in cell.iter().enumerate() {
            if !tried.is_empty() {
                if orbits.as_ref().is_none_or(|(known, _)| *known != self.autos.len()) {
                    let roots = self.orbit_roots(&cell);
                    tried_roots = tried
                        .iter()
                        .map(|t| roots[cell.binary_search(t).expect("tried vertices are in the cell")])
                        .collect();
                    orbits = Some((self.autos.len(), roots));
                }
                let roots = &orbits.as_ref().expect("computed above").1;
                if tried_roots.contains(&roots[i]) {
                    continue;
                }
                tried_roots.push(roots[i]);
            }
            tried.push(v);
            let mut child = node.clone();
            let trace = child.individualize(self.g, v);
            self.path.push(v);
            self.traces.push(trace);
            let flow = if self.worse_than_best() {
                Flow::Continue
            } else {
                self.explore(&child, depth + 1)
            };
            self.path.pop();
            self.traces.pop();
            if let Flow::Backtrack(level) = flow {
                if level < depth {
                    return flow;
                }
            }
        }
        Flow::Continue
    }

    /// Orbit representatives of the (sorted) target cell under the twin
    /// swaps and the known automorphisms fixing the current path pointwise.
    fn orbit_roots(&self, cell: &[usize]) -> Vec<usize> {
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        fn union(parent: &mut [usize], a: usize, b: usize) {
            let (ra, rb) = (find(parent, a), find(parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let mut parent = (0..cell.len()).collect::<Vec<_>>();
        let mut first_of_class: HashMap<(bool, usize), usize> = HashMap::new();
        for (i, &x) in cell.iter().enumerate() {
            let (o, c) = self.twin_class[x];
            for key in [(false, o), (true, c)] {
                let j = *first_of_class.entry(key).or_insert(i);
                union(&mut parent, i, j);
            }
        }
        for gamma in &self.autos {
            if self.path.iter().any(|&p| gamma[p] != p) {
                continue;
            }
            for (i, &x) in cell.iter().enumerate() {
                let j = cell.binary_search(&gamma[x]);
                debug_assert!(j.is_ok(), "a path-fixing automorphism preserves the cell");
                if let Ok(j) = j {
                    union(&mut parent, i, j);
                }
            }
        }
        (0..cell.len()).map(|i| find(&mut parent, i)).collect()
    }

    fn worse_than_best(&self) -> bool {
        let Some(best) = &self.best else {
            return false;
        };
        let k = self.traces.len().min(best.traces.len());
        self.traces[..k].cmp(&best.traces[..k]) == Ordering::Less
    }

    fn leaf(&mut self, node: &Partition) -> Flow {
        let lab = node.lab.clone();
        let cert = self.g.permute_to_order(&lab).to_graph6().into_bytes();
        let leaf = Leaf {
            lab,
            path: self.path.clone(),
            traces: self.traces.clone(),
            cert,
        };
        let Some(first) = &self.first else {
            self.first = Some(leaf.clone());
            self.best = Some(leaf);
            return Flow::Continue;
        };
        if let Some((gamma, flow)) = automorphism(self.g, first, &leaf) {
            self.autos.push(gamma);
            return flow;
        }
        let best = self.best.as_ref().expect("best is set together with first");
        match (leaf.traces.as_slice(), &leaf.cert).cmp(&(best.traces.as_slice(), &best.cert)) {
            Ordering::Greater => {
                self.best = Some(leaf);
                Flow::Continue
            }
            Ordering::Equal => {
                let (gamma, flow) = automorphism(self.g, best, &leaf).expect("equal keys share a certificate");
                self.autos.push(gamma);
                flow
            }
            Ordering::Less => Flow::Continue,
        }
    }
}

/// When `leaf` and `other` relabel the graph identically, returns the
/// automorphism mapping one onto the other. With equal traces the two
/// root-to-leaf paths correspond node by node, so the branch of `leaf` below
/// the common ancestor is an image of an already explored branch.
fn automorphism(g: &Graph, other: &Leaf, leaf: &Leaf) -> Option<(Vec<usize>, Flow)> {
    if other.cert != leaf.cert {
        return None;
    }
    let mut gamma = vec![0; leaf.lab.len()];
    for (&a, &b) in other.lab.iter().zip(&leaf.lab) {
        gamma[a] = b;
    }
    debug_assert!(is_isomorphism(g, g, &gamma));
    let flow = if other.traces == leaf.traces {
        let common = other
            .path
            .iter()
            .zip(&leaf.path)
            .take_while(|(a, b)| a == b)
            .count();
        Flow::Backtrack(common)
    } else {
        Flow::Continue
    };
    Some((gamma, flow))
}

impl Graph {
    /// The graph whose vertex `i` is `order[i]` of `self`.
    pub fn permute_to_order(&self, order: &[usize]) -> Graph {
        let n = self.order();
        let mut inverse = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            inverse[v] = i;
        }
        self.permute(&inverse)
    }
}
