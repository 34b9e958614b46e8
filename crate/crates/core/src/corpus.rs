//! Deterministic graph corpora for tests and batch runs.
//!
//! Everything random is driven by a seeded [`ChaCha8Rng`], so a seed fixes
//! the corpus on every platform.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::catalog::crossed_house;
use crate::graph::Graph;
use crate::iso::{canonical_form, is_isomorphic};
use crate::structure::{classify_component, find_k5, Branch, DriverClass};
use crate::subiso::is_free;

pub const DEFAULT_SEED: u64 = 0x5eed;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// One graph per isomorphism class on `1..=max_n` vertices, ordered by
/// order and then by canonical certificate. There are 52 for `max_n = 5`.
pub fn small_graphs(max_n: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect::<Vec<_>>();
        let mut seen = HashSet::new();
        let mut level = Vec::new();
        for bits in 0u64..1 << pairs.len() {
            let edges = pairs.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, &e)| e);
            let g = Graph::new(n, edges).expect("pairs are valid");
            let cert = canonical_form(&g).expect("small graphs are within the limit").certificate;
            if seen.insert(cert.clone()) {
                level.push((cert, g));
            }
        }
        level.sort_by(|a, b| a.0.as_bytes().cmp(b.0.as_bytes()));
        out.extend(level.into_iter().map(|(_, g)| g));
    }
    out
}

/// `G(n, p)`.
pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    Graph::from_fn(n, |_, _| rng.gen_bool(p))
}

/// `count` random graphs with orders drawn from `orders` and edge
/// probability drawn from `[0.2, 0.8]`.
pub fn random_graphs(seed: u64, count: usize, orders: std::ops::RangeInclusive<usize>) -> Vec<Graph> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let n = r.gen_range(orders.clone());
            let p = r.gen_range(0.2..0.8);
            random_graph(&mut r, n, p)
        })
        .collect()
}

/// A uniformly random relabelling: returns `g.permute(perm)` and `perm`.
pub fn relabel(rng: &mut impl Rng, g: &Graph) -> (Graph, Vec<usize>) {
    let mut perm = (0..g.order()).collect::<Vec<_>>();
    perm.shuffle(rng);
    (g.permute(&perm), perm)
}

/// A random cograph on `n` vertices, built by random unions and joins.
pub fn random_cograph(rng: &mut impl Rng, n: usize) -> Graph {
    if n <= 1 {
        return Graph::empty(n);
    }
    let k = rng.gen_range(1..n);
    let left = random_cograph(rng, k);
    let right = random_cograph(rng, n - k);
    let union = left.disjoint_union(&right);
    if rng.gen_bool(0.5) {
        union
    } else {
        union.union_edges(&(0..k).flat_map(|u| (k..n).map(move |v| (u, v))).collect::<Vec<_>>())
    }
}

/// Moves one edge to a random non-edge, keeping the order and size.
pub fn move_edge(rng: &mut impl Rng, g: &Graph) -> Option<Graph> {
    let edges = g.edges();
    let n = g.order();
    let non = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| !g.has_edge(u, v))
        .collect::<Vec<_>>();
    let (&(a, b), &(c, d)) = (edges.choose(rng)?, non.choose(rng)?);
    let mut kept = edges.into_iter().filter(|&e| e != (a, b)).collect::<Vec<_>>();
    kept.push((c, d));
    Some(Graph::new(n, kept).expect("edges are in range"))
}

/// A degree-preserving switch: edges `ab`, `cd` become `ad`, `cb` when
/// both are non-edges. Returns `None` when no switch was found.
pub fn switch_edges(rng: &mut impl Rng, g: &Graph) -> Option<Graph> {
    let edges = g.edges();
    if edges.len() < 2 {
        return None;
    }
    for _ in 0..100 {
        let pick = rand::seq::index::sample(rng, edges.len(), 2);
        let ((a, b), (mut c, mut d)) = (edges[pick.index(0)], edges[pick.index(1)]);
        if rng.gen_bool(0.5) {
            std::mem::swap(&mut c, &mut d);
        }
        if a == c || a == d || b == c || b == d || g.has_edge(a, d) || g.has_edge(c, b) {
            continue;
        }
        let mut kept = edges
            .iter()
            .copied()
            .filter(|&e| e != (a, b) && e != (c.min(d), c.max(d)))
            .collect::<Vec<_>>();
        kept.extend([(a, d), (c, b)]);
        return Some(Graph::new(g.order(), kept).expect("edges are in range"));
    }
    None
}

/// A complete multipartite graph with the given class sizes; class `i`
/// occupies a contiguous block of vertices in order.
pub fn complete_multipartite(sizes: &[usize]) -> Graph {
    let class = sizes
        .iter()
        .enumerate()
        .flat_map(|(i, &s)| std::iter::repeat(i).take(s))
        .collect::<Vec<_>>();
    Graph::from_fn(class.len(), |u, v| class[u] != class[v])
}

/// The first vertex of each class block of [`complete_multipartite`].
fn block_starts(sizes: &[usize]) -> Vec<usize> {
    sizes
        .iter()
        .scan(0, |acc, &s| {
            let start = *acc;
            *acc += s;
            Some(start)
        })
        .collect()
}

/// Adds a clique of `size` new vertices, each adjacent to `anchors`.
/// Returns the graph and the new vertices.
fn add_clique(g: &Graph, size: usize, anchors: &[usize]) -> (Graph, Vec<usize>) {
    let start = g.order();
    let mut out = g.clone();
    for i in 0..size {
        let mut nb = anchors.to_vec();
        nb.extend(start..start + i);
        out = out.add_vertex(&nb).expect("anchors are in range");
    }
    (out, (start..start + size).collect())
}

/// A random graph shaped like a K5 extension partition: a complete
/// multipartite core with at least five classes, cliques attached to some
/// classes (each clique vertex sees a random non-empty part of its class),
/// and a few vertices further out. Not filtered.
pub fn k5_shaped(rng: &mut impl Rng) -> Graph {
    let p = rng.gen_range(5..=7);
    let sizes = (0..p).map(|_| rng.gen_range(1..=3)).collect::<Vec<_>>();
    let starts = block_starts(&sizes);
    let mut g = complete_multipartite(&sizes);
    let mut outer = Vec::new();
    for _ in 0..rng.gen_range(0..=3) {
        let i = rng.gen_range(0..p);
        let class = (starts[i]..starts[i] + sizes[i]).collect::<Vec<_>>();
        let take = rng.gen_range(1..=class.len());
        let anchors = class.choose_multiple(rng, take).copied().collect::<Vec<_>>();
        let (h, new) = add_clique(&g, rng.gen_range(1..=4), &anchors);
        g = h;
        outer.extend(new);
    }
    for _ in 0..rng.gen_range(0..=2) {
        if let Some(&v) = outer.choose(rng) {
            g = g.add_vertex(&[v]).expect("vertex exists");
        }
    }
    g
}

/// `count` crossed-house-free graphs containing a `K5`, drawn from
/// [`k5_shaped`] by rejection.
pub fn k5_corpus(seed: u64, count: usize) -> Vec<Graph> {
    let mut r = rng(seed);
    let forbidden = [crossed_house()];
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let g = k5_shaped(&mut r);
        if find_k5(&g).is_some() && is_free(&g, &forbidden) {
            out.push(g);
        }
    }
    out
}

/// The core graph, its class blocks and a set of attachments.
struct Core {
    g: Graph,
    sizes: Vec<usize>,
    starts: Vec<usize>,
}

impl Core {
    fn new(sizes: Vec<usize>) -> Self {
        Core {
            g: complete_multipartite(&sizes),
            starts: block_starts(&sizes),
            sizes,
        }
    }

    fn class(&self, i: usize) -> Vec<usize> {
        (self.starts[i]..self.starts[i] + self.sizes[i]).collect()
    }

    fn attach(&mut self, size: usize, anchors: &[usize]) -> Vec<usize> {
        let (g, new) = add_clique(&self.g, size, anchors);
        self.g = g;
        new
    }
}

fn raw_instance(rng: &mut impl Rng, branch: Branch) -> Graph {
    match branch {
        Branch::K5Free => {
            let n = rng.gen_range(5..=9);
            if rng.gen_bool(0.5) {
                random_cograph(rng, n)
            } else {
                let p = rng.gen_range(0.3..0.8);
                random_graph(rng, n, p)
            }
        }
        Branch::ThreeAttachments => {
            let p = rng.gen_range(5..=6);
            let mut core = Core::new((0..p).map(|_| rng.gen_range(1..=2)).collect());
            let take = rng.gen_range(3..=p);
            let chosen = rand::seq::index::sample(rng, p, take).into_vec();
            let mut attached = Vec::new();
            for i in chosen {
                let anchors = core.class(i);
                attached.push(core.attach(rng.gen_range(1..=2), &anchors));
            }
            if rng.gen_bool(0.5) {
                // make the attachment sets pairwise complete
                let all = attached.concat();
                let cross = all
                    .iter()
                    .flat_map(|&u| all.iter().map(move |&v| (u, v)))
                    .filter(|&(u, v)| u < v)
                    .collect::<Vec<_>>();
                core.g = core.g.union_edges(&cross);
            }
            core.g
        }
        Branch::TypeGadgets => {
            let p = rng.gen_range(5..=7);
            let mut core = Core::new((0..p).map(|_| rng.gen_range(1..=3)).collect());
            for i in 0..rng.gen_range(1..=2) {
                let anchors = core.class(i);
                let new = core.attach(rng.gen_range(1..=3), &anchors);
                if rng.gen_bool(0.3) {
                    core.g = core.g.add_vertex(&new).expect("in range");
                }
            }
            core.g
        }
        Branch::OneNontrivial => {
            let p = rng.gen_range(5..=7);
            let mut core = Core::new((0..p).map(|i| if i == 0 { rng.gen_range(1..=3) } else { 1 }).collect());
            let anchors = core.class(0);
            core.attach(rng.gen_range(1..=5), &anchors);
            for _ in 0..rng.gen_range(0..=2) {
                core.attach(1, &anchors);
            }
            core.g
        }
        Branch::K4FreeAttachments | Branch::K4Attachments => {
            let big = branch == Branch::K4Attachments;
            let p = rng.gen_range(5..=8);
            let mut core = Core::new((0..p).map(|i| if i == 0 { rng.gen_range(1..=3) } else { 1 }).collect());
            let class0 = core.class(0);
            // optionally one vertex of the class misses every attachment
            let anchors = if big && class0.len() >= 2 && rng.gen_bool(0.4) {
                class0[1..].to_vec()
            } else {
                class0.clone()
            };
            let count = rng.gen_range(2..=3);
            for j in 0..count {
                let size = if big && j == 0 {
                    rng.gen_range(4..=6)
                } else if big {
                    rng.gen_range(1..=5)
                } else {
                    rng.gen_range(2..=3)
                };
                let new = core.attach(size, &anchors);
                if big && size >= 4 && rng.gen_bool(0.4) {
                    // one vertex of a large clique becomes a B vertex
                    let v = new[0];
                    let edges = core
                        .g
                        .edges()
                        .into_iter()
                        .filter(|&(a, b)| !(a == v && anchors.contains(&b) || b == v && anchors.contains(&a)))
                        .collect::<Vec<_>>();
                    core.g = Graph::new(core.g.order(), edges).expect("in range");
                }
            }
            if rng.gen_bool(0.3) {
                core.attach(1, &anchors);
            }
            core.g
        }
    }
}

/// A connected graph of `class` whose component analysis lands in `branch`,
/// found by rejection over a branch-specific constructive generator.
pub fn admissible_instance(rng: &mut impl Rng, class: DriverClass, branch: Branch) -> Graph {
    let forbidden = class.forbidden();
    loop {
        let g = raw_instance(rng, branch);
        if g.is_connected()
            && is_free(&g, &forbidden)
            && classify_component(class, &g).map(|b| b == branch).unwrap_or(false)
        {
            return g;
        }
    }
}

/// A pair of admissible graphs for `class`. When `isomorphic` the second
/// is a random relabelling of the first. Otherwise the second is an
/// admissible connected graph of the same order and size that is not
/// isomorphic to the first, relabelled: a degree-preserving edge switch of
/// the first if one works, else a moved edge, else an independent instance
/// of the same branch.
pub fn admissible_pair(rng: &mut impl Rng, class: DriverClass, branch: Branch, isomorphic: bool) -> (Graph, Graph) {
    let forbidden = class.forbidden();
    loop {
        let g = admissible_instance(rng, class, branch);
        if isomorphic {
            let h = relabel(rng, &g).0;
            return (g, h);
        }
        let fits = |h: &Graph| {
            h.order() == g.order()
                && h.edge_count() == g.edge_count()
                && h.is_connected()
                && is_free(h, &forbidden)
                && !is_isomorphic(&g, h)
        };
        for attempt in 0..80 {
            let perturbed = if attempt < 60 { switch_edges(rng, &g) } else { move_edge(rng, &g) };
            if let Some(h) = perturbed.filter(|h| fits(h)) {
                let h = relabel(rng, &h).0;
                return (g, h);
            }
        }
        for _ in 0..40 {
            let h = admissible_instance(rng, class, branch);
            if fits(&h) {
                return (g, h);
            }
        }
    }
}
