//! Induced subgraph isomorphism: the `H ⊆_i G` predicate and H-freeness.
//!
//! Backtracking over the vertices of the pattern in a connectivity-respecting
//! order. Candidate sets are maintained as bitsets: a target vertex stays a
//! candidate for the next pattern vertex only while its adjacency to every
//! already-mapped vertex matches the pattern exactly.

use fixedbitset::FixedBitSet;

use crate::graph::Graph;

/// An injective map from the pattern's vertices into the host graph that
/// preserves both adjacency and non-adjacency.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    pub map: Vec<usize>,
}

impl Embedding {
    /// Checks injectivity and the induced condition.
    pub fn is_valid(&self, host: &Graph, pattern: &Graph) -> bool {
        let k = pattern.order();
        if self.map.len() != k || self.map.iter().any(|&v| v >= host.order()) {
            return false;
        }
        let mut image = self.map.clone();
        image.sort_unstable();
        image.dedup();
        if image.len() != k {
            return false;
        }
        (0..k).all(|u| {
            ((u + 1)..k).all(|v| pattern.has_edge(u, v) == host.has_edge(self.map[u], self.map[v]))
        })
    }

    /// The image of the pattern, sorted.
    pub fn image(&self) -> Vec<usize> {
        let mut v = self.map.clone();
        v.sort_unstable();
        v
    }
}

/// Pattern vertex order: each next vertex has the most already-placed
/// neighbours, then the highest degree, then the smallest index.
fn search_order(pattern: &Graph) -> Vec<usize> {
    let k = pattern.order();
    let mut placed = vec![false; k];
    let mut links = vec![0usize; k];
    let mut order = Vec::with_capacity(k);
    for _ in 0..k {
        let next = (0..k)
            .filter(|&v| !placed[v])
            .max_by(|&a, &b| {
                (links[a], pattern.degree(a))
                    .cmp(&(links[b], pattern.degree(b)))
                    .then(b.cmp(&a))
            })
            .expect("an unplaced vertex remains");
        placed[next] = true;
        order.push(next);
        for w in pattern.neighbors(next) {
            links[w] += 1;
        }
    }
    order
}

/// Pairs `(x, y)` with `x < y` that are consecutive members of a class of
/// true twins (`N[x] = N[y]`) or false twins (`N(x) = N(y)`). Any
/// permutation inside such a class is an automorphism, so an embedding can
/// always be rearranged to map each class in increasing order.
fn twin_chains(pattern: &Graph) -> Vec<(usize, usize)> {
    let k = pattern.order();
    let closed = |v: usize| {
        let mut s = pattern.neighborhood(v).clone();
        s.insert(v);
        s
    };
    let mut pairs = Vec::new();
    for true_twins in [false, true] {
        let key = |v: usize| if true_twins { closed(v) } else { pattern.neighborhood(v).clone() };
        let mut last: Vec<(FixedBitSet, usize)> = Vec::new();
        for v in 0..k {
            let kv = key(v);
            match last.iter_mut().find(|(s, _)| *s == kv) {
                Some(entry) => {
                    pairs.push((entry.1, v));
                    entry.1 = v;
                }
                None => last.push((kv, v)),
            }
        }
    }
    pairs
}

/// Backtracking with forward checking: `domains[d][j]` holds the host
/// vertices still possible for pattern vertex `order[j]` (`j >= d`) after the
/// first `d` vertices are placed. A branch dies as soon as any domain is empty.
struct Matcher<'a> {
    host: &'a Graph,
    pattern: &'a Graph,
    order: Vec<usize>,
    map: Vec<usize>,
    domains: Vec<Vec<FixedBitSet>>,
    /// `below[p]`: pattern vertices whose image must be smaller than that of `p`;
    /// `above[p]`: those whose image must be larger.
    below: Vec<Vec<usize>>,
    above: Vec<Vec<usize>>,
}

impl Matcher<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        let k = self.order.len();
        if depth == k {
            return true;
        }
        let p = self.order[depth];
        let candidates = self.domains[depth][depth].ones().collect::<Vec<_>>();
        'next: for v in candidates {
            self.map[p] = v;
            let image = self.host.neighborhood(v);
            for j in depth + 1..k {
                let (done, rest) = self.domains.split_at_mut(depth + 1);
                let dom = &mut rest[0][j];
                dom.clone_from(&done[depth][j]);
                if self.pattern.has_edge(p, self.order[j]) {
                    dom.intersect_with(image);
                } else {
                    dom.difference_with(image);
                    dom.set(v, false);
                }
                let q = self.order[j];
                if self.below[p].contains(&q) {
                    dom.set_range(v.., false);
                }
                if self.above[p].contains(&q) {
                    dom.set_range(..v + 1, false);
                }
                if dom.is_clear() {
                    continue 'next;
                }
            }
            if self.extend(depth + 1) {
                return true;
            }
        }
        false
    }
}

/// Finds an induced copy of `pattern` in `host`, or `None`.
///
/// The search is deterministic: pattern vertices are placed in a fixed
/// order, host candidates are tried in ascending index and twins of the
/// pattern are mapped in increasing order, so the result is the first such
/// embedding in that enumeration.
///
/// Induced copies of `pattern` in `host` are exactly the induced copies of
/// the complement of `pattern` in the complement of `host`. A disconnected
/// pattern with a connected complement is searched on the complement side,
/// where the connectivity-respecting order prunes far better.
pub fn find_induced(host: &Graph, pattern: &Graph) -> Option<Embedding> {
    let k = pattern.order();
    if k > host.order() || pattern.edge_count() > host.edge_count() {
        return None;
    }
    if k > 1 && !pattern.is_connected() {
        let co_pattern = pattern.complement();
        if co_pattern.is_connected() {
            let found = search(&host.complement(), &co_pattern);
            debug_assert!(found.as_ref().is_none_or(|e| e.is_valid(host, pattern)));
            return found;
        }
    }
    search(host, pattern)
}

fn search(host: &Graph, pattern: &Graph) -> Option<Embedding> {
    let k = pattern.order();
    let n = host.order();
    let order = search_order(pattern);
    let host_degree = host.degrees();
    let mut first = Vec::with_capacity(k);
    for &p in &order {
        // an induced copy preserves both degree and non-degree
        let (deg, non) = (pattern.degree(p), k - 1 - pattern.degree(p));
        let mut dom = FixedBitSet::with_capacity(n);
        dom.extend((0..n).filter(|&v| host_degree[v] >= deg && n - 1 - host_degree[v] >= non));
        first.push(dom);
    }
    let mut domains = vec![vec![FixedBitSet::with_capacity(n); k]; k + 1];
    domains[0] = first;
    let mut below = vec![Vec::new(); k];
    let mut above = vec![Vec::new(); k];
    for (x, y) in twin_chains(pattern) {
        below[y].push(x);
        above[x].push(y);
    }
    let mut m = Matcher {
        host,
        pattern,
        order,
        map: vec![usize::MAX; k],
        domains,
        below,
        above,
    };
    let found = m.extend(0).then(|| Embedding { map: m.map });
    debug_assert!(found.as_ref().is_none_or(|e| e.is_valid(host, pattern)));
    found
}

/// `pattern ⊆_i host`.
pub fn contains_induced(host: &Graph, pattern: &Graph) -> bool {
    find_induced(host, pattern).is_some()
}

/// True when `host` has no induced subgraph isomorphic to any member of `family`.
pub fn is_free(host: &Graph, family: &[Graph]) -> bool {
    family.iter().all(|h| !contains_induced(host, h))
}

/// The first forbidden graph (by position in `family`) found in `host`,
/// with its embedding.
pub fn free_witness(host: &Graph, family: &[Graph]) -> Option<(usize, Embedding)> {
    family
        .iter()
        .enumerate()
        .find_map(|(i, h)| find_induced(host, h).map(|e| (i, e)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::make;

    fn g(name: &str) -> Graph {
        make(name).unwrap()
    }

    #[test]
    fn find_induced_examples() {
        assert!(find_induced(&g("P5"), &g("P4")).is_some());
        assert!(find_induced(&g("K4"), &g("diamond")).is_none());
        let e = find_induced(&g("gem"), &g("paw")).unwrap();
        assert!(e.is_valid(&g("gem"), &g("paw")));
    }

    #[test]
    fn first_embedding_is_lexicographic() {
        // P2 into P3 (0-1-2): pattern order starts at vertex 0, candidates ascend
        let e = find_induced(&g("P3"), &g("P2")).unwrap();
        assert_eq!(e.map, vec![0, 1]);
        let e = find_induced(&g("K4"), &g("K3")).unwrap();
        assert_eq!(e.image(), vec![0, 1, 2]);
    }

    #[test]
    fn induced_not_just_subgraph() {
        // C4 contains P4 as a subgraph but not as an induced subgraph
        assert!(!contains_induced(&g("C4"), &g("P4")));
        assert!(contains_induced(&g("C5"), &g("P4")));
    }

    #[test]
    fn is_free_examples() {
        assert!(is_free(&g("C5"), &[g("K3"), g("C4")]));
        assert!(!is_free(&g("P6"), &[g("P5")]));
        assert!(is_free(&g("P6"), &[]));
        let (idx, emb) = free_witness(&g("P6"), &[g("K3"), g("P5")]).unwrap();
        assert_eq!(idx, 1);
        assert_eq!(emb.map.len(), 5);
    }

    #[test]
    fn empty_pattern_and_oversized_pattern() {
        assert!(contains_induced(&g("P3"), &Graph::empty(0)));
        assert!(!contains_induced(&g("P3"), &g("P4")));
    }
}
