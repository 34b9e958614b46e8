//! Cross-checks the exact clique-width search against a naive closure over
//! every labelled graph reachable with the four operations.

use std::collections::{HashMap, HashSet};

use hfree::cliquewidth::{exact_cliquewidth, k_expression, CwOutcome};
use hfree::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// (vertex mask, edge set as vertex-pair bits, label per vertex; 0 = absent)
type State = (u32, u64, Vec<u8>);

fn pair(n: usize, u: usize, v: usize) -> u64 {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    1 << (a * n + b)
}

/// True when `g` has a k-expression, by brute force. A state is dropped only
/// when it can no longer reach `g`: it has an edge `g` lacks, or two vertices
/// share a label but must later receive different edges.
fn brute_has_expression(g: &Graph, k: usize) -> bool {
    let n = g.order();
    let mut target = 0u64;
    for (u, v) in g.edges() {
        target |= pair(n, u, v);
    }
    let alive = |(mask, edges, labels): &State| -> bool {
        if edges & !target != 0 {
            return false;
        }
        for u in 0..n {
            for v in u + 1..n {
                if mask >> u & 1 == 0 || mask >> v & 1 == 0 || labels[u] != labels[v] {
                    continue;
                }
                if g.has_edge(u, v) && edges & pair(n, u, v) == 0 {
                    return false;
                }
                if (0..n).any(|w| mask >> w & 1 == 0 && g.has_edge(u, w) != g.has_edge(v, w)) {
                    return false;
                }
            }
        }
        true
    };
    let mut seen: HashSet<State> = HashSet::new();
    let mut by_mask: HashMap<u32, Vec<State>> = HashMap::new();
    let mut queue: Vec<State> = Vec::new();
    let push = |s: State, seen: &mut HashSet<State>, queue: &mut Vec<State>| {
        if alive(&s) && seen.insert(s.clone()) {
            queue.push(s);
        }
    };
    for v in 0..n {
        for l in 1..=k as u8 {
            let mut labels = vec![0; n];
            labels[v] = l;
            push((1 << v, 0, labels), &mut seen, &mut queue);
        }
    }
    let full = (1u32 << n) - 1;
    while let Some(s) = queue.pop() {
        let (mask, edges, ref labels) = s;
        if mask == full && edges == target {
            return true;
        }
        for a in 1..=k as u8 {
            for b in 1..=k as u8 {
                if a == b {
                    continue;
                }
                let mut renamed = labels.clone();
                renamed.iter_mut().filter(|l| **l == a).for_each(|l| *l = b);
                push((mask, edges, renamed), &mut seen, &mut queue);
                if a < b {
                    let mut joined = edges;
                    for u in 0..n {
                        for v in 0..n {
                            if labels[u] == a && labels[v] == b {
                                joined |= pair(n, u, v);
                            }
                        }
                    }
                    push((mask, joined, labels.clone()), &mut seen, &mut queue);
                }
            }
        }
        let mut unions = Vec::new();
        for (&other_mask, others) in &by_mask {
            if other_mask & mask != 0 {
                continue;
            }
            for (om, oe, ol) in others {
                let labels = labels.iter().zip(ol).map(|(x, y)| x.max(y)).copied().collect();
                unions.push((mask | om, edges | oe, labels));
            }
        }
        by_mask.entry(mask).or_default().push(s);
        for u in unions {
            push(u, &mut seen, &mut queue);
        }
    }
    false
}

fn brute_cliquewidth(g: &Graph) -> usize {
    if g.order() == 0 {
        return 0;
    }
    (1..=g.order()).find(|&k| brute_has_expression(g, k)).unwrap()
}

fn graph_from_bits(n: usize, bits: u64) -> Graph {
    let mut edges = Vec::new();
    let mut idx = 0;
    for u in 0..n {
        for v in u + 1..n {
            if bits >> idx & 1 == 1 {
                edges.push((u, v));
            }
            idx += 1;
        }
    }
    Graph::new(n, edges).unwrap()
}

fn check(g: &Graph) {
    let expected = brute_cliquewidth(g);
    match exact_cliquewidth(g, g.order()).unwrap() {
        CwOutcome::Exact { width, witness } => {
            assert_eq!(width, expected, "graph {g:?}");
            if let Some(w) = witness {
                assert!(w.k <= width);
                assert_eq!(&w.evaluate().unwrap(), g);
            }
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn agrees_with_brute_force_on_all_graphs_up_to_four_vertices() {
    for n in 0usize..=4 {
        let pairs = n * n.saturating_sub(1) / 2;
        for bits in 0..1u64 << pairs {
            check(&graph_from_bits(n, bits));
        }
    }
}

#[test]
fn agrees_with_brute_force_on_random_five_vertex_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..40 {
        let bits = rng.gen_range(0..1u64 << 10);
        check(&graph_from_bits(5, bits));
    }
}

#[test]
fn no_expression_below_the_width() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..30 {
        let n = rng.gen_range(2..=5);
        let g = graph_from_bits(n, rng.gen_range(0..1u64 << (n * (n - 1) / 2)));
        let w = brute_cliquewidth(&g);
        assert!(k_expression(&g, w - 1).unwrap().is_none() || w == 1);
        assert!(k_expression(&g, w).unwrap().is_some());
    }
}

#[test]
fn ten_vertex_graphs_finish() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..5 {
        let g = graph_from_bits(10, rng.gen_range(0..1u64 << 45));
        let start = std::time::Instant::now();
        let outcome = exact_cliquewidth(&g, 10).unwrap();
        let CwOutcome::Exact { width, witness } = outcome else {
            panic!("width is at most n");
        };
        assert_eq!(witness.unwrap().evaluate().unwrap(), g);
        assert!(width <= 10);
        assert!(start.elapsed().as_secs() < 60, "took {:?}", start.elapsed());
    }
}

#[test]
fn oracle_knows_small_values() {
    use hfree::catalog::{complete, cycle, path};
    assert_eq!(brute_cliquewidth(&Graph::empty(3)), 1);
    assert_eq!(brute_cliquewidth(&complete(4)), 2);
    assert_eq!(brute_cliquewidth(&path(4)), 3);
    assert_eq!(brute_cliquewidth(&cycle(4)), 2);
    assert_eq!(brute_cliquewidth(&cycle(5)), 3);
}
