//! Exact clique-width by dynamic programming over vertex subsets.
//!
//! Any k-expression can be normalised so that each internal node performs a
//! union, then joins, then renames, and so that the labelled graph produced
//! at a node with vertex set `X` is exactly `G[X]` (a join that re-creates an
//! edge inside `X` can be pushed down into the subexpression for `X`). At
//! such a node two vertices with the same label must have the same
//! neighbourhood outside `X`, so the label classes refine the partition of
//! `X` by outside neighbourhood.
//!
//! The table therefore maps each subset `X` to the label-class partitions
//! `X` can be built with. Renames may always merge classes further, so only
//! the finest feasible partitions are stored, and the union step may merge
//! groups as long as
//!
//! * every class lies inside one outside-neighbourhood class of `X`,
//! * groups from the same child are in the same outside class of that child
//!   (this is a rename the child could have done), and
//! * groups from different children sharing a class have no edges between
//!   them, since a label is never joined to itself.
//!
//! Joins are then forced: two classes with a cross edge between them must be
//! joined, which is allowed only when they are completely adjacent.

use std::collections::HashMap;

use super::{CwError, CwExpression, Term};
use crate::graph::Graph;

/// Largest order accepted by [`exact_cliquewidth`].
pub const EXACT_CAP: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CwOutcome {
    /// The clique-width with a witness expression whose `Create` vertex ids
    /// are the vertices of the input. The witness is absent only for the
    /// graph with no vertices, whose clique-width is 0.
    Exact {
        width: usize,
        witness: Option<CwExpression>,
    },
    ExceedsLimit { limit: usize },
}

/// The smallest `k ≤ limit` such that `g` has a k-expression.
pub fn exact_cliquewidth(g: &Graph, limit: usize) -> Result<CwOutcome, CwError> {
    let n = g.order();
    if n > EXACT_CAP {
        return Err(CwError::TooLarge { n, cap: EXACT_CAP });
    }
    if n == 0 {
        return Ok(CwOutcome::Exact { width: 0, witness: None });
    }
    for k in 1..=limit.min(n) {
        if let Some(witness) = k_expression(g, k)? {
            return Ok(CwOutcome::Exact { width: k, witness: Some(witness) });
        }
    }
    Ok(CwOutcome::ExceedsLimit { limit })
}

/// A k-expression for `g`, or `None` when none exists. The search is
/// exhaustive, so `None` proves that the clique-width exceeds `k`.
pub fn k_expression(g: &Graph, k: usize) -> Result<Option<CwExpression>, CwError> {
    let n = g.order();
    if n > EXACT_CAP {
        return Err(CwError::TooLarge { n, cap: EXACT_CAP });
    }
    if n == 0 || k == 0 {
        return Ok(None);
    }
    let mut solver = Solver::new(g, k);
    Ok(solver.solve().map(|term| CwExpression { k, term }))
}

struct Back {
    x1: u32,
    i1: usize,
    x2: u32,
    i2: usize,
    /// Class (index into the entry's groups) of each child group, the groups
    /// of the first child first.
    class_of: Vec<usize>,
}

struct Entry {
    groups: Vec<u32>,
    back: Option<Back>,
}

struct Solver {
    n: usize,
    k: usize,
    adj: Vec<u32>,
    table: HashMap<u32, Vec<Entry>>,
}

/// A group of a child during the merge enumeration.
struct Piece {
    mask: u32,
    second: bool,
    /// Outside neighbourhood relative to its own child.
    child_key: u32,
    /// Outside neighbourhood relative to the union.
    key: u32,
    nbrs: u32,
}

struct Class {
    key: u32,
    first: u32,
    second: u32,
    first_key: Option<u32>,
    second_key: Option<u32>,
}

impl Solver {
    fn new(g: &Graph, k: usize) -> Self {
        let n = g.order();
        let adj = (0..n)
            .map(|v| g.neighbors(v).fold(0u32, |m, w| m | (1 << w)))
            .collect();
        Solver { n, k, adj, table: HashMap::new() }
    }

    fn nbrs(&self, mask: u32) -> u32 {
        bits(mask).fold(0, |m, v| m | self.adj[v])
    }

    fn outside_key(&self, v: usize, x: u32) -> u32 {
        self.adj[v] & !x
    }

    fn outside_class_count(&self, x: u32) -> usize {
        let mut keys = bits(x).map(|v| self.outside_key(v, x)).collect::<Vec<_>>();
        keys.sort_unstable();
        keys.dedup();
        keys.len()
    }

    fn solve(&mut self) -> Option<Term> {
        let full = if self.n == 32 { u32::MAX } else { (1u32 << self.n) - 1 };
        let mut masks = (1..=full).collect::<Vec<u32>>();
        masks.sort_by_key(|m| m.count_ones());
        for x in masks {
            if x.count_ones() == 1 {
                self.table.insert(x, vec![Entry { groups: vec![x], back: None }]);
                continue;
            }
            if self.outside_class_count(x) > self.k {
                continue;
            }
            let entries = self.combine(x);
            if !entries.is_empty() {
                self.table.insert(x, entries);
                if x == full {
                    break;
                }
            }
        }
        if !self.table.contains_key(&full) {
            return None;
        }
        let groups = self.table[&full][0].groups.len();
        let tau = (1..=groups).collect::<Vec<_>>();
        Some(self.build(full, 0, &tau))
    }

    fn combine(&self, x: u32) -> Vec<Entry> {
        let mut found: Vec<Entry> = Vec::new();
        let low = x & x.wrapping_neg();
        let rest = x ^ low;
        let mut sub = rest;
        loop {
            let x1 = low | sub;
            let x2 = x ^ x1;
            if x2 != 0 {
                if let (Some(e1s), Some(e2s)) = (self.table.get(&x1), self.table.get(&x2)) {
                    for (i1, e1) in e1s.iter().enumerate() {
                        for (i2, e2) in e2s.iter().enumerate() {
                            self.merge(x, (x1, i1, e1), (x2, i2, e2), &mut found);
                        }
                    }
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        found
    }

    fn merge(&self, x: u32, a: (u32, usize, &Entry), b: (u32, usize, &Entry), found: &mut Vec<Entry>) {
        let (x1, i1, e1) = a;
        let (x2, i2, e2) = b;
        let pieces = e1
            .groups
            .iter()
            .map(|&m| (m, false, x1))
            .chain(e2.groups.iter().map(|&m| (m, true, x2)))
            .map(|(mask, second, own)| {
                let v = mask.trailing_zeros() as usize;
                Piece {
                    mask,
                    second,
                    child_key: self.outside_key(v, own),
                    key: self.outside_key(v, x),
                    nbrs: self.nbrs(mask),
                }
            })
            .collect::<Vec<_>>();
        let mut classes: Vec<Class> = Vec::new();
        let mut assign = vec![0usize; pieces.len()];
        self.assign(&pieces, 0, &mut classes, &mut assign, &mut |classes, assign| {
            if !self.joins_feasible(classes) {
                return;
            }
            let mut order = (0..classes.len()).collect::<Vec<_>>();
            order.sort_by_key(|&c| classes[c].first | classes[c].second);
            let mut rank = vec![0; classes.len()];
            for (r, &c) in order.iter().enumerate() {
                rank[c] = r;
            }
            let groups = order.iter().map(|&c| classes[c].first | classes[c].second).collect::<Vec<_>>();
            if found.iter().any(|e| refines(&e.groups, &groups)) {
                return;
            }
            found.retain(|e| !refines(&groups, &e.groups));
            found.push(Entry {
                groups,
                back: Some(Back {
                    x1,
                    i1,
                    x2,
                    i2,
                    class_of: assign.iter().map(|&c| rank[c]).collect(),
                }),
            });
        });
    }

    /// Enumerates set partitions of the pieces into at most `k` classes that
    /// satisfy the sharing rules, calling `emit` for each complete one.
    fn assign(
        &self,
        pieces: &[Piece],
        at: usize,
        classes: &mut Vec<Class>,
        assign: &mut Vec<usize>,
        emit: &mut dyn FnMut(&[Class], &[usize]),
    ) {
        if at == pieces.len() {
            emit(classes, assign);
            return;
        }
        let p = &pieces[at];
        for c in 0..classes.len() {
            let cl = &classes[c];
            if cl.key != p.key {
                continue;
            }
            let (own, own_key, other) = if p.second {
                (cl.second, cl.second_key, cl.first)
            } else {
                (cl.first, cl.first_key, cl.second)
            };
            if own != 0 && own_key != Some(p.child_key) {
                continue;
            }
            if p.nbrs & other != 0 {
                continue;
            }
            let saved = (classes[c].first, classes[c].second, classes[c].first_key, classes[c].second_key);
            let cl = &mut classes[c];
            if p.second {
                cl.second |= p.mask;
                cl.second_key = Some(p.child_key);
            } else {
                cl.first |= p.mask;
                cl.first_key = Some(p.child_key);
            }
            assign[at] = c;
            self.assign(pieces, at + 1, classes, assign, emit);
            let cl = &mut classes[c];
            (cl.first, cl.second, cl.first_key, cl.second_key) = saved;
        }
        if classes.len() < self.k {
            classes.push(Class {
                key: p.key,
                first: if p.second { 0 } else { p.mask },
                second: if p.second { p.mask } else { 0 },
                first_key: (!p.second).then_some(p.child_key),
                second_key: p.second.then_some(p.child_key),
            });
            assign[at] = classes.len() - 1;
            self.assign(pieces, at + 1, classes, assign, emit);
            classes.pop();
        }
    }

    /// Every pair of classes with a cross edge must be completely adjacent.
    fn joins_feasible(&self, classes: &[Class]) -> bool {
        for i in 0..classes.len() {
            for j in i + 1..classes.len() {
                if self.needs_join(&classes[i], &classes[j]) && !self.complete(&classes[i], &classes[j]) {
                    return false;
                }
            }
        }
        true
    }

    fn needs_join(&self, p: &Class, q: &Class) -> bool {
        self.nbrs(p.first) & q.second != 0 || self.nbrs(p.second) & q.first != 0
    }

    fn complete(&self, p: &Class, q: &Class) -> bool {
        let qm = q.first | q.second;
        bits(p.first | p.second).all(|u| self.adj[u] & qm == qm)
    }

    /// Builds the stored expression for `(x, idx)` so that group `g` ends with
    /// label `tau[g]`. Labels of groups sharing a target are merged by renames
    /// at the end; the first group of each target gets it directly, the others
    /// borrow labels outside the targets.
    fn build(&self, x: u32, idx: usize, tau: &[usize]) -> Term {
        let e = &self.table[&x][idx];
        let Some(b) = &e.back else {
            return Term::create(x.trailing_zeros() as usize, tau[0]);
        };
        let mut free = (1..=self.k).filter(|l| !tau.contains(l));
        let mut seen = Vec::new();
        let sigma = tau
            .iter()
            .map(|&t| {
                if seen.contains(&t) {
                    free.next().expect("at most k groups")
                } else {
                    seen.push(t);
                    t
                }
            })
            .collect::<Vec<_>>();
        let c1 = &self.table[&b.x1][b.i1];
        let split = c1.groups.len();
        let tau1 = b.class_of[..split].iter().map(|&c| sigma[c]).collect::<Vec<_>>();
        let tau2 = b.class_of[split..].iter().map(|&c| sigma[c]).collect::<Vec<_>>();
        let mut term = self.build(b.x1, b.i1, &tau1).union(self.build(b.x2, b.i2, &tau2));
        let class = |m: u32| Class {
            key: 0,
            first: m & b.x1,
            second: m & b.x2,
            first_key: None,
            second_key: None,
        };
        for i in 0..e.groups.len() {
            for j in i + 1..e.groups.len() {
                if self.needs_join(&class(e.groups[i]), &class(e.groups[j])) {
                    term = term.join(sigma[i], sigma[j]);
                }
            }
        }
        for (g, (&s, &t)) in sigma.iter().zip(tau).enumerate() {
            if s != t {
                debug_assert!(tau[..g].contains(&t));
                term = term.rename(s, t);
            }
        }
        term
    }
}

/// Whether every group of `fine` lies inside a group of `coarse`.
fn refines(fine: &[u32], coarse: &[u32]) -> bool {
    fine.iter().all(|&f| coarse.iter().any(|&c| f & c == f))
}

fn bits(mut m: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(v)
        }
    })
}
