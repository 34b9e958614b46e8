//! Isomorphism of (crossed house, P5)-free graphs.
//!
//! A connected component either has no `K5`, or has a `K5` whose partition
//! has three or more non-empty attachment sets (then it has bounded
//! clique-width), or every partition has at most two. In the last case the
//! classes with empty attachment sets form a set `L'` of at least three
//! classes, and replacing each `L'` by a large complete bipartite graph whose
//! size encodes the multiset of class sizes (the *type* of `L'`) removes
//! every `K5` while preserving isomorphism.

use fixedbitset::FixedBitSet;

use super::{
    componentwise, distinct_partitions, find_k5, Branch, DriverClass, GiDriverTrace, K5Partition, Side,
    StructureError,
};
use crate::graph::Graph;

pub(crate) struct Analysis {
    pub branch: Branch,
    pub partitions: Vec<K5Partition>,
}

pub(crate) fn analyse(g: &Graph) -> Result<Analysis, StructureError> {
    let partitions = distinct_partitions(g)?;
    let branch = if partitions.is_empty() {
        Branch::K5Free
    } else if partitions.iter().any(|p| p.nonempty_attachments() >= 3) {
        Branch::ThreeAttachments
    } else {
        Branch::TypeGadgets
    };
    Ok(Analysis { branch, partitions })
}

/// `L'` and its type, the ascending multiset of its class sizes.
fn detached_classes(p: &K5Partition) -> (Vec<usize>, Vec<usize>) {
    let mut lp = Vec::new();
    let mut ty = Vec::new();
    for (a, n) in p.a.iter().zip(&p.n) {
        if n.is_empty() {
            lp.extend(a);
            ty.push(a.len());
        }
    }
    lp.sort_unstable();
    ty.sort_unstable();
    (lp, ty)
}

/// The types of all sets `L'` of `g`, sorted, with multiplicity.
pub fn type_census(g: &Graph) -> Result<Vec<Vec<usize>>, StructureError> {
    Ok(census(&distinct_partitions(g)?))
}

fn census(parts: &[K5Partition]) -> Vec<Vec<usize>> {
    let mut types = parts.iter().map(|p| detached_classes(p).1).collect::<Vec<_>>();
    types.sort();
    types
}

/// Replaces every `L'` of type `numbering[j-1]` by a copy of `K_{n+j,n+j}`
/// complete to `L ∖ L'`, where `n = |V(g)|`. Kept vertices come first, in
/// their original order.
pub fn type_gadget_graph(g: &Graph, numbering: &[Vec<usize>]) -> Result<Graph, StructureError> {
    build(g, &distinct_partitions(g)?, numbering)
}

fn build(g: &Graph, parts: &[K5Partition], numbering: &[Vec<usize>]) -> Result<Graph, StructureError> {
    let n = g.order();
    let mut removed = FixedBitSet::with_capacity(n);
    let mut gadgets = Vec::new();
    for p in parts {
        let (lp, ty) = detached_classes(p);
        if lp.iter().any(|&v| removed.contains(v)) {
            return Err(StructureError::Internal("two sets L' overlap".into()));
        }
        let j = numbering
            .iter()
            .position(|t| *t == ty)
            .ok_or_else(|| StructureError::Internal(format!("type {ty:?} is not numbered")))?
            + 1;
        for &v in &lp {
            removed.insert(v);
        }
        let attach = p.l().into_iter().filter(|v| lp.binary_search(v).is_err()).collect::<Vec<_>>();
        gadgets.push((j, attach));
    }
    let kept = (0..n).filter(|&v| !removed.contains(v)).collect::<Vec<_>>();
    let mut index = vec![usize::MAX; n];
    for (i, &v) in kept.iter().enumerate() {
        index[v] = i;
    }
    let mut edges = g
        .edges()
        .into_iter()
        .filter(|&(u, v)| !removed.contains(u) && !removed.contains(v))
        .map(|(u, v)| (index[u], index[v]))
        .collect::<Vec<_>>();
    let mut next = kept.len();
    for (j, attach) in gadgets {
        let side = n + j;
        let x = next..next + side;
        let y = next + side..next + 2 * side;
        next += 2 * side;
        for u in x.clone() {
            edges.extend(y.clone().map(|w| (u, w)));
        }
        for u in x.chain(y) {
            edges.extend(attach.iter().filter(|&&a| !removed.contains(a)).map(|&a| (index[a], u)));
        }
    }
    Ok(Graph::new(next, edges).expect("gadget edges are in range"))
}

/// Decides isomorphism of two (crossed house, P5)-free graphs.
pub fn solve_gi_cohouse_p5(g: &Graph, h: &Graph) -> Result<(bool, GiDriverTrace), StructureError> {
    let class = DriverClass::CohouseP5;
    class.admits(g, Side::G)?;
    class.admits(h, Side::H)?;
    let mut trace = GiDriverTrace::new(class);
    let verdict = componentwise(g, h, &mut trace, 0, analyse, |a| a.branch, same)?;
    Ok((verdict, trace))
}

fn same(x: &Graph, ax: &Analysis, y: &Graph, ay: &Analysis, trace: &mut GiDriverTrace) -> Result<bool, StructureError> {
    // each branch guard is invariant under isomorphism
    if ax.branch != ay.branch {
        return Ok(false);
    }
    match ax.branch {
        Branch::K5Free | Branch::ThreeAttachments => Ok(trace.oracle(x, y).is_some()),
        Branch::TypeGadgets => {
            let (cx, cy) = (census(&ax.partitions), census(&ay.partitions));
            if cx != cy {
                trace.transformations.push(format!("type census differs: {cx:?} vs {cy:?}"));
                return Ok(false);
            }
            let mut numbering = cx;
            numbering.dedup();
            let xp = build(x, &ax.partitions, &numbering)?;
            let yp = build(y, &ay.partitions, &numbering)?;
            for (side, before, after) in [(Side::G, x, &xp), (Side::H, y, &yp)] {
                if find_k5(after).is_some() {
                    return Err(StructureError::Internal(format!("type gadgets left a K5 in {side}")));
                }
                trace.transformations.push(format!(
                    "{side}: {} type gadgets, {} -> {} vertices",
                    ax.partitions.len(),
                    before.order(),
                    after.order()
                ));
            }
            Ok(trace.oracle(&xp, &yp).is_some())
        }
        other => Err(StructureError::Internal(format!("branch {other} does not belong to this class"))),
    }
}
