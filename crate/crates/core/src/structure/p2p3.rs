//! Isomorphism of (crossed house, P2+P3)-free graphs.
//!
//! For a connected graph with a `K5` and `D = V ∖ L`, four facts hold and
//! are checked by [`claims_hold`]:
//!
//! 1. every component of `G[D]` is a clique;
//! 2. a vertex of `N_j` is complete to every edge of `D ∖ N_j`;
//! 3. if `G[D]` has two or more components and one of them, `C`, has at
//!    least three vertices, then some `N_i` holds all of `C` but at most one
//!    vertex, and `D ∖ C ⊆ N_i ∪ B`;
//! 4. if `G[D]` has two or more non-trivial components, a vertex of `A_i`
//!    missing two vertices of one component is anti-complete to `D`, and
//!    each `A_i` has at most one such vertex.
//!
//! With at most one non-trivial component the graph has bounded
//! clique-width and goes to the general solver. Otherwise the set `L` is
//! the same for every `K5`, and the driver tries each candidate `L` of the
//! second graph. When `G[D]` has no `K4`, the classes of `L` that are single
//! vertices with closed neighbourhood `L` are interchangeable, and all but
//! enough of them to keep five classes are deleted before calling the
//! solver. The isomorphism it returns is extended over the deleted vertices
//! in ascending order and checked. When `G[D]` has a `K4`, the graph splits
//! into three independent parts: the reduced graph on `L` and the small
//! components, the optional vertex of `A_1` that misses a whole component,
//! and the census of large components.

use std::fmt;

use thiserror::Error;

use super::{
    componentwise, distinct_partitions, find_k5, partition_unchecked, Branch, DriverClass, GiDriverTrace,
    K5Partition, Side, StructureError, TraceStep,
};
use crate::graph::Graph;
use crate::iso::is_isomorphism;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClaimFailure {
    #[error("G[D] has an induced P3 on {0:?}")]
    DInducesP3([usize; 3]),
    #[error("vertex {v} of N_{j} is not complete to the edge {u}-{w} of D outside N_{j}")]
    PartialAttachment { v: usize, j: usize, u: usize, w: usize },
    #[error("component {component:?} of G[D] is not concentrated in a single N_i")]
    Unconcentrated { component: Vec<usize> },
    #[error("vertex {v} of A_{i} misses two vertices of a component of G[D] but has a neighbour in D")]
    NotAnticomplete { v: usize, i: usize },
    #[error("A_{i} has two vertices {v} and {w} missing two vertices of a component of G[D]")]
    TwoMissing { i: usize, v: usize, w: usize },
}

/// Checks the four structural facts for a connected graph and one of its
/// partitions. Class and attachment indices in failures are 1-based.
pub fn claims_hold(g: &Graph, p: &K5Partition) -> Result<(), ClaimFailure> {
    let d = p.d();
    let comps = d_components(g, &d);
    for c in &comps {
        for &v in c {
            let nb = c.iter().copied().filter(|&u| g.has_edge(u, v)).collect::<Vec<_>>();
            for (i, &u) in nb.iter().enumerate() {
                if let Some(&w) = nb[i + 1..].iter().find(|&&w| !g.has_edge(u, w)) {
                    return Err(ClaimFailure::DInducesP3([u, v, w]));
                }
            }
        }
    }
    let class_of_d = attachment_index(g.order(), p);
    let d_edges = comps
        .iter()
        .flat_map(|c| c.iter().enumerate().flat_map(move |(i, &u)| c[i + 1..].iter().map(move |&w| (u, w))))
        .collect::<Vec<_>>();
    for (j, nj) in p.n.iter().enumerate() {
        for &v in nj {
            for &(u, w) in &d_edges {
                let outside = class_of_d[u] != Some(j) && class_of_d[w] != Some(j);
                if outside && u != v && w != v && !(g.has_edge(v, u) && g.has_edge(v, w)) {
                    return Err(ClaimFailure::PartialAttachment { v, j: j + 1, u, w });
                }
            }
        }
    }
    if comps.len() >= 2 {
        for c in comps.iter().filter(|c| c.len() >= 3) {
            let concentrated = (0..p.p()).any(|i| {
                let outside_ok = d
                    .iter()
                    .filter(|v| c.binary_search(v).is_err())
                    .all(|&v| class_of_d[v].is_none() || class_of_d[v] == Some(i));
                let missing = c.iter().filter(|&&v| class_of_d[v] != Some(i)).count();
                outside_ok && missing <= 1
            });
            if !concentrated {
                return Err(ClaimFailure::Unconcentrated { component: c.clone() });
            }
        }
    }
    if comps.iter().filter(|c| c.len() >= 2).count() >= 2 {
        for (i, a) in p.a.iter().enumerate() {
            let mut first = None;
            for &v in a {
                if !misses_two(g, v, &comps) {
                    continue;
                }
                if d.iter().any(|&u| g.has_edge(u, v)) {
                    return Err(ClaimFailure::NotAnticomplete { v, i: i + 1 });
                }
                if let Some(w) = first {
                    return Err(ClaimFailure::TwoMissing { i: i + 1, v: w, w: v });
                }
                first = Some(v);
            }
        }
    }
    Ok(())
}

fn d_components(g: &Graph, d: &[usize]) -> Vec<Vec<usize>> {
    g.induced_sorted(d)
        .components()
        .into_iter()
        .map(|c| c.vertices.into_iter().map(|i| d[i]).collect())
        .collect()
}

/// `Some(i)` for vertices of `N_i`, `None` elsewhere.
fn attachment_index(n: usize, p: &K5Partition) -> Vec<Option<usize>> {
    let mut out = vec![None; n];
    for (i, s) in p.n.iter().enumerate() {
        for &v in s {
            out[v] = Some(i);
        }
    }
    out
}

/// True when `v` has two non-neighbours in one component.
fn misses_two(g: &Graph, v: usize, comps: &[Vec<usize>]) -> bool {
    comps.iter().any(|c| c.iter().filter(|&&u| !g.has_edge(u, v)).count() >= 2)
}

pub(crate) struct Analysis {
    pub branch: Branch,
    pub partition: Option<K5Partition>,
}

pub(crate) fn analyse(g: &Graph) -> Result<Analysis, StructureError> {
    let Some(k) = find_k5(g) else {
        return Ok(Analysis { branch: Branch::K5Free, partition: None });
    };
    let p = partition_unchecked(g, k)?;
    let branch = branch_of(g, &p)?;
    Ok(Analysis { branch, partition: Some(p) })
}

fn branch_of(g: &Graph, p: &K5Partition) -> Result<Branch, StructureError> {
    claims_hold(g, p).map_err(StructureError::Claim)?;
    let comps = d_components(g, &p.d());
    // components are cliques, so a K4 in G[D] is a component of size four or more
    Ok(if comps.iter().filter(|c| c.len() >= 2).count() <= 1 {
        Branch::OneNontrivial
    } else if comps.iter().any(|c| c.len() >= 4) {
        Branch::K4Attachments
    } else {
        Branch::K4FreeAttachments
    })
}

/// Decides isomorphism of two (crossed house, P2+P3)-free graphs.
pub fn solve_gi_cohouse_p2p3(g: &Graph, h: &Graph) -> Result<(bool, GiDriverTrace), StructureError> {
    let class = DriverClass::CohouseP2P3;
    class.admits(g, Side::G)?;
    class.admits(h, Side::H)?;
    let mut trace = GiDriverTrace::new(class);
    let verdict = solve_at(g, h, &mut trace, 0)?;
    Ok((verdict, trace))
}

fn solve_at(g: &Graph, h: &Graph, trace: &mut GiDriverTrace, depth: usize) -> Result<bool, StructureError> {
    componentwise(g, h, trace, depth, analyse, |a| a.branch, |x, ax, y, ay, tr| {
        same(x, ax, y, ay, tr, depth)
    })
}

fn same(
    x: &Graph,
    ax: &Analysis,
    y: &Graph,
    ay: &Analysis,
    trace: &mut GiDriverTrace,
    depth: usize,
) -> Result<bool, StructureError> {
    let px = match (&ax.partition, ax.branch) {
        (None, _) => return Ok(ay.branch == Branch::K5Free && trace.oracle(x, y).is_some()),
        (Some(_), Branch::OneNontrivial) => return Ok(trace.oracle(x, y).is_some()),
        (Some(p), _) => p,
    };
    if ay.partition.is_none() {
        return Ok(false);
    }
    for py in distinct_partitions(y)? {
        if branch_of(y, &py)? != ax.branch || class_sizes(px) != class_sizes(&py) {
            continue;
        }
        let found = match ax.branch {
            Branch::K4FreeAttachments => k4_free_match(x, px, y, &py, trace)?,
            _ => k4_match(x, px, y, &py, trace, depth)?,
        };
        if found {
            return Ok(true);
        }
    }
    Ok(false)
}

fn class_sizes(p: &K5Partition) -> Vec<(usize, usize)> {
    let mut s = p.a.iter().zip(&p.n).map(|(a, n)| (a.len(), n.len())).collect::<Vec<_>>();
    s.sort_unstable();
    s
}

/// Vertices of `L` whose closed neighbourhood is exactly `L`.
fn interchangeable(g: &Graph, p: &K5Partition) -> Vec<usize> {
    let l = p.l();
    l.iter()
        .copied()
        .filter(|&v| g.degree(v) + 1 == l.len() && l.iter().all(|&u| u == v || g.has_edge(u, v)))
        .collect()
}

/// Splits `V` into kept vertices and deleted interchangeable ones so that
/// five classes of `L` remain.
fn thin(g: &Graph, p: &K5Partition) -> Result<(Vec<usize>, Vec<usize>), StructureError> {
    let inter = interchangeable(g, p);
    let fixed = p.p() - inter.len();
    if fixed > 5 {
        return Err(StructureError::Internal(format!("{fixed} classes of L are not interchangeable")));
    }
    let dropped = inter[5 - fixed..].to_vec();
    let kept = (0..g.order()).filter(|v| dropped.binary_search(v).is_err()).collect();
    Ok((kept, dropped))
}

fn k4_free_match(
    x: &Graph,
    px: &K5Partition,
    y: &Graph,
    py: &K5Partition,
    trace: &mut GiDriverTrace,
) -> Result<bool, StructureError> {
    let (kx, dx) = thin(x, px)?;
    let (ky, dy) = thin(y, py)?;
    if dx.len() != dy.len() {
        return Ok(false);
    }
    let (xr, yr) = (x.induced_sorted(&kx), y.induced_sorted(&ky));
    trace.transformations.push(format!(
        "dropped {} interchangeable vertices from each side, {} vertices remain",
        dx.len(),
        xr.order()
    ));
    let Some(f) = trace.oracle(&xr, &yr) else {
        return Ok(false);
    };
    let mut ext = vec![0; x.order()];
    for (i, &v) in kx.iter().enumerate() {
        ext[v] = ky[f[i]];
    }
    for (&a, &b) in dx.iter().zip(&dy) {
        ext[a] = b;
    }
    if is_isomorphism(x, y, &ext) {
        Ok(true)
    } else {
        trace
            .transformations
            .push("isomorphism of the thinned graphs does not extend".into());
        Ok(false)
    }
}

/// The parts of a graph whose `G[D]` has a `K4`.
struct LargeAttachments {
    /// The vertex of the attached class missing a whole component, if any.
    x: Option<usize>,
    /// The attached class without `x`.
    a_star: Vec<usize>,
    /// `G[L ∖ {x} ∪ D*]`, where `D*` is the union of components with at most
    /// three vertices.
    reduced: Graph,
    small_components: usize,
    /// `(|C|, |C ∩ B|)` over components with four or more vertices, sorted.
    census: Vec<(usize, usize)>,
}

impl fmt::Debug for LargeAttachments {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x={:?} |A*|={} census={:?}", self.x, self.a_star.len(), self.census)
    }
}

fn large_attachments(g: &Graph, p: &K5Partition) -> Result<LargeAttachments, StructureError> {
    let attached = (0..p.p()).filter(|&i| !p.n[i].is_empty()).collect::<Vec<_>>();
    let [i1] = attached[..] else {
        return Err(StructureError::Internal(format!(
            "D with a K4 should attach to exactly one class, found {}",
            attached.len()
        )));
    };
    let comps = d_components(g, &p.d());
    let nontrivial = comps.iter().filter(|c| c.len() >= 2).cloned().collect::<Vec<_>>();
    let x = p.a[i1].iter().copied().find(|&v| misses_two(g, v, &nontrivial));
    let a_star = p.a[i1].iter().copied().filter(|&v| Some(v) != x).collect::<Vec<_>>();
    let small = comps.iter().filter(|c| c.len() <= 3).collect::<Vec<_>>();
    let mut keep = p.l().into_iter().filter(|&v| Some(v) != x).collect::<Vec<_>>();
    keep.extend(small.iter().flat_map(|c| c.iter().copied()));
    keep.sort_unstable();
    let mut census = comps
        .iter()
        .filter(|c| c.len() >= 4)
        .map(|c| (c.len(), c.iter().filter(|v| p.b.binary_search(v).is_ok()).count()))
        .collect::<Vec<_>>();
    census.sort_unstable();
    Ok(LargeAttachments {
        x,
        a_star,
        reduced: g.induced_sorted(&keep),
        small_components: small.len(),
        census,
    })
}

fn k4_match(
    x: &Graph,
    px: &K5Partition,
    y: &Graph,
    py: &K5Partition,
    trace: &mut GiDriverTrace,
    depth: usize,
) -> Result<bool, StructureError> {
    let lx = large_attachments(x, px)?;
    let ly = large_attachments(y, py)?;
    trace.transformations.push(format!("G: {lx:?}; H: {ly:?}"));
    if lx.x.is_some() != ly.x.is_some() || lx.census != ly.census {
        return Ok(false);
    }
    match (lx.small_components, ly.small_components) {
        (0, 0) => {
            // both reduced graphs are complete multipartite
            let sizes = |r: &Graph| {
                let mut s = r
                    .complete_multipartite_classes()
                    .map(|cs| cs.iter().map(Vec::len).collect::<Vec<_>>());
                if let Some(v) = s.as_mut() {
                    v.sort_unstable();
                }
                s
            };
            let (sx, sy) = (sizes(&lx.reduced), sizes(&ly.reduced));
            if sx.is_none() || sy.is_none() {
                return Err(StructureError::Internal("reduced graph is not complete multipartite".into()));
            }
            Ok(sx == sy && lx.a_star.len() == ly.a_star.len())
        }
        (0, _) | (_, 0) => Ok(false),
        _ => {
            trace.steps.push(TraceStep {
                depth: depth + 1,
                side: Side::G,
                component: (0..lx.reduced.order()).collect(),
                branch: analyse(&lx.reduced)?.branch,
            });
            solve_at(&lx.reduced, &ly.reduced, trace, depth + 1)
        }
    }
}
