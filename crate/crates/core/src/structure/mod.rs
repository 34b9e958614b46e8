//! The K5 extension partition of crossed-house-free graphs and two
//! isomorphism drivers built on it.
//!
//! Fix an induced `K5` with vertex set `K` in a crossed-house-free graph.
//! The vertices with at most one non-neighbour in `K` form a set `L`
//! inducing a complete multipartite graph with classes `A_1..A_p`, `p ≥ 5`.
//! Every other vertex sees at most one class: it lies in `N_i` when it has a
//! neighbour in `A_i`, and in `B` when it sees none. [`K5Partition`] holds
//! this decomposition with the classes in a canonical order (descending
//! size, then smallest vertex), which pins down the otherwise arbitrary
//! indexing.
//!
//! The drivers [`solve_gi_cohouse_p5`] and [`solve_gi_cohouse_p2p3`] decide
//! isomorphism one connected component at a time. Whenever the structural
//! argument hands off to an algorithm for a simpler class (K5-free graphs or
//! graphs of bounded clique-width), the driver calls the general solver in
//! [`crate::iso`] instead and counts the call in its [`GiDriverTrace`].

mod p2p3;
mod p5;

use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::catalog::crossed_house;
use crate::graph::Graph;
use crate::iso::are_isomorphic;
use crate::subiso::free_witness;

pub use p2p3::{claims_hold, solve_gi_cohouse_p2p3, ClaimFailure};
pub use p5::{solve_gi_cohouse_p5, type_census, type_gadget_graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    G,
    H,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::G => "G",
            Side::H => "H",
        })
    }
}

/// The six defining properties of a [`K5Partition`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PartitionInvariant {
    /// `K` lies inside the union of the `A_i`.
    KInsideL,
    /// `G[L]` is complete multipartite with exactly the classes `A_i`.
    Multipartite,
    /// Every vertex of `N_i` has a neighbour in `A_i` and none in `A_j`, `j ≠ i`.
    Attachments,
    /// `B` is anti-complete to `L`.
    BDetached,
    /// The sets partition `V(G)`.
    Covers,
    /// There are at least five classes.
    AtLeastFive,
}

impl PartitionInvariant {
    pub const ALL: [PartitionInvariant; 6] = [
        PartitionInvariant::KInsideL,
        PartitionInvariant::Multipartite,
        PartitionInvariant::Attachments,
        PartitionInvariant::BDetached,
        PartitionInvariant::Covers,
        PartitionInvariant::AtLeastFive,
    ];
}

impl fmt::Display for PartitionInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PartitionInvariant::KInsideL => "K is contained in L",
            PartitionInvariant::Multipartite => "G[L] is complete multipartite with classes A_i",
            PartitionInvariant::Attachments => "each N_i vertex sees A_i and no other class",
            PartitionInvariant::BDetached => "B is anti-complete to L",
            PartitionInvariant::Covers => "the sets partition V(G)",
            PartitionInvariant::AtLeastFive => "p >= 5",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("vertex {vertex} is out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("vertices {vertices:?} do not induce K5")]
    NotK5 { vertices: Vec<usize> },
    #[error("graph contains an induced crossed house on {vertices:?}")]
    CrossedHouse { vertices: Vec<usize> },
    #[error("input {side} is not in the class: induced {forbidden} on {vertices:?}")]
    Precondition {
        side: Side,
        forbidden: String,
        vertices: Vec<usize>,
    },
    #[error("partition invariant failed ({invariant}): {detail}")]
    Invariant {
        invariant: PartitionInvariant,
        detail: String,
    },
    #[error("structural claim failed on an admissible input: {0}")]
    Claim(ClaimFailure),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

/// The decomposition `A_1..A_p, N_1..N_p, B` determined by an induced `K5`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct K5Partition {
    pub k: [usize; 5],
    pub a: Vec<Vec<usize>>,
    pub n: Vec<Vec<usize>>,
    pub b: Vec<usize>,
}

impl K5Partition {
    pub fn p(&self) -> usize {
        self.a.len()
    }

    /// `L`, the union of the classes, sorted.
    pub fn l(&self) -> Vec<usize> {
        let mut l = self.a.concat();
        l.sort_unstable();
        l
    }

    /// `D = V ∖ L`, sorted.
    pub fn d(&self) -> Vec<usize> {
        let mut d = self.n.concat();
        d.extend(&self.b);
        d.sort_unstable();
        d
    }

    pub fn nonempty_attachments(&self) -> usize {
        self.n.iter().filter(|s| !s.is_empty()).count()
    }

    /// Reorders the `(A_i, N_i)` pairs by descending `|A_i|`, then smallest
    /// vertex of `A_i`.
    pub fn canonicalize(&mut self) {
        for s in self.a.iter_mut().chain(self.n.iter_mut()) {
            s.sort_unstable();
        }
        self.b.sort_unstable();
        let mut pairs = self.a.drain(..).zip(self.n.drain(..)).collect::<Vec<_>>();
        pairs.sort_by(|(x, _), (y, _)| y.len().cmp(&x.len()).then(x.first().cmp(&y.first())));
        (self.a, self.n) = pairs.into_iter().unzip();
    }

    /// The invariants that fail on `g`, each with a short explanation.
    pub fn violations(&self, g: &Graph) -> Vec<(PartitionInvariant, String)> {
        let mut out = Vec::new();
        let l = self.l();
        let in_l = mask(g.order(), &l);
        if let Some(v) = self.k.iter().find(|&&v| v >= g.order() || !in_l.contains(v)) {
            out.push((PartitionInvariant::KInsideL, format!("K vertex {v} is not in L")));
        }
        let multipartite = self.a.iter().all(|c| !c.is_empty() && g.is_independent(c))
            && self
                .a
                .iter()
                .enumerate()
                .all(|(i, x)| self.a[i + 1..].iter().all(|y| g.is_complete_to(x, y)));
        if !multipartite {
            out.push((
                PartitionInvariant::Multipartite,
                "some class is empty, not independent, or not complete to another".into(),
            ));
        }
        for (i, ni) in self.n.iter().enumerate() {
            for &v in ni {
                let sees = |c: &[usize]| c.iter().any(|&u| g.has_edge(u, v));
                let others = (0..self.p()).filter(|&j| j != i && sees(&self.a[j])).count();
                if !sees(&self.a[i]) || others > 0 {
                    out.push((
                        PartitionInvariant::Attachments,
                        format!("vertex {v} of N_{} sees the wrong classes", i + 1),
                    ));
                }
            }
        }
        if !g.is_anticomplete_to(&self.b, &l) {
            out.push((PartitionInvariant::BDetached, "a vertex of B has a neighbour in L".into()));
        }
        let mut all = l.clone();
        all.extend(self.d());
        all.sort_unstable();
        if all != (0..g.order()).collect::<Vec<_>>() || self.n.len() != self.a.len() {
            out.push((PartitionInvariant::Covers, "sets overlap or miss a vertex".into()));
        }
        if self.p() < 5 {
            out.push((PartitionInvariant::AtLeastFive, format!("p = {}", self.p())));
        }
        out
    }

    pub fn check(&self, g: &Graph) -> Result<(), StructureError> {
        match self.violations(g).into_iter().next() {
            None => Ok(()),
            Some((invariant, detail)) => Err(StructureError::Invariant { invariant, detail }),
        }
    }
}

pub(crate) fn mask(n: usize, set: &[usize]) -> FixedBitSet {
    let mut m = FixedBitSet::with_capacity(n);
    for &v in set {
        m.insert(v);
    }
    m
}

/// Calls `visit` on every induced `K5` in lexicographic order until it
/// returns `false`.
pub(crate) fn for_each_k5(g: &Graph, mut visit: impl FnMut([usize; 5]) -> bool) {
    fn grow(
        g: &Graph,
        chosen: &mut Vec<usize>,
        candidates: &FixedBitSet,
        visit: &mut dyn FnMut([usize; 5]) -> bool,
    ) -> bool {
        if chosen.len() == 5 {
            return visit(chosen[..].try_into().expect("five vertices"));
        }
        for v in candidates.ones() {
            let mut next = candidates.clone();
            next.intersect_with(g.neighborhood(v));
            next.set_range(..v + 1, false);
            if next.count_ones(..) + chosen.len() + 1 < 5 {
                continue;
            }
            chosen.push(v);
            let go_on = grow(g, chosen, &next, visit);
            chosen.pop();
            if !go_on {
                return false;
            }
        }
        true
    }
    let mut all = FixedBitSet::with_capacity(g.order());
    all.insert_range(..);
    grow(g, &mut Vec::new(), &all, &mut visit);
}

/// The lexicographically first induced `K5`.
pub fn find_k5(g: &Graph) -> Option<[usize; 5]> {
    let mut found = None;
    for_each_k5(g, |k| {
        found = Some(k);
        false
    });
    found
}

/// The partition for `K`, after checking that `K` induces `K5` and that
/// `g` has no induced crossed house.
pub fn k5_extension_partition(g: &Graph, k: [usize; 5]) -> Result<K5Partition, StructureError> {
    if let Some(&vertex) = k.iter().find(|&&v| v >= g.order()) {
        return Err(StructureError::VertexOutOfRange { vertex, n: g.order() });
    }
    let mut sorted = k.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != 5 || !g.is_clique(&k) {
        return Err(StructureError::NotK5 { vertices: k.to_vec() });
    }
    if let Some((_, e)) = free_witness(g, &[crossed_house()]) {
        return Err(StructureError::CrossedHouse { vertices: e.map });
    }
    partition_unchecked(g, k)
}

/// [`k5_extension_partition`] without the freeness scan, for callers that
/// have already established it.
pub(crate) fn partition_unchecked(g: &Graph, k: [usize; 5]) -> Result<K5Partition, StructureError> {
    let n = g.order();
    let kmask = mask(n, &k);
    let l = (0..n)
        .filter(|&v| {
            kmask.contains(v) || k.iter().filter(|&&u| !g.has_edge(u, v)).count() <= 1
        })
        .collect::<Vec<_>>();
    let classes = g.induced_sorted(&l).complete_multipartite_classes().ok_or_else(|| {
        StructureError::Invariant {
            invariant: PartitionInvariant::Multipartite,
            detail: "G[L] is not complete multipartite".into(),
        }
    })?;
    let a = classes
        .into_iter()
        .map(|c| c.into_iter().map(|i| l[i]).collect::<Vec<_>>())
        .collect::<Vec<_>>();
    let in_l = mask(n, &l);
    let mut class_of = vec![usize::MAX; n];
    for (i, c) in a.iter().enumerate() {
        for &v in c {
            class_of[v] = i;
        }
    }
    let mut attach = vec![Vec::new(); a.len()];
    let mut b = Vec::new();
    for v in (0..n).filter(|&v| !in_l.contains(v)) {
        let mut seen = g.neighbors(v).filter(|&u| in_l.contains(u)).map(|u| class_of[u]).collect::<Vec<_>>();
        seen.sort_unstable();
        seen.dedup();
        match seen[..] {
            [] => b.push(v),
            [i] => attach[i].push(v),
            _ => {
                return Err(StructureError::Invariant {
                    invariant: PartitionInvariant::Attachments,
                    detail: format!("vertex {v} sees classes {seen:?}"),
                })
            }
        }
    }
    let mut part = K5Partition { k, a, n: attach, b };
    part.canonicalize();
    part.check(g)?;
    Ok(part)
}

/// One partition per distinct set `L`, over all induced `K5`s. A `K5`
/// inside a set `L` already found yields that same `L` again, so it is
/// skipped.
pub(crate) fn distinct_partitions(g: &Graph) -> Result<Vec<K5Partition>, StructureError> {
    let mut out: Vec<(FixedBitSet, K5Partition)> = Vec::new();
    let mut failure = None;
    for_each_k5(g, |k| {
        if out.iter().any(|(l, _)| k.iter().all(|&v| l.contains(v))) {
            return true;
        }
        match partition_unchecked(g, k) {
            Ok(p) => {
                out.push((mask(g.order(), &p.l()), p));
                true
            }
            Err(e) => {
                failure = Some(e);
                false
            }
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(out.into_iter().map(|(_, p)| p).collect()),
    }
}

/// Adds a vertex with the same open neighbourhood as `x`.
pub fn add_false_twin(g: &Graph, x: usize) -> Result<Graph, StructureError> {
    if x >= g.order() {
        return Err(StructureError::VertexOutOfRange { vertex: x, n: g.order() });
    }
    let nbrs = g.neighbors(x).collect::<Vec<_>>();
    Ok(g.add_vertex(&nbrs).expect("neighbours are in range"))
}

/// The two graph classes with a structural driver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DriverClass {
    /// (crossed house, P5)-free graphs.
    CohouseP5,
    /// (crossed house, P2+P3)-free graphs.
    CohouseP2P3,
}

impl DriverClass {
    pub fn id(self) -> &'static str {
        match self {
            DriverClass::CohouseP5 => "cohouse-p5",
            DriverClass::CohouseP2P3 => "cohouse-p2p3",
        }
    }

    /// The forbidden pair, by catalog name.
    pub fn forbidden_names(self) -> [&'static str; 2] {
        match self {
            DriverClass::CohouseP5 => ["co(2P1+P3)", "P5"],
            DriverClass::CohouseP2P3 => ["co(2P1+P3)", "P2+P3"],
        }
    }

    pub fn forbidden(self) -> [Graph; 2] {
        self.forbidden_names()
            .map(|name| crate::catalog::make(name).expect("catalog names parse"))
    }

    /// Checks that `g` lies in the class.
    pub fn admits(self, g: &Graph, side: Side) -> Result<(), StructureError> {
        let forbidden = self.forbidden();
        match free_witness(g, &forbidden) {
            None => Ok(()),
            Some((i, e)) => Err(StructureError::Precondition {
                side,
                forbidden: self.forbidden_names()[i].to_string(),
                vertices: e.map,
            }),
        }
    }
}

impl fmt::Display for DriverClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown graph class {0:?}; expected cohouse-p5 or cohouse-p2p3")]
pub struct UnknownClass(pub String);

impl FromStr for DriverClass {
    type Err = UnknownClass;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cohouse-p5" => Ok(DriverClass::CohouseP5),
            "cohouse-p2p3" => Ok(DriverClass::CohouseP2P3),
            _ => Err(UnknownClass(s.to_string())),
        }
    }
}

/// Which part of the case analysis handled a component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    /// No induced `K5`: solved by the general solver.
    K5Free,
    /// Some `K5` has at least three non-empty `N_i` (bounded clique-width).
    ThreeAttachments,
    /// Every `K5` has at most two non-empty `N_i`: the type gadgets remove
    /// all `K5`s.
    TypeGadgets,
    /// `G[D]` has at most one non-trivial component (bounded clique-width).
    OneNontrivial,
    /// `G[D]` has two or more non-trivial components and no `K4`.
    K4FreeAttachments,
    /// `G[D]` has two or more non-trivial components and a `K4`.
    K4Attachments,
}

impl Branch {
    pub fn id(self) -> &'static str {
        match self {
            Branch::K5Free => "k5-free",
            Branch::ThreeAttachments => "three-attachments",
            Branch::TypeGadgets => "type-gadgets",
            Branch::OneNontrivial => "one-nontrivial",
            Branch::K4FreeAttachments => "k4-free-attachments",
            Branch::K4Attachments => "k4-attachments",
        }
    }

    pub fn class(self) -> DriverClass {
        match self {
            Branch::K5Free => DriverClass::CohouseP5,
            Branch::ThreeAttachments | Branch::TypeGadgets => DriverClass::CohouseP5,
            _ => DriverClass::CohouseP2P3,
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// The branch taken for one component of the first input. Steps with
/// `depth > 0` come from the recursive call on a reduced graph, and their
/// vertices refer to that graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub depth: usize,
    pub side: Side,
    pub component: Vec<usize>,
    pub branch: Branch,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GiDriverTrace {
    pub class: DriverClass,
    pub steps: Vec<TraceStep>,
    pub oracle_calls: usize,
    pub transformations: Vec<String>,
}

impl GiDriverTrace {
    fn new(class: DriverClass) -> Self {
        GiDriverTrace {
            class,
            steps: Vec::new(),
            oracle_calls: 0,
            transformations: Vec::new(),
        }
    }

    pub(crate) fn oracle(&mut self, g: &Graph, h: &Graph) -> Option<Vec<usize>> {
        self.oracle_calls += 1;
        are_isomorphic(g, h)
    }

    /// Top-level branches, in order.
    pub fn branches(&self) -> Vec<Branch> {
        self.steps.iter().filter(|s| s.depth == 0).map(|s| s.branch).collect()
    }

    /// Recomputes the guard of every top-level step on the inputs.
    pub fn verify_guards(&self, g: &Graph, h: &Graph) -> Result<(), StructureError> {
        for step in self.steps.iter().filter(|s| s.depth == 0) {
            let host = match step.side {
                Side::G => g,
                Side::H => h,
            };
            let comp = host
                .induced(&step.component)
                .map_err(|e| StructureError::Internal(e.to_string()))?;
            let actual = classify_component(self.class, &comp)?;
            if actual != step.branch {
                return Err(StructureError::Internal(format!(
                    "trace records {} for component {:?} but the guard gives {}",
                    step.branch, step.component, actual
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for GiDriverTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "class {}", self.class)?;
        for s in &self.steps {
            writeln!(
                f,
                "{}{} component {:?}: {}",
                "  ".repeat(s.depth),
                s.side,
                s.component,
                s.branch
            )?;
        }
        for t in &self.transformations {
            writeln!(f, "transform {t}")?;
        }
        write!(f, "oracle calls {}", self.oracle_calls)
    }
}

/// The branch a connected graph falls into.
pub fn classify_component(class: DriverClass, g: &Graph) -> Result<Branch, StructureError> {
    match class {
        DriverClass::CohouseP5 => p5::analyse(g).map(|a| a.branch),
        DriverClass::CohouseP2P3 => p2p3::analyse(g).map(|a| a.branch),
    }
}

/// Runs the driver for `class`.
pub fn solve_gi(class: DriverClass, g: &Graph, h: &Graph) -> Result<(bool, GiDriverTrace), StructureError> {
    match class {
        DriverClass::CohouseP5 => solve_gi_cohouse_p5(g, h),
        DriverClass::CohouseP2P3 => solve_gi_cohouse_p2p3(g, h),
    }
}

/// Matches the components of `g` with those of `h`. `same` decides a pair
/// of connected graphs; isomorphism is an equivalence relation, so a greedy
/// matching is exact.
pub(crate) fn componentwise<A>(
    g: &Graph,
    h: &Graph,
    trace: &mut GiDriverTrace,
    depth: usize,
    analyse: impl Fn(&Graph) -> Result<A, StructureError>,
    branch: impl Fn(&A) -> Branch,
    mut same: impl FnMut(&Graph, &A, &Graph, &A, &mut GiDriverTrace) -> Result<bool, StructureError>,
) -> Result<bool, StructureError> {
    if g.order() != h.order() || g.edge_count() != h.edge_count() {
        return Ok(false);
    }
    let comps = |x: &Graph| -> Result<Vec<(Vec<usize>, Graph, A)>, StructureError> {
        x.components()
            .into_iter()
            .map(|c| {
                let sub = x.induced_sorted(&c.vertices);
                let a = analyse(&sub)?;
                Ok((c.vertices, sub, a))
            })
            .collect()
    };
    let gc = comps(g)?;
    let hc = comps(h)?;
    for (vertices, _, a) in &gc {
        trace.steps.push(TraceStep {
            depth,
            side: Side::G,
            component: vertices.clone(),
            branch: branch(a),
        });
    }
    if gc.len() != hc.len() {
        return Ok(false);
    }
    let mut used = vec![false; hc.len()];
    for (_, x, ax) in &gc {
        let mut matched = false;
        for (j, (_, y, ay)) in hc.iter().enumerate() {
            if used[j]
                || x.order() != y.order()
                || x.edge_count() != y.edge_count()
                || x.degree_sequence() != y.degree_sequence()
            {
                continue;
            }
            if same(x, ax, y, ay, trace)? {
                used[j] = true;
                matched = true;
                break;
            }
        }
        if !matched {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{complete, petersen};

    #[test]
    fn find_k5_examples() {
        assert_eq!(find_k5(&complete(5)), Some([0, 1, 2, 3, 4]));
        assert_eq!(find_k5(&complete(6)), Some([0, 1, 2, 3, 4]));
        assert_eq!(find_k5(&petersen()), None);
        let mut count = 0;
        for_each_k5(&complete(7), |_| {
            count += 1;
            true
        });
        assert_eq!(count, 21);
    }

    #[test]
    fn partition_examples() {
        let p = k5_extension_partition(&complete(5), [0, 1, 2, 3, 4]).unwrap();
        assert_eq!(p.a, vec![vec![0], vec![1], vec![2], vec![3], vec![4]]);
        assert!(p.n.iter().all(|s| s.is_empty()) && p.b.is_empty());

        let p = k5_extension_partition(&complete(6), [1, 2, 3, 4, 5]).unwrap();
        assert_eq!(p.p(), 6);
        assert!(p.a.iter().all(|c| c.len() == 1));

        let pendant = complete(5).add_vertex(&[0]).unwrap();
        let p = k5_extension_partition(&pendant, [0, 1, 2, 3, 4]).unwrap();
        let i = p.a.iter().position(|c| c == &vec![0]).unwrap();
        assert_eq!(p.n[i], vec![5]);
        assert!(p.b.is_empty());
        assert_eq!(p.d(), vec![5]);
    }

    #[test]
    fn multipartite_core_with_detached_b() {
        // K_{2,1,1,1,1} plus a pendant path 6-7 hanging off vertex 0
        let mut g = Graph::from_fn(6, |u, v| !(u == 0 && v == 1));
        g = g.add_vertex(&[0]).unwrap().add_vertex(&[6]).unwrap();
        let p = k5_extension_partition(&g, [0, 2, 3, 4, 5]).unwrap();
        assert_eq!(p.a[0], vec![0, 1]);
        assert_eq!(p.n[0], vec![6]);
        assert_eq!(p.b, vec![7]);
        assert!(p.violations(&g).is_empty());
    }

    #[test]
    fn partition_errors() {
        let k5 = complete(5);
        assert!(matches!(
            k5_extension_partition(&k5, [0, 1, 2, 3, 9]),
            Err(StructureError::VertexOutOfRange { vertex: 9, .. })
        ));
        assert!(matches!(
            k5_extension_partition(&k5, [0, 1, 2, 3, 3]),
            Err(StructureError::NotK5 { .. })
        ));
        // K5 plus a vertex seeing exactly two of its vertices has a crossed house
        let bad = k5.add_vertex(&[0, 1]).unwrap();
        assert!(matches!(
            k5_extension_partition(&bad, [0, 1, 2, 3, 4]),
            Err(StructureError::CrossedHouse { .. })
        ));
    }

    #[test]
    fn violations_are_reported() {
        let g = complete(5).add_vertex(&[0]).unwrap();
        let mut p = k5_extension_partition(&g, [0, 1, 2, 3, 4]).unwrap();
        p.b.push(5);
        let found = p.violations(&g).into_iter().map(|(i, _)| i).collect::<Vec<_>>();
        assert!(found.contains(&PartitionInvariant::BDetached));
        assert!(found.contains(&PartitionInvariant::Covers));
    }

    #[test]
    fn false_twin() {
        let p2 = complete(2);
        let g = add_false_twin(&p2, 0).unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (1, 2)]);
        assert_eq!(add_false_twin(&Graph::empty(1), 0).unwrap(), Graph::empty(2));
        assert!(add_false_twin(&p2, 2).is_err());
    }

    #[test]
    fn class_ids_roundtrip() {
        for c in [DriverClass::CohouseP5, DriverClass::CohouseP2P3] {
            assert_eq!(c.id().parse::<DriverClass>().unwrap(), c);
        }
        assert!("p5".parse::<DriverClass>().is_err());
    }
}
