//! Classification of forbidden pairs `(H1, H2)` for graph isomorphism and
//! clique-width.
//!
//! Two pairs are equivalent when one can be reached from the other by
//! complementing both graphs and by swapping `K3` with the paw in either
//! coordinate. Both problems behave identically on equivalent classes, so a
//! pair is classified by evaluating every rule on every member of its
//! equivalence closure, in both orientations.
//!
//! All rules are evaluated, never short-circuited. If a tractable rule and a
//! hard rule both fire, or a rule fires on a pair from the open list, the
//! tables are inconsistent and [`ClassifyError::Contradiction`] is returned.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::catalog::{in_class_s, is_path_star_forest, make, MonotoneFamily};
use crate::graph::Graph;
use crate::iso::{canonical_form, is_isomorphic, Certificate};
use crate::subiso::contains_induced;

/// Largest forbidden graph accepted by the classifier.
pub const MAX_ORDER: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("H{side} has {n} vertices, above the classifier limit of {limit}")]
    TooLarge { side: u8, n: usize, limit: usize },
    #[error("internal contradiction: tractable {positive:?}, hard {negative:?}, open {open:?}")]
    Contradiction {
        positive: Vec<&'static str>,
        negative: Vec<&'static str>,
        open: Vec<&'static str>,
    },
    #[error("no rule and no open case matches the pair")]
    Unclassified,
}

/// One step of the equivalence relation on forbidden pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EquivOp {
    ComplementBoth,
    /// Replace `K3` in coordinate 0 or 1 by the paw.
    TriangleToPaw(usize),
    /// Replace the paw in coordinate 0 or 1 by `K3`.
    PawToTriangle(usize),
}

impl fmt::Display for EquivOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EquivOp::ComplementBoth => f.write_str("complement both"),
            EquivOp::TriangleToPaw(i) => write!(f, "K3 -> paw in H{}", i + 1),
            EquivOp::PawToTriangle(i) => write!(f, "paw -> K3 in H{}", i + 1),
        }
    }
}

/// A pair equivalent to the input, with the operations that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Member {
    pub h1: Graph,
    pub h2: Graph,
    pub ops: Vec<EquivOp>,
}

/// The equivalence class of an unordered pair. The first member is the input.
#[derive(Debug, Clone)]
pub struct PairClass {
    pub members: Vec<Member>,
}

impl PairClass {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Whether some member equals the unordered pair `{a, b}` up to isomorphism.
    pub fn contains(&self, a: &Graph, b: &Graph) -> bool {
        self.members.iter().any(|m| same_unordered(&m.h1, &m.h2, a, b))
    }

    /// A canonical key for the whole class: the smallest member key.
    pub fn key(&self) -> (Certificate, Certificate) {
        self.members
            .iter()
            .map(|m| pair_key(&m.h1, &m.h2))
            .min()
            .expect("a closure is never empty")
    }
}

fn certificate(g: &Graph) -> Certificate {
    canonical_form(g).expect("classifier graphs are small").certificate
}

fn pair_key(a: &Graph, b: &Graph) -> (Certificate, Certificate) {
    let (x, y) = (certificate(a), certificate(b));
    if x <= y {
        (x, y)
    } else {
        (y, x)
    }
}

fn same_unordered(a1: &Graph, a2: &Graph, b1: &Graph, b2: &Graph) -> bool {
    (is_isomorphic(a1, b1) && is_isomorphic(a2, b2)) || (is_isomorphic(a1, b2) && is_isomorphic(a2, b1))
}

fn triangle() -> Graph {
    Graph::complete(3)
}

/// Every pair reachable from `{h1, h2}`; at most eight members.
pub fn equivalence_closure(h1: &Graph, h2: &Graph) -> PairClass {
    let (k3, paw) = (triangle(), named("paw").clone());
    let mut seen = HashSet::new();
    let mut members = Vec::new();
    let mut queue = VecDeque::from([Member {
        h1: h1.clone(),
        h2: h2.clone(),
        ops: Vec::new(),
    }]);
    while let Some(m) = queue.pop_front() {
        if !seen.insert(pair_key(&m.h1, &m.h2)) {
            continue;
        }
        let step = |h1: Graph, h2: Graph, op| {
            let mut ops = m.ops.clone();
            ops.push(op);
            Member { h1, h2, ops }
        };
        let mut next = vec![step(m.h1.complement(), m.h2.complement(), EquivOp::ComplementBoth)];
        for i in 0..2 {
            let coordinate = if i == 0 { &m.h1 } else { &m.h2 };
            let swapped = if is_isomorphic(coordinate, &k3) {
                Some((paw.clone(), EquivOp::TriangleToPaw(i)))
            } else if is_isomorphic(coordinate, &paw) {
                Some((k3.clone(), EquivOp::PawToTriangle(i)))
            } else {
                None
            };
            if let Some((g, op)) = swapped {
                next.push(if i == 0 {
                    step(g, m.h2.clone(), op)
                } else {
                    step(m.h1.clone(), g, op)
                });
            }
        }
        queue.extend(next);
        members.push(m);
    }
    PairClass { members }
}

/// A graph a rule compares against: a fixed catalog graph or a family
/// instantiated at the shared parameter `t`.
#[derive(Debug, Clone, Copy)]
pub enum Target {
    Named(&'static str),
    Family(MonotoneFamily),
}

/// A condition on one coordinate of an oriented pair.
#[derive(Debug, Clone, Copy)]
pub enum Cond {
    Any,
    /// `H ⊆i` one of the targets.
    Sub(&'static [Target]),
    /// The complement of `H` is `⊆i` one of the targets.
    CoSub(&'static [Target]),
    /// `H ⊇i` one of the named graphs.
    Sup(&'static [&'static str]),
    Complete,
    Edgeless,
    NotInS,
    NotInCoS,
    NotPathStarForest,
    NotCoPathStarForest,
}

impl Cond {
    fn holds(&self, h: &Graph, t: usize) -> bool {
        let sub = |h: &Graph, targets: &[Target]| {
            targets.iter().any(|target| match target {
                Target::Named(name) => contains_induced(named(name), h),
                Target::Family(family) => family.contains_at(h, t),
            })
        };
        match self {
            Cond::Any => true,
            Cond::Sub(targets) => sub(h, targets),
            Cond::CoSub(targets) => sub(&h.complement(), targets),
            Cond::Sup(names) => names.iter().any(|name| contains_induced(h, named(name))),
            Cond::Complete => h.edge_count() == h.order() * h.order().saturating_sub(1) / 2,
            Cond::Edgeless => h.edge_count() == 0,
            Cond::NotInS => !in_class_s(h),
            Cond::NotInCoS => !in_class_s(&h.complement()),
            Cond::NotPathStarForest => !is_path_star_forest(h),
            Cond::NotCoPathStarForest => !is_path_star_forest(&h.complement()),
        }
    }
}

/// Which part of a classification a rule belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Part {
    Tractable,
    Hard,
}

/// A row of a rule table. The guard applies to the ordered pair `(H1, H2)`.
#[derive(Debug, Clone, Copy)]
pub struct Rule {
    pub id: &'static str,
    pub part: Part,
    pub statement: &'static str,
    pub h1: Cond,
    pub h2: Cond,
}

impl Rule {
    /// Evaluates the guard on the ordered pair with the shared parameter
    /// `t = max(|V(H1)|, |V(H2)|)`.
    pub fn guard(&self, h1: &Graph, h2: &Graph) -> bool {
        let t = h1.order().max(h2.order());
        self.h1.holds(h1, t) && self.h2.holds(h2, t)
    }
}

/// A listed open case: `H1` is the named graph and `H2` one of the others.
#[derive(Debug, Clone, Copy)]
pub struct OpenCase {
    pub id: &'static str,
    pub statement: &'static str,
    pub h1: &'static str,
    pub h2: &'static [&'static str],
}

impl OpenCase {
    pub fn pairs(&self) -> impl Iterator<Item = (Graph, Graph)> + '_ {
        self.h2.iter().map(|b| (named(self.h1).clone(), named(b).clone()))
    }

    fn matches(&self, a: &Graph, b: &Graph) -> bool {
        self.pairs().any(|(x, y)| same_unordered(a, b, &x, &y))
    }
}

use Target::{Family, Named};

const P4: &[Target] = &[Named("P4")];

pub static GI_RULES: &[Rule] = &[
    Rule {
        id: "T10.1.i",
        part: Part::Tractable,
        statement: "H1 or H2 ⊆i P4",
        h1: Cond::Sub(P4),
        h2: Cond::Any,
    },
    Rule {
        id: "T10.1.ii",
        part: Part::Tractable,
        statement: "co(H1) and H2 ⊆i K_{1,t}+P1 for some t ≥ 1",
        h1: Cond::CoSub(&[Family(MonotoneFamily::StarPlusP1)]),
        h2: Cond::Sub(&[Family(MonotoneFamily::StarPlusP1)]),
    },
    Rule {
        id: "T10.1.iii",
        part: Part::Tractable,
        statement: "co(H1) and H2 ⊆i tP1+P3 for some t ≥ 1",
        h1: Cond::CoSub(&[Family(MonotoneFamily::IsolatedPlusP3)]),
        h2: Cond::Sub(&[Family(MonotoneFamily::IsolatedPlusP3)]),
    },
    Rule {
        id: "T10.1.iv",
        part: Part::Tractable,
        statement: "H1 ⊆i K_t and H2 ⊆i 2K_{1,t}, K_{1,t}^+ or P5 for some t ≥ 1",
        h1: Cond::Sub(&[Family(MonotoneFamily::Clique)]),
        h2: Cond::Sub(&[
            Family(MonotoneFamily::TwoStars),
            Family(MonotoneFamily::StarPlus),
            Named("P5"),
        ]),
    },
    Rule {
        id: "T10.1.v",
        part: Part::Tractable,
        statement: "H1 ⊆i paw and H2 ⊆i P2+P4, P6, S_{1,2,2} or K_{1,t}^{++}+P1 for some t ≥ 1",
        h1: Cond::Sub(&[Named("paw")]),
        h2: Cond::Sub(&[
            Named("P2+P4"),
            Named("P6"),
            Named("S_{1,2,2}"),
            Family(MonotoneFamily::StarPlusPlusP1),
        ]),
    },
    Rule {
        id: "T10.1.vi",
        part: Part::Tractable,
        statement: "H1 ⊆i diamond and H2 ⊆i P1+2P2",
        h1: Cond::Sub(&[Named("diamond")]),
        h2: Cond::Sub(&[Named("P1+2P2")]),
    },
    Rule {
        id: "T10.1.vii",
        part: Part::Tractable,
        statement: "H1 ⊆i gem and H2 ⊆i P1+P4 or P5",
        h1: Cond::Sub(&[Named("gem")]),
        h2: Cond::Sub(&[Named("P1+P4"), Named("P5")]),
    },
    Rule {
        id: "T10.1.viii",
        part: Part::Tractable,
        statement: "H1 ⊆i co(2P1+P3) and H2 ⊆i P2+P3 or P5",
        h1: Cond::Sub(&[Named("co(2P1+P3)")]),
        h2: Cond::Sub(&[Named("P2+P3"), Named("P5")]),
    },
    Rule {
        id: "T10.2.i",
        part: Part::Hard,
        statement: "neither H1 nor H2 is a path star forest",
        h1: Cond::NotPathStarForest,
        h2: Cond::NotPathStarForest,
    },
    Rule {
        id: "T10.2.ii",
        part: Part::Hard,
        statement: "neither co(H1) nor co(H2) is a path star forest",
        h1: Cond::NotCoPathStarForest,
        h2: Cond::NotCoPathStarForest,
    },
    Rule {
        id: "T10.2.iii",
        part: Part::Hard,
        statement: "H1 ⊇i K3 and H2 ⊇i 2P1+2P2, P1+2P3, 2P1+P4 or 3P2",
        h1: Cond::Sup(&["K3"]),
        h2: Cond::Sup(&["2P1+2P2", "P1+2P3", "2P1+P4", "3P2"]),
    },
    Rule {
        id: "T10.2.iv",
        part: Part::Hard,
        statement: "H1 ⊇i K4 and H2 ⊇i K_{1,4}^{++}, P1+2P2 or P1+P4",
        h1: Cond::Sup(&["K4"]),
        h2: Cond::Sup(&["K_{1,4}^{++}", "P1+2P2", "P1+P4"]),
    },
    Rule {
        id: "T10.2.v",
        part: Part::Hard,
        statement: "H1 ⊇i K5 and H2 ⊇i K_{1,3}^{++}",
        h1: Cond::Sup(&["K5"]),
        h2: Cond::Sup(&["K_{1,3}^{++}"]),
    },
    Rule {
        id: "T10.2.vi",
        part: Part::Hard,
        statement: "H1 ⊇i C4 and H2 ⊇i K_{1,3}, 3P1+P2 or 2P2",
        h1: Cond::Sup(&["C4"]),
        h2: Cond::Sup(&["K_{1,3}", "3P1+P2", "2P2"]),
    },
    Rule {
        id: "T10.2.vii",
        part: Part::Hard,
        statement: "H1 ⊇i diamond and H2 ⊇i K_{1,3}, P2+P4, 2P3 or P6",
        h1: Cond::Sup(&["diamond"]),
        h2: Cond::Sup(&["K_{1,3}", "P2+P4", "2P3", "P6"]),
    },
    Rule {
        id: "T10.2.viii",
        part: Part::Hard,
        statement: "H1 ⊇i gem and H2 ⊇i P1+2P2",
        h1: Cond::Sup(&["gem"]),
        h2: Cond::Sup(&["P1+2P2"]),
    },
];

pub static CW_RULES: &[Rule] = &[
    Rule {
        id: "T9.1.i",
        part: Part::Tractable,
        statement: "H1 or H2 ⊆i P4",
        h1: Cond::Sub(P4),
        h2: Cond::Any,
    },
    Rule {
        id: "T9.1.ii",
        part: Part::Tractable,
        statement: "H1 = K_s and H2 = tP1 for some s, t ≥ 1",
        h1: Cond::Complete,
        h2: Cond::Edgeless,
    },
    Rule {
        id: "T9.1.iii",
        part: Part::Tractable,
        statement: "H1 ⊆i paw and H2 ⊆i K_{1,3}+3P1, K_{1,3}+P2, P1+P2+P3, P1+P5, P1+S_{1,1,2}, P2+P4, P6, S_{1,1,3} or S_{1,2,2}",
        h1: Cond::Sub(&[Named("paw")]),
        h2: Cond::Sub(&[
            Named("K_{1,3}+3P1"),
            Named("K_{1,3}+P2"),
            Named("P1+P2+P3"),
            Named("P1+P5"),
            Named("P1+S_{1,1,2}"),
            Named("P2+P4"),
            Named("P6"),
            Named("S_{1,1,3}"),
            Named("S_{1,2,2}"),
        ]),
    },
    Rule {
        id: "T9.1.iv",
        part: Part::Tractable,
        statement: "H1 ⊆i diamond and H2 ⊆i P1+2P2, 3P1+P2 or P2+P3",
        h1: Cond::Sub(&[Named("diamond")]),
        h2: Cond::Sub(&[Named("P1+2P2"), Named("3P1+P2"), Named("P2+P3")]),
    },
    Rule {
        id: "T9.1.v",
        part: Part::Tractable,
        statement: "H1 ⊆i gem and H2 ⊆i P1+P4 or P5",
        h1: Cond::Sub(&[Named("gem")]),
        h2: Cond::Sub(&[Named("P1+P4"), Named("P5")]),
    },
    Rule {
        id: "T9.1.vi",
        part: Part::Tractable,
        statement: "H1 ⊆i K3+P1 and H2 ⊆i K_{1,3}",
        h1: Cond::Sub(&[Named("K3+P1")]),
        h2: Cond::Sub(&[Named("K_{1,3}")]),
    },
    Rule {
        id: "T9.1.vii",
        part: Part::Tractable,
        statement: "H1 ⊆i co(2P1+P3) and H2 ⊆i 2P1+P3",
        h1: Cond::Sub(&[Named("co(2P1+P3)")]),
        h2: Cond::Sub(&[Named("2P1+P3")]),
    },
    Rule {
        id: "T9.2.i",
        part: Part::Hard,
        statement: "H1 ∉ S and H2 ∉ S",
        h1: Cond::NotInS,
        h2: Cond::NotInS,
    },
    Rule {
        id: "T9.2.ii",
        part: Part::Hard,
        statement: "H1 ∉ co(S) and H2 ∉ co(S)",
        h1: Cond::NotInCoS,
        h2: Cond::NotInCoS,
    },
    Rule {
        id: "T9.2.iii",
        part: Part::Hard,
        statement: "H1 ⊇i K3+P1 or C4 and H2 ⊇i 4P1 or 2P2",
        h1: Cond::Sup(&["K3+P1", "C4"]),
        h2: Cond::Sup(&["4P1", "2P2"]),
    },
    Rule {
        id: "T9.2.iv",
        part: Part::Hard,
        statement: "H1 ⊇i diamond and H2 ⊇i K_{1,3}, 5P1, P2+P4 or P6",
        h1: Cond::Sup(&["diamond"]),
        h2: Cond::Sup(&["K_{1,3}", "5P1", "P2+P4", "P6"]),
    },
    Rule {
        id: "T9.2.v",
        part: Part::Hard,
        statement: "H1 ⊇i K3 and H2 ⊇i 2P1+2P2, 2P1+P4, 4P1+P2, 3P2 or 2P3",
        h1: Cond::Sup(&["K3"]),
        h2: Cond::Sup(&["2P1+2P2", "2P1+P4", "4P1+P2", "3P2", "2P3"]),
    },
    Rule {
        id: "T9.2.vi",
        part: Part::Hard,
        statement: "H1 ⊇i K4 and H2 ⊇i P1+P4 or 3P1+P2",
        h1: Cond::Sup(&["K4"]),
        h2: Cond::Sup(&["P1+P4", "3P1+P2"]),
    },
    Rule {
        id: "T9.2.vii",
        part: Part::Hard,
        statement: "H1 ⊇i gem and H2 ⊇i P1+2P2",
        h1: Cond::Sup(&["gem"]),
        h2: Cond::Sup(&["P1+2P2"]),
    },
];

pub static GI_OPEN: &[OpenCase] = &[
    OpenCase {
        id: "OP-GI.i",
        statement: "H1 = K3 and H2 ∈ {P7, S_{1,2,3}}",
        h1: "K3",
        h2: &["P7", "S_{1,2,3}"],
    },
    OpenCase {
        id: "OP-GI.ii",
        statement: "H1 = K4 and H2 = S_{1,1,3}",
        h1: "K4",
        h2: &["S_{1,1,3}"],
    },
    OpenCase {
        id: "OP-GI.iii",
        statement: "H1 = diamond and H2 ∈ {P1+P2+P3, P1+P5}",
        h1: "diamond",
        h2: &["P1+P2+P3", "P1+P5"],
    },
    OpenCase {
        id: "OP-GI.iv",
        statement: "H1 = gem and H2 = P2+P3",
        h1: "gem",
        h2: &["P2+P3"],
    },
];

pub static CW_OPEN: &[OpenCase] = &[
    OpenCase {
        id: "OP-CW.i",
        statement: "H1 = K3 and H2 ∈ {P1+S_{1,1,3}, S_{1,2,3}}",
        h1: "K3",
        h2: &["P1+S_{1,1,3}", "S_{1,2,3}"],
    },
    OpenCase {
        id: "OP-CW.ii",
        statement: "H1 = diamond and H2 ∈ {P1+P2+P3, P1+P5}",
        h1: "diamond",
        h2: &["P1+P2+P3", "P1+P5"],
    },
    OpenCase {
        id: "OP-CW.iii",
        statement: "H1 = gem and H2 = P2+P3",
        h1: "gem",
        h2: &["P2+P3"],
    },
];

/// Every catalog name mentioned by the tables, built once.
fn named(name: &str) -> &'static Graph {
    static GRAPHS: OnceLock<HashMap<&'static str, Graph>> = OnceLock::new();
    let graphs = GRAPHS.get_or_init(|| {
        let mut names = vec!["paw", "P4"];
        for rule in GI_RULES.iter().chain(CW_RULES) {
            for cond in [rule.h1, rule.h2] {
                match cond {
                    Cond::Sub(ts) | Cond::CoSub(ts) => names.extend(ts.iter().filter_map(|t| match t {
                        Named(n) => Some(*n),
                        Family(_) => None,
                    })),
                    Cond::Sup(ns) => names.extend(ns),
                    _ => {}
                }
            }
        }
        for case in GI_OPEN.iter().chain(CW_OPEN) {
            names.push(case.h1);
            names.extend(case.h2);
        }
        names
            .into_iter()
            .map(|n| (n, make(n).unwrap_or_else(|e| panic!("rule table name {n:?}: {e}"))))
            .collect()
    });
    graphs
        .get(name)
        .unwrap_or_else(|| panic!("{name:?} is not a rule table name"))
}

/// Every graph named in the rule tables and open lists, with its name.
pub fn table_graphs() -> Vec<(&'static str, Graph)> {
    let mut names = GI_RULES
        .iter()
        .chain(CW_RULES)
        .flat_map(|r| [r.h1, r.h2])
        .flat_map(|c| match c {
            Cond::Sub(ts) | Cond::CoSub(ts) => ts
                .iter()
                .filter_map(|t| match t {
                    Named(n) => Some(*n),
                    Family(_) => None,
                })
                .collect::<Vec<_>>(),
            Cond::Sup(ns) => ns.to_vec(),
            _ => Vec::new(),
        })
        .chain(GI_OPEN.iter().chain(CW_OPEN).flat_map(|c| std::iter::once(c.h1).chain(c.h2.iter().copied())))
        .collect::<Vec<_>>();
    names.sort_unstable();
    names.dedup();
    names.into_iter().map(|n| (n, named(n).clone())).collect()
}

/// GI status of a class of `(H1, H2)`-free graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GiStatus {
    Polynomial,
    GiComplete,
    Open,
}

/// Clique-width status of a class of `(H1, H2)`-free graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CwStatus {
    Bounded,
    Unbounded,
    Open,
}

impl fmt::Display for GiStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GiStatus::Polynomial => "POLYNOMIAL",
            GiStatus::GiComplete => "GI-COMPLETE",
            GiStatus::Open => "OPEN",
        })
    }
}

impl fmt::Display for CwStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CwStatus::Bounded => "BOUNDED",
            CwStatus::Unbounded => "UNBOUNDED",
            CwStatus::Open => "OPEN",
        })
    }
}

/// The outcome of a classification. `witness` is the closure member,
/// oriented as the matched rule reads it.
#[derive(Debug, Clone)]
pub struct Verdict<S> {
    pub status: S,
    pub rule: &'static str,
    pub statement: &'static str,
    pub witness: Member,
    /// Every rule id that fired anywhere in the closure, in table order.
    pub fired: Vec<&'static str>,
}

impl<S> Verdict<S> {
    /// Re-evaluates the matched rule on the witness alone.
    pub fn recheck(&self) -> bool {
        let (a, b) = (&self.witness.h1, &self.witness.h2);
        if let Some(rule) = GI_RULES.iter().chain(CW_RULES).find(|r| r.id == self.rule) {
            return rule.guard(a, b);
        }
        GI_OPEN
            .iter()
            .chain(CW_OPEN)
            .find(|c| c.id == self.rule)
            .is_some_and(|c| c.matches(a, b))
    }
}

struct Outcome {
    part: Option<Part>,
    rule: &'static str,
    statement: &'static str,
    witness: Member,
    fired: Vec<&'static str>,
}

fn check_size(h1: &Graph, h2: &Graph) -> Result<(), ClassifyError> {
    for (side, h) in [(1, h1), (2, h2)] {
        if h.order() > MAX_ORDER {
            return Err(ClassifyError::TooLarge {
                side,
                n: h.order(),
                limit: MAX_ORDER,
            });
        }
    }
    Ok(())
}

fn classify(h1: &Graph, h2: &Graph, rules: &[Rule], open: &[OpenCase]) -> Result<Outcome, ClassifyError> {
    check_size(h1, h2)?;
    let closure = equivalence_closure(h1, h2);
    let mut hits: Vec<(&Rule, Member)> = Vec::new();
    for rule in rules {
        let hit = closure.members.iter().find_map(|m| {
            if rule.guard(&m.h1, &m.h2) {
                Some(m.clone())
            } else if rule.guard(&m.h2, &m.h1) {
                Some(Member {
                    h1: m.h2.clone(),
                    h2: m.h1.clone(),
                    ops: m.ops.clone(),
                })
            } else {
                None
            }
        });
        if let Some(m) = hit {
            hits.push((rule, m));
        }
    }
    let mut open_hits = Vec::new();
    for case in open {
        for m in &closure.members {
            if let Some((a, b)) = case.pairs().find(|(a, b)| same_unordered(&m.h1, &m.h2, a, b)) {
                // orient the witness like the listed pair
                let witness = if is_isomorphic(&m.h1, &a) && is_isomorphic(&m.h2, &b) {
                    m.clone()
                } else {
                    Member {
                        h1: m.h2.clone(),
                        h2: m.h1.clone(),
                        ops: m.ops.clone(),
                    }
                };
                open_hits.push((case, witness));
                break;
            }
        }
    }
    let ids = |part| {
        hits.iter()
            .filter(|(r, _)| r.part == part)
            .map(|(r, _)| r.id)
            .collect::<Vec<_>>()
    };
    let (positive, negative) = (ids(Part::Tractable), ids(Part::Hard));
    let open_ids = open_hits.iter().map(|(c, _)| c.id).collect::<Vec<_>>();
    let fired = hits.iter().map(|(r, _)| r.id).collect::<Vec<_>>();
    let verdicts = usize::from(!positive.is_empty()) + usize::from(!negative.is_empty()) + usize::from(!open_ids.is_empty());
    if verdicts > 1 {
        return Err(ClassifyError::Contradiction {
            positive,
            negative,
            open: open_ids,
        });
    }
    if let Some((rule, witness)) = hits.into_iter().next() {
        return Ok(Outcome {
            part: Some(rule.part),
            rule: rule.id,
            statement: rule.statement,
            witness,
            fired,
        });
    }
    match open_hits.into_iter().next() {
        Some((case, witness)) => Ok(Outcome {
            part: None,
            rule: case.id,
            statement: case.statement,
            witness,
            fired,
        }),
        None => Err(ClassifyError::Unclassified),
    }
}

/// Complexity of graph isomorphism on `(H1, H2)`-free graphs.
pub fn classify_gi(h1: &Graph, h2: &Graph) -> Result<Verdict<GiStatus>, ClassifyError> {
    let o = classify(h1, h2, GI_RULES, GI_OPEN)?;
    let status = match o.part {
        Some(Part::Tractable) => GiStatus::Polynomial,
        Some(Part::Hard) => GiStatus::GiComplete,
        None => GiStatus::Open,
    };
    Ok(Verdict {
        status,
        rule: o.rule,
        statement: o.statement,
        witness: o.witness,
        fired: o.fired,
    })
}

/// Boundedness of clique-width on `(H1, H2)`-free graphs.
pub fn classify_cw(h1: &Graph, h2: &Graph) -> Result<Verdict<CwStatus>, ClassifyError> {
    let o = classify(h1, h2, CW_RULES, CW_OPEN)?;
    let status = match o.part {
        Some(Part::Tractable) => CwStatus::Bounded,
        Some(Part::Hard) => CwStatus::Unbounded,
        None => CwStatus::Open,
    };
    Ok(Verdict {
        status,
        rule: o.rule,
        statement: o.statement,
        witness: o.witness,
        fired: o.fired,
    })
}

/// Looks up a rule or open case by id and returns its statement.
pub fn statement(id: &str) -> Option<&'static str> {
    GI_RULES
        .iter()
        .chain(CW_RULES)
        .find(|r| r.id == id)
        .map(|r| r.statement)
        .or_else(|| GI_OPEN.iter().chain(CW_OPEN).find(|c| c.id == id).map(|c| c.statement))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::small_graphs;

    fn g(name: &str) -> Graph {
        make(name).unwrap()
    }

    #[test]
    fn closure_of_triangle_and_p5() {
        let c = equivalence_closure(&g("K3"), &g("P5"));
        assert!(c.contains(&g("paw"), &g("P5")));
        assert!(c.contains(&g("3P1"), &g("P5").complement()));
        assert!(c.contains(&g("P1+P3"), &g("P5").complement()));
        assert_eq!(c.len(), 4);
    }

    #[test]
    fn self_complementary_pair_is_alone() {
        let c = equivalence_closure(&g("P4"), &g("P4"));
        assert_eq!(c.len(), 1);
        assert!(c.members[0].ops.is_empty());
    }

    #[test]
    fn closures_stay_small() {
        let small = small_graphs(4);
        for a in &small {
            for b in &small {
                assert!(equivalence_closure(a, b).len() <= 8);
            }
        }
        // both coordinates can be swapped independently
        assert_eq!(equivalence_closure(&g("K3"), &g("K3")).len(), 6);
    }

    #[test]
    fn examples() {
        let v = classify_gi(&g("gem"), &g("P1+2P2")).unwrap();
        assert_eq!((v.status, v.rule), (GiStatus::GiComplete, "T10.2.viii"));
        let v = classify_gi(&g("crossed-house"), &g("P5")).unwrap();
        assert_eq!((v.status, v.rule), (GiStatus::Polynomial, "T10.1.viii"));
        let v = classify_gi(&g("K3"), &g("P7")).unwrap();
        assert_eq!((v.status, v.rule), (GiStatus::Open, "OP-GI.i"));
        let v = classify_gi(&g("P4"), &g("petersen")).unwrap();
        assert_eq!((v.status, v.rule), (GiStatus::Polynomial, "T10.1.i"));

        let v = classify_cw(&g("gem"), &g("P1+2P2")).unwrap();
        assert_eq!((v.status, v.rule), (CwStatus::Unbounded, "T9.2.vii"));
        let v = classify_cw(&g("K3"), &g("S_{1,2,3}")).unwrap();
        assert_eq!((v.status, v.rule), (CwStatus::Open, "OP-CW.i"));
        let v = classify_cw(&g("paw"), &g("P6")).unwrap();
        assert_eq!((v.status, v.rule), (CwStatus::Bounded, "T9.1.iii"));
    }

    #[test]
    fn witnesses_recheck() {
        for (a, b) in [("gem", "P1+2P2"), ("K3", "P7"), ("co(P6)", "paw"), ("2P2", "C4")] {
            let v = classify_gi(&g(a), &g(b)).unwrap();
            assert!(v.recheck(), "{a} {b} {}", v.rule);
            let v = classify_cw(&g(a), &g(b)).unwrap();
            assert!(v.recheck(), "{a} {b} {}", v.rule);
        }
    }

    #[test]
    fn shared_parameter_rules() {
        // K_{1,5}+P1 with its complement is covered only through the family
        let h = g("K_{1,5}+P1");
        let v = classify_gi(&h.complement(), &h).unwrap();
        assert_eq!(v.status, GiStatus::Polynomial);
        assert!(v.fired.contains(&"T10.1.ii"));
        let v = classify_gi(&g("K4"), &g("2K_{1,4}")).unwrap();
        assert_eq!((v.status, v.rule), (GiStatus::Polynomial, "T10.1.iv"));
    }

    #[test]
    fn oversized_input_is_rejected() {
        let big = Graph::empty(MAX_ORDER + 1);
        assert!(matches!(
            classify_gi(&g("P4"), &big),
            Err(ClassifyError::TooLarge { side: 2, .. })
        ));
    }

    #[test]
    fn statements_are_found_by_id() {
        assert_eq!(statement("T9.2.vii"), Some("H1 ⊇i gem and H2 ⊇i P1+2P2"));
        assert!(statement("T11.1.i").is_none());
    }
}
