//! Named graphs, parametric families and the structural class recognizers.
//!
//! Name grammar (whitespace ignored):
//!
//! ```text
//! expr  := term ('+' term)*
//! term  := [count] atom
//! atom  := 'co(' expr ')' | name
//! name  := P<k> | C<k> | K<k> | K_{s,t}[^{+}|^{++}] | S_{h,i,j}
//!        | claw | diamond | paw | gem | crossed-house | petersen | grid_<n>
//! ```
//!
//! Numeric subscripts may be written bare (`P5`), with an underscore (`P_5`)
//! or braced (`P_{5}`). `2P1+P3` is the disjoint union of two copies of `P1`
//! and one `P3`.

use thiserror::Error;

use crate::graph::Graph;
use crate::subiso::contains_induced;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("cannot parse graph name {input:?} at offset {offset}: {reason}")]
    Parse {
        input: String,
        offset: usize,
        reason: String,
    },
    #[error("parameter out of range in {name}: {reason}")]
    Range { name: String, reason: String },
    #[error("unknown family identifier {0:?}")]
    UnknownFamily(String),
}

/// A catalog graph together with the expression it was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedGraph {
    pub name: String,
    pub graph: Graph,
}

impl NamedGraph {
    pub fn parse(name: &str) -> Result<Self, CatalogError> {
        Ok(NamedGraph {
            name: name.to_string(),
            graph: make(name)?,
        })
    }
}

pub fn path(k: usize) -> Graph {
    Graph::new(k, (1..k).map(|i| (i - 1, i))).expect("path edges are in range")
}

/// `C_k` for `k ≥ 3`.
pub fn cycle(k: usize) -> Graph {
    assert!(k >= 3, "cycles need at least three vertices");
    Graph::new(k, (0..k).map(|i| (i, (i + 1) % k))).expect("cycle edges are in range")
}

pub fn complete(k: usize) -> Graph {
    Graph::complete(k)
}

pub fn complete_bipartite(s: usize, t: usize) -> Graph {
    Graph::from_fn(s + t, |u, v| (u < s) != (v < s))
}

/// `K_{1,t}` with centre 0.
pub fn star(t: usize) -> Graph {
    complete_bipartite(1, t)
}

/// `K_{1,t}` with one edge subdivided `extra` times; the subdivided ray is
/// `0 - 1 - t+1 - t+2 - ...`.
pub fn subdivided_star(t: usize, extra: usize) -> Graph {
    let n = t + 1 + extra;
    let mut edges = (2..=t).map(|leaf| (0, leaf)).collect::<Vec<_>>();
    let mut prev = 0;
    for v in (t + 1..n).chain([1]) {
        edges.push((prev, v));
        prev = v;
    }
    Graph::new(n, edges).expect("subdivided star edges are in range")
}

/// The subdivided claw `S_{h,i,j}`: centre 0 with three legs of the given lengths.
pub fn subdivided_claw(h: usize, i: usize, j: usize) -> Graph {
    let n = 1 + h + i + j;
    let mut edges = Vec::new();
    let mut next = 1;
    for len in [h, i, j] {
        let mut prev = 0;
        for _ in 0..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    Graph::new(n, edges).expect("claw edges are in range")
}

pub fn claw() -> Graph {
    star(3)
}

/// `K_4` minus an edge, the complement of `2P1+P2`.
pub fn diamond() -> Graph {
    Graph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).expect("static")
}

/// A triangle with a pendant vertex, the complement of `P1+P3`.
pub fn paw() -> Graph {
    Graph::new(4, [(0, 1), (1, 2), (2, 0), (2, 3)]).expect("static")
}

/// `P4` (vertices 0..4) plus the dominating vertex 4; the complement of `P1+P4`.
pub fn gem() -> Graph {
    Graph::new(5, [(0, 1), (1, 2), (2, 3), (4, 0), (4, 1), (4, 2), (4, 3)]).expect("static")
}

/// The complement of `2P1+P3`.
pub fn crossed_house() -> Graph {
    Graph::empty(2).disjoint_union(&path(3)).complement()
}

pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    Graph::new(10, outer.chain(spokes).chain(inner)).expect("static")
}

/// The `n × n` grid; vertex `(i, j)` (0-based) has index `i * n + j`.
pub fn grid(n: usize) -> Graph {
    Graph::from_fn(n * n, |u, v| {
        let (ui, uj) = (u / n, u % n);
        let (vi, vj) = (v / n, v % n);
        ui.abs_diff(vi) + uj.abs_diff(vj) == 1
    })
}

/// Evaluates a catalog name expression such as `"2P1+P3"` or `"S_{1,2,3}"`.
pub fn make(name: &str) -> Result<Graph, CatalogError> {
    let compact = name.chars().filter(|c| !c.is_whitespace()).collect::<String>();
    let mut p = Parser {
        input: name,
        s: compact.as_bytes(),
        pos: 0,
    };
    let g = p.expr()?;
    if p.pos != p.s.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(g)
}

/// `make_grid(n)`: the `n × n` grid `H_n`.
pub fn make_grid(n: usize) -> Result<Graph, CatalogError> {
    if n == 0 {
        return Err(CatalogError::Range {
            name: "grid".into(),
            reason: "n must be at least 1".into(),
        });
    }
    Ok(grid(n))
}

struct Parser<'a> {
    input: &'a str,
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, reason: &str) -> CatalogError {
        CatalogError::Parse {
            input: self.input.to_string(),
            offset: self.pos,
            reason: reason.to_string(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, lit: &str) -> bool {
        if self.s[self.pos..].starts_with(lit.as_bytes()) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Option<usize> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).ok()?.parse().ok()
    }

    fn expr(&mut self) -> Result<Graph, CatalogError> {
        let mut g = self.term()?;
        while self.eat("+") {
            g = g.disjoint_union(&self.term()?);
        }
        Ok(g)
    }

    fn term(&mut self) -> Result<Graph, CatalogError> {
        let count = if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.number().ok_or_else(|| self.error("bad multiplier"))?
        } else {
            1
        };
        let atom = self.atom()?;
        Ok(atom.repeat(count))
    }

    /// `_{a,b,...}`, `_a`, `{a}` or a bare number.
    fn subscript(&mut self) -> Result<Vec<usize>, CatalogError> {
        self.eat("_");
        if self.eat("{") {
            let mut out = vec![self.number().ok_or_else(|| self.error("expected a number"))?];
            while self.eat(",") {
                out.push(self.number().ok_or_else(|| self.error("expected a number"))?);
            }
            if !self.eat("}") {
                return Err(self.error("expected '}'"));
            }
            return Ok(out);
        }
        match self.number() {
            Some(k) => {
                let mut out = vec![k];
                // bare comma form such as K1,3 or K_1,3
                while self.peek() == Some(b',') {
                    self.pos += 1;
                    out.push(self.number().ok_or_else(|| self.error("expected a number"))?);
                }
                Ok(out)
            }
            None => Err(self.error("expected a subscript")),
        }
    }

    /// `^+`, `^++`, `^{+}`, `^{++}`; returns the number of subdivisions.
    fn superscript(&mut self) -> Result<usize, CatalogError> {
        if !self.eat("^") {
            return Ok(0);
        }
        if self.eat("{++}") {
            return Ok(2);
        }
        if self.eat("{+}") {
            return Ok(1);
        }
        if self.eat("++") {
            return Ok(2);
        }
        if self.eat("+") {
            return Ok(1);
        }
        Err(self.error("expected + or ++ after '^'"))
    }

    fn range(name: &str, reason: &str) -> CatalogError {
        CatalogError::Range {
            name: name.to_string(),
            reason: reason.to_string(),
        }
    }

    fn atom(&mut self) -> Result<Graph, CatalogError> {
        if self.eat("co(") {
            let inner = self.expr()?;
            if !self.eat(")") {
                return Err(self.error("expected ')'"));
            }
            return Ok(inner.complement());
        }
        if self.eat("(") {
            let inner = self.expr()?;
            if !self.eat(")") {
                return Err(self.error("expected ')'"));
            }
            return Ok(inner);
        }
        for (word, build) in [
            ("crossed-house", crossed_house as fn() -> Graph),
            ("crossedhouse", crossed_house),
            ("diamond", diamond),
            ("petersen", petersen),
            ("claw", claw),
            ("paw", paw),
            ("gem", gem),
        ] {
            if self.eat(word) {
                return Ok(build());
            }
        }
        if self.eat("grid") {
            let args = self.subscript()?;
            return match args.as_slice() {
                [n] => make_grid(*n),
                _ => Err(Self::range("grid", "expects one parameter")),
            };
        }
        let Some(letter) = self.peek() else {
            return Err(self.error("expected a graph name"));
        };
        self.pos += 1;
        let args = match letter {
            b'P' | b'C' | b'K' | b'S' => self.subscript()?,
            _ => {
                self.pos -= 1;
                return Err(self.error("unknown graph name"));
            }
        };
        match (letter, args.as_slice()) {
            (b'P', [k]) if *k >= 1 => Ok(path(*k)),
            (b'P', _) => Err(Self::range("P_k", "k must be at least 1")),
            (b'C', [k]) if *k >= 3 => Ok(cycle(*k)),
            (b'C', _) => Err(Self::range("C_k", "k must be at least 3")),
            (b'K', [k]) if *k >= 1 => Ok(complete(*k)),
            (b'K', [_]) => Err(Self::range("K_k", "k must be at least 1")),
            (b'K', [s, t]) => {
                let plus = self.superscript()?;
                if *s < 1 || *t < 1 {
                    return Err(Self::range("K_{s,t}", "s and t must be at least 1"));
                }
                match plus {
                    0 => Ok(complete_bipartite(*s, *t)),
                    _ if *s == 1 => Ok(subdivided_star(*t, plus)),
                    _ => Err(Self::range("K_{s,t}", "subdivision is defined for stars K_{1,t} only")),
                }
            }
            (b'S', [h, i, j]) if 1 <= *h && h <= i && i <= j => Ok(subdivided_claw(*h, *i, *j)),
            (b'S', [_, _, _]) => Err(Self::range("S_{h,i,j}", "need 1 <= h <= i <= j")),
            _ => Err(Self::range(
                &(letter as char).to_string(),
                "wrong number of subscript parameters",
            )),
        }
    }
}

/// A forest in which every component has at most one vertex of degree ≥ 3.
pub fn is_path_star_forest(h: &Graph) -> bool {
    is_forest(h)
        && h.components().iter().all(|c| {
            c.vertices.iter().filter(|&&v| h.degree(v) >= 3).count() <= 1
        })
}

/// Every component is a path.
pub fn is_linear_forest(h: &Graph) -> bool {
    is_forest(h) && (0..h.order()).all(|v| h.degree(v) <= 2)
}

/// Every component is a path or a subdivided claw.
pub fn in_class_s(h: &Graph) -> bool {
    is_forest(h)
        && h.components().iter().all(|c| {
            let high = c.vertices.iter().filter(|&&v| h.degree(v) >= 3).collect::<Vec<_>>();
            match high.as_slice() {
                [] => true,
                [&centre] => h.degree(centre) == 3,
                _ => false,
            }
        })
}

pub fn is_forest(h: &Graph) -> bool {
    h.edge_count() + h.components().len() == h.order()
}

/// The parametric families used by the polynomial-time rules.
///
/// Each family is monotone in `t`: the instance at `t` is an induced
/// subgraph of the instance at `t + 1`. A graph on `v` vertices that embeds
/// into some instance also embeds into the instance at `t = v`, so
/// membership for "some t" is decided at that single parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MonotoneFamily {
    /// `K_{1,t}+P1`: drop a leaf to go from t+1 to t. An embedding uses at
    /// most v-2 leaves, so t = v suffices.
    StarPlusP1,
    /// `tP1+P3`: drop an isolated vertex; at most v isolated vertices are used.
    IsolatedPlusP3,
    /// `K_t`: drop a vertex; a clique on v vertices needs t = v.
    Clique,
    /// `tP1`: drop a vertex.
    Isolated,
    /// `2K_{1,t}`: drop one leaf from each star; each star contributes fewer than v leaves.
    TwoStars,
    /// `K_{1,t}^+`: drop an unsubdivided leaf.
    StarPlus,
    /// `K_{1,t}^{++}+P1`: drop an unsubdivided leaf.
    StarPlusPlusP1,
    /// `K_{1,t}^{++}`: drop an unsubdivided leaf.
    StarPlusPlus,
    /// `K_{1,t}`: drop a leaf.
    Star,
}

impl MonotoneFamily {
    pub const ALL: [MonotoneFamily; 9] = [
        MonotoneFamily::StarPlusP1,
        MonotoneFamily::IsolatedPlusP3,
        MonotoneFamily::Clique,
        MonotoneFamily::Isolated,
        MonotoneFamily::TwoStars,
        MonotoneFamily::StarPlus,
        MonotoneFamily::StarPlusPlusP1,
        MonotoneFamily::StarPlusPlus,
        MonotoneFamily::Star,
    ];

    pub fn identifier(self) -> &'static str {
        match self {
            MonotoneFamily::StarPlusP1 => "K_{1,t}+P1",
            MonotoneFamily::IsolatedPlusP3 => "tP1+P3",
            MonotoneFamily::Clique => "K_t",
            MonotoneFamily::Isolated => "tP1",
            MonotoneFamily::TwoStars => "2K_{1,t}",
            MonotoneFamily::StarPlus => "K_{1,t}^+",
            MonotoneFamily::StarPlusPlusP1 => "K_{1,t}^{++}+P1",
            MonotoneFamily::StarPlusPlus => "K_{1,t}^{++}",
            MonotoneFamily::Star => "K_{1,t}",
        }
    }

    pub fn parse(id: &str) -> Result<Self, CatalogError> {
        let compact = id.chars().filter(|c| !c.is_whitespace()).collect::<String>();
        let normalized = compact.replace("^{+}", "^+").replace("^++", "^{++}");
        Self::ALL
            .into_iter()
            .find(|f| f.identifier() == normalized)
            .ok_or(CatalogError::UnknownFamily(id.to_string()))
    }

    /// The family member at parameter `t ≥ 1`.
    pub fn instance(self, t: usize) -> Graph {
        let t = t.max(1);
        match self {
            MonotoneFamily::StarPlusP1 => star(t).disjoint_union(&path(1)),
            MonotoneFamily::IsolatedPlusP3 => Graph::empty(t).disjoint_union(&path(3)),
            MonotoneFamily::Clique => complete(t),
            MonotoneFamily::Isolated => Graph::empty(t),
            MonotoneFamily::TwoStars => star(t).repeat(2),
            MonotoneFamily::StarPlus => subdivided_star(t, 1),
            MonotoneFamily::StarPlusPlusP1 => subdivided_star(t, 2).disjoint_union(&path(1)),
            MonotoneFamily::StarPlusPlus => subdivided_star(t, 2),
            MonotoneFamily::Star => star(t),
        }
    }

    /// `h ⊆_i` the member at parameter `t`.
    pub fn contains_at(self, h: &Graph, t: usize) -> bool {
        contains_induced(&self.instance(t), h)
    }

    /// `h ⊆_i` some member of the family.
    pub fn contains(self, h: &Graph) -> bool {
        self.contains_at(h, h.order())
    }
}

/// `h ⊆_i F(t)` for some `t`, where `family` is one of the identifiers of
/// [`MonotoneFamily`].
pub fn in_monotone_family(h: &Graph, family: &str) -> Result<bool, CatalogError> {
    Ok(MonotoneFamily::parse(family)?.contains(h))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(name: &str) -> Graph {
        make(name).unwrap()
    }

    #[test]
    fn basic_names() {
        assert_eq!(m("P3"), path(3));
        assert_eq!(m("P_3"), path(3));
        assert_eq!(m("P_{3}"), path(3));
        assert_eq!(m("K4").edge_count(), 6);
        assert_eq!(m("C5").degree_sequence(), vec![2; 5]);
        assert_eq!(m("K_{1,3}"), claw());
        assert_eq!(m("K1,3"), claw());
    }

    #[test]
    fn named_small_graphs() {
        let d = m("diamond");
        assert_eq!((d.order(), d.edge_count()), (4, 5));
        assert_eq!(d.complement().degree_sequence(), vec![1, 1, 0, 0]);
        let g = m("gem");
        assert_eq!((g.order(), g.edge_count()), (5, 7));
        let ch = m("crossed-house");
        assert_eq!((ch.order(), ch.edge_count()), (5, 8));
        assert_eq!(ch, m("co(2P1+P3)"));
        let p = m("paw");
        assert_eq!(p.degree_sequence(), vec![3, 2, 2, 1]);
        let pet = m("petersen");
        assert_eq!((pet.order(), pet.edge_count()), (10, 15));
        assert!(pet.degrees().iter().all(|&d| d == 3));
    }

    #[test]
    fn subdivided_graphs() {
        assert_eq!(m("S_{1,1,1}"), claw());
        let s = m("S_{1,2,3}");
        assert_eq!((s.order(), s.edge_count()), (7, 6));
        assert_eq!(s.degree_sequence(), vec![3, 2, 2, 2, 1, 1, 1]);
        let plus = m("K_{1,3}^+");
        assert_eq!((plus.order(), plus.edge_count()), (5, 4));
        assert_eq!(plus.degree_sequence(), vec![3, 2, 1, 1, 1]);
        let pp = m("K_{1,3}^{++}");
        assert_eq!((pp.order(), pp.edge_count()), (6, 5));
        assert_eq!(pp.degree_sequence(), vec![3, 2, 2, 1, 1, 1]);
        assert_eq!(m("K_{1,4}^++"), subdivided_star(4, 2));
    }

    #[test]
    fn unions_and_multipliers() {
        let g = m("2P1 + P3");
        assert_eq!((g.order(), g.edge_count()), (5, 2));
        assert_eq!(g.components().len(), 3);
        let g = m("P1+2P2");
        assert_eq!((g.order(), g.edge_count()), (5, 2));
        let g = m("3P2");
        assert!(g.degrees().iter().all(|&d| d == 1));
        let g = m("K_{1,3}^{++}+P1");
        assert_eq!(g.order(), 7);
    }

    #[test]
    fn grid_examples() {
        assert_eq!(make_grid(1).unwrap(), path(1));
        let g2 = make_grid(2).unwrap();
        assert_eq!((g2.order(), g2.edge_count()), (4, 4));
        assert!(g2.degrees().iter().all(|&d| d == 2));
        let g4 = make_grid(4).unwrap();
        assert_eq!((g4.order(), g4.edge_count()), (16, 24));
        assert_eq!(m("grid_4"), g4);
        assert!(make_grid(0).is_err());
    }

    #[test]
    fn parse_and_range_errors() {
        assert!(matches!(make("Q5"), Err(CatalogError::Parse { .. })));
        assert!(matches!(make("P5+"), Err(CatalogError::Parse { .. })));
        assert!(matches!(make("P0"), Err(CatalogError::Range { .. })));
        assert!(matches!(make("C2"), Err(CatalogError::Range { .. })));
        assert!(matches!(make("S_{2,1,1}"), Err(CatalogError::Range { .. })));
        assert!(matches!(make("K_{2,3}^+"), Err(CatalogError::Range { .. })));
        assert!(matches!(make("co(P3"), Err(CatalogError::Parse { .. })));
    }

    #[test]
    fn recognizers() {
        assert!(is_path_star_forest(&m("K_{1,4}^{++}")));
        assert!(is_path_star_forest(&m("P7")));
        assert!(is_path_star_forest(&m("S_{2,2,2}+S_{1,1,1}")));
        assert!(!is_path_star_forest(&m("C4")));

        assert!(is_linear_forest(&m("2P1+P4")));
        assert!(!is_linear_forest(&m("claw")));
        assert!(!is_linear_forest(&m("C4")));

        assert!(in_class_s(&m("S_{1,2,3}+P5")));
        assert!(!in_class_s(&m("K_{1,4}")));
        assert!(!in_class_s(&m("C5")));
    }

    #[test]
    fn two_branch_tree_is_not_a_path_star_forest() {
        // the "H" tree: two adjacent degree-3 vertices
        let h = Graph::new(6, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)]).unwrap();
        assert!(!is_path_star_forest(&h));
        assert!(!is_path_star_forest(&h.repeat(2)));
        assert!(!in_class_s(&h));
    }

    #[test]
    fn monotone_family_examples() {
        assert!(in_monotone_family(&m("K_{1,5}+P1"), "K_{1,t}+P1").unwrap());
        assert!(!in_monotone_family(&m("2P2"), "K_{1,t}+P1").unwrap());
        assert!(in_monotone_family(&m("3P1+P3"), "tP1+P3").unwrap());
        assert!(in_monotone_family(&m("K_{1,3}^{++}"), "K_{1,t}^{++}").unwrap());
        assert!(in_monotone_family(&m("K_{1,3}^{+}"), "K_{1,t}^{+}").unwrap());
        assert!(matches!(
            in_monotone_family(&m("P2"), "K_{2,t}"),
            Err(CatalogError::UnknownFamily(_))
        ));
    }

    #[test]
    fn family_identifiers_roundtrip() {
        for f in MonotoneFamily::ALL {
            assert_eq!(MonotoneFamily::parse(f.identifier()).unwrap(), f);
        }
    }
}
