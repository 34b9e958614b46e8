//! Acceptance suite. Prints one PASS or FAIL line per criterion and exits
//! non-zero if any criterion fails. Oracles here are written independently
//! of the library: brute-force permutation search for isomorphism and a
//! direct premise check for grid partitions.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use hfree::catalog::make;
use hfree::classifier::{
    classify_cw, classify_gi, equivalence_closure, table_graphs, CwStatus, GiStatus, OpenCase, CW_OPEN, GI_OPEN,
};
use hfree::cliquewidth::{
    build_hn_prime, exact_cliquewidth, k_expression, verify_grid_certificate, CwOutcome, GridPartitionCertificate,
};
use hfree::corpus::{admissible_pair, k5_corpus, random_graph, random_graphs, relabel, rng, small_graphs, switch_edges};
use hfree::iso::{canonical_form, is_isomorphic, Certificate};
use hfree::reductions::{hardness_instance, Reduction};
use hfree::structure::{find_k5, k5_extension_partition, solve_gi, Branch, DriverClass, PartitionInvariant};
use hfree::subiso::is_free;
use hfree::Graph;
use rand::seq::SliceRandom;
use rand::Rng;

const SEED: u64 = 0xacce;
const C1_LIMIT: Duration = Duration::from_secs(300);
const C5_LIMIT: Duration = Duration::from_secs(600);
const C6_LIMIT: Duration = Duration::from_secs(120);
const C7_LIMIT: Duration = Duration::from_secs(300);
const C8_LIMIT: Duration = Duration::from_secs(60);
/// Inputs up to this order are also compared by brute force.
const BRUTE_MAX: usize = 7;
const RANDOM_INPUTS: usize = 200;
const PARTITION_INSTANCES: usize = 300;
const DRIVER_PAIRS: usize = 200;
const MIN_CASE_HITS: usize = 10;
const SOLVER_PAIRS: usize = 500;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Factorial search over all bijections, checked only at the leaves.
fn brute_isomorphic(g: &Graph, h: &Graph) -> bool {
    fn extend(g: &Graph, h: &Graph, map: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let n = g.order();
        if map.len() == n {
            return (0..n).all(|u| (u + 1..n).all(|v| g.has_edge(u, v) == h.has_edge(map[u], map[v])));
        }
        for w in 0..n {
            if !used[w] {
                used[w] = true;
                map.push(w);
                if extend(g, h, map, used) {
                    return true;
                }
                map.pop();
                used[w] = false;
            }
        }
        false
    }
    g.order() == h.order() && extend(g, h, &mut Vec::new(), &mut vec![false; g.order()])
}

fn cert(g: &Graph) -> Certificate {
    canonical_form(g).unwrap().certificate
}

/// Small graphs, seeded random graphs, a relabelled copy of each, and a
/// degree-preserving switch of each random graph.
fn reduction_corpus() -> Vec<Graph> {
    let mut r = rng(SEED);
    let base = base_corpus();
    let mut out = base.clone();
    for g in &base {
        out.push(relabel(&mut r, g).0);
    }
    for g in &base[52..] {
        if let Some(s) = switch_edges(&mut r, g) {
            out.push(s);
        }
    }
    out
}

/// The graph the bare construction is applied to inside the hardness instance.
fn construction_input(g: &Graph, which: Reduction) -> Graph {
    match which {
        Reduction::Diamond2P3 => g.clone(),
        Reduction::DiamondP6 | Reduction::GemP1TwoP2 => g.add_dominating_clique(4),
    }
}

fn c1_reductions_iff() -> Check {
    let corpus = reduction_corpus();
    let input_certs = corpus.iter().map(cert).collect::<Vec<_>>();
    let mut iso_pairs = 0;
    let mut brute_pairs = 0;
    for which in Reduction::ALL {
        let gadget_certs = corpus
            .iter()
            .map(|g| cert(&hardness_instance(g, which).graph))
            .collect::<Vec<_>>();
        for i in 0..corpus.len() {
            for j in i + 1..corpus.len() {
                let (g, h) = (&corpus[i], &corpus[j]);
                let inputs = input_certs[i] == input_certs[j];
                let gadgets = gadget_certs[i] == gadget_certs[j];
                ensure(inputs == gadgets, || {
                    format!("{which}: inputs {inputs}, gadgets {gadgets} for {g:?} / {h:?}")
                })?;
                iso_pairs += usize::from(inputs);
                if g.order() <= BRUTE_MAX && h.order() == g.order() && g.edge_count() == h.edge_count() {
                    brute_pairs += 1;
                    let brute = brute_isomorphic(g, h);
                    ensure(brute == gadgets, || format!("{which}: brute force {brute} on {g:?} / {h:?}"))?;
                }
            }
        }
    }
    Ok(format!(
        "{} inputs, 3 reductions, {iso_pairs} isomorphic pairs, {brute_pairs} brute-force comparisons",
        corpus.len()
    ))
}

/// The 52 small graphs and the seeded random graphs, without copies.
fn base_corpus() -> Vec<Graph> {
    small_graphs(5)
        .into_iter()
        .chain(random_graphs(SEED + 1, RANDOM_INPUTS, 6..=9))
        .collect()
}

fn c2_gadget_freeness() -> Check {
    let corpus = base_corpus();
    let jobs = Reduction::ALL
        .into_iter()
        .flat_map(|which| corpus.iter().map(move |g| (which, g)))
        .collect::<Vec<_>>();
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get());
    let failures = std::thread::scope(|s| {
        let handles = jobs
            .chunks(jobs.len().div_ceil(workers))
            .map(|part| {
                s.spawn(move || {
                    part.iter()
                        .filter(|(which, g)| !is_free(&hardness_instance(g, *which).graph, &which.forbidden_pair()))
                        .map(|(which, g)| format!("{which} gadget of {g:?} is not free"))
                        .collect::<Vec<_>>()
                })
            })
            .collect::<Vec<_>>();
        handles.into_iter().flat_map(|h| h.join().unwrap()).collect::<Vec<_>>()
    });
    ensure(failures.is_empty(), || failures.join("; "))?;
    Ok(format!("{} inputs x 3 gadgets, {workers} threads", corpus.len()))
}

fn c3_cardinalities() -> Check {
    let corpus = reduction_corpus();
    for which in Reduction::ALL {
        for g in &corpus {
            let input = construction_input(g, which);
            let (v, e) = (input.order(), input.edge_count());
            let expected = match which {
                Reduction::Diamond2P3 => v + 2 * e,
                Reduction::DiamondP6 => v + 3 * e,
                Reduction::GemP1TwoP2 => 4 * e,
            };
            let got = hardness_instance(g, which).graph.order();
            ensure(got == expected, || format!("{which}: {got} vertices, expected {expected} for {g:?}"))?;
            // the bare construction where it is defined
            if let Ok(q) = which.apply(g) {
                let expected = match which {
                    Reduction::Diamond2P3 => g.order() + 2 * g.edge_count(),
                    Reduction::DiamondP6 => g.order() + 3 * g.edge_count(),
                    Reduction::GemP1TwoP2 => 4 * g.edge_count(),
                };
                ensure(q.graph.order() == expected, || format!("{which}: bare construction on {g:?}"))?;
            }
        }
    }
    Ok(format!("{} inputs x 3 formulas", corpus.len()))
}

fn c4_partitions() -> Check {
    let mut r = rng(SEED + 4);
    let corpus = k5_corpus(SEED + 4, PARTITION_INSTANCES);
    ensure(corpus.len() == PARTITION_INSTANCES, || format!("corpus has {} instances", corpus.len()))?;
    for g in &corpus {
        let k = find_k5(g).ok_or("corpus graph without K5")?;
        let p = k5_extension_partition(g, k).map_err(|e| e.to_string())?;
        let violations = p.violations(g);
        ensure(violations.is_empty(), || format!("{violations:?} on {g:?}"))?;
        let mut shuffled = p.clone();
        let mut classes = shuffled.a.drain(..).zip(shuffled.n.drain(..)).collect::<Vec<_>>();
        classes.shuffle(&mut r);
        (shuffled.a, shuffled.n) = classes.into_iter().unzip();
        shuffled.canonicalize();
        ensure(shuffled == p, || format!("class permutation changes the partition of {g:?}"))?;
        let mut k2 = k;
        k2.shuffle(&mut r);
        let again = k5_extension_partition(g, k2).map_err(|e| e.to_string())?;
        ensure((&again.a, &again.n, &again.b) == (&p.a, &p.n, &p.b), || {
            format!("reordered K changes the partition of {g:?}")
        })?;
    }
    Ok(format!(
        "{PARTITION_INSTANCES} instances, {} invariants each",
        PartitionInvariant::ALL.len()
    ))
}

fn c5_drivers() -> Check {
    let mut summary = Vec::new();
    for (class, branches, seed) in [
        (
            DriverClass::CohouseP5,
            &[Branch::K5Free, Branch::ThreeAttachments, Branch::TypeGadgets][..],
            SEED + 51,
        ),
        (
            DriverClass::CohouseP2P3,
            &[
                Branch::K5Free,
                Branch::OneNontrivial,
                Branch::K4FreeAttachments,
                Branch::K4Attachments,
            ][..],
            SEED + 52,
        ),
    ] {
        let mut r = rng(seed);
        let mut hits = BTreeMap::new();
        let mut isomorphic = 0;
        for i in 0..DRIVER_PAIRS {
            let branch = branches[i % branches.len()];
            let iso = (i / branches.len()) % 2 == 0;
            let (g, h) = admissible_pair(&mut r, class, branch, iso);
            let (verdict, trace) = solve_gi(class, &g, &h).map_err(|e| e.to_string())?;
            let truth = is_isomorphic(&g, &h);
            ensure(verdict == truth, || format!("{class}: driver {verdict}, solver {truth} on {g:?} / {h:?}"))?;
            ensure(iso == truth, || format!("{class}: generator asked for iso={iso}"))?;
            trace.verify_guards(&g, &h).map_err(|e| e.to_string())?;
            isomorphic += usize::from(truth);
            for b in trace.branches() {
                *hits.entry(b).or_insert(0usize) += 1;
            }
        }
        for b in branches {
            let n = hits.get(b).copied().unwrap_or(0);
            ensure(n >= MIN_CASE_HITS, || format!("{class}: case {b} hit {n} times"))?;
        }
        let cases = hits.iter().map(|(b, n)| format!("{b}={n}")).collect::<Vec<_>>().join(" ");
        summary.push(format!("{class}: {DRIVER_PAIRS} pairs ({isomorphic} isomorphic) {cases}"));
    }
    Ok(summary.join("; "))
}

fn open_keys(cases: &[OpenCase]) -> BTreeMap<(Certificate, Certificate), &'static str> {
    cases
        .iter()
        .flat_map(|c| c.pairs().map(|(a, b)| (equivalence_closure(&a, &b).key(), c.id)).collect::<Vec<_>>())
        .collect()
}

fn c6_classifier() -> Check {
    let small = small_graphs(5);
    let mut pairs = 0;
    for (i, a) in small.iter().enumerate() {
        for b in &small[i..] {
            pairs += 1;
            let gi = classify_gi(a, b).map_err(|e| format!("{a:?} {b:?}: {e}"))?;
            let cw = classify_cw(a, b).map_err(|e| format!("{a:?} {b:?}: {e}"))?;
            for m in equivalence_closure(a, b).members {
                let (g2, c2) = (
                    classify_gi(&m.h1, &m.h2).map_err(|e| e.to_string())?,
                    classify_cw(&m.h1, &m.h2).map_err(|e| e.to_string())?,
                );
                ensure(g2.status == gi.status && c2.status == cw.status, || {
                    format!("status changes inside the closure of {a:?} {b:?}")
                })?;
            }
        }
    }
    ensure(pairs == 1378, || format!("{pairs} pairs"))?;

    // small graphs, every table graph and the complements of all of them
    let mut seen = BTreeSet::new();
    let named = table_graphs().into_iter().map(|(_, g)| g);
    let graphs = small
        .into_iter()
        .chain(named.flat_map(|g| [g.complement(), g]))
        .filter(|g| seen.insert(cert(g)))
        .collect::<Vec<_>>();
    let mut open_gi = BTreeMap::new();
    let mut open_cw = BTreeMap::new();
    for (i, a) in graphs.iter().enumerate() {
        for b in &graphs[i..] {
            let gi = classify_gi(a, b).map_err(|e| format!("{a:?} {b:?}: {e}"))?;
            let cw = classify_cw(a, b).map_err(|e| format!("{a:?} {b:?}: {e}"))?;
            if gi.status == GiStatus::Open {
                open_gi.insert(equivalence_closure(a, b).key(), gi.rule);
            }
            if cw.status == CwStatus::Open {
                open_cw.insert(equivalence_closure(a, b).key(), cw.rule);
            }
        }
    }
    ensure(open_gi.len() == 6 && open_gi == open_keys(GI_OPEN), || {
        format!("GI-open classes {:?}", open_gi.values().collect::<Vec<_>>())
    })?;
    ensure(open_cw.len() == 5 && open_cw == open_keys(CW_OPEN), || {
        format!("cw-open classes {:?}", open_cw.values().collect::<Vec<_>>())
    })?;
    Ok(format!(
        "1378 small pairs, {} catalog graphs, 6 GI-open and 5 cw-open classes",
        graphs.len()
    ))
}

fn witness_ok(g: &Graph, limit: usize) -> Result<usize, String> {
    match exact_cliquewidth(g, limit).map_err(|e| e.to_string())? {
        CwOutcome::Exact { width, witness } => {
            let w = witness.ok_or("missing witness")?;
            let back = w.evaluate().map_err(|e| e.to_string())?;
            ensure(back == *g, || format!("witness for {g:?} evaluates to {back:?}"))?;
            Ok(width)
        }
        CwOutcome::ExceedsLimit { limit } => Err(format!("{g:?} exceeds {limit}")),
    }
}

fn c7_cliquewidth() -> Check {
    let mut computed = 0;
    for n in 1..=8 {
        ensure(witness_ok(&Graph::empty(n), 8)? == 1, || format!("edgeless {n}"))?;
        computed += 1;
        if n >= 2 {
            ensure(witness_ok(&Graph::complete(n), 8)? == 2, || format!("K{n}"))?;
            computed += 1;
        }
    }
    let p4 = make("P4").unwrap();
    ensure(witness_ok(&p4, 8)? == 3, || "P4".into())?;
    ensure(k_expression(&p4, 2).map_err(|e| e.to_string())?.is_none(), || "P4 has a 2-expression".into())?;
    let mut r = rng(SEED + 7);
    for _ in 0..20 {
        let n = r.gen_range(4..=8);
        let g = random_graph(&mut r, n, 0.5);
        witness_ok(&g, 8)?;
        computed += 1;
    }
    Ok(format!("{} instances, P4 has no 2-expression", computed + 1))
}

/// The first violated premise, evaluated directly.
fn first_failing_premise(g: &Graph, c: &GridPartitionCertificate) -> Option<u8> {
    let n = c.n;
    let mut count = vec![0; (n + 1) * (n + 1)];
    for &(i, j) in &c.cell {
        count[i * (n + 1) + j] += 1;
    }
    if (1..=n).any(|i| (1..=n).any(|j| count[i * (n + 1) + j] == 0)) {
        return Some(1);
    }
    let connected = |members: Vec<usize>| {
        let Some(&start) = members.first() else { return true };
        let inside = |v: usize| members.binary_search(&v).is_ok();
        let mut seen = vec![false; g.order()];
        let mut stack = vec![start];
        seen[start] = true;
        let mut reached = 1;
        while let Some(u) = stack.pop() {
            for w in 0..g.order() {
                if !seen[w] && inside(w) && g.has_edge(u, w) {
                    seen[w] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        reached == members.len()
    };
    let line = |row: bool, k: usize| {
        (0..g.order())
            .filter(|&v| if row { c.cell[v].0 == k } else { c.cell[v].1 == k })
            .collect::<Vec<_>>()
    };
    if (1..=n).any(|i| !connected(line(true, i))) {
        return Some(2);
    }
    if (1..=n).any(|j| !connected(line(false, j))) {
        return Some(3);
    }
    for u in 0..g.order() {
        for v in u + 1..g.order() {
            let (a, b) = (c.cell[u], c.cell[v]);
            if g.has_edge(u, v) && (a.0.abs_diff(b.0) > c.m || a.1.abs_diff(b.1) > c.m) {
                return Some(4);
            }
        }
    }
    None
}

fn c8_grid_certificate() -> Check {
    let mut summary = Vec::new();
    for n in 3..=6usize {
        let (g, cert) = build_hn_prime(n).map_err(|e| e.to_string())?;
        let expected = (n - 1) / 2 + 1;
        let bound = verify_grid_certificate(&g, &cert).map_err(|e| e.to_string())?;
        ensure(bound == expected, || format!("n={n}: bound {bound}, expected {expected}"))?;
        ensure(first_failing_premise(&g, &cert).is_none(), || format!("n={n}: oracle rejects"))?;
        let mut rejected = BTreeMap::new();
        let mut accepted = 0;
        for v in 0..g.order() {
            for i in 1..=n {
                for j in 1..=n {
                    if cert.cell[v] == (i, j) {
                        continue;
                    }
                    let mut bad = cert.clone();
                    bad.cell[v] = (i, j);
                    let oracle = first_failing_premise(&g, &bad);
                    let got = verify_grid_certificate(&g, &bad);
                    match (oracle, got) {
                        (Some(p), Err(e)) if e.premise() == Some(p) => *rejected.entry(p).or_insert(0usize) += 1,
                        (None, Ok(b)) if b == expected => accepted += 1,
                        (o, got) => {
                            return Err(format!("n={n}, vertex {v} -> ({i},{j}): oracle {o:?}, verifier {got:?}"));
                        }
                    }
                }
            }
        }
        ensure(!rejected.is_empty(), || format!("n={n}: no corruption was rejected"))?;
        summary.push(format!("n={n} bound {bound} rejected {rejected:?} still valid {accepted}"));
    }
    Ok(summary.join("; "))
}

fn c9_solver() -> Check {
    let mut r = rng(SEED + 9);
    let mut iso = 0;
    let mut same_degrees = 0;
    for i in 0..SOLVER_PAIRS {
        let n = r.gen_range(1..=7);
        let p = r.gen_range(0.2..0.8);
        let g = random_graph(&mut r, n, p);
        let h = if i % 2 == 0 {
            relabel(&mut r, &g).0
        } else {
            // a degree-preserving switch when one exists, else a fresh graph
            let other = switch_edges(&mut r, &g).unwrap_or_else(|| random_graph(&mut r, n, p));
            relabel(&mut r, &other).0
        };
        let brute = brute_isomorphic(&g, &h);
        let solver = is_isomorphic(&g, &h);
        ensure(brute == solver, || format!("solver {solver}, brute force {brute} on {g:?} / {h:?}"))?;
        iso += usize::from(brute);
        same_degrees += usize::from(g.degree_sequence() == h.degree_sequence());
    }
    Ok(format!(
        "{SOLVER_PAIRS} pairs, {iso} isomorphic, {same_degrees} with equal degree sequences"
    ))
}

fn main() {
    let criteria: [(&str, &str, Option<Duration>, fn() -> Check); 9] = [
        ("C1", "reduction soundness and completeness", Some(C1_LIMIT), c1_reductions_iff),
        ("C2", "gadget freeness", None, c2_gadget_freeness),
        ("C3", "gadget cardinality formulas", None, c3_cardinalities),
        ("C4", "K5 extension partition invariants", None, c4_partitions),
        ("C5", "driver and solver agreement", Some(C5_LIMIT), c5_drivers),
        ("C6", "classifier trichotomy and open lists", Some(C6_LIMIT), c6_classifier),
        ("C7", "exact clique-width oracle", Some(C7_LIMIT), c7_cliquewidth),
        ("C8", "grid partition certificate", Some(C8_LIMIT), c8_grid_certificate),
        ("C9", "solver against brute force", None, c9_solver),
    ];
    let mut failed = 0;
    for (id, title, limit, run) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|panic| {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(l)) if elapsed > l => Err(format!("took {elapsed:.1?}, limit {l:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("PASS {id} {title} ({elapsed:.1?}): {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {id} {title} ({elapsed:.1?}): {detail}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
