//! `hfree`: command-line front end.
//!
//! Exit status is 0 for a positive answer (isomorphic, free, classified,
//! verified), 1 for a negative one and 2 for usage or input errors.

mod input;
mod report;

use std::process::ExitCode;
use std::thread;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use thiserror::Error;

use hfree::classifier::{classify_cw, classify_gi, CwStatus, GiStatus, Member};
use hfree::cliquewidth::{
    build_hn_prime, exact_cliquewidth, parse_partition, verify_grid_certificate, write_partition, CwOutcome,
};
use hfree::corpus::small_graphs;
use hfree::iso::{are_isomorphic, canonical_form};
use hfree::reductions::{hardness_instance, Reduction};
use hfree::structure::{find_k5, k5_extension_partition, solve_gi, DriverClass};
use hfree::subiso::find_induced;
use hfree::Graph;

use input::{format_map, load_graph, read_file, write_file};
use report::{Format, Report};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read graph {arg:?}: not a catalog name ({catalog}) and not graph6 ({graph6})")]
    GraphArg { arg: String, catalog: String, graph6: String },
    #[error("cannot parse graph file {path}: {reason}")]
    GraphFile { path: String, reason: String },
    #[error("{path}: {reason}")]
    Io { path: String, reason: String },
    #[error("{0}")]
    Input(String),
}

impl CliError {
    fn input(e: impl std::fmt::Display) -> Self {
        CliError::Input(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(name = "hfree", version, about = "Isomorphism and clique-width tools for (H1,H2)-free graphs")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Problem {
    Gi,
    Cw,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide isomorphism and print a mapping.
    Iso { g: String, h: String },
    /// Canonical certificate (hex) and canonical graph6.
    Canon { g: String },
    /// Check that G has none of the forbidden induced subgraphs.
    FreeCheck {
        g: String,
        #[arg(long = "forbid", required = true)]
        forbid: Vec<String>,
    },
    /// Build a hardness gadget: diamond-2p3, diamond-p6 or gem-p1-2p2.
    Reduce {
        which: String,
        g: String,
        /// Apply the construction to G plus four dominating clique vertices
        /// where the hardness argument does so.
        #[arg(long)]
        hardness: bool,
        /// Write the vertex role map here instead of stdout.
        #[arg(long)]
        map: Option<String>,
    },
    /// Classify the class of (H1,H2)-free graphs.
    Classify {
        problem: Problem,
        h1: String,
        h2: String,
        /// Print the matched statement and the witness pair.
        #[arg(long)]
        explain: bool,
    },
    /// Classify every unordered pair of graphs on at most MAX_N vertices.
    ClassifyAll {
        #[arg(long, default_value_t = 5)]
        max_n: usize,
        #[arg(long)]
        out: Option<String>,
    },
    /// Exact clique-width of a graph on at most 10 vertices.
    Cw {
        g: String,
        #[arg(long, default_value_t = 10)]
        limit: usize,
    },
    /// Verify a grid partition lower-bound certificate.
    CwCert {
        g: String,
        partition: String,
        #[arg(long, default_value_t = 1)]
        m: usize,
    },
    /// Build the graph H_n' with its certified partition.
    HnPrime {
        n: usize,
        /// Write the partition file here instead of stdout.
        #[arg(long)]
        partition: Option<String>,
    },
    /// Run a structural isomorphism driver.
    SolveGi {
        #[arg(long)]
        class: DriverClass,
        g: String,
        h: String,
        #[arg(long)]
        trace: bool,
    },
    /// The K5 extension partition of a crossed-house-free graph.
    Partition {
        g: String,
        /// Five clique vertices, comma separated; the first K5 otherwise.
        #[arg(long, value_delimiter = ',')]
        k: Option<Vec<usize>>,
    },
}

const CLASSIFY_ALL_CAP: usize = 6;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(report) => {
            print!("{}", report.render(cli.format));
            ExitCode::from(report.exit)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<Report, CliError> {
    match command {
        Command::Iso { g, h } => iso(&load_graph(&g)?, &load_graph(&h)?),
        Command::Canon { g } => canon(&load_graph(&g)?),
        Command::FreeCheck { g, forbid } => free_check(&load_graph(&g)?, &forbid),
        Command::Reduce { which, g, hardness, map } => reduce(&which, &load_graph(&g)?, hardness, map),
        Command::Classify { problem, h1, h2, explain } => classify(problem, &load_graph(&h1)?, &load_graph(&h2)?, explain),
        Command::ClassifyAll { max_n, out } => classify_all(max_n, out),
        Command::Cw { g, limit } => cw(&load_graph(&g)?, limit),
        Command::CwCert { g, partition, m } => cw_cert(&load_graph(&g)?, &partition, m),
        Command::HnPrime { n, partition } => hn_prime(n, partition),
        Command::SolveGi { class, g, h, trace } => solve(class, &load_graph(&g)?, &load_graph(&h)?, trace),
        Command::Partition { g, k } => partition(&load_graph(&g)?, k),
    }
}

fn iso(g: &Graph, h: &Graph) -> Result<Report, CliError> {
    let mut r;
    match are_isomorphic(g, h) {
        Some(map) => {
            r = Report::new(0);
            r.line(format!("ISOMORPHIC {}", format_map(&map)));
            r.record(vec![("verdict", json!("ISOMORPHIC")), ("map", json!(map))]);
        }
        None => {
            r = Report::new(1);
            r.line("NON-ISOMORPHIC");
            r.record(vec![("verdict", json!("NON-ISOMORPHIC")), ("map", json!(null))]);
        }
    }
    Ok(r)
}

fn canon(g: &Graph) -> Result<Report, CliError> {
    let c = canonical_form(g).map_err(CliError::input)?;
    let graph6 = c.certificate.graph().to_graph6();
    let mut r = Report::new(0);
    r.line(c.certificate.to_hex()).line(format!("canonical {graph6}"));
    r.record(vec![
        ("certificate", json!(c.certificate.to_hex())),
        ("graph6", json!(graph6)),
        ("order", json!(c.canonical_order)),
    ]);
    Ok(r)
}

fn free_check(g: &Graph, forbid: &[String]) -> Result<Report, CliError> {
    let family = forbid.iter().map(|f| load_graph(f)).collect::<Result<Vec<_>, _>>()?;
    for (name, h) in forbid.iter().zip(&family) {
        if let Some(e) = find_induced(g, h) {
            let mut r = Report::new(1);
            r.line(format!("NOT-FREE {name} {}", format_map(&e.map)));
            r.record(vec![
                ("verdict", json!("NOT-FREE")),
                ("forbidden", json!(name)),
                ("map", json!(e.map)),
            ]);
            return Ok(r);
        }
    }
    let mut r = Report::new(0);
    r.line("FREE");
    r.record(vec![
        ("verdict", json!("FREE")),
        ("forbidden", json!(null)),
        ("map", json!(null)),
    ]);
    Ok(r)
}

fn reduce(which: &str, g: &Graph, hardness: bool, map: Option<String>) -> Result<Report, CliError> {
    let which = which.parse::<Reduction>().map_err(CliError::input)?;
    let gadget = if hardness {
        hardness_instance(g, which)
    } else {
        which.apply(g).map_err(CliError::input)?
    };
    let graph6 = gadget.graph.to_graph6();
    let roles = gadget.role_map();
    let mut r = Report::new(0);
    r.line(&graph6);
    match map {
        Some(path) => write_file(&path, &roles)?,
        None => {
            for line in roles.lines() {
                r.line(line);
            }
        }
    }
    r.record(vec![
        ("reduction", json!(which.id())),
        ("graph6", json!(graph6)),
        ("vertices", json!(gadget.graph.order())),
        ("edges", json!(gadget.graph.edge_count())),
    ]);
    Ok(r)
}

fn witness_text(w: &Member) -> String {
    let ops = if w.ops.is_empty() {
        "as given".to_string()
    } else {
        w.ops.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
    };
    format!("witness {} {} via {ops}", w.h1.to_graph6(), w.h2.to_graph6())
}

fn classify(problem: Problem, h1: &Graph, h2: &Graph, explain: bool) -> Result<Report, CliError> {
    let (status, open, rule, statement, witness) = match problem {
        Problem::Gi => {
            let v = classify_gi(h1, h2).map_err(CliError::input)?;
            (v.status.to_string(), v.status == GiStatus::Open, v.rule, v.statement, v.witness)
        }
        Problem::Cw => {
            let v = classify_cw(h1, h2).map_err(CliError::input)?;
            (v.status.to_string(), v.status == CwStatus::Open, v.rule, v.statement, v.witness)
        }
    };
    let mut r = Report::new(u8::from(open));
    r.line(format!("{status} {rule}"));
    if explain {
        r.line(format!("statement {statement}")).line(witness_text(&witness));
    }
    r.record(vec![
        ("status", json!(status)),
        ("rule", json!(rule)),
        ("statement", json!(statement)),
        ("witness_h1", json!(witness.h1.to_graph6())),
        ("witness_h2", json!(witness.h2.to_graph6())),
    ]);
    Ok(r)
}

/// One TSV row per unordered pair: graph6 of both graphs, then status and
/// rule for each problem.
fn classify_all(max_n: usize, out: Option<String>) -> Result<Report, CliError> {
    if max_n > CLASSIFY_ALL_CAP {
        return Err(CliError::Input(format!(
            "classify-all is capped at --max-n {CLASSIFY_ALL_CAP}, got {max_n}"
        )));
    }
    let graphs = small_graphs(max_n);
    let pairs = (0..graphs.len())
        .flat_map(|i| (i..graphs.len()).map(move |j| (i, j)))
        .collect::<Vec<_>>();
    let workers = thread::available_parallelism().map_or(1, |n| n.get());
    let chunk = pairs.len().div_ceil(workers).max(1);
    let rows = thread::scope(|s| {
        let handles = pairs
            .chunks(chunk)
            .map(|part| {
                let graphs = &graphs;
                s.spawn(move || {
                    part.iter()
                        .map(|&(i, j)| {
                            let (a, b) = (&graphs[i], &graphs[j]);
                            let gi = classify_gi(a, b).map_err(CliError::input)?;
                            let cw = classify_cw(a, b).map_err(CliError::input)?;
                            Ok([
                                a.to_graph6(),
                                b.to_graph6(),
                                gi.status.to_string(),
                                gi.rule.to_string(),
                                cw.status.to_string(),
                                cw.rule.to_string(),
                            ])
                        })
                        .collect::<Result<Vec<_>, CliError>>()
                })
            })
            .collect::<Vec<_>>();
        handles
            .into_iter()
            .map(|h| h.join().expect("classification worker panicked"))
            .collect::<Result<Vec<_>, _>>()
    })?
    .into_iter()
    .flatten()
    .collect::<Vec<_>>();

    let count = |column: usize, value: &str| rows.iter().filter(|row| row[column] == value).count();
    let mut r = Report::new(0);
    if let Some(path) = &out {
        let body = rows.iter().map(|row| row.join("\t") + "\n").collect::<String>();
        write_file(path, &body)?;
    }
    r.line(format!("{} pairs of graphs on at most {max_n} vertices", rows.len()));
    for (label, column, values) in [
        ("gi", 2, ["POLYNOMIAL", "GI-COMPLETE", "OPEN"]),
        ("cw", 4, ["BOUNDED", "UNBOUNDED", "OPEN"]),
    ] {
        let summary = values
            .iter()
            .map(|v| format!("{v} {}", count(column, v)))
            .collect::<Vec<_>>()
            .join(", ");
        r.line(format!("{label}: {summary}"));
    }
    if out.is_none() {
        for row in &rows {
            r.line(row.join("\t"));
        }
    }
    for row in &rows {
        r.record(vec![
            ("h1", json!(row[0])),
            ("h2", json!(row[1])),
            ("gi_status", json!(row[2])),
            ("gi_rule", json!(row[3])),
            ("cw_status", json!(row[4])),
            ("cw_rule", json!(row[5])),
        ]);
    }
    Ok(r)
}

fn cw(g: &Graph, limit: usize) -> Result<Report, CliError> {
    match exact_cliquewidth(g, limit).map_err(CliError::input)? {
        CwOutcome::Exact { width, witness } => {
            let expr = witness.map(|w| w.to_string());
            let mut r = Report::new(0);
            r.line(format!("CLIQUE-WIDTH {width}"));
            if let Some(e) = &expr {
                r.line(e.clone());
            }
            r.record(vec![("width", json!(width)), ("expression", json!(expr))]);
            Ok(r)
        }
        CwOutcome::ExceedsLimit { limit } => {
            let mut r = Report::new(1);
            r.line(format!("CLIQUE-WIDTH > {limit}"));
            r.record(vec![("width", json!(null)), ("exceeds", json!(limit))]);
            Ok(r)
        }
    }
}

fn cw_cert(g: &Graph, path: &str, m: usize) -> Result<Report, CliError> {
    let text = read_file(path)?;
    let cert = parse_partition(&text, g.order(), m).map_err(CliError::input)?;
    match verify_grid_certificate(g, &cert) {
        Ok(bound) => {
            let mut r = Report::new(0);
            r.line(format!("VERIFIED clique-width >= {bound}"));
            r.record(vec![
                ("verdict", json!("VERIFIED")),
                ("bound", json!(bound)),
                ("premise", json!(null)),
                ("reason", json!(null)),
            ]);
            Ok(r)
        }
        Err(e) => match e.premise() {
            Some(p) => {
                let mut r = Report::new(1);
                r.line(format!("REJECTED premise {p}: {e}"));
                r.record(vec![
                    ("verdict", json!("REJECTED")),
                    ("bound", json!(null)),
                    ("premise", json!(p)),
                    ("reason", json!(e.to_string())),
                ]);
                Ok(r)
            }
            None => Err(CliError::input(e)),
        },
    }
}

fn hn_prime(n: usize, partition: Option<String>) -> Result<Report, CliError> {
    let (g, cert) = build_hn_prime(n).map_err(CliError::input)?;
    let bound = verify_grid_certificate(&g, &cert).map_err(CliError::input)?;
    let text = write_partition(&cert);
    let mut r = Report::new(0);
    r.line(g.to_graph6());
    match &partition {
        Some(path) => write_file(path, &text)?,
        None => {
            for line in text.lines() {
                r.line(line);
            }
        }
    }
    r.record(vec![
        ("n", json!(n)),
        ("graph6", json!(g.to_graph6())),
        ("vertices", json!(g.order())),
        ("bound", json!(bound)),
    ]);
    Ok(r)
}

fn solve(class: DriverClass, g: &Graph, h: &Graph, show_trace: bool) -> Result<Report, CliError> {
    let (same, trace) = solve_gi(class, g, h).map_err(CliError::input)?;
    let verdict = if same { "ISOMORPHIC" } else { "NON-ISOMORPHIC" };
    let mut r = Report::new(u8::from(!same));
    r.line(verdict);
    if show_trace {
        for line in trace.to_string().lines() {
            r.line(line);
        }
    }
    let branches = trace.branches().iter().map(|b| b.id()).collect::<Vec<_>>();
    r.record(vec![
        ("verdict", json!(verdict)),
        ("class", json!(class.id())),
        ("branches", json!(branches)),
        ("oracle_calls", json!(trace.oracle_calls)),
    ]);
    Ok(r)
}

fn partition(g: &Graph, k: Option<Vec<usize>>) -> Result<Report, CliError> {
    let k = match k {
        Some(v) => <[usize; 5]>::try_from(v.as_slice())
            .map_err(|_| CliError::Input(format!("--k needs five vertices, got {}", v.len())))?,
        None => match find_k5(g) {
            Some(k) => k,
            None => {
                let mut r = Report::new(1);
                r.line("NO-K5");
                r.record(vec![("verdict", json!("NO-K5"))]);
                return Ok(r);
            }
        },
    };
    let p = k5_extension_partition(g, k).map_err(CliError::input)?;
    let list = |v: &[usize]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
    let mut r = Report::new(0);
    r.line(format!("K {}", list(&p.k)));
    for (i, (a, n)) in p.a.iter().zip(&p.n).enumerate() {
        r.line(format!("A{} {}", i + 1, list(a)));
        r.line(format!("N{} {}", i + 1, list(n)));
    }
    r.line(format!("B {}", list(&p.b)));
    r.record(vec![
        ("verdict", json!("PARTITION")),
        ("k", json!(p.k)),
        ("a", json!(p.a)),
        ("n", json!(p.n)),
        ("b", json!(p.b)),
    ]);
    Ok(r)
}
