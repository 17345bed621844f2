//! Command-line front end: graph ingestion, pipeline orchestration, and
//! text/JSON reports. JSON is the machine interface; text renders the same
//! data. Exit codes: 0 success, 1 verification failure, 2 input error,
//! 3 guard exceeded, 4 internal assertion.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use matchrank::report::{
    facets_json, inequality_json, matching_json, rank_report_json, witness_report_json,
};
use matchrank::{
    choose_anchor, enumerate_facets, face_dimension, nice_odd_cycle_through_edge,
    odd_ear_decomposition, polytope_dimension, proper_odd_ear_decomposition, rank_report,
    verify_rank_at_most_one, witness_all, Ear, EarDecomposition, Error, F0Mode, Graph, Inequality,
    RankReport, WitnessReport,
};

#[derive(Parser)]
#[command(name = "matchrank", version)]
#[command(about = "Exact rank verification for matching polytopes of small graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text, env = "MATCHRANK_FORMAT")]
    format: Format,

    /// Write the report to a file instead of stdout
    #[arg(long, global = true, env = "MATCHRANK_OUT")]
    out: Option<PathBuf>,

    /// Largest node count accepted (odd-set scans are exponential in it)
    #[arg(long, global = true, default_value_t = 16, env = "MATCHRANK_MAX_NODES")]
    max_nodes: usize,

    /// Largest edge count accepted (matching enumeration is exponential in it)
    #[arg(long, global = true, default_value_t = 24, env = "MATCHRANK_MAX_EDGES")]
    max_edges: usize,

    /// Facet cap for the exhaustive rank-0 scan (2^facets subsets)
    #[arg(
        long,
        global = true,
        default_value_t = 12,
        env = "MATCHRANK_MAX_FACETS_EXHAUSTIVE"
    )]
    max_facets_exhaustive: usize,

    /// Rank-0 seed: the lemma formulation or the exhaustive subset scan
    #[arg(long, global = true, value_enum, default_value_t = F0Arg::Lemma, env = "MATCHRANK_F0")]
    f0: F0Arg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum F0Arg {
    Lemma,
    Exhaustive,
}

impl F0Arg {
    fn mode(self) -> F0Mode {
        match self {
            F0Arg::Lemma => F0Mode::Lemma,
            F0Arg::Exhaustive => F0Mode::Exhaustive,
        }
    }
}

#[derive(Args)]
struct GraphArg {
    /// Graph file (`-` for stdin); lines: `n <count>`, `e <u> <v>`, `#` comments
    path: Option<PathBuf>,

    /// Inline graph text; `;` separates lines
    #[arg(long, conflicts_with = "path")]
    inline: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// List the facets of the matching polytope
    Facets(GraphArg),
    /// Dimension of the matching polytope (must equal the edge count)
    Dim(GraphArg),
    /// Enumerate all matchings
    Matchings(GraphArg),
    /// Odd ear decomposition of a factor-critical graph
    Eardecomp {
        #[command(flatten)]
        graph: GraphArg,
        /// proper: all ears proper (needs 2-connectivity); auto picks proper
        /// when possible
        #[arg(long, value_enum, default_value_t = EarKind::Auto)]
        kind: EarKind,
    },
    /// All facet pairs meeting in a ridge
    Ridges(GraphArg),
    /// Rank hierarchy report for the chosen rank-0 seed
    Rank(GraphArg),
    /// Witness matchings for blossom facets of positive rank
    Witness {
        #[command(flatten)]
        graph: GraphArg,
        /// Restrict to one odd set, e.g. `0,1,2`
        #[arg(long)]
        odd_set: Option<String>,
    },
    /// Full verification: rank at most 1 plus witness families
    Verify(GraphArg),
    /// Run verification over every `*.graph` file in a directory
    Corpus { dir: PathBuf },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EarKind {
    Auto,
    Odd,
    Proper,
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Parse { .. }
        | Error::InvalidGraph(_)
        | Error::InvalidInput(_)
        | Error::InvalidInequality(_)
        | Error::NotAFacet(_) => 2,
        Error::GuardExceeded(_) => 3,
        Error::VerificationFailed(_) | Error::HierarchyIncomplete { .. } => 1,
        Error::Internal(_) => 4,
    }
}

fn load_graph(arg: &GraphArg, max_nodes: usize, max_edges: usize) -> Result<Graph, Error> {
    let text = if let Some(inline) = &arg.inline {
        inline.replace(';', "\n")
    } else {
        match &arg.path {
            None => {
                return Err(Error::InvalidInput(
                    "no input: pass a graph file, `-` for stdin, or --inline".into(),
                ))
            }
            Some(p) if p.as_os_str() == "-" => {
                use std::io::Read;
                let mut buf = String::new();
                std::io::stdin()
                    .read_to_string(&mut buf)
                    .map_err(|e| Error::InvalidInput(format!("stdin: {e}")))?;
                buf
            }
            Some(p) => std::fs::read_to_string(p)
                .map_err(|e| Error::InvalidInput(format!("{}: {e}", p.display())))?,
        }
    };
    let g = Graph::parse(&text)?;
    if g.node_count() > max_nodes {
        return Err(Error::GuardExceeded(format!(
            "graph has {} nodes, limit is {max_nodes} (--max-nodes)",
            g.node_count()
        )));
    }
    if g.edge_count() > max_edges {
        return Err(Error::GuardExceeded(format!(
            "graph has {} edges, limit is {max_edges} (--max-edges)",
            g.edge_count()
        )));
    }
    Ok(g)
}

fn ineq_text(g: &Graph, q: &Inequality) -> String {
    match q {
        Inequality::NonNeg(e) => {
            let (u, v) = g.endpoints(*e);
            format!("x({u},{v}) >= 0")
        }
        Inequality::Degree(v) => format!("x(delta({v})) <= 1"),
        Inequality::OddSet(u) => {
            let nodes: Vec<String> = u.iter().map(usize::to_string).collect();
            format!("x(E[{{{}}}]) <= {}", nodes.join(","), q.rhs())
        }
    }
}

fn facet_counts(facets: &[Inequality]) -> (usize, usize, usize) {
    let nn = facets
        .iter()
        .filter(|q| matches!(q, Inequality::NonNeg(_)))
        .count();
    let dg = facets
        .iter()
        .filter(|q| matches!(q, Inequality::Degree(_)))
        .count();
    let os = facets
        .iter()
        .filter(|q| matches!(q, Inequality::OddSet(_)))
        .count();
    (nn, dg, os)
}

struct Report {
    text: String,
    json: Value,
    ok: bool,
}

fn cmd_facets(g: &Graph) -> Result<Report, Error> {
    let facets = enumerate_facets(g)?;
    let (nn, dg, os) = facet_counts(&facets);
    let mut text = String::new();
    let _ = writeln!(
        text,
        "facets: {} (nonneg={nn} degree={dg} oddset={os})",
        facets.len()
    );
    for q in &facets {
        let _ = writeln!(text, "  {}", ineq_text(g, q));
    }
    let json = json!({
        "facets": facets_json(g, &facets),
        "counts": { "nonneg": nn, "degree": dg, "oddset": os, "total": facets.len() },
    });
    Ok(Report {
        text,
        json,
        ok: true,
    })
}

fn cmd_dim(g: &Graph) -> Result<Report, Error> {
    let dim = polytope_dimension(g)?;
    let text = format!("dimension = {dim}\nedges = {}\n", g.edge_count());
    let json = json!({ "dimension": dim, "edges": g.edge_count() });
    Ok(Report {
        text,
        json,
        ok: dim == g.edge_count() as i64,
    })
}

fn cmd_matchings(g: &Graph) -> Result<Report, Error> {
    let ms = matchrank::enumerate_matchings(g)?;
    let mut text = String::new();
    let _ = writeln!(text, "matchings: {}", ms.len());
    for m in &ms {
        let edges: Vec<String> = m
            .edges(g)
            .into_iter()
            .map(|(u, v)| format!("({u},{v})"))
            .collect();
        let _ = writeln!(text, "  [{}]", edges.join(" "));
    }
    let json = json!({
        "count": ms.len(),
        "matchings": Value::Array(ms.iter().map(|m| matching_json(g, m)).collect()),
    });
    Ok(Report {
        text,
        json,
        ok: true,
    })
}

fn ear_json(ear: &Ear) -> Value {
    json!({
        "path": ear.path,
        "proper": ear.is_proper(),
        "edges": ear.len_edges(),
    })
}

fn cmd_eardecomp(g: &Graph, kind: EarKind) -> Result<Report, Error> {
    let (d, proper): (EarDecomposition, bool) = match kind {
        EarKind::Proper => (proper_odd_ear_decomposition(g)?, true),
        EarKind::Odd => {
            let (u, v) = g
                .edges()
                .first()
                .copied()
                .ok_or_else(|| Error::InvalidInput("graph has no edges".into()))?;
            let c = nice_odd_cycle_through_edge(g, (u, v))?;
            (odd_ear_decomposition(g, &c, None)?, false)
        }
        EarKind::Auto => match proper_odd_ear_decomposition(g) {
            Ok(d) => (d, true),
            Err(_) => {
                let (u, v) = g
                    .edges()
                    .first()
                    .copied()
                    .ok_or_else(|| Error::InvalidInput("graph has no edges".into()))?;
                let c = nice_odd_cycle_through_edge(g, (u, v))?;
                (odd_ear_decomposition(g, &c, None)?, false)
            }
        },
    };
    let mut text = String::new();
    let _ = writeln!(text, "kind = {}", if proper { "proper" } else { "odd" });
    let cyc: Vec<String> = d.initial_cycle.iter().map(usize::to_string).collect();
    let _ = writeln!(text, "cycle: {}", cyc.join("-"));
    let _ = writeln!(text, "ears: {}", d.ears.len());
    for ear in &d.ears {
        let p: Vec<String> = ear.path.iter().map(usize::to_string).collect();
        let _ = writeln!(
            text,
            "  {} ({})",
            p.join("-"),
            if ear.is_proper() { "proper" } else { "closing" }
        );
    }
    let json = json!({
        "kind": if proper { "proper" } else { "odd" },
        "initial_cycle": d.initial_cycle,
        "ears": Value::Array(d.ears.iter().map(ear_json).collect()),
    });
    Ok(Report {
        text,
        json,
        ok: true,
    })
}

fn cmd_ridges(g: &Graph) -> Result<Report, Error> {
    let facets = enumerate_facets(g)?;
    let want = g.edge_count() as i64 - 2;
    let mut pairs = Vec::new();
    for (i, f) in facets.iter().enumerate() {
        for h in facets.iter().skip(i + 1) {
            let face = face_dimension(g, &[f.clone(), h.clone()])?;
            if face.dimension == want {
                pairs.push((f.clone(), h.clone()));
            }
        }
    }
    let mut text = String::new();
    let _ = writeln!(text, "ridges: {}", pairs.len());
    for (f, h) in &pairs {
        let _ = writeln!(text, "  {}  |  {}", ineq_text(g, f), ineq_text(g, h));
    }
    let json = json!({
        "count": pairs.len(),
        "ridges": Value::Array(
            pairs
                .iter()
                .map(|(f, h)| json!({ "a": inequality_json(g, f), "b": inequality_json(g, h) }))
                .collect()
        ),
    });
    Ok(Report {
        text,
        json,
        ok: true,
    })
}

fn rank_text(g: &Graph, rep: &RankReport) -> String {
    let mut text = String::new();
    let _ = writeln!(text, "rho={}", rep.rho);
    let _ = writeln!(text, "f0 mode: {}", rep.f0_mode.as_str());
    let _ = writeln!(text, "rank-0 seed: {} facets", rep.rank_zero_set.len());
    for (q, r) in rep.rank_of.iter().filter(|(_, &r)| r > 0) {
        let cert = &rep.certificates[q];
        let _ = writeln!(
            text,
            "  rank {r}: {}  (ridge with {})",
            ineq_text(g, q),
            ineq_text(g, &cert.partner)
        );
    }
    text
}

fn cmd_rank(g: &Graph, mode: F0Mode, max_exh: usize) -> Result<Report, Error> {
    if mode == F0Mode::Exhaustive && max_exh > 12 {
        eprintln!(
            "warning: exhaustive rank-0 scan over up to 2^{max_exh} facet subsets \
             (default cap is 12)"
        );
    }
    let rep = rank_report(g, mode, max_exh)?;
    Ok(Report {
        text: rank_text(g, &rep),
        json: rank_report_json(g, &rep),
        ok: true,
    })
}

fn positive_rank_odd_sets(g: &Graph) -> Result<(RankReport, Vec<BTreeSet<usize>>), Error> {
    let rep = verify_rank_at_most_one(g)?;
    let sets = rep
        .rank_of
        .iter()
        .filter(|(_, &r)| r > 0)
        .filter_map(|(q, _)| match q {
            Inequality::OddSet(u) => Some(u.clone()),
            _ => None,
        })
        .collect();
    Ok((rep, sets))
}

fn witness_text(g: &Graph, rep: &WitnessReport) -> String {
    let nodes: Vec<String> = rep.odd_set.iter().map(usize::to_string).collect();
    let mut text = format!(
        "oddset {{{}}} anchor {}: ridge_dim={} ridge_ok={} witnesses={} fallbacks={}\n",
        nodes.join(","),
        rep.anchor,
        rep.ridge_dimension,
        rep.ridge_ok,
        rep.results.len(),
        rep.fallback_count
    );
    for r in &rep.results {
        let edges: Vec<String> = r
            .matching
            .edges(g)
            .into_iter()
            .map(|(u, v)| format!("({u},{v})"))
            .collect();
        let _ = writeln!(
            text,
            "  case {:>2} {}: [{}]{}",
            r.case.as_str(),
            ineq_text(g, &r.target),
            edges.join(" "),
            if r.checks.all() {
                ""
            } else {
                "  CHECKS FAILED"
            }
        );
    }
    text
}

fn cmd_witness(g: &Graph, odd_set: Option<&str>) -> Result<Report, Error> {
    let sets: Vec<BTreeSet<usize>> = match odd_set {
        Some(spec) => {
            let nodes = spec
                .split(',')
                .map(|t| t.trim().parse::<usize>())
                .collect::<Result<BTreeSet<_>, _>>()
                .map_err(|_| Error::InvalidInput(format!("bad --odd-set `{spec}`")))?;
            vec![nodes]
        }
        None => positive_rank_odd_sets(g)?.1,
    };
    let mut reports = Vec::new();
    for u in &sets {
        let (anchor, _) = choose_anchor(g, u)?;
        reports.push(witness_all(g, u, anchor)?);
    }
    let ok = reports
        .iter()
        .all(|r| r.ridge_ok && r.fallback_count == 0 && r.results.iter().all(|w| w.checks.all()));
    let text = if reports.is_empty() {
        "no blossom facets of positive rank\n".to_string()
    } else {
        reports.iter().map(|r| witness_text(g, r)).collect()
    };
    let json = json!({
        "reports": Value::Array(reports.iter().map(|r| witness_report_json(g, r)).collect()),
    });
    Ok(Report { text, json, ok })
}

fn cmd_verify(g: &Graph) -> Result<Report, Error> {
    let (rank, sets) = positive_rank_odd_sets(g)?;
    let mut witnesses = Vec::new();
    for u in &sets {
        let (anchor, _) = choose_anchor(g, u)?;
        witnesses.push(witness_all(g, u, anchor)?);
    }
    let witnesses_ok = witnesses
        .iter()
        .all(|r| r.ridge_ok && r.fallback_count == 0 && r.results.iter().all(|w| w.checks.all()));
    let ok = rank.rho <= 1 && witnesses_ok;
    let facets = enumerate_facets(g)?;
    let (nn, dg, os) = facet_counts(&facets);
    let mut text = String::new();
    let _ = writeln!(
        text,
        "graph: nodes={} edges={}",
        g.node_count(),
        g.edge_count()
    );
    let _ = writeln!(text, "facets: nonneg={nn} degree={dg} oddset={os}");
    let _ = write!(text, "{}", rank_text(g, &rank));
    for w in &witnesses {
        let _ = write!(text, "{}", witness_text(g, w));
    }
    let _ = writeln!(text, "verification: {}", if ok { "PASS" } else { "FAIL" });
    let json = json!({
        "graph": { "nodes": g.node_count(), "edges": g.edge_count() },
        "facet_counts": { "nonneg": nn, "degree": dg, "oddset": os },
        "rank": rank_report_json(g, &rank),
        "witnesses": Value::Array(witnesses.iter().map(|r| witness_report_json(g, r)).collect()),
        "rho": rank.rho,
        "ok": ok,
    });
    Ok(Report { text, json, ok })
}

fn cmd_corpus(cli: &Cli, dir: &PathBuf) -> Result<Report, Error> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| Error::InvalidInput(format!("{}: {e}", dir.display())))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().map_or(false, |x| x == "graph"))
        .collect();
    files.sort();
    let mut rows_text = Vec::new();
    let mut rows_json = Vec::new();
    let mut failures = 0usize;
    for path in &files {
        let name = path
            .file_name()
            .unwrap_or_default()
            .to_string_lossy()
            .to_string();
        let started = Instant::now();
        let arg = GraphArg {
            path: Some(path.clone()),
            inline: None,
        };
        let outcome = load_graph(&arg, cli.max_nodes, cli.max_edges).and_then(|g| {
            let rep = cmd_verify(&g)?;
            let rank: u32 = rep.json["rho"].as_u64().unwrap_or(0) as u32;
            let counts = rep.json["facet_counts"].clone();
            let fallbacks: u64 = rep.json["witnesses"]
                .as_array()
                .map(|a| {
                    a.iter()
                        .map(|w| w["fallback_count"].as_u64().unwrap_or(0))
                        .sum()
                })
                .unwrap_or(0);
            Ok((g, rep.ok, rank, counts, fallbacks))
        });
        let ms = started.elapsed().as_millis();
        match outcome {
            Ok((g, ok, rho, counts, fallbacks)) => {
                if !ok {
                    failures += 1;
                }
                rows_text.push(format!(
                    "{name:<22} {:>3} {:>3}   {:>3} {:>3} {:>3}  {rho:>3} {fallbacks:>5} {ms:>6}  {}",
                    g.node_count(),
                    g.edge_count(),
                    counts["nonneg"].as_u64().unwrap_or(0),
                    counts["degree"].as_u64().unwrap_or(0),
                    counts["oddset"].as_u64().unwrap_or(0),
                    if ok { "ok" } else { "FAIL" }
                ));
                rows_json.push(json!({
                    "file": name,
                    "nodes": g.node_count(),
                    "edges": g.edge_count(),
                    "facets": counts,
                    "rho": rho,
                    "fallbacks": fallbacks,
                    "status": if ok { "ok" } else { "fail" },
                }));
            }
            Err(e) => {
                failures += 1;
                rows_text.push(format!("{name:<22} error: {e}"));
                rows_json.push(json!({ "file": name, "status": "error", "error": e.to_string() }));
            }
        }
    }
    let mut text = String::new();
    let _ = writeln!(
        text,
        "{:<22} {:>3} {:>3}   {:>3} {:>3} {:>3}  {:>3} {:>5} {:>6}  status",
        "file", "|V|", "|E|", "nn", "deg", "odd", "rho", "fback", "ms"
    );
    for row in &rows_text {
        let _ = writeln!(text, "{row}");
    }
    let _ = writeln!(text, "total: {} graphs, {} failed", files.len(), failures);
    let json = json!({
        "rows": Value::Array(rows_json),
        "total": files.len(),
        "failed": failures,
    });
    Ok(Report {
        text,
        json,
        ok: failures == 0,
    })
}

fn run(cli: &Cli) -> Result<Report, Error> {
    match &cli.command {
        Command::Facets(arg) => cmd_facets(&load_graph(arg, cli.max_nodes, cli.max_edges)?),
        Command::Dim(arg) => cmd_dim(&load_graph(arg, cli.max_nodes, cli.max_edges)?),
        Command::Matchings(arg) => cmd_matchings(&load_graph(arg, cli.max_nodes, cli.max_edges)?),
        Command::Eardecomp { graph, kind } => {
            cmd_eardecomp(&load_graph(graph, cli.max_nodes, cli.max_edges)?, *kind)
        }
        Command::Ridges(arg) => cmd_ridges(&load_graph(arg, cli.max_nodes, cli.max_edges)?),
        Command::Rank(arg) => cmd_rank(
            &load_graph(arg, cli.max_nodes, cli.max_edges)?,
            cli.f0.mode(),
            cli.max_facets_exhaustive,
        ),
        Command::Witness { graph, odd_set } => cmd_witness(
            &load_graph(graph, cli.max_nodes, cli.max_edges)?,
            odd_set.as_deref(),
        ),
        Command::Verify(arg) => cmd_verify(&load_graph(arg, cli.max_nodes, cli.max_edges)?),
        Command::Corpus { dir } => cmd_corpus(cli, dir),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let payload = match cli.format {
                Format::Text => report.text,
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&report.json)
                        .expect("json serialization cannot fail");
                    s.push('\n');
                    s
                }
            };
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, &payload) {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{payload}");
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
