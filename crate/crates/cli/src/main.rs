//! `turan`: command-line front end for the turan-core library.
//!
//! Every subcommand prints one JSON report on stdout (or into `--out`) and a
//! short human summary on stderr. Exit codes: 0 success, 2 usage or input
//! error, 3 a verification assertion failed, 4 infeasible parameters.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use turan_core::constructions::{
    asymptotic_profile, classify_forbidden, clique_blocks_with, construct_g0,
    optimize_multipartite,
};
use turan_core::counting::{
    automorphism_count, count_copies, count_embeddings, count_embeddings_fixed, count_k2t,
};
use turan_core::furedi::{build_furedi, select_q, verify_furedi};
use turan_core::graph6::{self, MAX_GRAPH6_ORDER};
use turan_core::oracle::{cache_dir, exact_ex, exact_ex_cached, OracleOptions};
use turan_core::patterns::{format_edge_list, resolve};
use turan_core::report::Report;
use turan_core::suite::{run_suite, Level};
use turan_core::tree::{decompose_tree, enumerate_trees, exponent_report};
use turan_core::{Error, Graph};

const EXIT_USAGE: u8 = 2;
const EXIT_ASSERTION: u8 = 3;
const EXIT_INFEASIBLE: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "turan", version, about = "Generalized Turán numbers around K_{2,t}")]
struct Cli {
    /// Write the JSON report to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads for counting and search.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ConstructKind {
    /// pair-class graph F(n, t); give --q or --n
    Furedi,
    /// disjoint cliques of size --m on --n vertices
    CliqueBlocks,
    /// complete multipartite graph with --parts
    Multipartite,
    /// lower-bound graph for the tree --pattern
    G0,
    /// any graph accepted by --pattern
    Pattern,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build and verify the pair-class graph for K_{2,t}.
    Furedi {
        #[arg(long)]
        t: u64,
        /// field order; mutually exclusive with --n
        #[arg(long, conflicts_with = "n")]
        q: Option<u64>,
        /// vertex budget; picks the largest admissible q
        #[arg(long)]
        n: Option<u64>,
    },
    /// Count embeddings and copies of a pattern in a host graph.
    Count {
        #[arg(long)]
        pattern: Option<String>,
        #[arg(long)]
        host: String,
        /// also count K_{2,t} copies through codegrees
        #[arg(long)]
        t: Option<u64>,
        /// pattern vertices to pin, comma separated
        #[arg(long, value_delimiter = ',', requires = "images")]
        anchors: Vec<usize>,
        /// host vertices the anchors map to, comma separated
        #[arg(long, value_delimiter = ',', requires = "anchors")]
        images: Vec<usize>,
    },
    /// A/B partition, decomposition and exponents of a tree.
    Tree {
        /// tree to analyze; omit with --n to analyze every tree of that order
        #[arg(long, required_unless_present = "n")]
        pattern: Option<String>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Emit a construction as graph6 and an edge list.
    Construct {
        #[arg(value_enum)]
        kind: ConstructKind,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        t: Option<u64>,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        parts: Vec<usize>,
        #[arg(long)]
        pattern: Option<String>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// leave the n mod m leftover vertices isolated
        #[arg(long)]
        isolated_leftover: bool,
        /// also write the edge list to this file
        #[arg(long)]
        edges: Option<PathBuf>,
    },
    /// Best complete multipartite profile for K_{2,t} copies.
    OptimizeMultipartite {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        t: u64,
        /// continuous fractions instead of integer parts
        #[arg(long)]
        asymptotic: bool,
        #[arg(long, default_value_t = 0.005)]
        resolution: f64,
    },
    /// Which case of the K_{2,t}-counting classification a forbidden graph falls in.
    Classify {
        #[arg(long)]
        forbid: String,
        #[arg(long)]
        t: u64,
    },
    /// Exact ex(n, H, F) by exhaustive search.
    Oracle {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        forbid: String,
        /// seconds; a timed-out search reports complete = false
        #[arg(long)]
        timeout: Option<f64>,
        /// skip the on-disk cache
        #[arg(long)]
        no_cache: bool,
    },
    /// Run the verification battery.
    VerifyPaper {
        #[arg(long, default_value = "quick")]
        level: String,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
}

enum Failure {
    Core(Error),
    Usage(String),
    Assertion(Report),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type CmdResult = Result<Report, Failure>;

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Infeasible(_)
        | Error::Divisibility { .. }
        | Error::NotPrime(_)
        | Error::NotPrimePower(_)
        | Error::ZeroOrder
        | Error::UnsupportedSize(_)
        | Error::NotApplicable(_) => EXIT_INFEASIBLE,
        Error::Internal(_) | Error::Io(_) => 1,
        _ => EXIT_USAGE,
    }
}

fn graph_record(g: &Graph) -> Value {
    let g6 = (g.order() <= MAX_GRAPH6_ORDER)
        .then(|| graph6::encode(g).ok())
        .flatten();
    json!({
        "order": g.order(),
        "edge_count": g.edge_count(),
        "graph6": g6,
        "edges": g.edges().map(|(u, v)| [u, v]).collect::<Vec<_>>(),
    })
}

fn pattern(spec: &str) -> Result<Graph, Failure> {
    resolve(spec).map_err(|e| Failure::Usage(format!("cannot read graph {spec:?}: {e}")))
}

fn furedi(t: u64, q: Option<u64>, n: Option<u64>) -> CmdResult {
    let mut report = Report::new("furedi");
    report.param("t", t)?;
    let q = match (q, n) {
        (Some(q), _) => {
            report.param("q", q)?;
            q
        }
        (None, Some(n)) => {
            report.param("n", n)?;
            let sel = select_q(n, t)?;
            report.push("selection", &sel)?;
            sel.q
        }
        (None, None) => return Err(Failure::Usage("give --q or --n".into())),
    };
    let fg = report.timed("build", || build_furedi(q, t))?;
    let check = report.timed("verify", || verify_furedi(&fg))?;
    eprintln!(
        "F(q={q}, t={t}): {} vertices, {} edges, {} special, max codegree {}, K_(2,{t}) copies {}",
        fg.graph().order(),
        fg.graph().edge_count(),
        check.special_count,
        check.max_codegree,
        check.k2t_count
    );
    report.push("graph", graph_record(fg.graph()))?;
    let ok = check.all_ok;
    report.push("checks", &check)?;
    if ok {
        Ok(report)
    } else {
        Err(Failure::Assertion(report))
    }
}

fn count(
    pattern_spec: Option<String>,
    host_spec: &str,
    t: Option<u64>,
    anchors: Vec<usize>,
    images: Vec<usize>,
) -> CmdResult {
    let mut report = Report::new("count");
    let host = pattern(host_spec)?;
    report.param("host", host_spec)?;
    if pattern_spec.is_none() && t.is_none() {
        return Err(Failure::Usage("give --pattern, --t or both".into()));
    }
    if let Some(spec) = &pattern_spec {
        let h = pattern(spec)?;
        report.param("pattern", spec)?;
        if anchors.is_empty() {
            let emb = report.timed("embeddings", || count_embeddings(&h, &host, false));
            eprintln!("{emb} embeddings of {spec} in {host_spec}");
            report.push("embeddings", &emb)?;
            match automorphism_count(&h) {
                Ok(aut) => {
                    let copies = count_copies(&h, &host)?;
                    eprintln!("{copies} copies ({aut} automorphisms)");
                    report.push("automorphisms", aut.to_string())?;
                    report.push("copies", &copies)?;
                }
                Err(e) => eprintln!("copies not computed: {e}"),
            }
        } else {
            report.param("anchors", &anchors)?.param("images", &images)?;
            let fixed = report.timed("anchored", || count_embeddings_fixed(&h, &anchors, &host, &images, t))?;
            eprintln!("{} anchored embeddings", fixed.count);
            report.push("anchored", &fixed)?;
        }
    }
    if let Some(t) = t {
        report.param("t", t)?;
        let k2t = count_k2t(&host, t)?;
        eprintln!("{k2t} copies of K_(2,{t})");
        report.push("k2t", &k2t)?;
    }
    Ok(report)
}

fn tree_record(t: &Graph) -> Result<Value, Failure> {
    let d = decompose_tree(t)?;
    let exps = exponent_report(&d);
    Ok(json!({
        "graph": graph_record(t),
        "decomposition": d,
        "exponents": exps,
    }))
}

fn tree(spec: Option<String>, n: Option<usize>) -> CmdResult {
    let mut report = Report::new("tree");
    if let Some(spec) = spec {
        report.param("pattern", &spec)?;
        let t = pattern(&spec)?;
        let rec = tree_record(&t)?;
        eprintln!(
            "{spec}: nice = {}, exponents {}",
            rec["decomposition"]["nice"], rec["exponents"]
        );
        report.push(&spec, rec)?;
    } else if let Some(n) = n {
        report.param("n", n)?;
        let trees = enumerate_trees(n);
        let mut disagree = 0;
        for (i, t) in trees.iter().enumerate() {
            let rec = tree_record(t)?;
            if rec["exponents"]["agreement"] == json!(false) {
                disagree += 1;
            }
            report.push(&format!("tree {i}"), rec)?;
        }
        eprintln!("{} trees on {n} vertices, {disagree} with literal != proof exponent", trees.len());
    }
    Ok(report)
}

#[allow(clippy::too_many_arguments)]
fn construct(
    kind: ConstructKind,
    n: Option<usize>,
    t: Option<u64>,
    q: Option<u64>,
    m: Option<usize>,
    parts: Vec<usize>,
    spec: Option<String>,
    seed: u64,
    isolated_leftover: bool,
    edges_file: Option<PathBuf>,
) -> CmdResult {
    let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| Failure::Usage(format!("{kind:?} needs --{flag}")));
    let mut report = Report::new("construct");
    report.param("kind", format!("{kind:?}"))?;
    let g = match kind {
        ConstructKind::Furedi => {
            let t = t.ok_or_else(|| Failure::Usage("furedi needs --t".into()))?;
            let q = match (q, n) {
                (Some(q), _) => q,
                (None, Some(n)) => select_q(n as u64, t)?.q,
                _ => return Err(Failure::Usage("furedi needs --q or --n".into())),
            };
            report.param("q", q)?.param("t", t)?;
            build_furedi(q, t)?.into_graph()
        }
        ConstructKind::CliqueBlocks => {
            let (n, m) = (need(n, "n")?, need(m, "m")?);
            report.param("n", n)?.param("m", m)?;
            clique_blocks_with(n, m, !isolated_leftover)?
        }
        ConstructKind::Multipartite => {
            report.param("parts", &parts)?;
            Graph::complete_multipartite(&parts)?
        }
        ConstructKind::G0 => {
            let spec = spec.ok_or_else(|| Failure::Usage("g0 needs --pattern".into()))?;
            let t = t.ok_or_else(|| Failure::Usage("g0 needs --t".into()))?;
            let n = need(n, "n")?;
            report.param("pattern", &spec)?.param("n", n)?.param("t", t)?.seed(seed);
            let g0 = report.timed("construct", || construct_g0(&pattern(&spec)?, n, t, seed).map_err(Failure::from))?;
            report.push("g0", &g0)?;
            g0.graph
        }
        ConstructKind::Pattern => {
            let spec = spec.ok_or_else(|| Failure::Usage("pattern needs --pattern".into()))?;
            report.param("pattern", &spec)?;
            pattern(&spec)?
        }
    };
    eprintln!("{kind:?}: {} vertices, {} edges", g.order(), g.edge_count());
    if let Some(path) = edges_file {
        fs::write(&path, format_edge_list(&g)).map_err(Error::from)?;
    }
    report.push("graph", graph_record(&g))?;
    Ok(report)
}

fn optimize(n: Option<usize>, k: usize, t: u64, asymptotic: bool, resolution: f64) -> CmdResult {
    let mut report = Report::new("optimize-multipartite");
    report.param("k", k)?.param("t", t)?;
    if asymptotic {
        report.param("resolution", resolution)?;
        let p = report.timed("optimize", || asymptotic_profile(k, t, resolution))?;
        eprintln!("fractions {:?}, objective {:.6e}", p.fractions, p.objective);
        report.push("profile", &p)?;
    } else {
        let n = n.ok_or_else(|| Failure::Usage("give --n, or --asymptotic".into()))?;
        report.param("n", n)?;
        let p = report.timed("optimize", || optimize_multipartite(n, k, t))?;
        eprintln!("parts {:?}, {} copies of K_(2,{t})", p.parts, p.count);
        report.push("profile", &p)?;
    }
    Ok(report)
}

fn classify(spec: &str, t: u64) -> CmdResult {
    let mut report = Report::new("classify");
    report.param("forbid", spec)?.param("t", t)?;
    let c = classify_forbidden(&pattern(spec)?, t)?;
    eprintln!("{spec}, t = {t}: {:?} ({})", c.case, c.regime);
    report.push("classification", &c)?;
    Ok(report)
}

fn oracle(n: usize, h_spec: &str, f_spec: &str, timeout: Option<f64>, no_cache: bool, jobs: Option<usize>) -> CmdResult {
    let mut report = Report::new("oracle");
    report.param("n", n)?.param("pattern", h_spec)?.param("forbid", f_spec)?;
    let (h, f) = (pattern(h_spec)?, pattern(f_spec)?);
    let timeout = match timeout {
        Some(s) if !(s >= 0.0 && s.is_finite()) => {
            return Err(Failure::Usage(format!("bad --timeout {s}")));
        }
        other => other.map(Duration::from_secs_f64),
    };
    let opts = OracleOptions {
        jobs,
        timeout,
        serial: false,
    };
    let result = report.timed("search", || {
        if no_cache {
            exact_ex(n, &h, &f, opts).map(|r| (r, false))
        } else {
            exact_ex_cached(n, &h, &f, opts, &cache_dir())
        }
    });
    let (r, hit) = result?;
    if hit {
        report.cache_hit();
    }
    eprintln!(
        "ex({n}, {h_spec}, {f_spec}) {} {} with witness {}{}",
        if r.complete { "=" } else { ">=" },
        r.value,
        r.witness_g6,
        if hit { " (cached)" } else { "" }
    );
    let mut rec = serde_json::to_value(&r).map_err(|e| Error::Internal(e.to_string()))?;
    // wall time belongs in the timing section
    if let Some(stats) = rec.get_mut("stats").and_then(Value::as_object_mut) {
        stats.remove("wall_ms");
    }
    report.push("extremal", rec)?;
    Ok(report)
}

fn verify(level: &str, seed: u64) -> CmdResult {
    let level: Level = level.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?;
    let outcome = run_suite(level, seed);
    for it in &outcome.items {
        eprintln!("{it}");
    }
    let failures = outcome.hard_failures();
    eprintln!("{} items, {failures} hard failures", outcome.items.len());
    if failures == 0 {
        Ok(outcome.report)
    } else {
        Err(Failure::Assertion(outcome.report))
    }
}

fn emit(report: &Report, out: &Option<PathBuf>) -> Result<(), Error> {
    let text = report.to_json();
    match out {
        Some(path) => fs::write(path, text + "\n")?,
        None => {
            let mut stdout = io::stdout().lock();
            match writeln!(stdout, "{text}") {
                // a closed pipe (e.g. `| head`) is not an error
                Err(e) if e.kind() == io::ErrorKind::BrokenPipe => {}
                other => other?,
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global() {
            eprintln!("error: thread pool: {e}");
            return ExitCode::from(1);
        }
    }
    let result = match cli.command {
        Command::Furedi { t, q, n } => furedi(t, q, n),
        Command::Count { pattern, host, t, anchors, images } => count(pattern, &host, t, anchors, images),
        Command::Tree { pattern, n } => tree(pattern, n),
        Command::Construct { kind, n, t, q, m, parts, pattern, seed, isolated_leftover, edges } => {
            construct(kind, n, t, q, m, parts, pattern, seed, isolated_leftover, edges)
        }
        Command::OptimizeMultipartite { n, k, t, asymptotic, resolution } => optimize(n, k, t, asymptotic, resolution),
        Command::Classify { forbid, t } => classify(&forbid, t),
        Command::Oracle { n, pattern, forbid, timeout, no_cache } => {
            oracle(n, &pattern, &forbid, timeout, no_cache, cli.jobs)
        }
        Command::VerifyPaper { level, seed } => verify(&level, seed),
    };
    let (report, code) = match result {
        Ok(r) => (r, 0),
        Err(Failure::Assertion(r)) => (r, EXIT_ASSERTION),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_USAGE);
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code_for(&e));
        }
    };
    if let Err(e) = emit(&report, &cli.out) {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(code)
}
