//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a checked claim or verdict failed, 2 usage or
//! parse error, 3 capacity error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::domination::{domination_number, domination_profile, DominationProfile};
use crate::error::Error;
use crate::graph::{make_family, FamilySpec, SeedGraph};
use crate::graph6::encode_graph6;
use crate::reconfig::{build_reconfig, euler_circuit, eulerian_report, EulerReport, LabelStyle};
use crate::spec_string::{parse_graph_spec, ParsedGraph};
use crate::theorems::{
    expected_eulerian, expected_for_graph, verify_claim, Bounds, ClaimId, TheoremReport,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CLAIM_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "domreconf",
    version,
    about = "Build and analyze k-dominating reconfiguration graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Analyze D_k(G) for one seed graph.
    Analyze {
        #[arg(long)]
        graph: String,
        /// Cardinality bound, or `max` for k = n.
        #[arg(long)]
        k: KArg,
        #[arg(long)]
        json: bool,
        /// Also write D_k(G) as DOT to this path.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Append an Euler circuit when one exists.
        #[arg(long)]
        circuit: bool,
        #[arg(long, value_enum, default_value_t = Labels::Set)]
        labels: Labels,
    },
    /// Sweep a family over a range of orders and report verdicts per (instance, k).
    Scan {
        #[arg(long, value_enum)]
        family: ScanFamily,
        /// Inclusive order range `a..b` (or a single order).
        #[arg(long)]
        n: OrderRange,
        /// `all` for gamma <= k <= n, or one value; default gamma < k < n.
        #[arg(long)]
        k: Option<String>,
        #[arg(long, value_enum)]
        filter: Option<ScanFilter>,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Verify one claim (or `all`) exhaustively over its bounds.
    Verify {
        #[arg(long)]
        claim: String,
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        json: bool,
        /// Negative control: corrupt one edge of H_6 in the characterization sweep.
        #[arg(long)]
        plant_fault: bool,
    },
    /// Export D_k(G) (dot, csv) or the seed graph (g6).
    Export {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        k: Option<KArg>,
        #[arg(long, value_enum)]
        format: ExportFormat,
        #[arg(long, value_enum, default_value_t = Labels::Set)]
        labels: Labels,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy)]
enum KArg {
    Max,
    Value(usize),
}

impl FromStr for KArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "max" {
            Ok(KArg::Max)
        } else {
            s.parse()
                .map(KArg::Value)
                .map_err(|_| format!("expected an integer or 'max', found '{s}'"))
        }
    }
}

impl KArg {
    fn resolve(self, n: usize) -> Result<usize, Failure> {
        match self {
            KArg::Max => Ok(n),
            KArg::Value(k) if k <= n => Ok(k),
            KArg::Value(k) => Err(Failure::usage(format!(
                "k = {k} exceeds the seed order {n}"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct OrderRange(usize, usize);

impl FromStr for OrderRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let bad = || format!("expected '<a>..<b>', found '{s}'");
        match s.split_once("..") {
            Some((a, b)) => {
                let b = b.strip_prefix('=').unwrap_or(b);
                let (a, b): (usize, usize) =
                    (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
                if a > b {
                    return Err(bad());
                }
                Ok(OrderRange(a, b))
            }
            None => s.parse().map(|a| OrderRange(a, a)).map_err(|_| bad()),
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Labels {
    Set,
    Bits,
}

impl From<Labels> for LabelStyle {
    fn from(l: Labels) -> Self {
        match l {
            Labels::Set => LabelStyle::Set,
            Labels::Bits => LabelStyle::Bits,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ScanFamily {
    Path,
    Cycle,
    Complete,
    Biclique,
    Cocktail,
    CompleteK,
    Corona,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ScanFilter {
    Eulerian,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ExportFormat {
    Dot,
    Csv,
    G6,
}

/// Error carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: if e.is_capacity() {
                EXIT_CAPACITY
            } else {
                EXIT_USAGE
            },
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::usage(e.to_string())
    }
}

/// Entry point for the binary: parses `argv` and writes to stdout/stderr.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_cli_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// Like [`run_cli`] with explicit output streams. Nothing is written to
/// `out` unless the command gets far enough to produce a result.
pub fn run_cli_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(rendered.as_bytes());
            } else {
                let _ = out.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cmd: Command) -> Result<(String, i32), Failure> {
    match cmd {
        Command::Analyze {
            graph,
            k,
            json,
            dot,
            circuit,
            labels,
        } => analyze(&graph, k, json, dot, circuit, labels.into()),
        Command::Scan {
            family,
            n,
            k,
            filter,
            csv,
            jobs,
        } => with_jobs(jobs, || scan(family, n, k.as_deref(), filter, csv)),
        Command::Verify {
            claim,
            max_n,
            jobs,
            json,
            plant_fault,
        } => with_jobs(jobs, || verify(&claim, max_n, json, plant_fault)),
        Command::Export {
            graph,
            k,
            format,
            labels,
            out,
        } => export(&graph, k, format, labels.into(), out),
    }
}

fn with_jobs<F>(jobs: Option<usize>, f: F) -> Result<(String, i32), Failure>
where
    F: FnOnce() -> Result<(String, i32), Failure> + Send,
{
    match jobs {
        None => f(),
        Some(0) => Err(Failure::usage("--jobs must be at least 1")),
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .map_err(|e| Failure::usage(e.to_string()))?
            .install(f),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    // Round-tripping through Value sorts object keys.
    let v = serde_json::to_value(value).expect("report serializes");
    let mut s = serde_json::to_string_pretty(&v).expect("value serializes");
    s.push('\n');
    s
}

#[derive(Debug, Serialize)]
pub struct SeedSummary {
    pub spec: String,
    pub graph6: String,
    pub n: usize,
    pub edges: usize,
    pub gamma: usize,
    pub upper_gamma: usize,
    pub well_dominated: bool,
    pub universal_threshold: usize,
    pub dominating_set_count: u64,
}

impl SeedSummary {
    fn new(spec: &str, g: &SeedGraph, p: &DominationProfile) -> Self {
        SeedSummary {
            spec: spec.to_string(),
            graph6: encode_graph6(g),
            n: g.n(),
            edges: g.edge_count(),
            gamma: p.gamma,
            upper_gamma: p.upper_gamma,
            well_dominated: p.well_dominated,
            universal_threshold: p.universal_threshold,
            dominating_set_count: p.total_count,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct DegreeCount {
    pub degree: usize,
    pub count: usize,
}

#[derive(Debug, Serialize)]
pub struct Witness {
    pub node: usize,
    pub set: String,
    pub degree: usize,
}

#[derive(Debug, Serialize)]
pub struct AnalysisReport {
    pub seed: SeedSummary,
    pub k: usize,
    pub nodes: usize,
    pub edges: usize,
    pub degree_histogram: Vec<DegreeCount>,
    pub euler: EulerReport,
    pub odd_degree_witnesses: Vec<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_eulerian: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matches_expected: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub circuit: Option<Vec<String>>,
}

fn analyze(
    spec: &str,
    k: KArg,
    json: bool,
    dot: Option<PathBuf>,
    want_circuit: bool,
    style: LabelStyle,
) -> Result<(String, i32), Failure> {
    let ParsedGraph { graph, family } = parse_graph_spec(spec)?;
    if graph.n() == 0 {
        return Err(Failure::usage("the seed graph has no vertices"));
    }
    let k = k.resolve(graph.n())?;
    let profile = domination_profile(&graph)?;
    let r = build_reconfig(&graph, k)?;
    let euler = eulerian_report(&r);
    let expected = expected_for_graph(&graph, family.as_ref(), k);
    let circuit = if want_circuit && euler.is_eulerian && euler.edge_count > 0 {
        let walk = euler_circuit(&r)?;
        Some(walk.iter().map(|&i| r.node_label(i, style)).collect())
    } else {
        None
    };
    if let Some(path) = dot {
        std::fs::write(&path, r.to_dot(style))?;
    }
    let report = AnalysisReport {
        seed: SeedSummary::new(spec.trim(), &graph, &profile),
        k,
        nodes: r.node_count(),
        edges: r.edge_count(),
        degree_histogram: r
            .degree_histogram()
            .into_iter()
            .map(|(degree, count)| DegreeCount { degree, count })
            .collect(),
        odd_degree_witnesses: euler
            .odd_degree_nodes
            .iter()
            .map(|&i| Witness {
                node: i,
                set: r.node_label(i, style),
                degree: r.degree(i),
            })
            .collect(),
        euler,
        matches_expected: expected.map(|e| e == eulerian_report(&r).is_eulerian),
        expected_eulerian: expected,
        circuit,
    };
    let text = if json {
        to_json(&report)
    } else {
        render_analysis(&report)
    };
    Ok((text, EXIT_OK))
}

fn render_analysis(r: &AnalysisReport) -> String {
    let mut s = String::new();
    let seed = &r.seed;
    let _ = writeln!(
        s,
        "seed       {} (n={}, edges={}, graph6={})",
        seed.spec, seed.n, seed.edges, seed.graph6
    );
    let _ = writeln!(
        s,
        "domination gamma={} Gamma={} well_dominated={} universal_threshold={} dominating_sets={}",
        seed.gamma,
        seed.upper_gamma,
        seed.well_dominated,
        seed.universal_threshold,
        seed.dominating_set_count
    );
    let _ = writeln!(s, "D_{}       nodes={} edges={}", r.k, r.nodes, r.edges);
    let hist: Vec<String> = r
        .degree_histogram
        .iter()
        .map(|d| format!("{}:{}", d.degree, d.count))
        .collect();
    let _ = writeln!(s, "degrees    {}", hist.join(" "));
    let e = &r.euler;
    let _ = writeln!(
        s,
        "eulerian   {} (odd-degree nodes={}, non-trivial components={}, isolated={}, connected={})",
        e.is_eulerian,
        e.odd_degree_count,
        e.nontrivial_component_count,
        e.isolated_count,
        e.is_connected
    );
    for w in &r.odd_degree_witnesses {
        let _ = writeln!(
            s,
            "  odd      node {} {} degree {}",
            w.node, w.set, w.degree
        );
    }
    match (r.expected_eulerian, r.matches_expected) {
        (Some(exp), Some(m)) => {
            let _ = writeln!(
                s,
                "expected   {exp} ({})",
                if m { "match" } else { "MISMATCH" }
            );
        }
        _ => {
            let _ = writeln!(s, "expected   (no characterization applies)");
        }
    }
    if let Some(c) = &r.circuit {
        let _ = writeln!(s, "circuit    {}", c.join(" "));
    }
    s
}

#[derive(Debug, Serialize)]
struct ScanRow {
    family: String,
    n: usize,
    k: usize,
    gamma: usize,
    nodes: usize,
    edges: usize,
    odd_degree_count: usize,
    nontrivial_components: usize,
    is_eulerian: bool,
    expected: Option<bool>,
    #[serde(rename = "match")]
    matches: Option<bool>,
}

fn scan_specs(family: ScanFamily, range: OrderRange) -> Vec<FamilySpec> {
    let mut out = Vec::new();
    for n in range.0..=range.1 {
        match family {
            ScanFamily::Path if n >= 1 => out.push(FamilySpec::Path { n }),
            ScanFamily::Cycle if n >= 3 => out.push(FamilySpec::Cycle { n }),
            ScanFamily::Complete | ScanFamily::CompleteK if n >= 1 => {
                out.push(FamilySpec::Complete { n })
            }
            ScanFamily::Biclique if n >= 1 => {
                out.extend((1..=n).map(|m| FamilySpec::CompleteBipartite { m, n }))
            }
            ScanFamily::Cocktail if n >= 4 && n % 2 == 0 => out.push(FamilySpec::Cocktail { n }),
            ScanFamily::Corona if n >= 2 => out.push(FamilySpec::corona(FamilySpec::Path { n })),
            _ => {}
        }
    }
    out
}

fn scan(
    family: ScanFamily,
    range: OrderRange,
    k_sel: Option<&str>,
    filter: Option<ScanFilter>,
    csv_path: Option<PathBuf>,
) -> Result<(String, i32), Failure> {
    enum KSel {
        Restricted,
        All,
        One(usize),
    }
    let k_sel = match k_sel {
        None => KSel::Restricted,
        Some("all") => KSel::All,
        Some(v) => KSel::One(v.parse().map_err(|_| {
            Failure::usage(format!("--k expects 'all' or an integer, found '{v}'"))
        })?),
    };
    let mut items = Vec::new();
    for spec in scan_specs(family, range) {
        let g = make_family(&spec)?;
        let gamma = domination_number(&g)?;
        let ks: Vec<usize> = match k_sel {
            KSel::Restricted => (gamma + 1..g.n()).collect(),
            KSel::All => (gamma..=g.n()).collect(),
            KSel::One(k) if gamma <= k && k <= g.n() => vec![k],
            KSel::One(_) => vec![],
        };
        items.extend(ks.into_iter().map(|k| (spec.clone(), g.clone(), gamma, k)));
    }
    let rows: Vec<ScanRow> = items
        .into_par_iter()
        .map(|(spec, g, gamma, k)| {
            let r = build_reconfig(&g, k)?;
            let e = eulerian_report(&r);
            let expected = expected_eulerian(&spec, k).ok();
            Ok(ScanRow {
                family: spec.to_string(),
                n: g.n(),
                k,
                gamma,
                nodes: e.node_count,
                edges: e.edge_count,
                odd_degree_count: e.odd_degree_count,
                nontrivial_components: e.nontrivial_component_count,
                is_eulerian: e.is_eulerian,
                expected,
                matches: expected.map(|x| x == e.is_eulerian),
            })
        })
        .collect::<Result<_, Error>>()?;
    let mismatch = rows.iter().any(|r| r.matches == Some(false));
    let rows = rows
        .into_iter()
        .filter(|r| filter.is_none() || r.is_eulerian);
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Failure::usage(e.to_string());
    for row in rows {
        w.serialize(row).map_err(csv_err)?;
    }
    let mut bytes = w.into_inner().map_err(|e| Failure::usage(e.to_string()))?;
    if bytes.is_empty() {
        bytes = b"family,n,k,gamma,nodes,edges,odd_degree_count,nontrivial_components,is_eulerian,expected,match\n".to_vec();
    }
    let text = String::from_utf8(bytes).expect("csv is UTF-8");
    let code = if mismatch { EXIT_CLAIM_FAILED } else { EXIT_OK };
    match csv_path {
        Some(path) => {
            std::fs::write(&path, &text)?;
            let lines = text.lines().count().saturating_sub(1);
            Ok((format!("wrote {lines} rows to {}\n", path.display()), code))
        }
        None => Ok((text, code)),
    }
}

fn verify(
    claim: &str,
    max_n: Option<usize>,
    json: bool,
    plant_fault: bool,
) -> Result<(String, i32), Failure> {
    let claims: Vec<ClaimId> = if claim == "all" {
        ClaimId::ALL.to_vec()
    } else {
        vec![claim.parse::<ClaimId>()?]
    };
    let mut reports: Vec<TheoremReport> = Vec::new();
    for c in &claims {
        let mut bounds = Bounds::for_claim(*c);
        if let Some(m) = max_n {
            bounds.max_n = if claims.len() > 1 {
                m.min(Bounds::limit(*c))
            } else {
                m
            };
        }
        bounds.plant_fault = plant_fault;
        reports.push(verify_claim(*c, &bounds)?);
    }
    let failed = reports.iter().any(|r| !r.passed);
    let text = if json {
        if reports.len() == 1 {
            to_json(&reports[0])
        } else {
            to_json(&reports)
        }
    } else {
        let mut s = String::new();
        for r in &reports {
            let _ = writeln!(
                s,
                "{} {} ({}; {} instances; {:.2}s)",
                if r.passed { "PASS" } else { "FAIL" },
                r.claim,
                r.bounds,
                r.instances_checked,
                r.elapsed.as_secs_f64()
            );
            for c in &r.counterexamples {
                let _ = writeln!(s, "  counterexample: {c}");
            }
            if r.counterexample_count > r.counterexamples.len() as u64 {
                let _ = writeln!(
                    s,
                    "  ... {} counterexamples in total",
                    r.counterexample_count
                );
            }
        }
        s
    };
    Ok((text, if failed { EXIT_CLAIM_FAILED } else { EXIT_OK }))
}

fn export(
    spec: &str,
    k: Option<KArg>,
    format: ExportFormat,
    style: LabelStyle,
    out: Option<PathBuf>,
) -> Result<(String, i32), Failure> {
    let ParsedGraph { graph, .. } = parse_graph_spec(spec)?;
    let text = match format {
        ExportFormat::G6 => {
            let mut s = encode_graph6(&graph);
            s.push('\n');
            s
        }
        ExportFormat::Dot | ExportFormat::Csv => {
            let k = k
                .ok_or_else(|| Failure::usage("--k is required for dot and csv exports"))?
                .resolve(graph.n())?;
            let r = build_reconfig(&graph, k)?;
            match format {
                ExportFormat::Dot => r.to_dot(style),
                _ => r.to_adjacency_csv()?,
            }
        }
    };
    match out {
        Some(path) => {
            std::fs::write(&path, &text)?;
            Ok((String::new(), EXIT_OK))
        }
        None => Ok((text, EXIT_OK)),
    }
}
