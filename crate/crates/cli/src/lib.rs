//! The `unidom` command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error,
//! 3 search stopped by its budget.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use unidom::bipartite::{bipartite_complement, find_bipartition, Bipartition};
use unidom::bounds::{self, BoundRow};
use unidom::constructions::{self, Check, Construction, Family, VerificationCertificate};
use unidom::domination::{self, DominationReport};
use unidom::formats::{self, FormatError};
use unidom::iso::find_isomorphism;
use unidom::search::{self, SearchOptions};
use unidom::{Execution, Graph, VertexSet};

/// Version tag carried by every JSON document.
pub const SCHEMA: &str = "unidom/1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_TRUNCATED: i32 = 3;

/// Environment variable holding the search thread count.
pub const THREADS_ENV: &str = "UNIDOM_THREADS";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: io::Error },
    #[error("cannot parse {path}: {source}")]
    Parse { path: String, source: FormatError },
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: io::Error },
    #[error("{0}")]
    Failed(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failed(_) => EXIT_FAILED,
            _ => EXIT_USAGE,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "unidom", version, about = "Graphs with a unique minimum dominating set")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Tabulate edge-count bounds
    Bound(BoundArgs),
    /// Build an extremal graph
    Construct(ConstructArgs),
    /// Report on the minimum dominating sets of a graph file
    Verify(VerifyArgs),
    /// Exhaustive search over small bipartite graphs
    Search(SearchArgs),
    /// Bipartite complement of a graph file
    Complement(ComplementArgs),
    /// Test two graph files for isomorphism
    Iso(IsoArgs),
}

/// Inclusive range given as `7`, `6..20` or `6..=20`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Span {
    lo: u64,
    hi: u64,
}

impl Span {
    fn is_single(self) -> bool {
        self.lo == self.hi
    }
}

fn parse_span(s: &str) -> Result<Span, String> {
    let num = |t: &str| t.trim().parse::<u64>().map_err(|e| format!("{t:?}: {e}"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let v = num(s)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(format!("empty range {s}"));
    }
    Ok(Span { lo, hi })
}

#[derive(Debug, Args)]
struct BoundArgs {
    /// Order, or an inclusive range such as 6..20
    #[arg(long, value_parser = parse_span)]
    n: Span,
    /// Domination number, or an inclusive range
    #[arg(long, value_parser = parse_span)]
    gamma: Span,
    #[arg(long, conflicts_with = "tsv")]
    json: bool,
    #[arg(long)]
    tsv: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FamilyArg {
    Bipartite,
    Fischermann,
    Star,
}

#[derive(Debug, Clone, Copy, Default, ValueEnum)]
enum GraphFormat {
    #[default]
    Graph6,
    Dot,
    Edgelist,
}

#[derive(Debug, Args)]
struct ConstructArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long)]
    n: u64,
    /// Required except for the star family
    #[arg(long)]
    gamma: Option<u64>,
    #[arg(long, value_enum, default_value_t)]
    format: GraphFormat,
    /// Re-verify every claim about the graph; exit 1 if any fails
    #[arg(long)]
    verify: bool,
    /// Write the graph here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
    /// Emit one JSON document with the graph, layout and certificate
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// graph6 or edge-list file, `-` for standard input
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    expect_gamma: Option<usize>,
    #[arg(long)]
    expect_size: Option<usize>,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct SearchArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    gamma: usize,
    /// Count isomorphism classes at exactly this size instead of maximising
    #[arg(long)]
    size: Option<u64>,
    /// Wall-clock budget in seconds
    #[arg(long)]
    budget: Option<f64>,
    /// Write witnesses (graph6, one per line) to this file
    #[arg(long)]
    witnesses: Option<PathBuf>,
    /// Run on the calling thread only
    #[arg(long)]
    sequential: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct ComplementArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Comma-separated vertices of one side; found automatically if omitted
    #[arg(long)]
    side: Option<String>,
    #[arg(long, value_enum, default_value_t)]
    format: GraphFormat,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct IsoArgs {
    first: PathBuf,
    second: PathBuf,
    #[arg(long)]
    json: bool,
}

#[derive(Serialize)]
struct Doc<T: Serialize> {
    schema: &'static str,
    #[serde(flatten)]
    body: T,
}

fn write_json<T: Serialize>(out: &mut dyn Write, body: T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(&Doc { schema: SCHEMA, body }).map_err(io::Error::other)?;
    writeln!(out, "{text}")?;
    Ok(())
}

/// Runs `unidom` with the given arguments (program name first).
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = write!(err, "{}", e.render());
            return EXIT_USAGE;
        }
        Err(e) => {
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
    };
    let result = match cli.command {
        Command::Bound(a) => bound(a, out),
        Command::Construct(a) => construct(a, out, err),
        Command::Verify(a) => verify(a, out, err),
        Command::Search(a) => run_search(a, out),
        Command::Complement(a) => complement(a, out),
        Command::Iso(a) => iso(a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn table(out: &mut dyn Write, header: &[&str], rows: &[Vec<String>]) -> io::Result<()> {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: Vec<&str>| {
        cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect::<Vec<_>>().join("  ")
    };
    writeln!(out, "{}", line(header.to_vec()))?;
    for row in rows {
        writeln!(out, "{}", line(row.iter().map(String::as_str).collect()))?;
    }
    Ok(())
}

fn bound(a: BoundArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let rows: Vec<BoundRow> = if a.n.is_single() && a.gamma.is_single() {
        vec![bounds::bound_row(a.n.lo, a.gamma.lo).map_err(|e| CliError::Usage(e.to_string()))?]
    } else {
        bounds::bound_table(a.n.lo..=a.n.hi, a.gamma.lo..=a.gamma.hi)
    };
    if rows.is_empty() {
        return Err(CliError::Usage("no (n, gamma) in range satisfies gamma >= 2 and n >= 3 gamma".into()));
    }
    if a.json {
        if rows.len() == 1 && a.n.is_single() && a.gamma.is_single() {
            write_json(out, &rows[0])?;
        } else {
            #[derive(Serialize)]
            struct Table<'a> {
                rows: &'a [BoundRow],
            }
            write_json(out, Table { rows: &rows })?;
        }
        return Ok(EXIT_OK);
    }
    let header = ["n", "gamma", "m_bipartite", "m_fischermann", "vizing", "phi"];
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.n.to_string(),
                r.gamma.to_string(),
                r.m_bipartite.to_string(),
                r.m_fischermann.to_string(),
                r.vizing.to_string(),
                r.phi.to_string(),
            ]
        })
        .collect();
    if a.tsv {
        writeln!(out, "{}", header.join("\t"))?;
        for row in cells {
            writeln!(out, "{}", row.join("\t"))?;
        }
    } else {
        table(out, &header, &cells)?;
    }
    Ok(EXIT_OK)
}

fn render_graph(g: &Graph, format: GraphFormat, labels: Option<&[String]>) -> String {
    match format {
        GraphFormat::Graph6 => formats::emit_graph6(g) + "\n",
        GraphFormat::Dot => formats::emit_dot(g, labels),
        GraphFormat::Edgelist => formats::emit_edge_list(g),
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Write { path: path.display().to_string(), source })
}

fn build(family: FamilyArg, n: u64, gamma: Option<u64>) -> Result<(Construction, u64), CliError> {
    let usage = |e: &dyn std::fmt::Display| CliError::Usage(e.to_string());
    let need_gamma = || gamma.ok_or_else(|| CliError::Usage("--gamma is required for this family".into()));
    Ok(match family {
        FamilyArg::Bipartite => {
            let g = need_gamma()?;
            let bound = bounds::bipartite_bound(n, g).map_err(|e| usage(&e))?;
            (constructions::construct_bipartite(n, g).map_err(|e| usage(&e))?, bound)
        }
        FamilyArg::Fischermann => {
            let g = need_gamma()?;
            let bound = bounds::fischermann_bound(n, g).map_err(|e| usage(&e))?;
            (constructions::construct_fischermann(n, g).map_err(|e| usage(&e))?, bound)
        }
        FamilyArg::Star => {
            if gamma.is_some_and(|g| g != 1) {
                return Err(CliError::Usage("the star family has gamma = 1".into()));
            }
            let bound = bounds::star_bound(n).map_err(|e| usage(&e))?;
            (constructions::construct_star(n).map_err(|e| usage(&e))?, bound)
        }
    })
}

fn print_checks(w: &mut dyn Write, checks: &[Check]) -> io::Result<()> {
    let width = checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    for c in checks {
        let mark = if c.passed { "PASS" } else { "FAIL" };
        writeln!(w, "{mark}  {:<width$}  {}", c.name, c.detail)?;
    }
    Ok(())
}

fn construct(a: ConstructArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let (built, bound) = build(a.family, a.n, a.gamma)?;
    let certificate: Option<VerificationCertificate> =
        a.verify.then(|| constructions::verify_construction(&built.graph, &built.layout, bound));
    let labels = built.layout.dot_labels();
    let text = render_graph(&built.graph, a.format, Some(&labels));
    if let Some(path) = &a.out {
        write_file(path, &text)?;
    }
    if a.json {
        #[derive(Serialize)]
        struct Body<'a> {
            family: Family,
            n: u64,
            gamma: usize,
            size: usize,
            bound: u64,
            graph6: String,
            layout: &'a constructions::ConstructionLayout,
            certificate: Option<&'a VerificationCertificate>,
        }
        write_json(
            out,
            Body {
                family: built.layout.family,
                n: a.n,
                gamma: built.layout.intended_dominators.len(),
                size: built.graph.size(),
                bound,
                graph6: formats::emit_graph6(&built.graph),
                layout: &built.layout,
                certificate: certificate.as_ref(),
            },
        )?;
    } else if a.out.is_none() {
        write!(out, "{text}")?;
    }
    match certificate {
        Some(cert) => {
            if !a.json {
                print_checks(err, &cert.checks)?;
            }
            if cert.passed {
                Ok(EXIT_OK)
            } else {
                Err(CliError::Failed("construction failed verification".into()))
            }
        }
        None => Ok(EXIT_OK),
    }
}

fn read_input(path: &Path) -> Result<String, CliError> {
    let name = path.display().to_string();
    let mut text = String::new();
    let res = if name == "-" {
        io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|source| CliError::Read { path: name, source })?;
    Ok(text)
}

/// Reads a graph6 or edge-list file (`-` for standard input).
pub fn read_graph(path: &Path) -> Result<Graph, CliError> {
    let text = read_input(path)?;
    formats::parse_graph(&text).map_err(|source| CliError::Parse { path: path.display().to_string(), source })
}

/// What the caller expects of a graph under verification.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Expectations {
    pub gamma: Option<usize>,
    pub size: Option<usize>,
}

/// Result of verifying an arbitrary graph file.
#[derive(Debug, Clone, Serialize)]
pub struct FileCertificate {
    pub n: usize,
    pub size: usize,
    pub graph6: String,
    pub bipartition: Option<Bipartition>,
    pub report: DominationReport,
    pub checks: Vec<Check>,
    pub passed: bool,
    pub warnings: Vec<String>,
}

/// Full domination report for the graph in `path`, with a check for
/// uniqueness and one per stated expectation.
pub fn verify_file(path: &Path, expect: &Expectations) -> Result<FileCertificate, CliError> {
    let g = read_graph(path)?;
    Ok(verify_graph(&g, expect))
}

pub fn verify_graph(g: &Graph, expect: &Expectations) -> FileCertificate {
    let report = domination::is_umd(g);
    let mut checks = vec![Check {
        name: "unique",
        passed: report.unique,
        detail: match report.dominating_set() {
            Some(d) => format!("unique minimum dominating set {d:?}"),
            None => format!("minimum dominating sets include {:?}", &report.min_sets[..2.min(report.min_sets.len())]),
        },
    }];
    if let Some(want) = expect.gamma {
        checks.push(Check {
            name: "gamma",
            passed: report.gamma == want,
            detail: format!("domination number {}, expected {want}", report.gamma),
        });
    }
    if let Some(want) = expect.size {
        checks.push(Check {
            name: "size",
            passed: g.size() == want,
            detail: format!("{} edges, expected {want}", g.size()),
        });
    }
    let mut warnings = Vec::new();
    if !report.isolated.is_empty() {
        warnings.push(format!(
            "isolated vertices {:?} belong to every dominating set",
            report.isolated
        ));
    }
    FileCertificate {
        n: g.order(),
        size: g.size(),
        graph6: formats::emit_graph6(g),
        bipartition: find_bipartition(g),
        passed: checks.iter().all(|c| c.passed),
        report,
        checks,
        warnings,
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn verify(a: VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let cert = verify_file(&a.input, &Expectations { gamma: a.expect_gamma, size: a.expect_size })?;
    for w in &cert.warnings {
        writeln!(err, "warning: {w}")?;
    }
    if a.json {
        write_json(out, &cert)?;
    } else {
        let r = &cert.report;
        writeln!(out, "n          {}", cert.n)?;
        writeln!(out, "size       {}", cert.size)?;
        writeln!(out, "gamma      {}", r.gamma)?;
        writeln!(out, "unique     {}", yes_no(r.unique))?;
        writeln!(out, "bipartite  {}", yes_no(cert.bipartition.is_some()))?;
        writeln!(out, "perfect    {}", yes_no(r.perfectly_dominated))?;
        if let Some(d) = r.dominating_set() {
            writeln!(out, "dominators {d:?}")?;
            for (v, epn) in &r.epn_by_dominator {
                writeln!(out, "epn({v})     {epn:?}")?;
            }
        }
        print_checks(out, &cert.checks)?;
    }
    Ok(if cert.passed { EXIT_OK } else { EXIT_FAILED })
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = value
        .parse()
        .map_err(|_| CliError::Usage(format!("{THREADS_ENV} must be a thread count, got {value:?}")))?;
    #[cfg(feature = "parallel")]
    {
        // A second call in the same process keeps the first pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = threads;
    Ok(())
}

fn run_search(a: SearchArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    configure_threads()?;
    let budget = match a.budget {
        Some(s) if s.is_finite() && s >= 0.0 => Some(Duration::from_secs_f64(s)),
        Some(s) => return Err(CliError::Usage(format!("invalid budget {s}"))),
        None => None,
    };
    let opts = SearchOptions {
        budget,
        execution: if a.sequential { Execution::Sequential } else { Execution::default() },
        collect_witnesses: a.witnesses.is_some() || a.json,
    };
    let usage = |e: search::SearchError| CliError::Usage(e.to_string());
    let (complete, witnesses) = match a.size {
        Some(size) => {
            let c = search::count_extremal_witnesses(a.n, a.gamma, size, &opts).map_err(usage)?;
            if a.json {
                write_json(out, &c)?;
            } else {
                writeln!(
                    out,
                    "n={} gamma={} size={} classes={} scanned={} pruned={} complete={} elapsed={:.2}s",
                    c.n, c.gamma, c.size, c.count, c.graphs_scanned, c.graphs_pruned, c.complete,
                    c.elapsed.as_secs_f64()
                )?;
                for w in &c.witnesses {
                    writeln!(out, "{w}")?;
                }
            }
            (c.complete, c.witnesses)
        }
        None => {
            let r = search::max_umd_bipartite_size(a.n, a.gamma, &opts).map_err(usage)?;
            if a.json {
                write_json(out, &r)?;
            } else {
                let max = r.max_size.map_or_else(|| "none".to_string(), |m| m.to_string());
                writeln!(
                    out,
                    "n={} gamma={} max_size={max} scanned={} pruned={} complete={} elapsed={:.2}s",
                    r.n, r.gamma, r.graphs_scanned, r.graphs_pruned, r.complete, r.elapsed.as_secs_f64()
                )?;
                for w in &r.witnesses {
                    writeln!(out, "{w}")?;
                }
            }
            (r.complete, r.witnesses)
        }
    };
    if let Some(path) = &a.witnesses {
        let text: String = witnesses.iter().map(|w| format!("{w}\n")).collect();
        write_file(path, &text)?;
    }
    Ok(if complete { EXIT_OK } else { EXIT_TRUNCATED })
}

fn parse_side(text: &str, n: usize) -> Result<VertexSet, CliError> {
    text.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| match t.trim().parse::<usize>() {
            Ok(v) if v < n => Ok(v),
            _ => Err(CliError::Usage(format!("bad vertex {t:?} in --side"))),
        })
        .collect()
}

fn complement(a: ComplementArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let g = read_graph(&a.input)?;
    let partition = match &a.side {
        Some(text) => {
            let side = parse_side(text, g.order())?;
            Bipartition::from_side(g.order(), side).map_err(|e| CliError::Usage(e.to_string()))?
        }
        None => find_bipartition(&g).ok_or_else(|| CliError::Failed("input graph is not bipartite".into()))?,
    };
    let bc = bipartite_complement(&g, &partition).map_err(|e| CliError::Failed(e.to_string()))?;
    let text = render_graph(&bc, a.format, None);
    if let Some(path) = &a.out {
        write_file(path, &text)?;
    }
    if a.json {
        #[derive(Serialize)]
        struct Body<'a> {
            n: usize,
            size: usize,
            graph6: String,
            partition: &'a Bipartition,
        }
        write_json(out, Body { n: bc.order(), size: bc.size(), graph6: formats::emit_graph6(&bc), partition: &partition })?;
    } else if a.out.is_none() {
        write!(out, "{text}")?;
    }
    Ok(EXIT_OK)
}

fn iso(a: IsoArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let (g, h) = (read_graph(&a.first)?, read_graph(&a.second)?);
    let mapping = find_isomorphism(&g, &h);
    if a.json {
        #[derive(Serialize)]
        struct Body {
            isomorphic: bool,
            mapping: Option<Vec<usize>>,
        }
        write_json(out, Body { isomorphic: mapping.is_some(), mapping: mapping.clone() })?;
    } else {
        match &mapping {
            Some(m) => {
                let pairs: Vec<String> = m.iter().enumerate().map(|(u, v)| format!("{u}->{v}")).collect();
                writeln!(out, "isomorphic")?;
                writeln!(out, "{}", pairs.join(" "))?;
            }
            None => writeln!(out, "not isomorphic")?,
        }
    }
    Ok(if mapping.is_some() { EXIT_OK } else { EXIT_FAILED })
}
