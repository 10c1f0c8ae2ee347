//! The `matchtop` command line.
//!
//! Exit codes: 0 success, 1 discrepancy, 2 input or parse error,
//! 3 capability limit.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::classify::{classify, verify_certificate, ClassificationResult, FamilyId};
use crate::complex::{matching_complex_with_labels, ComplexExport};
use crate::enumerate::{exhaustive_verify, random_verify, scan_c7, EnumerationReport, C7_SCAN_TOTALS};
use crate::error::{Error, Result};
use crate::homology::{homology_summary, HomologySummary};
use crate::io::{encode_graph6, graph_to_dot, parse_graph, Format, ParsedGraph};
use crate::iso::{canonical_form, CanonicalForm, MAX_CANON_VERTICES};

/// Bumped whenever a field of [`Report`] or its payloads changes.
pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DISCREPANCY: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAPABILITY: i32 = 3;

/// `analyze` builds `M(G)` only up to this many edges.
pub const MAX_ANALYZE_EDGES: usize = 40;

#[derive(Debug, Parser)]
#[command(name = "matchtop", version, about = "Matching complexes of graphs: construction, homology and classification")]
pub struct Cli {
    /// Worker threads; defaults to the number of available cores.
    #[arg(long, global = true, env = "MATCHTOP_THREADS")]
    pub threads: Option<usize>,

    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,

    /// Leave wall-clock timings out of the report.
    #[arg(long, global = true)]
    pub no_timings: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Graph file, or `-` for standard input.
    pub input: PathBuf,

    /// Input format; detected from the first line when omitted.
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FormatArg {
    Edgelist,
    Graph6,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Edgelist => Format::Edgelist,
            FormatArg::Graph6 => Format::Graph6,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ExportWhat {
    /// Facets of `M(G)`, one comma-separated line each.
    Facets,
    /// `M(G)` as JSON.
    ComplexJson,
    /// DOT drawing of the graph.
    GraphDot,
    /// DOT drawing of the 1-skeleton of `M(G)`.
    SkeletonDot,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Basic invariants of a graph and its matching complex.
    Analyze(InputArgs),
    /// Buchsbaum and Cohen-Macaulay verdicts, families and a certificate.
    Classify(InputArgs),
    /// Write the graph or its matching complex in another format.
    Export {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum)]
        what: ExportWhat,
    },
    /// Scan every chord subset of a 7-cycle.
    ScanC7 {
        /// Also write the table as CSV.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cross-check the classifiers over a corpus of graphs.
    Verify {
        #[command(subcommand)]
        corpus: Corpus,
        /// Where minimized counterexamples are written.
        #[arg(long, default_value = "matchtop-counterexamples")]
        counterexample_dir: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum Corpus {
    /// All labelled graphs on `max_n` vertices.
    Exhaustive {
        #[arg(long)]
        max_n: usize,
    },
    /// Seeded Erdős–Rényi draws at densities 0.2, 0.4, 0.6.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        seed: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputEcho {
    pub format: Format,
    pub source: String,
    pub vertices: usize,
    pub edges: usize,
    /// Input label of each vertex id used in the payload.
    pub labels: Vec<String>,
    pub graph6: String,
    /// `None` above the canonical-labelling size limit.
    pub canonical_form: Option<CanonicalForm>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub total_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Analysis {
    pub vertices: usize,
    pub edges: usize,
    pub components: usize,
    pub connected: bool,
    pub bipartite: bool,
    /// Maximum matching size, capped at 4.
    pub max_matching_capped: usize,
    pub dim: isize,
    pub f_vector: Vec<usize>,
    pub homology: HomologySummary,
    pub complex_components: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub result: ClassificationResult,
    pub certificate_verified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Payload {
    Analysis(Analysis),
    Classification(Classification),
    Export { what: String, text: String },
    Complex(ComplexExport),
    Enumeration(EnumerationReport),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input: Option<InputEcho>,
    pub payload: Payload,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Capability(_) => EXIT_CAPABILITY,
        Error::Input(_) | Error::Parse { .. } | Error::Precondition { .. } => EXIT_INPUT,
    }
}

/// Parses `args`, runs the command and writes to the given streams.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            log::debug!("thread pool already configured: {e}");
        }
    }
    let start = Instant::now();
    match execute(&cli, err) {
        Ok((mut report, code, text)) => {
            if !cli.no_timings {
                report.timings = Some(Timings {
                    total_ms: start.elapsed().as_secs_f64() * 1e3,
                });
            }
            let written = if cli.json {
                writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("report serializes"))
            } else {
                write!(out, "{text}")
            };
            if written.is_err() {
                return EXIT_INPUT;
            }
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn read_input(args: &InputArgs) -> Result<(ParsedGraph, String)> {
    let mut text = String::new();
    let source = args.input.display().to_string();
    if source == "-" {
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Error::Input(format!("reading standard input: {e}")))?;
    } else {
        text = std::fs::read_to_string(&args.input)
            .map_err(|e| Error::Input(format!("reading {source}: {e}")))?;
    }
    Ok((parse_graph(&text, args.format.map(Format::from))?, source))
}

fn echo(p: &ParsedGraph, source: String) -> InputEcho {
    let g = &p.graph;
    InputEcho {
        format: p.format,
        source,
        vertices: g.n(),
        edges: g.edge_count(),
        labels: p.labels.clone(),
        graph6: encode_graph6(g),
        canonical_form: (g.n() <= MAX_CANON_VERTICES).then(|| canonical_form(g).ok()).flatten(),
    }
}

fn report(command: &str, input: Option<InputEcho>, payload: Payload) -> Report {
    Report {
        schema_version: SCHEMA_VERSION,
        command: command.to_string(),
        input,
        payload,
        timings: None,
    }
}

fn execute(cli: &Cli, err: &mut dyn Write) -> Result<(Report, i32, String)> {
    match &cli.command {
        Command::Analyze(args) => {
            let (p, source) = read_input(args)?;
            let a = analyze(&p)?;
            let text = analysis_text(&a);
            Ok((report("analyze", Some(echo(&p, source)), Payload::Analysis(a)), EXIT_OK, text))
        }
        Command::Classify(args) => {
            let (p, source) = read_input(args)?;
            let result = classify(&p.graph)?;
            let verified = verify_certificate(&p.graph, &result);
            let consistent = !matches!(result.dim, 1 | 2) || result.families.is_empty() != result.buchsbaum;
            let code = if verified && consistent { EXIT_OK } else { EXIT_DISCREPANCY };
            if code != EXIT_OK {
                let _ = writeln!(err, "classification discrepancy: certificate verified = {verified}");
            }
            let c = Classification {
                result,
                certificate_verified: verified,
            };
            let text = classification_text(&c);
            Ok((report("classify", Some(echo(&p, source)), Payload::Classification(c)), code, text))
        }
        Command::Export { input, what } => {
            let (p, source) = read_input(input)?;
            let (payload, text) = export(&p, *what)?;
            Ok((report("export", Some(echo(&p, source)), payload), EXIT_OK, text))
        }
        Command::ScanC7 { out } => {
            let r = scan_c7();
            let csv = r.table_csv();
            if let Some(path) = out {
                std::fs::write(path, &csv)
                    .map_err(|e| Error::Input(format!("writing {}: {e}", path.display())))?;
            }
            let totals = r.totals.as_ref().map(|t| (t.iso_classes, t.buchsbaum_classes));
            let code = if totals == Some(C7_SCAN_TOTALS) && r.is_clean() {
                EXIT_OK
            } else {
                let _ = writeln!(err, "scan totals {totals:?} differ from {C7_SCAN_TOTALS:?}");
                EXIT_DISCREPANCY
            };
            Ok((report("scan-c7", None, Payload::Enumeration(r)), code, csv))
        }
        Command::Verify {
            corpus,
            counterexample_dir,
        } => {
            let r = match corpus {
                Corpus::Exhaustive { max_n } => exhaustive_verify(*max_n)?,
                Corpus::Random { n, count, seed } => random_verify(*n, *count, *seed)?,
            };
            let mut code = EXIT_OK;
            if !r.is_clean() {
                code = EXIT_DISCREPANCY;
                let paths = write_counterexamples(&r, counterexample_dir)?;
                for p in paths {
                    let _ = writeln!(err, "counterexample: {}", p.display());
                }
            }
            let text = verify_text(&r);
            Ok((report("verify", None, Payload::Enumeration(r)), code, text))
        }
    }
}

pub fn analyze(p: &ParsedGraph) -> Result<Analysis> {
    let g = &p.graph;
    if g.edge_count() == 0 {
        return Err(Error::Input("graph has no edges".into()));
    }
    if g.edge_count() > MAX_ANALYZE_EDGES {
        return Err(Error::Capability(format!(
            "analyze builds the matching complex only up to {MAX_ANALYZE_EDGES} edges"
        )));
    }
    let s = g.structural_predicates();
    let m = matching_complex_with_labels(g, &p.labels)?;
    Ok(Analysis {
        vertices: g.n(),
        edges: g.edge_count(),
        components: s.components.len(),
        connected: s.is_connected,
        bipartite: s.is_bipartite,
        max_matching_capped: g.max_matching_size(4),
        dim: m.dimension(),
        f_vector: m.f_vector(),
        homology: homology_summary(&m),
        complex_components: m.skeleton_components().len(),
    })
}

fn export(p: &ParsedGraph, what: ExportWhat) -> Result<(Payload, String)> {
    let complex = || matching_complex_with_labels(&p.graph, &p.labels);
    Ok(match what {
        ExportWhat::GraphDot => {
            let text = graph_to_dot(&p.graph, Some(&p.labels));
            (Payload::Export { what: "graph-dot".into(), text: text.clone() }, text)
        }
        ExportWhat::SkeletonDot => {
            let text = complex()?.skeleton_dot();
            (Payload::Export { what: "skeleton-dot".into(), text: text.clone() }, text)
        }
        ExportWhat::Facets => {
            let text = complex()?.facets_text();
            (Payload::Export { what: "facets".into(), text: text.clone() }, text)
        }
        ExportWhat::ComplexJson => {
            let e = complex()?.export();
            let text = serde_json::to_string_pretty(&e).expect("complex serializes") + "\n";
            (Payload::Complex(e), text)
        }
    })
}

fn write_counterexamples(r: &EnumerationReport, dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).map_err(|e| Error::Input(format!("creating {}: {e}", dir.display())))?;
    let mut paths = Vec::new();
    for (i, d) in r.discrepancies.iter().enumerate() {
        let path = dir.join(format!("{i:04}-{}.edges", serde_json::to_value(d.check).unwrap().as_str().unwrap()));
        let body = format!("# {}\n# original graph6 {}\n{}", d.detail, d.graph6, d.minimized_edge_list);
        std::fs::write(&path, body).map_err(|e| Error::Input(format!("writing {}: {e}", path.display())))?;
        paths.push(path);
    }
    Ok(paths)
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn analysis_text(a: &Analysis) -> String {
    format!(
        "vertices: {}\nedges: {}\ncomponents: {}\nconnected: {}\nbipartite: {}\n\
         max matching (cap 4): {}\ndim M(G): {}\nf-vector: ({})\nreduced betti: ({})\n\
         euler characteristic: {}\nM(G) components: {}\n",
        a.vertices,
        a.edges,
        a.components,
        a.connected,
        a.bipartite,
        a.max_matching_capped,
        a.dim,
        join(&a.f_vector),
        join(&a.homology.betti),
        a.homology.euler,
        a.complex_components,
    )
}

fn classification_text(c: &Classification) -> String {
    let r = &c.result;
    let families: Vec<&str> = r.families.iter().map(|f: &FamilyId| f.name()).collect();
    format!(
        "dim M(G): {}\nbuchsbaum: {}\ncohen-macaulay: {}\nfamilies: {}\nmatroid: {}\n\
         certificate: {}\ncertificate verified: {}\n",
        r.dim,
        r.buchsbaum,
        r.cm,
        if families.is_empty() { "-".to_string() } else { families.join(",") },
        r.matroid,
        serde_json::to_string(&r.certificate).expect("certificate serializes"),
        c.certificate_verified,
    )
}

fn verify_text(r: &EnumerationReport) -> String {
    let mut s = format!(
        "graphs checked: {}\nedgeless draws skipped: {}\n",
        r.graphs_checked, r.skipped_edgeless
    );
    for (check, n) in &r.checks {
        s.push_str(&format!("{}: {n}\n", serde_json::to_value(check).unwrap().as_str().unwrap()));
    }
    s.push_str(&format!("discrepancies: {}\n", r.discrepancies.len()));
    for d in &r.discrepancies {
        s.push_str(&format!("  {:?} {} ({})\n", d.check, d.minimized_graph6, d.detail));
    }
    s
}
