//! Command-line front door for the specialty toolkit.
//!
//! Machine output is one line of compact JSON on stdout; human-readable
//! notes go to stderr (more of them under `--pretty`), so stdout stays
//! pipeline-safe. Exit codes: 0 ok or honestly-reported unknown, 1 a
//! verification found a mismatch, 2 usage or input error, 3 the oracle
//! refused an enumeration as too large.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use specialty::formulas::{max_specialty, CASE_OPEN_LOWER_BOUND};
use specialty::graph6::{decode_graph6, encode_graph6};
use specialty::oracle::{explore_planar, family_admits, oracle_max, DEFAULT_CEILING};
use specialty::planarity::{is_bipartite, is_forest, is_planar};
use specialty::{
    build_extremal, specialty as specialty_of, triangle_count, zagreb_first, zagreb_irregularity,
    CapMode, Error, ExtremalResult, GraphFamily, OracleOptions,
};

/// Environment fallback for the oracle's refusal threshold; the --ceiling
/// flag wins when both are set.
const CEILING_ENV: &str = "SPECIALTY_CEILING";

#[derive(Parser)]
#[command(name = "specialty", version, about = "Maxima of S(G) = sum over edges of min(deg u, deg v)")]
struct Cli {
    /// Print a human-readable summary to stderr alongside the JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the closed-form maximum for a family at one edge count
    Formula {
        /// all, bipartite, forest, or planar
        #[arg(long, value_parser = parse_family)]
        family: GraphFamily,
        /// Edge count
        n: u64,
    },
    /// Build an extremal witness and write it out
    Construct {
        #[arg(long, value_parser = parse_family)]
        family: GraphFamily,
        /// Edge count
        n: u64,
        #[arg(long, value_enum, default_value_t = OutFormat::Graph6)]
        format: OutFormat,
    },
    /// Rebuild witnesses across a range and check each against its formula
    Verify {
        #[arg(long, value_parser = parse_family)]
        family: GraphFamily,
        /// Edge count or inclusive range a..b
        #[arg(value_parser = parse_range)]
        range: EdgeRange,
    },
    /// Enumerate every isomorphism class at one edge count and compare the
    /// true maximum against the formula
    Oracle {
        #[arg(long, value_parser = parse_family)]
        family: GraphFamily,
        /// Edge count
        n: u64,
        /// Vertex-cap regime: independent (2N, assumption-free) or lemma
        /// (n+1, unrestricted family only)
        #[arg(long, value_parser = parse_cap, default_value = "independent")]
        cap: CapMode,
        /// Worker threads for the enumeration
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Refusal threshold on the estimated class count
        #[arg(long)]
        ceiling: Option<u64>,
    },
    /// Report S, Zagreb indices, triangles, and family membership for each
    /// graph6 line in a file
    Inspect { path: PathBuf },
    /// Stochastic lower-bound search for planar graphs in the open range
    /// of 10 to 32 edges
    Explore {
        /// Edge count
        n: u64,
        /// Annealing iterations
        #[arg(long, default_value_t = 20_000)]
        budget: u64,
        /// RNG seed; identical seeds reproduce identical output
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Graph6,
    Dot,
    Json,
}

#[derive(Debug, Clone, Copy)]
struct EdgeRange {
    lo: u64,
    hi: u64,
}

fn parse_family(s: &str) -> Result<GraphFamily, String> {
    s.parse()
}

fn parse_cap(s: &str) -> Result<CapMode, String> {
    s.parse()
}

fn parse_range(s: &str) -> Result<EdgeRange, String> {
    let parse_bound = |w: &str| {
        w.trim()
            .parse::<u64>()
            .map_err(|_| format!("expected a positive integer, got {w:?}"))
    };
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (parse_bound(a)?, parse_bound(b)?),
        None => {
            let n = parse_bound(s)?;
            (n, n)
        }
    };
    if lo == 0 || hi < lo {
        return Err(format!("range must satisfy 1 <= a <= b, got {s:?}"));
    }
    Ok(EdgeRange { lo, hi })
}

impl std::fmt::Display for EdgeRange {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

/// Report status, ordered so that `max` picks the worse verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
enum Status {
    Ok,
    Unknown,
    Mismatch,
}

#[derive(Serialize)]
#[serde(untagged)]
enum Row {
    Extremal(ExtremalResult),
    Oracle(specialty::OracleReport),
}

/// Envelope for every JSON-emitting command. `status` is mismatch exactly
/// when some verification found formula, construction, and oracle in
/// disagreement; unknown marks honestly unverifiable rows.
#[derive(Serialize)]
struct RunReport {
    command: &'static str,
    inputs: BTreeMap<&'static str, String>,
    results: Vec<Row>,
    status: Status,
}

#[derive(Serialize)]
struct InspectRecord {
    line: usize,
    vertices: usize,
    edges: usize,
    #[serde(rename = "S")]
    s: u64,
    #[serde(rename = "M1")]
    m1: u64,
    #[serde(rename = "M3")]
    m3: u64,
    triangles: u64,
    bipartite: bool,
    forest: bool,
    planar: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Formula { family, n } => cmd_formula(family, n, cli.pretty),
        Command::Construct { family, n, format } => cmd_construct(family, n, format, cli.pretty),
        Command::Verify { family, range } => cmd_verify(family, range, cli.pretty),
        Command::Oracle {
            family,
            n,
            cap,
            jobs,
            ceiling,
        } => cmd_oracle(family, n, cap, jobs, ceiling, cli.pretty),
        Command::Inspect { path } => cmd_inspect(&path, cli.pretty),
        Command::Explore { n, budget, seed } => cmd_explore(n, budget, seed, cli.pretty),
    };
    ExitCode::from(code)
}

fn fail(e: &Error) -> u8 {
    eprintln!("error: {e}");
    match e {
        Error::EnumerationTooLarge { .. } => 3,
        _ => 2,
    }
}

fn emit(report: &RunReport) {
    let json = serde_json::to_string(report).expect("reports always serialize");
    println!("{json}");
}

fn inputs(pairs: &[(&'static str, String)]) -> BTreeMap<&'static str, String> {
    pairs.iter().cloned().collect()
}

fn cap_name(cap: CapMode) -> &'static str {
    match cap {
        CapMode::Independent => "independent",
        CapMode::LemmaAssisted => "lemma",
    }
}

fn cmd_formula(family: GraphFamily, n: u64, pretty: bool) -> u8 {
    let res = match max_specialty(family, n) {
        Ok(r) => r,
        Err(e) => return fail(&e),
    };
    let status = if res.is_exact() {
        Status::Ok
    } else {
        Status::Unknown
    };
    if pretty {
        let kind = if res.is_exact() {
            "maximum"
        } else {
            "lower bound (open question)"
        };
        eprintln!("{:<8} {}", "family", res.family);
        eprintln!("{:<8} {}", "N", res.n_edges);
        eprintln!("{:<8} {} ({kind})", "value", res.value);
        eprintln!("{:<8} {}", "case", res.case_label);
    }
    emit(&RunReport {
        command: "formula",
        inputs: inputs(&[("family", family.to_string()), ("n", n.to_string())]),
        results: vec![Row::Extremal(res)],
        status,
    });
    0
}

fn cmd_construct(family: GraphFamily, n: u64, format: OutFormat, pretty: bool) -> u8 {
    let graph = match build_extremal(family, n) {
        Ok(g) => g,
        Err(e) => return fail(&e),
    };
    let mut res = match max_specialty(family, n) {
        Ok(r) => r,
        Err(e) => return fail(&e),
    };
    let s = specialty_of(&graph);
    // Nothing leaves this command unchecked: edge count, membership, and
    // the formula value are all re-verified on the built graph.
    if graph.edge_count() as u64 != n || !family_admits(family, &graph) || s != res.value {
        eprintln!(
            "error: witness failed re-verification: {} edges, specialty {s}, formula {}",
            graph.edge_count(),
            res.value
        );
        return 1;
    }
    let g6 = encode_graph6(&graph);
    if pretty {
        eprintln!("{:<8} {family}", "family");
        eprintln!("{:<8} {n}", "N");
        eprintln!("{:<8} {}", "case", res.case_label);
        eprintln!("{:<8} {}", "vertices", graph.vertex_count());
    }
    match format {
        OutFormat::Graph6 => {
            println!("{g6}");
            eprintln!("specialty = {s}");
        }
        OutFormat::Dot => {
            print!("{}", graph.to_dot());
            eprintln!("specialty = {s}");
        }
        OutFormat::Json => {
            res.witness = Some(g6);
            let status = if res.is_exact() {
                Status::Ok
            } else {
                Status::Unknown
            };
            emit(&RunReport {
                command: "construct",
                inputs: inputs(&[("family", family.to_string()), ("n", n.to_string())]),
                results: vec![Row::Extremal(res)],
                status,
            });
        }
    }
    0
}

fn cmd_verify(family: GraphFamily, range: EdgeRange, pretty: bool) -> u8 {
    let mut status = Status::Ok;
    let mut rows = Vec::new();
    let mut passed = 0u64;
    for n in range.lo..=range.hi {
        let formula = match max_specialty(family, n) {
            Ok(r) => r,
            Err(e) => {
                eprintln!("N={n}: {e}");
                status = status.max(Status::Unknown);
                continue;
            }
        };
        let graph = match build_extremal(family, n) {
            Ok(g) => g,
            Err(e) => {
                eprintln!("N={n}: {e}");
                status = status.max(Status::Unknown);
                continue;
            }
        };
        let s = specialty_of(&graph);
        if graph.edge_count() as u64 == n && family_admits(family, &graph) && s == formula.value {
            passed += 1;
            continue;
        }
        eprintln!(
            "N={n}: witness {} has specialty {s}, formula says {}",
            encode_graph6(&graph),
            formula.value
        );
        status = Status::Mismatch;
        rows.push(Row::Extremal(formula));
    }
    if pretty {
        eprintln!(
            "{passed} of {} edge counts verified",
            range.hi - range.lo + 1
        );
    }
    emit(&RunReport {
        command: "verify",
        inputs: inputs(&[("family", family.to_string()), ("range", range.to_string())]),
        results: rows,
        status,
    });
    if status == Status::Mismatch {
        1
    } else {
        0
    }
}

fn cmd_oracle(
    family: GraphFamily,
    n: u64,
    cap: CapMode,
    jobs: usize,
    ceiling_flag: Option<u64>,
    pretty: bool,
) -> u8 {
    let ceiling = match resolve_ceiling(ceiling_flag) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return 2;
        }
    };
    let formula = match max_specialty(family, n) {
        Ok(r) => r,
        Err(e) => return fail(&e),
    };
    let opts = OracleOptions { jobs, ceiling };
    let report = match oracle_max(n, family, cap, &opts) {
        Ok(r) => r,
        Err(e) => return fail(&e),
    };
    // The enumeration is exhaustive, so its maximum is ground truth: an
    // exact formula must match it, and a stored lower bound may not exceed
    // it. An oracle value above a stored bound is a better bound, reported
    // as such rather than as an error.
    let status = if report.max_value == formula.value {
        Status::Ok
    } else if formula.is_exact() || report.max_value < formula.value {
        Status::Mismatch
    } else {
        eprintln!(
            "oracle reached {} beating the stored lower bound {}",
            report.max_value, formula.value
        );
        Status::Unknown
    };
    if status == Status::Mismatch {
        eprintln!(
            "mismatch: oracle max {} vs formula {}",
            report.max_value, formula.value
        );
    }
    if pretty {
        eprintln!("{:<12} {family}", "family");
        eprintln!("{:<12} {n}", "N");
        eprintln!("{:<12} {}", "cap", cap_name(cap));
        eprintln!("{:<12} {}", "oracle max", report.max_value);
        eprintln!("{:<12} {}", "formula", formula.value);
        eprintln!("{:<12} {}", "classes", report.graphs_enumerated);
        eprintln!("{:<12} {:?}", "elapsed", report.elapsed);
        for w in &report.witnesses {
            eprintln!("{:<12} {w}", "witness");
        }
    }
    let exit = if status == Status::Mismatch { 1 } else { 0 };
    emit(&RunReport {
        command: "oracle",
        inputs: inputs(&[
            ("family", family.to_string()),
            ("n", n.to_string()),
            ("cap", cap_name(cap).to_string()),
            ("jobs", jobs.to_string()),
            ("ceiling", ceiling.to_string()),
        ]),
        results: vec![Row::Extremal(formula), Row::Oracle(report)],
        status,
    });
    exit
}

fn resolve_ceiling(flag: Option<u64>) -> Result<u64, String> {
    if let Some(c) = flag {
        return Ok(c);
    }
    match std::env::var(CEILING_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| format!("{CEILING_ENV} must be a nonnegative integer, got {v:?}")),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_CEILING),
        Err(e) => Err(format!("{CEILING_ENV}: {e}")),
    }
}

fn cmd_inspect(path: &std::path::Path, pretty: bool) -> u8 {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {}: {e}", path.display());
            return 2;
        }
    };
    let mut parsed = 0u64;
    let mut failed = 0u64;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let g6 = raw.trim();
        if g6.is_empty() {
            continue;
        }
        let g = match decode_graph6(g6) {
            Ok(g) => g,
            Err(e) => {
                eprintln!("line {line}: {e}");
                failed += 1;
                continue;
            }
        };
        let s = specialty_of(&g);
        let m1 = zagreb_first(&g);
        let m3 = zagreb_irregularity(&g);
        assert_eq!(2 * s, m1 - m3, "Zagreb identity violated on line {line}");
        let record = InspectRecord {
            line,
            vertices: g.vertex_count(),
            edges: g.edge_count(),
            s,
            m1,
            m3,
            triangles: triangle_count(&g),
            bipartite: is_bipartite(&g),
            forest: is_forest(&g),
            planar: is_planar(&g),
        };
        println!(
            "{}",
            serde_json::to_string(&record).expect("records always serialize")
        );
        parsed += 1;
    }
    if pretty {
        eprintln!("{parsed} graphs inspected, {failed} lines failed");
    }
    if failed > 0 {
        2
    } else {
        0
    }
}

fn cmd_explore(n: u64, budget: u64, seed: u64, pretty: bool) -> u8 {
    let (graph, value) = match explore_planar(n, budget, seed) {
        Ok(pair) => pair,
        Err(e) => return fail(&e),
    };
    let g6 = encode_graph6(&graph);
    eprintln!("lower bound (open question)");
    if pretty {
        eprintln!("{:<8} {n}", "N");
        eprintln!("{:<8} {value}", "best S");
        eprintln!("{:<8} {}", "vertices", graph.vertex_count());
        eprintln!("{:<8} {g6}", "witness");
    }
    let res = ExtremalResult {
        family: GraphFamily::Planar,
        n_edges: n,
        value,
        case_label: CASE_OPEN_LOWER_BOUND,
        witness: Some(g6),
    };
    emit(&RunReport {
        command: "explore",
        inputs: inputs(&[
            ("n", n.to_string()),
            ("budget", budget.to_string()),
            ("seed", seed.to_string()),
        ]),
        results: vec![Row::Extremal(res)],
        status: Status::Unknown,
    });
    0
}
