//! Command-line driver for the graph-isomorphism screening toolkit.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use gi_screen::algebra::verify_srg_identities;
use gi_screen::classical::{
    classical_compare, IntegratorConfig, Normalization, Potential, DEFAULT_QUANTUM, DEFAULT_TOL,
};
use gi_screen::corpus::{self, CorpusEntry};
use gi_screen::edge_list::parse_edge_list;
use gi_screen::graph::{detect_srg, Graph};
use gi_screen::graph6::{encode_graph6, parse_graph6};
use gi_screen::report::{ComparisonReport, Verdict};
use gi_screen::two_particle::{two_particle_compare, u_sweep, Statistics, DEFAULT_THRESHOLD};
use gi_screen::walk::{overlap_compare, single_overlaps};

#[derive(Parser)]
#[command(
    name = "gi-screen",
    version,
    about = "Graph-isomorphism screening via classical relaxation dynamics and quantum walks"
)]
struct Cli {
    /// Directory with extra corpus entries (default: $GI_SCREEN_DATA or ./data/corpus)
    #[arg(long, global = true)]
    data_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compare two graphs with one invariant family and print a JSON report
    Compare(CompareArgs),
    /// Detect strongly-regular parameters and check the defining identities
    VerifySrg { input: String },
    /// Sweep the boson Hubbard U and print CSV rows "u,R,I"
    SweepU(SweepArgs),
    /// List bundled corpus entries or show one
    Corpus(CorpusArgs),
    /// Read a graph in any supported format and re-emit it
    Ingest {
        input: String,
        #[arg(long, value_enum, default_value_t = ShowFormat::G6)]
        format: ShowFormat,
    },
}

#[derive(Args)]
struct CompareArgs {
    /// One corpus:NAME pair reference, or two graph references
    inputs: Vec<String>,
    #[arg(long, value_enum, default_value_t = Method::TwoParticle)]
    method: Method,
    /// Classical force law: harmonic, quartic:A,B, or saturating
    #[arg(long, default_value = "harmonic")]
    potential: String,
    #[arg(long, value_enum, default_value_t = StatsArg::Fermion)]
    stats: StatsArg,
    /// Hubbard on-site energy (bosons only)
    #[arg(long = "U", default_value_t = 0.0)]
    u: f64,
    /// Evolution / relaxation time
    #[arg(long = "T", default_value_t = 1.0)]
    t: f64,
    /// Euler step for the classical integrator
    #[arg(long, default_value_t = 0.1)]
    dt: f64,
    /// Mobility in mu * dr/dt = F
    #[arg(long, default_value_t = 1.0)]
    mobility: f64,
    #[arg(long, value_enum, default_value_t = NormalizeArg::None)]
    normalize: NormalizeArg,
    /// Elementwise multiset comparison tolerance
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Grouping quantum for multiset summaries
    #[arg(long, default_value_t = DEFAULT_QUANTUM)]
    quantum: f64,
    /// Verdict threshold on max(R, I) for the two-particle method
    #[arg(long, default_value_t = DEFAULT_THRESHOLD)]
    threshold: f64,
    /// Exit 3 when the verdict is Distinguished (default: always 0 on success)
    #[arg(long)]
    exit_verdict: bool,
}

#[derive(Args)]
struct SweepArgs {
    /// One corpus:NAME pair reference, or two graph references
    inputs: Vec<String>,
    #[arg(long, default_value_t = 0.0)]
    from: f64,
    #[arg(long, default_value_t = 2.0)]
    to: f64,
    /// Number of grid points (inclusive of both endpoints)
    #[arg(long, default_value_t = 41)]
    steps: usize,
    #[arg(long = "T", default_value_t = 1.0)]
    t: f64,
}

#[derive(Args)]
struct CorpusArgs {
    #[command(subcommand)]
    action: Option<CorpusAction>,
}

#[derive(Subcommand)]
enum CorpusAction {
    /// List all entries
    List,
    /// Print one entry
    Show {
        name: String,
        #[arg(long, value_enum, default_value_t = ShowFormat::G6)]
        format: ShowFormat,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Classical,
    Walk1,
    TwoParticle,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StatsArg {
    Fermion,
    Boson,
    Hcb,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum NormalizeArg {
    None,
    Frobenius,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ShowFormat {
    G6,
    Json,
}

/// Parameter echo embedded in every compare report so a run can be
/// reconstructed from its own output.
#[derive(Serialize)]
struct ParamEcho {
    method: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    potential: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    stats: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    u: Option<f64>,
    t: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    dt: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    mobility: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    normalize: Option<String>,
    tol: f64,
    quantum: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    threshold: Option<f64>,
}

#[derive(Serialize)]
struct RunReport {
    command: String,
    inputs: Vec<String>,
    vertex_counts: Vec<usize>,
    params: ParamEcho,
    method: String,
    verdict: Verdict,
    r_metric: f64,
    i_metric: f64,
    dimension_mismatch: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    multisets: Option<[Vec<gi_screen::multiset::MultisetGroup>; 2]>,
    elapsed_ms: f64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("gi-screen: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let entries = corpus::corpus(
        cli.data_dir
            .clone()
            .or_else(corpus::default_data_dir)
            .as_deref(),
    )
    .map_err(|e| e.to_string())?;
    match cli.command {
        Command::Compare(args) => cmd_compare(&entries, args),
        Command::VerifySrg { input } => cmd_verify_srg(&entries, &input),
        Command::SweepU(args) => cmd_sweep_u(&entries, args),
        Command::Corpus(args) => cmd_corpus(&entries, args),
        Command::Ingest { input, format } => cmd_ingest(&entries, &input, format),
    }
}

/// Resolves a graph reference: corpus:NAME, corpus:NAME:a, corpus:NAME:b,
/// or a file path (graph6 unless the first line looks like an edge list).
fn resolve_graphs(entries: &[CorpusEntry], reference: &str) -> Result<Vec<Graph>, String> {
    if let Some(rest) = reference.strip_prefix("corpus:") {
        let (name, which) = match rest.rsplit_once(':') {
            Some((name, side @ ("a" | "b"))) => (name, Some(side)),
            _ => (rest, None),
        };
        let entry = corpus::find(entries, name)
            .ok_or_else(|| format!("no corpus entry named '{name}'"))?;
        return match which {
            None => Ok(entry.graphs.clone()),
            Some("a") => Ok(vec![entry.graphs[0].clone()]),
            Some("b") => entry
                .pair()
                .map(|(_, b)| vec![b.clone()])
                .ok_or_else(|| format!("corpus entry '{name}' has a single graph")),
            _ => unreachable!(),
        };
    }
    let text = std::fs::read_to_string(reference)
        .map_err(|e| format!("reading {reference}: {e}"))?;
    let first = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
    let looks_like_edge_list =
        first.split_whitespace().next() == Some("n") && first.split_whitespace().count() == 2;
    let graph = if !reference.ends_with(".g6") && looks_like_edge_list {
        parse_edge_list(&text).map_err(|e| format!("{reference}: {e}"))?
    } else {
        parse_graph6(&text).map_err(|e| format!("{reference}: {e}"))?
    };
    Ok(vec![graph])
}

/// Turns the input list into exactly two graphs, with labels for the echo.
fn resolve_pair(
    entries: &[CorpusEntry],
    inputs: &[String],
) -> Result<(Graph, Graph, Vec<String>), String> {
    match inputs {
        [single] => {
            let graphs = resolve_graphs(entries, single)?;
            match graphs.as_slice() {
                [a, b] => Ok((
                    a.clone(),
                    b.clone(),
                    vec![format!("{single}:a"), format!("{single}:b")],
                )),
                _ => Err(format!(
                    "'{single}' is a single graph; pass two inputs or a corpus pair"
                )),
            }
        }
        [first, second] => {
            let mut a = resolve_graphs(entries, first)?;
            let mut b = resolve_graphs(entries, second)?;
            if a.len() != 1 || b.len() != 1 {
                return Err(
                    "each of the two inputs must name a single graph (use corpus:NAME:a / :b)"
                        .into(),
                );
            }
            Ok((a.remove(0), b.remove(0), vec![first.clone(), second.clone()]))
        }
        _ => Err("expected one corpus pair reference or exactly two graph inputs".into()),
    }
}

fn parse_potential(text: &str) -> Result<Potential, String> {
    match text {
        "harmonic" => Ok(Potential::Harmonic),
        "saturating" => Ok(Potential::Saturating),
        other => {
            let spec = other.strip_prefix("quartic:").ok_or_else(|| {
                format!("unknown potential '{other}' (harmonic, quartic:A,B, saturating)")
            })?;
            let (a, b) = spec.split_once(',').ok_or_else(|| {
                "quartic potential needs two coefficients: quartic:A,B".to_string()
            })?;
            let a: f64 = a
                .trim()
                .parse()
                .map_err(|_| "bad quartic coefficient A".to_string())?;
            let b: f64 = b
                .trim()
                .parse()
                .map_err(|_| "bad quartic coefficient B".to_string())?;
            Ok(Potential::Quartic { a, b })
        }
    }
}

fn cmd_compare(entries: &[CorpusEntry], args: CompareArgs) -> Result<ExitCode, String> {
    let (g1, g2, labels) = resolve_pair(entries, &args.inputs)?;
    let start = Instant::now();
    let (report, echo): (ComparisonReport, ParamEcho) = match args.method {
        Method::Classical => {
            let pot = parse_potential(&args.potential)?;
            let cfg = IntegratorConfig {
                total_time: args.t,
                step: args.dt,
                mobility: args.mobility,
                normalization: match args.normalize {
                    NormalizeArg::None => Normalization::None,
                    NormalizeArg::Frobenius => Normalization::FrobeniusUnit,
                },
            };
            let report = classical_compare(&g1, &g2, &pot, &cfg, args.tol, args.quantum)
                .map_err(|e| e.to_string())?;
            let echo = ParamEcho {
                method: "classical".into(),
                potential: Some(args.potential.clone()),
                stats: None,
                u: None,
                t: args.t,
                dt: Some(args.dt),
                mobility: Some(args.mobility),
                normalize: Some(
                    match args.normalize {
                        NormalizeArg::None => "none",
                        NormalizeArg::Frobenius => "frobenius",
                    }
                    .into(),
                ),
                tol: args.tol,
                quantum: args.quantum,
                threshold: None,
            };
            (report, echo)
        }
        Method::Walk1 => {
            let report = if g1.n() != g2.n() {
                ComparisonReport::dimension_mismatch("walk1")
            } else {
                let o1 = single_overlaps(&g1, args.t).map_err(|e| e.to_string())?;
                let o2 = single_overlaps(&g2, args.t).map_err(|e| e.to_string())?;
                overlap_compare(&o1, &o2, args.tol)
            };
            let echo = ParamEcho {
                method: "walk1".into(),
                potential: None,
                stats: None,
                u: None,
                t: args.t,
                dt: None,
                mobility: None,
                normalize: None,
                tol: args.tol,
                quantum: args.quantum,
                threshold: None,
            };
            (report, echo)
        }
        Method::TwoParticle => {
            let stats = match args.stats {
                StatsArg::Fermion => Statistics::Fermion,
                StatsArg::Boson => Statistics::Boson,
                StatsArg::Hcb => Statistics::HardCoreBoson,
            };
            let report = two_particle_compare(&g1, &g2, stats, args.u, args.t, args.threshold)
                .map_err(|e| e.to_string())?;
            let echo = ParamEcho {
                method: "two-particle".into(),
                potential: None,
                stats: Some(stats.label().into()),
                u: Some(args.u),
                t: args.t,
                dt: None,
                mobility: None,
                normalize: None,
                tol: args.tol,
                quantum: args.quantum,
                threshold: Some(args.threshold),
            };
            (report, echo)
        }
    };

    let run = RunReport {
        command: "compare".into(),
        inputs: labels,
        vertex_counts: vec![g1.n(), g2.n()],
        params: echo,
        method: report.method.clone(),
        verdict: report.verdict,
        r_metric: report.r_metric,
        i_metric: report.i_metric,
        dimension_mismatch: report.dimension_mismatch,
        multisets: report.multisets,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    println!(
        "{}",
        serde_json::to_string_pretty(&run).map_err(|e| e.to_string())?
    );
    if args.exit_verdict && run.verdict == Verdict::Distinguished {
        return Ok(ExitCode::from(3));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify_srg(entries: &[CorpusEntry], input: &str) -> Result<ExitCode, String> {
    let graphs = resolve_graphs(entries, input)?;
    let sides = ["a", "b"];
    for (idx, g) in graphs.iter().enumerate() {
        let label = if graphs.len() > 1 {
            format!("{input}:{} ", sides[idx])
        } else {
            String::new()
        };
        match detect_srg(g) {
            None => println!("{label}not strongly regular"),
            Some(p) => {
                let report = verify_srg_identities(g, p).map_err(|e| e.to_string())?;
                if report.ok() {
                    println!("{label}{p}, identities ok");
                } else {
                    println!("{label}{p}, {} identity violations", report.violations.len());
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_sweep_u(entries: &[CorpusEntry], args: SweepArgs) -> Result<ExitCode, String> {
    if args.steps < 1 {
        return Err("--steps must be at least 1".into());
    }
    if !(args.from.is_finite() && args.to.is_finite() && args.from >= 0.0 && args.to >= args.from)
    {
        return Err("need 0 <= from <= to".into());
    }
    let (g1, g2, _) = resolve_pair(entries, &args.inputs)?;
    let grid: Vec<f64> = if args.steps == 1 {
        vec![args.from]
    } else {
        (0..args.steps)
            .map(|i| args.from + (args.to - args.from) * i as f64 / (args.steps - 1) as f64)
            .collect()
    };
    let points = u_sweep(&g1, &g2, &grid, args.t).map_err(|e| e.to_string())?;
    println!("u,R,I");
    for p in points {
        println!("{:.11e},{:.11e},{:.11e}", p.u, p.r_metric, p.i_metric);
    }
    Ok(ExitCode::SUCCESS)
}

fn describe_entry(e: &CorpusEntry) -> String {
    let mut line = String::new();
    let ns: Vec<String> = e.graphs.iter().map(|g| g.n().to_string()).collect();
    write!(line, "{:<17} n={:<6}", e.name, ns.join(",")).unwrap();
    let srg: Vec<String> = e
        .graphs
        .iter()
        .map(|g| match detect_srg(g) {
            Some(p) => p.to_string(),
            None => "-".into(),
        })
        .collect();
    write!(line, " srg={:<24}", srg.join(" ")).unwrap();
    write!(line, " {}", e.provenance).unwrap();
    line
}

fn cmd_corpus(entries: &[CorpusEntry], args: CorpusArgs) -> Result<ExitCode, String> {
    match args.action {
        None | Some(CorpusAction::List) => {
            for e in entries {
                println!("{}", describe_entry(e));
            }
        }
        Some(CorpusAction::Show { name, format }) => {
            let entry = corpus::find(entries, &name)
                .ok_or_else(|| format!("no corpus entry named '{name}'"))?;
            print_graphs(&entry.graphs, format, Some(entry))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_ingest(entries: &[CorpusEntry], input: &str, format: ShowFormat) -> Result<ExitCode, String> {
    let graphs = resolve_graphs(entries, input)?;
    print_graphs(&graphs, format, None)?;
    Ok(ExitCode::SUCCESS)
}

fn print_graphs(
    graphs: &[Graph],
    format: ShowFormat,
    entry: Option<&CorpusEntry>,
) -> Result<(), String> {
    match format {
        ShowFormat::G6 => {
            for g in graphs {
                println!("{}", encode_graph6(g));
            }
        }
        ShowFormat::Json => {
            #[derive(Serialize)]
            struct GraphJson {
                n: usize,
                edges: Vec<(usize, usize)>, // 1-based labels
                graph6: String,
            }
            #[derive(Serialize)]
            struct EntryJson {
                #[serde(skip_serializing_if = "Option::is_none")]
                name: Option<String>,
                #[serde(skip_serializing_if = "Option::is_none")]
                provenance: Option<String>,
                graphs: Vec<GraphJson>,
            }
            let payload = EntryJson {
                name: entry.map(|e| e.name.clone()),
                provenance: entry.map(|e| e.provenance.clone()),
                graphs: graphs
                    .iter()
                    .map(|g| GraphJson {
                        n: g.n(),
                        edges: g.edges().iter().map(|&(a, b)| (a + 1, b + 1)).collect(),
                        graph6: encode_graph6(g),
                    })
                    .collect(),
            };
            println!(
                "{}",
                serde_json::to_string_pretty(&payload).map_err(|e| e.to_string())?
            );
        }
    }
    Ok(())
}
