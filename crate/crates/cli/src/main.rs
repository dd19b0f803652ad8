mod input;
mod scan;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use oddchrom::cnf::export_cnf;
use oddchrom::coloring::{is_odd_coloring, verify};
use oddchrom::discharge::audit;
use oddchrom::generators::FamilySpec;
use oddchrom::io::{encode_graph6, encode_planar_code};
use oddchrom::reducer::{color9, ReduceError};
use oddchrom::solver::{chromatic_number, odd_chromatic_number, Bound, SolveOptions};
use oddchrom::Coloring;
use serde_json::{json, Value};

use input::{read_bytes, read_stream, write_file, CmdResult, Failure};

/// Environment variable holding the default node budget.
const BUDGET_VAR: &str = "ODDCHROM_BUDGET";

#[derive(Parser)]
#[command(name = "oddchrom", version, about = "Odd colorings of graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    G6,
    Pc,
}

#[derive(Subcommand)]
enum Command {
    /// Odd chromatic number of every graph in a graph6 or planar_code file.
    Chi {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 9)]
        max_k: usize,
        /// Node budget per palette size (default from ODDCHROM_BUDGET).
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Ordinary chromatic number instead.
        #[arg(long)]
        proper: bool,
        /// Write the CNF for palette size max-k (single-graph input only).
        #[arg(long)]
        export_cnf: Option<PathBuf>,
    },
    /// Check a coloring of the first graph in the input.
    Verify {
        #[arg(long)]
        input: PathBuf,
        /// Coloring as JSON or as `vertex color` lines, 1-based.
        #[arg(long)]
        coloring: PathBuf,
    },
    /// Generate a graph from a named family.
    Gen {
        #[arg(long)]
        family: String,
        #[arg(long)]
        param: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "g6")]
        format: OutFormat,
    },
    /// Odd 9-coloring of plane graphs by reductions.
    Color9 {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Discharging audit of plane graphs.
    Audit {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Search a stream for graphs whose odd chromatic number exceeds a threshold.
    Scan {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 5)]
        threshold: usize,
        /// Only graphs of at least this girth (acyclic graphs always pass).
        #[arg(long)]
        girth_min: Option<usize>,
        /// JSON-lines output; stdout by default.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Directory for counterexample fixtures.
        #[arg(long, default_value = "scan-fixtures")]
        fixtures: PathBuf,
        /// Directory for witness colorings.
        #[arg(long)]
        witnesses: Option<PathBuf>,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        threads: Option<usize>,
    },
}

fn budget(flag: Option<u64>) -> Result<Option<u64>, Failure> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var(BUDGET_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Failure::input(format!("{BUDGET_VAR}={v} is not a node count"))),
        Err(_) => Ok(None),
    }
}

fn colors(c: &Coloring) -> Vec<Option<usize>> {
    c.as_slice().to_vec()
}

fn bound_json(b: Bound) -> (Value, &'static str) {
    match b {
        Bound::Exact(k) => (json!(k), "exact"),
        Bound::ExceedsBound => (Value::Null, "exceeds-bound"),
        Bound::BudgetExhausted { .. } => (Value::Null, "budget-exhausted"),
    }
}

fn cmd_chi(
    input: PathBuf,
    max_k: usize,
    budget: Option<u64>,
    threads: usize,
    proper: bool,
    cnf: Option<PathBuf>,
) -> CmdResult {
    let records = read_stream(&input)?.all()?;
    if let Some(path) = &cnf {
        if records.len() != 1 {
            return Err(Failure::input("--export-cnf needs a single-graph input"));
        }
        write_file(path, export_cnf(&records[0].graph, max_k).to_dimacs().as_bytes())?;
    }
    let opts = SolveOptions {
        budget,
        threads: threads.max(1),
    };
    for (i, r) in records.iter().enumerate() {
        let res = if proper {
            chromatic_number(&r.graph, max_k, &opts)
        } else {
            odd_chromatic_number(&r.graph, max_k, &opts)
        };
        let (value, status) = bound_json(res.value);
        let mut line = json!({
            "index": i + 1,
            "n": r.graph.order(),
            "value": value,
            "status": status,
            "maxK": max_k,
            "nodes": res.nodes,
        });
        if let Bound::BudgetExhausted { at } = res.value {
            line["budgetExhaustedAt"] = json!(at);
        }
        if let Some(c) = &res.witness {
            line["witness"] = json!(colors(c));
        }
        println!("{line}");
    }
    Ok(0)
}

fn read_coloring(path: &Path) -> Result<Coloring, Failure> {
    let bytes = read_bytes(path)?;
    let text = String::from_utf8(bytes).map_err(|_| Failure::input(format!("{}: not text", path.display())))?;
    let parsed = if text.trim_start().starts_with('{') {
        Coloring::from_json(&text)
    } else {
        Coloring::from_text(&text)
    };
    parsed.map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn cmd_verify(input: PathBuf, coloring: PathBuf) -> CmdResult {
    let records = read_stream(&input)?.all()?;
    let g = &records[0].graph;
    let c = read_coloring(&coloring)?;
    let report = is_odd_coloring(g, &c).map_err(Failure::input)?;
    let one = |v: &usize| v + 1;
    let doc = json!({
        "verdict": report.verdict,
        "proper": report.proper,
        "monochromaticEdges": report.monochromatic_edges.iter().map(|(u, v)| [u + 1, v + 1]).collect::<Vec<_>>(),
        "emptyOddSets": report.empty_odd_sets.iter().map(one).collect::<Vec<_>>(),
        "oddSets": report.odd_sets,
    });
    println!("{doc}");
    Ok(if report.verdict { 0 } else { 1 })
}

fn cmd_gen(family: String, param: Option<String>, out: Option<PathBuf>, format: OutFormat) -> CmdResult {
    let spec = FamilySpec::parse(&family, param.as_deref()).map_err(Failure::input)?;
    let g = spec.make().map_err(Failure::input)?;
    let bytes = match format {
        OutFormat::G6 => format!("{}\n", encode_graph6(&g.graph)).into_bytes(),
        OutFormat::Pc => {
            let p = g
                .plane
                .ok_or_else(|| Failure::input(format!("{family}: no plane embedding for this member")))?;
            encode_planar_code([&p])
        }
    };
    match out {
        Some(path) => write_file(&path, &bytes)?,
        None => {
            use std::io::Write;
            std::io::stdout()
                .write_all(&bytes)
                .map_err(|e| Failure::input(format!("stdout: {e}")))?;
        }
    }
    Ok(0)
}

fn cmd_color9(input: PathBuf, trace: Option<PathBuf>) -> CmdResult {
    let graphs = read_stream(&input)?.plane()?;
    let mut traces = Vec::new();
    let mut code = 0;
    for (i, p) in graphs.iter().enumerate() {
        let r = match color9(p) {
            Ok(r) => r,
            Err(e @ ReduceError::Counterexample { .. }) => {
                eprintln!("graph {}: {e}", i + 1);
                code = 1;
                continue;
            }
            Err(e) => return Err(Failure::input(format!("graph {}: {e}", i + 1))),
        };
        let verified = verify(p.graph(), &r.coloring);
        if !verified {
            code = 1;
        }
        println!(
            "{}",
            json!({
                "index": i + 1,
                "n": p.order(),
                "verified": verified,
                "colorsUsed": r.coloring.colors_used(),
                "fallbacks": r.fallbacks,
                "failedExtensions": r.failed_extensions,
                "coloring": colors(&r.coloring),
            })
        );
        traces.push(r.trace);
    }
    if let Some(path) = trace {
        let doc = if traces.len() == 1 {
            serde_json::to_value(&traces[0])
        } else {
            serde_json::to_value(&traces)
        }
        .expect("trace serializes");
        write_file(&path, serde_json::to_string_pretty(&doc).unwrap().as_bytes())?;
    }
    Ok(code)
}

fn cmd_audit(input: PathBuf, report: Option<PathBuf>) -> CmdResult {
    let graphs = read_stream(&input)?.plane()?;
    let mut reports = Vec::new();
    let mut code = 0;
    for (i, p) in graphs.iter().enumerate() {
        let r = audit(p).map_err(|e| Failure::input(format!("graph {}: {e}", i + 1)))?;
        let violations = r.conditional_violations();
        if violations > 0 {
            code = 1;
        }
        println!(
            "{}",
            json!({
                "index": i + 1,
                "n": p.order(),
                "total": {"initial": r.initial.total(), "after": r.after.total()},
                "P1": r.p1,
                "P2": r.p2,
                "P3": r.p3,
                "transfers": r.transfers.len(),
                "conditionalViolations": violations,
            })
        );
        reports.push(r.to_json());
    }
    if let Some(path) = report {
        let doc = if reports.len() == 1 {
            reports.pop().unwrap()
        } else {
            Value::Array(reports)
        };
        write_file(&path, serde_json::to_string_pretty(&doc).unwrap().as_bytes())?;
    }
    Ok(code)
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Chi {
            input,
            max_k,
            budget: b,
            threads,
            proper,
            export_cnf,
        } => cmd_chi(input, max_k, budget(b)?, threads, proper, export_cnf),
        Command::Verify { input, coloring } => cmd_verify(input, coloring),
        Command::Gen {
            family,
            param,
            out,
            format,
        } => cmd_gen(family, param, out, format),
        Command::Color9 { input, trace } => cmd_color9(input, trace),
        Command::Audit { input, report } => cmd_audit(input, report),
        Command::Scan {
            input,
            threshold,
            girth_min,
            out,
            fixtures,
            witnesses,
            budget: b,
            threads,
        } => scan::run(scan::ScanArgs {
            input,
            threshold,
            girth_min,
            out,
            fixtures,
            witnesses,
            budget: budget(b)?,
            threads: threads.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get())),
        }),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
