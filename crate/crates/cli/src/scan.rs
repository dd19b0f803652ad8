use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use oddchrom::coloring::verify;
use oddchrom::io::encode_graph6;
use oddchrom::solver::{odd_chromatic_number, Bound, SolveOptions};
use serde::Serialize;

use crate::input::{read_stream, write_file, BadRecord, CmdResult, Failure, Record};

pub struct ScanArgs {
    pub input: PathBuf,
    pub threshold: usize,
    pub girth_min: Option<usize>,
    pub out: Option<PathBuf>,
    pub fixtures: PathBuf,
    pub witnesses: Option<PathBuf>,
    pub budget: Option<u64>,
    pub threads: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Verdict {
    Within,
    Exceeds,
    Undecided,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
struct ScanRecord {
    index: usize,
    n: usize,
    /// `null` for acyclic graphs (infinite girth).
    girth: Option<usize>,
    /// Exact value when it is at most threshold + 1.
    chi_o: Option<usize>,
    verdict: Verdict,
    nodes: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    fixture: Option<String>,
}

#[derive(Debug, Serialize)]
struct ErrorRecord {
    index: usize,
    error: String,
}

enum Line {
    Skipped,
    Record(ScanRecord),
    Error(ErrorRecord),
}

fn scan_one(index: usize, record: &Result<Record, BadRecord>, args: &ScanArgs) -> Result<Line, Failure> {
    let r = match record {
        Ok(r) => r,
        Err(e) => {
            return Ok(Line::Error(ErrorRecord {
                index,
                error: e.message.clone(),
            }))
        }
    };
    let g = &r.graph;
    let girth = g.girth();
    if let (Some(min), Some(girth)) = (args.girth_min, girth) {
        if girth < min {
            return Ok(Line::Skipped);
        }
    }
    let opts = SolveOptions {
        budget: args.budget,
        threads: 1,
    };
    let probe = args.threshold + 1;
    let res = odd_chromatic_number(g, probe, &opts);
    let (chi_o, verdict) = match res.value {
        Bound::Exact(k) if k <= args.threshold => (Some(k), Verdict::Within),
        Bound::Exact(k) => (Some(k), Verdict::Exceeds),
        Bound::ExceedsBound => (None, Verdict::Exceeds),
        Bound::BudgetExhausted { .. } => (None, Verdict::Undecided),
    };
    if let Some(c) = &res.witness {
        if !verify(g, c) {
            return Err(Failure {
                code: 2,
                message: format!("record {index}: solver witness failed verification"),
            });
        }
    }
    let mut rec = ScanRecord {
        index,
        n: g.order(),
        girth,
        chi_o,
        verdict,
        nodes: res.nodes,
        witness: None,
        fixture: None,
    };
    if let (Some(dir), Some(c)) = (&args.witnesses, &res.witness) {
        let path = dir.join(format!("graph{index}.coloring"));
        write_file(&path, c.to_text().as_bytes())?;
        rec.witness = Some(path.display().to_string());
    }
    if verdict == Verdict::Exceeds {
        rec.fixture = Some(write_fixture(&args.fixtures, index, r, &res.value, res.nodes, args.threshold)?);
    }
    Ok(Line::Record(rec))
}

fn write_fixture(
    dir: &Path,
    index: usize,
    r: &Record,
    bound: &Bound,
    nodes: u64,
    threshold: usize,
) -> Result<String, Failure> {
    std::fs::create_dir_all(dir).map_err(|e| Failure::input(format!("{}: {e}", dir.display())))?;
    let g6 = encode_graph6(&r.graph);
    write_file(&dir.join(format!("graph{index}.g6")), format!("{g6}\n").as_bytes())?;
    let mut log = String::new();
    writeln!(log, "graph {index}: {g6}").unwrap();
    writeln!(log, "n {} m {}", r.graph.order(), r.graph.size()).unwrap();
    match bound {
        Bound::Exact(k) => writeln!(log, "palettes 1..={} exhausted; odd {k}-coloring found", k - 1).unwrap(),
        _ => writeln!(log, "palettes 1..={} exhausted", threshold + 1).unwrap(),
    }
    writeln!(log, "search nodes {nodes}").unwrap();
    let path = dir.join(format!("graph{index}.log"));
    write_file(&path, log.as_bytes())?;
    Ok(dir.join(format!("graph{index}.g6")).display().to_string())
}

pub fn run(args: ScanArgs) -> CmdResult {
    let stream = read_stream(&args.input)?;
    if let Some(dir) = &args.witnesses {
        std::fs::create_dir_all(dir).map_err(|e| Failure::input(format!("{}: {e}", dir.display())))?;
    }
    let records = &stream.records;
    let threads = args.threads.max(1).min(records.len().max(1));
    let mut lines: Vec<Option<Result<Line, Failure>>> = (0..records.len()).map(|_| None).collect();
    // workers take interleaved indices; results are reassembled in stream order
    std::thread::scope(|s| {
        let handles: Vec<_> = (0..threads)
            .map(|t| {
                let args = &args;
                s.spawn(move || {
                    (t..records.len())
                        .step_by(threads)
                        .map(|i| (i, scan_one(i + 1, &records[i], args)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for h in handles {
            for (i, line) in h.join().expect("scan worker panicked") {
                lines[i] = Some(line);
            }
        }
    });
    let mut out = String::new();
    let (mut exceeds, mut undecided, mut errors) = (0, 0, 0);
    for line in lines.into_iter().map(|l| l.expect("every index scanned")) {
        match line? {
            Line::Skipped => {}
            Line::Record(r) => {
                match r.verdict {
                    Verdict::Exceeds => exceeds += 1,
                    Verdict::Undecided => undecided += 1,
                    Verdict::Within => {}
                }
                out.push_str(&serde_json::to_string(&r).unwrap());
                out.push('\n');
            }
            Line::Error(e) => {
                errors += 1;
                out.push_str(&serde_json::to_string(&e).unwrap());
                out.push('\n');
            }
        }
    }
    match &args.out {
        Some(path) => write_file(path, out.as_bytes())?,
        None => print!("{out}"),
    }
    eprintln!(
        "scanned {} records: {exceeds} above threshold {}, {undecided} undecided, {errors} unreadable",
        records.len(),
        args.threshold
    );
    if let Some(e) = stream.fatal {
        return Err(Failure::input(e));
    }
    Ok(if exceeds > 0 { 1 } else { 0 })
}
