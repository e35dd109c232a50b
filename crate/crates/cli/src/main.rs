//! `turan`: exact Turán numbers of stars, brooms, spiders and paths.
//!
//! Exit status: 0 success, 1 usage or input error, 2 verification mismatch
//! or failed construction audit, 3 search budget exhausted.

mod args;

use std::fs;
use std::io::{IsTerminal, Write};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand};
use serde_json::json;

use args::{parse_duration, parse_range, GraphFormat, TableFormat, Toggle};
use turan::constructors::{extremal, witness_recipe, Audit};
use turan::error::{ConstructError, VerifyError};
use turan::formulas::{ex_pattern, table, table_csv};
use turan::graph::{from_edge_list, from_graph6, to_edge_list, to_graph6};
use turan::oracle::{oracle_ex, verify_sweep, SearchConfig, SweepRow};
use turan::{contains_fast, ForbiddenFamily, Graph, OracleError, TreePattern};

#[derive(Parser)]
#[command(name = "turan", version, about = "Exact Turán numbers for stars, brooms, spiders and paths")]
struct Cli {
    /// Plain output without color (also enabled by a non-empty NO_COLOR).
    #[arg(long, global = true)]
    plain: bool,
    /// Worker threads for the exhaustive search (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form ex(p; pattern) with the branch that produced it.
    Ex {
        #[arg(long)]
        pattern: TreePattern,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        json: bool,
    },
    /// Values over a range of orders.
    Table {
        #[arg(long)]
        pattern: TreePattern,
        /// Orders as `a..b` (inclusive).
        #[arg(long, value_parser = parse_range)]
        p: RangeInclusive<usize>,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
    },
    /// Build an extremal graph.
    Construct {
        #[arg(long)]
        pattern: TreePattern,
        #[arg(long)]
        p: usize,
        /// Write the graph here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = GraphFormat::Graph6)]
        format: GraphFormat,
        /// Re-check freeness and edge count before writing.
        #[arg(long, value_enum, default_value_t = Toggle::On)]
        audit: Toggle,
        #[arg(long)]
        json: bool,
    },
    /// Test a graph file (graph6 or edge list) for the given patterns.
    Check {
        #[arg(long)]
        graph: PathBuf,
        /// One pattern or a comma-separated family.
        #[arg(long)]
        pattern: ForbiddenFamily,
        #[arg(long)]
        json: bool,
    },
    /// Exhaustive search for ex(p; family).
    Oracle {
        /// One pattern or a comma-separated family.
        #[arg(long)]
        pattern: ForbiddenFamily,
        #[arg(long)]
        p: usize,
        /// Wall-clock limit, e.g. `60s` or `5m`.
        #[arg(long, value_parser = parse_duration)]
        budget: Option<Duration>,
        /// Largest order searched without complaint.
        #[arg(long, default_value_t = 9)]
        max_p: usize,
        /// Search all labelled graphs instead of one per max-degree arrangement.
        #[arg(long)]
        no_symmetry: bool,
        /// Re-test the whole graph with the general embedder after every insertion.
        #[arg(long)]
        full_recheck: bool,
        /// Write the witness graph (graph6) here.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Compare formula, oracle and constructed witness over a range of orders.
    Verify {
        #[arg(long)]
        pattern: TreePattern,
        #[arg(long, value_parser = parse_range)]
        p: RangeInclusive<usize>,
        /// Write a JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long, value_parser = parse_duration)]
        budget: Option<Duration>,
        #[arg(long, default_value_t = 9)]
        max_p: usize,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Mismatch(String),
    Budget(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Mismatch(_) => 2,
            Failure::Budget(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Mismatch(m) | Failure::Budget(m) => m,
        }
    }
}

impl From<ConstructError> for Failure {
    fn from(e: ConstructError) -> Self {
        match e {
            ConstructError::Audit(_) => Failure::Mismatch(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::Construct(c) => c.into(),
            other => Failure::Usage(other.to_string()),
        }
    }
}

macro_rules! usage_from {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Failure::Usage(e.to_string())
            }
        }
    )*};
}

usage_from!(turan::FormulaError, OracleError, turan::GraphError, std::io::Error, serde_json::Error);

struct Style {
    color: bool,
}

impl Style {
    fn new(plain: bool) -> Style {
        let no_color = std::env::var_os("NO_COLOR").is_some_and(|v| !v.is_empty());
        Style { color: !plain && !no_color && std::io::stdout().is_terminal() }
    }

    fn verdict(&self, ok: bool, text: &str) -> String {
        match (self.color, ok) {
            (false, _) => text.to_string(),
            (true, true) => format!("\x1b[32m{text}\x1b[0m"),
            (true, false) => format!("\x1b[31m{text}\x1b[0m"),
        }
    }
}

fn encode(g: &Graph, format: GraphFormat) -> String {
    match format {
        GraphFormat::Graph6 => {
            let mut s = String::from_utf8(to_graph6(g)).expect("graph6 is ASCII");
            s.push('\n');
            s
        }
        GraphFormat::Edgelist => to_edge_list(g),
    }
}

/// Reads graph6 (first non-empty line) or, failing that, an edge list.
fn read_graph(path: &Path) -> Result<Graph, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let first = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
    if let Ok(g) = from_graph6(first.trim().as_bytes()) {
        return Ok(g);
    }
    from_edge_list(&text).map_err(|e| Failure::Usage(format!("{}: neither graph6 nor an edge list ({e})", path.display())))
}

fn millis(d: Duration) -> f64 {
    d.as_secs_f64() * 1000.0
}

fn run(cli: Cli, out: &mut impl Write) -> Result<(), Failure> {
    let style = Style::new(cli.plain);
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Usage(format!("thread pool: {e}")))?;
    }
    match cli.command {
        Command::Ex { pattern, p, json } => {
            let start = Instant::now();
            let v = ex_pattern(p, &pattern)?;
            let recipe = witness_recipe(&pattern, p)?;
            let elapsed = start.elapsed();
            let params = v.params;
            if json {
                let doc = json!({
                    "pattern": pattern.to_string(),
                    "p": p,
                    "value": v.value,
                    "case_tag": v.tag,
                    "k": params.map(|x| x.k),
                    "r": params.map(|x| x.r),
                    "m": params.and_then(|x| x.m),
                    "recipe": recipe.to_string(),
                    "elapsed_ms": millis(elapsed),
                });
                writeln!(out, "{doc}")?;
            } else {
                writeln!(out, "{}", v.value)?;
                let mut case = v.tag.to_string();
                if let Some(x) = params {
                    case.push_str(&format!(" k={} r={}", x.k, x.r));
                    if let Some(m) = x.m {
                        case.push_str(&format!(" m={m}"));
                    }
                }
                writeln!(out, "case: {case}")?;
                writeln!(out, "witness: {recipe}")?;
            }
        }
        Command::Table { pattern, p, format } => {
            let rows = table(&pattern, p)?;
            match format {
                TableFormat::Csv => write!(out, "{}", table_csv(&rows))?,
                TableFormat::Json => writeln!(out, "{}", serde_json::to_string_pretty(&rows)?)?,
                TableFormat::Text => {
                    let blank = |v: Option<u64>| v.map_or(String::new(), |x| x.to_string());
                    writeln!(out, "{:>6} {:>6} {:>4} {:>4} {:>10}  case", "p", "k", "r", "m", "value")?;
                    for row in rows {
                        writeln!(
                            out,
                            "{:>6} {:>6} {:>4} {:>4} {:>10}  {}",
                            row.p,
                            blank(row.k),
                            blank(row.r),
                            blank(row.m),
                            row.value,
                            row.case_tag
                        )?;
                    }
                }
            }
        }
        Command::Construct { pattern, p, out: path, format, audit, json } => {
            let level = if audit == Toggle::On { Audit::Full } else { Audit::Off };
            let w = extremal(&pattern, p, level)?;
            let encoded = encode(&w.graph, format);
            if let Some(path) = &path {
                fs::write(path, &encoded).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            }
            if json {
                let mut doc = json!({
                    "pattern": pattern.to_string(),
                    "p": p,
                    "recipe": w.recipe.to_string(),
                    "vertices": w.graph.order(),
                    "edges": w.edge_count(),
                    "audited": audit == Toggle::On,
                });
                if path.is_none() {
                    doc["graph"] = json!(encoded.trim_end());
                }
                writeln!(out, "{doc}")?;
            } else {
                writeln!(out, "recipe: {} ({} vertices, {} edges)", w.recipe, w.graph.order(), w.edge_count())?;
                if path.is_none() {
                    write!(out, "{encoded}")?;
                }
            }
        }
        Command::Check { graph, pattern, json } => {
            let g = read_graph(&graph)?;
            let results: Vec<(String, bool)> =
                pattern.patterns().iter().map(|pat| (pat.to_string(), contains_fast(&g, pat))).collect();
            if json {
                let items: Vec<_> = results.iter().map(|(p, c)| json!({ "pattern": p, "contained": c })).collect();
                writeln!(out, "{}", json!({ "vertices": g.order(), "edges": g.edge_count(), "results": items }))?;
            } else if let [(_, c)] = results.as_slice() {
                writeln!(out, "{}", if *c { "contained" } else { "not contained" })?;
            } else {
                for (p, c) in &results {
                    writeln!(out, "{p}: {}", if *c { "contained" } else { "not contained" })?;
                }
            }
        }
        Command::Oracle { pattern, p, budget, max_p, no_symmetry, full_recheck, out: path, json } => {
            let cfg = SearchConfig {
                max_p,
                budget,
                symmetry_breaking: !no_symmetry,
                full_recheck,
                ..SearchConfig::default()
            };
            let start = Instant::now();
            let res = oracle_ex(&pattern, p, &cfg)?;
            let elapsed = start.elapsed();
            if let Some(path) = &path {
                fs::write(path, encode(&res.witness, GraphFormat::Graph6))
                    .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            }
            if json {
                let doc = json!({
                    "pattern": pattern.to_string(),
                    "p": p,
                    "value": res.value,
                    "exhaustive": res.exhaustive,
                    "nodes": res.nodes,
                    "witness": String::from_utf8(to_graph6(&res.witness)).expect("graph6 is ASCII"),
                    "elapsed_ms": millis(elapsed),
                });
                writeln!(out, "{doc}")?;
            } else {
                let status = if res.exhaustive { "exhaustive" } else { "budget exhausted, lower bound" };
                writeln!(out, "{}", res.value)?;
                writeln!(out, "search: {status}, {} nodes, {:.3}s", res.nodes, elapsed.as_secs_f64())?;
            }
            if !res.exhaustive {
                return Err(Failure::Budget(format!("budget exhausted at p={p}; best found {}", res.value)));
            }
        }
        Command::Verify { pattern, p, json: report, budget, max_p } => {
            let cfg = SearchConfig { max_p, budget, ..SearchConfig::default() };
            let start = Instant::now();
            let rows = verify_sweep(&pattern, p, &cfg)?;
            let elapsed = start.elapsed();
            let mismatches = rows.iter().filter(|r| !r.agrees()).count();
            let unfinished = rows.iter().filter(|r| r.agrees() && !r.exhaustive).count();
            for r in &rows {
                let verdict = match (r.agrees(), r.exhaustive) {
                    (false, _) => style.verdict(false, "MISMATCH"),
                    (true, true) => style.verdict(true, "ok"),
                    (true, false) => "unfinished".to_string(),
                };
                writeln!(
                    out,
                    "{} p={}: formula {} oracle {} witness {} {verdict}",
                    r.pattern, r.p, r.formula, r.oracle, r.witness
                )?;
            }
            writeln!(out, "{} rows, {mismatches} mismatches, {unfinished} unfinished", rows.len())?;
            if let Some(path) = report {
                let doc = json!({
                    "pattern": pattern.to_string(),
                    "rows": rows.iter().map(|r| row_json(r)).collect::<Vec<_>>(),
                    "mismatches": mismatches,
                    "unfinished": unfinished,
                    "elapsed_ms": millis(elapsed),
                });
                fs::write(&path, serde_json::to_string_pretty(&doc)? + "\n")
                    .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            }
            if mismatches > 0 {
                return Err(Failure::Mismatch(format!("{mismatches} mismatches")));
            }
            if unfinished > 0 {
                return Err(Failure::Budget(format!("{unfinished} orders not searched to completion")));
            }
        }
    }
    Ok(())
}

fn row_json(r: &SweepRow) -> serde_json::Value {
    let mut v = serde_json::to_value(r).expect("sweep rows serialize");
    v["agrees"] = json!(r.agrees());
    v
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let _ = out.flush();
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
