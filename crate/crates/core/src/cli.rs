//! Command-line front end.
//!
//! Exit codes: 0 success or agreement, 1 semantic negative (not resolving, a
//! failed audit, a table disagreement, an exhausted search budget), 2 usage
//! error, 3 IO error.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use metricdim::families::{labels_of, FamilySpec, VertexLabel};
use metricdim::graph::EdgeListJson;
use metricdim::resolve::{ResolveError, SolverConfig, DEFAULT_NODE_BUDGET};
use metricdim::{
    all_pairs_distances, audit_landmarks, decode_graph6, encode_graph6, exact_metric_dimension, family_basis,
    formula_beta, greedy_resolving, verify_resolving, ClosedForm, Distances, Graph,
};

/// Exact mode refuses larger inputs unless `--force` is given.
const EXACT_GUARD: usize = 24;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Negative(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Negative(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

fn usage(err: impl std::fmt::Display) -> CliError {
    CliError::Usage(err.to_string())
}

fn io_error(path: &Path, err: std::io::Error) -> CliError {
    CliError::Io(format!("{}: {err}", path.display()))
}

#[derive(Debug, Parser)]
#[command(name = "metricdim", version, about = "Metric dimension of regular bipartite graphs")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a family instance as graph6 or JSON.
    Gen {
        /// Family spec: crown:n=N, hamcomp:m=M or multi:m=A,B,...
        spec: String,
        #[arg(long, value_enum, default_value_t = Format::Graph6)]
        format: Format,
        /// Output file; a `<out>.cycles.json` layout sidecar is written next to
        /// it for cycle-complement families.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Metric dimension: exact, greedy upper bound, or closed form.
    Dim {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        mode: DimMode,
        /// Run the exact solver above 24 vertices.
        #[arg(long)]
        force: bool,
    },
    /// Check whether a landmark set resolves the graph.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        /// Comma-separated ids or x/y labels, e.g. `0,1,2` or `x1,y2`.
        #[arg(long)]
        landmarks: String,
    },
    /// Gap audit of a landmark set on a cycle-complement family.
    Gaps {
        spec: String,
        #[arg(long)]
        landmarks: String,
    },
    /// CSV table of formula value, construction size and exact value.
    Table {
        #[arg(long, value_enum)]
        family: TableFamily,
        /// Inclusive parameter range `a..b` (n for crown and multi, m for hamcomp).
        #[arg(long)]
        range: String,
        /// Compute the exact value for instances with at most this many vertices.
        #[arg(long, default_value_t = 0)]
        check_exact: usize,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Graph6,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFamily {
    Crown,
    Hamcomp,
    Multi,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct InputArgs {
    /// Family spec, e.g. crown:n=5.
    spec: Option<String>,
    /// Graph file (graph6, or the JSON edge list written by `gen --format json`).
    #[arg(long = "in")]
    input: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct DimMode {
    #[arg(long)]
    exact: bool,
    #[arg(long)]
    greedy: bool,
    #[arg(long)]
    formula: bool,
}

#[derive(Serialize)]
struct RunReport {
    command: Vec<String>,
    input: Value,
    results: Value,
    timings_ms: BTreeMap<&'static str, f64>,
    version: &'static str,
}

impl RunReport {
    fn new(input: Value, results: Value, timings_ms: BTreeMap<&'static str, f64>) -> Self {
        RunReport {
            command: std::env::args().skip(1).collect(),
            input,
            results,
            timings_ms,
            version: env!("CARGO_PKG_VERSION"),
        }
    }

    fn print(&self) {
        println!("{}", serde_json::to_string_pretty(self).expect("report serializes"));
    }
}

fn millis(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

struct Loaded {
    graph: Graph,
    spec: Option<FamilySpec>,
    echo: Value,
}

impl Loaded {
    fn labels(&self, ids: &[usize]) -> Option<Vec<String>> {
        self.spec.as_ref().map(|s| labels_of(ids, s.half_order()))
    }
}

fn parse_spec(s: &str) -> Result<FamilySpec, CliError> {
    let spec: FamilySpec = s.parse().map_err(usage)?;
    spec.validate().map_err(usage)?;
    Ok(spec)
}

fn read_graph(path: &Path) -> Result<Graph, CliError> {
    let bytes = fs::read(path).map_err(|e| io_error(path, e))?;
    if bytes.trim_ascii_start().first() == Some(&b'{') {
        let json: EdgeListJson = serde_json::from_slice(&bytes).map_err(usage)?;
        Graph::try_from(json).map_err(usage)
    } else {
        decode_graph6(&bytes).map_err(usage)
    }
}

fn load(input: &InputArgs) -> Result<Loaded, CliError> {
    match (&input.spec, &input.input) {
        (Some(s), _) => {
            let spec = parse_spec(s)?;
            let instance = spec.generate().map_err(usage)?;
            Ok(Loaded {
                graph: instance.graph,
                echo: json!({ "spec": spec.to_string() }),
                spec: Some(spec),
            })
        }
        (None, Some(path)) => Ok(Loaded {
            graph: read_graph(path)?,
            spec: None,
            echo: json!({ "file": path.display().to_string() }),
        }),
        (None, None) => Err(usage("a family spec or --in path is required")),
    }
}

/// Ids or x/y labels. Labels map through the canonical layout with `half`
/// vertices per side.
fn parse_landmarks(list: &str, half: usize, order: usize) -> Result<Vec<usize>, CliError> {
    let mut ids = Vec::new();
    for token in list.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let id = match token.parse::<usize>() {
            Ok(id) => id,
            Err(_) => {
                let label: VertexLabel = token.parse().map_err(usage)?;
                label
                    .id(half)
                    .ok_or_else(|| usage(format!("vertex {label} does not exist")))?
            }
        };
        if id >= order {
            return Err(usage(format!("vertex {id} out of range for a graph on {order} vertices")));
        }
        ids.push(id);
    }
    ids.sort_unstable();
    ids.dedup();
    Ok(ids)
}

fn solver_config() -> Result<SolverConfig, CliError> {
    let node_budget = match std::env::var("METRICDIM_BUDGET") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| usage(format!("METRICDIM_BUDGET must be a non-negative integer (got {v:?})")))?,
        Err(_) => DEFAULT_NODE_BUDGET,
    };
    Ok(SolverConfig { node_budget })
}

fn resolve_error(err: ResolveError) -> CliError {
    match err {
        ResolveError::BudgetExceeded { .. } => CliError::Negative(err.to_string()),
        _ => usage(err),
    }
}

pub fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Gen { spec, format, out } => cmd_gen(&spec, format, out.as_deref()),
        Command::Dim { input, mode, force } => cmd_dim(&input, &mode, force),
        Command::Verify { input, landmarks } => cmd_verify(&input, &landmarks),
        Command::Gaps { spec, landmarks } => cmd_gaps(&spec, &landmarks),
        Command::Table {
            family,
            range,
            check_exact,
        } => cmd_table(family, &range, check_exact),
    }
}

fn write_out(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(|e| io_error(path, e))
}

fn cmd_gen(spec: &str, format: Format, out: Option<&Path>) -> Result<u8, CliError> {
    let spec = parse_spec(spec)?;
    let instance = spec.generate().map_err(usage)?;
    let mut body = match format {
        Format::Graph6 => encode_graph6(&instance.graph),
        Format::Json => serde_json::to_vec(&EdgeListJson::from(&instance.graph)).expect("edge list serializes"),
    };
    body.push(b'\n');
    match out {
        Some(path) => {
            write_out(path, &body)?;
            if !instance.layouts.is_empty() {
                let mut sidecar = path.as_os_str().to_owned();
                sidecar.push(".cycles.json");
                let cycles: Vec<&Vec<usize>> = instance.layouts.iter().map(|l| &l.vertices).collect();
                let text = serde_json::to_vec(&json!({ "spec": spec.to_string(), "cycles": cycles }))
                    .expect("layouts serialize");
                write_out(Path::new(&sidecar), &text)?;
            }
        }
        None => std::io::stdout()
            .write_all(&body)
            .map_err(|e| CliError::Io(format!("stdout: {e}")))?,
    }
    Ok(0)
}

fn cmd_dim(input: &InputArgs, mode: &DimMode, force: bool) -> Result<u8, CliError> {
    let mut timings = BTreeMap::new();
    if mode.formula {
        let Some(s) = &input.spec else {
            return Err(usage("formula mode needs a family spec, not a graph file"));
        };
        let spec = parse_spec(s)?;
        let start = Instant::now();
        let result = formula_beta(&spec).map_err(usage)?;
        timings.insert("formula", millis(start));
        let mut results = serde_json::to_value(&result).expect("formula result serializes");
        results["mode"] = json!("formula");
        RunReport::new(json!({ "spec": spec.to_string() }), results, timings).print();
        return Ok(0);
    }
    let loaded = load(input)?;
    let order = loaded.graph.order();
    if mode.exact && order > EXACT_GUARD && !force {
        return Err(usage(format!(
            "exact mode is limited to {EXACT_GUARD} vertices (got {order}); pass --force to run anyway"
        )));
    }
    let start = Instant::now();
    let dist = all_pairs_distances(&loaded.graph);
    timings.insert("distances", millis(start));
    if !dist.is_connected() {
        return Err(usage(ResolveError::DisconnectedGraph));
    }
    let start = Instant::now();
    let results = if mode.exact {
        let solution = exact_metric_dimension(&dist, &solver_config()?).map_err(resolve_error)?;
        timings.insert("exact", millis(start));
        json!({
            "mode": "exact",
            "beta": solution.beta,
            "basis": solution.basis,
            "basis_labels": loaded.labels(&solution.basis),
            "nodes": solution.nodes,
        })
    } else {
        let set = greedy_resolving(&dist).map_err(resolve_error)?;
        timings.insert("greedy", millis(start));
        json!({
            "mode": "greedy",
            "upper_bound": set.len(),
            "set": set,
            "set_labels": loaded.labels(&set),
        })
    };
    RunReport::new(loaded.echo, results, timings).print();
    Ok(0)
}

fn cmd_verify(input: &InputArgs, landmarks: &str) -> Result<u8, CliError> {
    let loaded = load(input)?;
    let order = loaded.graph.order();
    let half = loaded.spec.as_ref().map_or(order / 2, FamilySpec::half_order);
    let ids = parse_landmarks(landmarks, half, order)?;
    let mut timings = BTreeMap::new();
    let start = Instant::now();
    let report = verify_resolving(&all_pairs_distances(&loaded.graph), &ids).map_err(usage)?;
    timings.insert("verify", millis(start));
    let mut results = serde_json::to_value(&report).expect("report serializes");
    if let Some(labels) = loaded.labels(&ids) {
        results["landmark_labels"] = json!(labels);
    }
    if let (Some(w), Some(spec)) = (report.witness, &loaded.spec) {
        results["witness_labels"] = json!(labels_of(&w, spec.half_order()));
    }
    RunReport::new(loaded.echo, results, timings).print();
    Ok(if report.resolving { 0 } else { 1 })
}

fn cmd_gaps(spec: &str, landmarks: &str) -> Result<u8, CliError> {
    let spec = parse_spec(spec)?;
    if spec.cycle_parts().is_none() {
        return Err(usage(format!("{spec} has no removed cycle; gaps need a cycle-complement family")));
    }
    let instance = spec.generate().map_err(usage)?;
    let ids = parse_landmarks(landmarks, spec.half_order(), spec.order())?;
    let mut timings = BTreeMap::new();
    let start = Instant::now();
    let audit = audit_landmarks(&instance.layouts, &ids).map_err(usage)?;
    let sizes: Vec<Vec<usize>> = instance
        .layouts
        .iter()
        .map(|l| {
            metricdim::gap_decompose(l, &ids)
                .expect("audit succeeded on every cycle")
                .sizes()
        })
        .collect();
    timings.insert("audit", millis(start));
    let mut results = serde_json::to_value(&audit).expect("audit serializes");
    results["passes"] = json!(audit.passes());
    results["gap_sizes"] = json!(sizes);
    results["landmarks"] = json!(ids);
    results["landmark_labels"] = json!(labels_of(&ids, spec.half_order()));
    RunReport::new(json!({ "spec": spec.to_string() }), results, timings).print();
    Ok(if audit.passes() { 0 } else { 1 })
}

fn parse_range(range: &str) -> Result<(usize, usize), CliError> {
    let bad = || usage(format!("bad range {range:?} (expected a..b)"));
    let (a, b) = match range.split_once("..") {
        Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
        None => (range, range),
    };
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

/// Partitions of `n` into parts >= `min`, parts in non-decreasing order.
pub fn partitions(n: usize, min: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in min..=n {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn table_specs(family: TableFamily, lo: usize, hi: usize) -> Vec<FamilySpec> {
    (lo..=hi)
        .flat_map(|p| match family {
            TableFamily::Crown => vec![FamilySpec::Crown { n: p }],
            TableFamily::Hamcomp => vec![FamilySpec::HamComp { m: p }],
            TableFamily::Multi => partitions(p, 2)
                .into_iter()
                .map(|parts| FamilySpec::MultiCycle { parts })
                .collect(),
        })
        .filter(|s| s.validate().is_ok())
        .collect()
}

const TABLE_HEADER: &str =
    "family,params,vertices,case,formula_beta,construction_size,construction_resolving,exact_beta,agree";

fn table_row(spec: &FamilySpec, check_exact: usize, config: &SolverConfig) -> Result<(String, bool), CliError> {
    let formula = formula_beta(spec).map_err(usage)?;
    let order = spec.order();
    let (family, params) = match spec {
        FamilySpec::Crown { n } => ("crown", n.to_string()),
        FamilySpec::HamComp { m } => ("hamcomp", m.to_string()),
        FamilySpec::MultiCycle { parts } => (
            "multi",
            parts.iter().map(usize::to_string).collect::<Vec<_>>().join("+"),
        ),
    };
    let instance = spec.generate().map_err(usage)?;
    let basis = family_basis(spec).ok();
    let resolving = basis.as_ref().is_some_and(|b| {
        let report = if spec.has_closed_form() {
            verify_resolving(&ClosedForm::new(spec).expect("closed form in range"), b)
        } else {
            verify_resolving(&all_pairs_distances(&instance.graph), b)
        };
        report.is_ok_and(|r| r.resolving)
    });
    let exact = if order <= check_exact {
        let solution = exact_metric_dimension(&all_pairs_distances(&instance.graph), config).map_err(resolve_error)?;
        Some(solution.beta)
    } else {
        None
    };
    let agree = resolving
        && basis.as_ref().is_some_and(|b| b.len() == formula.beta)
        && exact.is_none_or(|e| e == formula.beta);
    let row = format!(
        "{family},{params},{order},{},{},{},{},{},{}",
        formula.case_tag,
        formula.beta,
        basis.map_or("-".to_string(), |b| b.len().to_string()),
        resolving,
        exact.map_or("-".to_string(), |e| e.to_string()),
        agree
    );
    Ok((row, agree))
}

fn cmd_table(family: TableFamily, range: &str, check_exact: usize) -> Result<u8, CliError> {
    let (lo, hi) = parse_range(range)?;
    let config = solver_config()?;
    let specs = table_specs(family, lo, hi);
    let rows = specs
        .par_iter()
        .map(|spec| table_row(spec, check_exact, &config))
        .collect::<Result<Vec<_>, _>>()?;
    let mut out = String::from(TABLE_HEADER);
    out.push('\n');
    for (row, _) in &rows {
        out.push_str(row);
        out.push('\n');
    }
    std::io::stdout()
        .write_all(out.as_bytes())
        .map_err(|e| CliError::Io(format!("stdout: {e}")))?;
    Ok(if rows.iter().all(|(_, agree)| *agree) { 0 } else { 1 })
}
