//! Command-line interface: batch analysis of `.whl` programs and
//! per-node precision comparison between analysis methods.
//!
//! `analyze` prints each CFG node's invariant in the constraint text
//! format (optionally the strata, the iterate trace, or a JSON dump) and
//! exits 0 on convergence, 2 on a divergence report, 1 on input errors.
//! `compare` runs two methods on the same program and classifies every
//! node as equal / stronger / weaker / incomparable, where "stronger"
//! means method b's value is strictly below method a's.
//!
//! Output on stdout is a pure function of the invocation; wall time goes
//! to stderr. The environment variable `POLYSTRATA_RATIONAL_STYLE`
//! (`exact` or `decimal`) selects how non-integer rationals print.

use crate::domains::{AbstractDomain, IntervalValue};
use crate::engine::{
    node,
    product::{self, ProductWidening, TupleStep},
    stratified::{self, StratifiedVariant},
    Divergence, EngineConfig, EngineError, Phase, TraceStep, WidenAt,
};
use crate::frontend::{parse_program, Program};
use crate::oracle::{self, OracleConfig};
use crate::polyhedra::{Polyhedron, RationalStyle};
use crate::strata::compute_strata;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::path::PathBuf;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "polystrata",
    version,
    about = "Invariant inference for integer programs by abstract interpretation \
             over convex polyhedra, with stratified widenings"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a program and print per-node invariants.
    Analyze(AnalyzeArgs),
    /// Run two analyses on one program and classify per-node precision.
    Compare(CompareArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    /// Single-domain iteration with widening and narrowing.
    Classic,
    /// Stratified, raw widening values clipped when read.
    StrataV1,
    /// Stratified, values clipped and widened up to the clip.
    StrataV2,
    /// Product of per-stratum components, componentwise widening.
    ProductW1,
    /// Product of per-stratum components, hierarchical widening.
    ProductW2,
    /// Product with mutual reduction after widening (may diverge).
    ProductClosure,
}

impl MethodArg {
    fn name(self) -> &'static str {
        match self {
            MethodArg::Classic => "classic",
            MethodArg::StrataV1 => "strata-v1",
            MethodArg::StrataV2 => "strata-v2",
            MethodArg::ProductW1 => "product-w1",
            MethodArg::ProductW2 => "product-w2",
            MethodArg::ProductClosure => "product-closure",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DomainArg {
    Polyhedra,
    Intervals,
}

impl DomainArg {
    fn name(self) -> &'static str {
        match self {
            DomainArg::Polyhedra => "polyhedra",
            DomainArg::Intervals => "intervals",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WidenAtArg {
    /// Targets of depth-first back edges.
    BackEdge,
    /// Loop-body entry points, one value per cut (classic method only).
    BodyEntry,
    /// Every CFG node.
    EveryNode,
}

#[derive(Args)]
struct EngineArgs {
    /// Join-only updates at each widening node before widening starts.
    #[arg(long, default_value_t = 1)]
    delay: usize,
    /// Narrowing passes after the upward iteration.
    #[arg(long, default_value_t = 2)]
    narrowing: usize,
    /// Widenings allowed per node before divergence is reported.
    #[arg(long, default_value_t = 100, value_parser = parse_max_iterations)]
    max_iterations: usize,
    /// Where widening is applied.
    #[arg(long, value_enum, default_value_t = WidenAtArg::BackEdge)]
    widen_at: WidenAtArg,
    /// Shorthand for --widen-at every-node.
    #[arg(long, conflicts_with = "widen_at")]
    widen_everywhere: bool,
    /// Build strata from control dependences in addition to data flow.
    #[arg(long)]
    control_deps: bool,
}

impl EngineArgs {
    fn to_config(&self) -> EngineConfig {
        let widen_at = if self.widen_everywhere {
            WidenAt::EveryNode
        } else {
            match self.widen_at {
                WidenAtArg::BackEdge => WidenAt::BackEdge,
                WidenAtArg::BodyEntry => WidenAt::BodyEntry,
                WidenAtArg::EveryNode => WidenAt::EveryNode,
            }
        };
        EngineConfig {
            delay: self.delay,
            narrowing: self.narrowing,
            max_iterations: self.max_iterations,
            widen_at,
        }
    }
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Program file (.whl).
    file: PathBuf,
    #[arg(long, value_enum, default_value_t = MethodArg::StrataV2)]
    method: MethodArg,
    #[arg(long, value_enum, default_value_t = DomainArg::Polyhedra)]
    domain: DomainArg,
    #[command(flatten)]
    engine: EngineArgs,
    /// Print the strata and their inclusion order before the invariants.
    #[arg(long)]
    dump_strata: bool,
    /// Print the recorded iterate sequence at widening nodes.
    #[arg(long)]
    trace: bool,
    /// Print a machine-readable JSON dump instead of text.
    #[arg(long)]
    json: bool,
    /// Check the result against brute-force reachability.
    #[arg(long)]
    check_oracle: bool,
    /// Input and nondet range for the oracle, as LO:HI.
    #[arg(long, default_value = "-8:8", value_parser = parse_range)]
    oracle_range: (i64, i64),
    /// State cap for the oracle.
    #[arg(long, default_value_t = 100_000)]
    oracle_cap: usize,
}

#[derive(Args)]
struct CompareArgs {
    /// Program file (.whl).
    file: PathBuf,
    #[arg(long, value_enum)]
    method_a: MethodArg,
    #[arg(long, value_enum)]
    method_b: MethodArg,
    #[arg(long, value_enum, default_value_t = DomainArg::Polyhedra)]
    domain_a: DomainArg,
    #[arg(long, value_enum, default_value_t = DomainArg::Polyhedra)]
    domain_b: DomainArg,
    #[command(flatten)]
    engine: EngineArgs,
}

fn parse_max_iterations(s: &str) -> Result<usize, String> {
    let v: usize = s.parse().map_err(|e| format!("{e}"))?;
    if v == 0 {
        return Err("must be at least 1".to_string());
    }
    Ok(v)
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| "expected LO:HI".to_string())?;
    let lo: i64 = lo.trim().parse().map_err(|e| format!("bad LO: {e}"))?;
    let hi: i64 = hi.trim().parse().map_err(|e| format!("bad HI: {e}"))?;
    if lo > hi {
        return Err(format!("empty range {lo}:{hi}"));
    }
    Ok((lo, hi))
}

fn style_from_env() -> Result<RationalStyle, String> {
    match std::env::var("POLYSTRATA_RATIONAL_STYLE") {
        Err(_) => Ok(RationalStyle::Exact),
        Ok(v) => match v.as_str() {
            "exact" => Ok(RationalStyle::Exact),
            "decimal" => Ok(RationalStyle::Decimal),
            other => Err(format!(
                "invalid POLYSTRATA_RATIONAL_STYLE '{other}' (expected 'exact' or 'decimal')"
            )),
        },
    }
}

/// Entry point used by the binary; returns the process exit code
/// (0 converged, 1 input error, 2 divergence report).
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    let start = Instant::now();
    let code = match cli.cmd {
        Command::Analyze(a) => cmd_analyze(a),
        Command::Compare(a) => cmd_compare(a),
    };
    let code = match code {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            1
        }
    };
    eprintln!("wall time: {:.1} ms", start.elapsed().as_secs_f64() * 1e3);
    code
}

fn load_program(file: &std::path::Path) -> Result<Program, String> {
    let src = std::fs::read_to_string(file).map_err(|e| format!("{}: {e}", file.display()))?;
    parse_program(&src).map_err(|e| format!("{}:{e}", file.display()))
}

/// ` [loop test]` / ` [loop head]` markers per node. The loop-head node
/// is the body-entry point, where the guard has just been applied — the
/// single per-loop point at which a loop invariant is usually stated;
/// the test node is where the guard is evaluated.
fn annotations(p: &Program) -> Vec<String> {
    let mut ann = vec![String::new(); p.cfg.nnodes];
    for l in &p.loops {
        ann[l.head].push_str(" [loop test]");
        ann[l.body_entry].push_str(" [loop head]");
    }
    ann
}

fn phase_name(ph: Phase) -> &'static str {
    match ph {
        Phase::Seed => "seed",
        Phase::Join => "join",
        Phase::Widen => "widen",
        Phase::Narrow => "narrow",
    }
}

/// Everything one analysis run yields, rendered for printing plus the
/// polyhedral lift of every node value for comparisons.
struct Outcome {
    node_lines: Vec<Vec<String>>,
    lifted: Vec<Polyhedron>,
    widenings: usize,
    narrowing_passes: usize,
    diverged: Option<Divergence>,
    trace_lines: Vec<String>,
    tuple_trace_lines: Vec<String>,
    /// Trailing recorded iterates at the diverging node.
    divergence_lines: Vec<String>,
    oracle_lines: Vec<String>,
    oracle_violation: bool,
}

fn step_line<D: AbstractDomain>(
    s: &TraceStep<D>,
    names: &[String],
    style: RationalStyle,
) -> String {
    format!(
        "n{} {}: {}",
        s.node,
        phase_name(s.phase),
        s.value.render(names, style).join(" ; ")
    )
}

fn tuple_step_line<D: AbstractDomain>(
    s: &TupleStep<D>,
    labels: &[String],
    comp_names: &[Vec<String>],
    style: RationalStyle,
) -> String {
    let comps: Vec<String> = s
        .comps
        .iter()
        .enumerate()
        .map(|(k, c)| {
            format!(
                "{}: {}",
                labels[k],
                c.render(&comp_names[k], style).join(" ; ")
            )
        })
        .collect();
    format!(
        "n{} {} | {}",
        s.node,
        phase_name(s.phase),
        comps.join(" | ")
    )
}

/// Keep the last `keep` lines whose step is at `node`.
fn trailing_at_node(lines: &[(usize, String)], node: usize, keep: usize) -> Vec<String> {
    let at: Vec<&String> = lines
        .iter()
        .filter(|(n, _)| *n == node)
        .map(|(_, l)| l)
        .collect();
    let skip = at.len().saturating_sub(keep);
    at[skip..].iter().map(|l| (*l).clone()).collect()
}

fn run_method<D: AbstractDomain>(
    p: &Program,
    method: MethodArg,
    cfg: &EngineConfig,
    control_deps: bool,
    style: RationalStyle,
    orc: Option<&OracleConfig>,
) -> Result<Outcome, EngineError> {
    let names = &p.vars;
    let (values, widenings, narrowing_passes, diverged, trace_lines, tuple_trace_lines) =
        match method {
            MethodArg::Classic => {
                let r = node::analyze::<D>(p, cfg)?;
                let lines: Vec<(usize, String)> = r
                    .trace
                    .iter()
                    .map(|s| (s.node, step_line(s, names, style)))
                    .collect();
                (
                    r.values,
                    r.widenings,
                    r.narrowing_passes,
                    r.diverged,
                    lines,
                    vec![],
                )
            }
            MethodArg::StrataV1 | MethodArg::StrataV2 => {
                let variant = if method == MethodArg::StrataV1 {
                    StratifiedVariant::V1
                } else {
                    StratifiedVariant::V2
                };
                let r = stratified::analyze::<D>(p, cfg, variant, control_deps)?;
                let mut lines = Vec::new();
                for (si, run) in r.runs.iter().enumerate() {
                    for s in &run.result.trace {
                        lines.push((
                            s.node,
                            format!("stratum {si} {}", step_line(s, names, style)),
                        ));
                    }
                }
                let narrowing_passes = r
                    .runs
                    .iter()
                    .map(|run| run.result.narrowing_passes)
                    .max()
                    .unwrap_or(0);
                (
                    r.values,
                    r.widenings,
                    narrowing_passes,
                    r.diverged,
                    lines,
                    vec![],
                )
            }
            MethodArg::ProductW1 | MethodArg::ProductW2 | MethodArg::ProductClosure => {
                let w = match method {
                    MethodArg::ProductW1 => ProductWidening::Componentwise,
                    MethodArg::ProductW2 => ProductWidening::Hierarchical,
                    _ => ProductWidening::Closure,
                };
                let r = product::analyze::<D>(p, cfg, w, control_deps)?;
                let labels: Vec<String> = r
                    .ctx
                    .dims
                    .iter()
                    .map(|d| {
                        let mut ns: Vec<&str> = d.iter().map(|&v| names[v].as_str()).collect();
                        ns.sort_unstable();
                        format!("{{{}}}", ns.join(","))
                    })
                    .collect();
                let comp_names: Vec<Vec<String>> = r
                    .ctx
                    .dims
                    .iter()
                    .map(|d| d.iter().map(|&v| names[v].clone()).collect())
                    .collect();
                let lines: Vec<(usize, String)> = r
                    .trace
                    .iter()
                    .map(|s| (s.node, step_line(s, names, style)))
                    .collect();
                let tlines: Vec<(usize, String)> = r
                    .tuple_trace
                    .iter()
                    .map(|s| (s.node, tuple_step_line(s, &labels, &comp_names, style)))
                    .collect();
                (
                    r.values,
                    r.widenings,
                    r.narrowing_passes,
                    r.diverged,
                    lines,
                    tlines,
                )
            }
        };

    let divergence_lines = match diverged {
        None => vec![],
        Some(d) => {
            // Component-level iterates are the informative ones when the
            // product representation is in play.
            let src: &[(usize, String)] = if tuple_trace_lines.is_empty() {
                &trace_lines
            } else {
                &tuple_trace_lines
            };
            trailing_at_node(src, d.node, 6)
        }
    };

    let (oracle_lines, oracle_violation) = match orc {
        None => (vec![], false),
        Some(oc) => oracle_section(p, &values, diverged.is_some(), oc),
    };

    Ok(Outcome {
        node_lines: values.iter().map(|v| v.render(names, style)).collect(),
        lifted: values.iter().map(|v| v.to_polyhedron()).collect(),
        widenings,
        narrowing_passes,
        diverged,
        trace_lines: trace_lines.into_iter().map(|(_, l)| l).collect(),
        tuple_trace_lines: tuple_trace_lines.into_iter().map(|(_, l)| l).collect(),
        divergence_lines,
        oracle_lines,
        oracle_violation,
    })
}

fn oracle_section<D: AbstractDomain>(
    p: &Program,
    values: &[D],
    diverged: bool,
    oc: &OracleConfig,
) -> (Vec<String>, bool) {
    if diverged {
        return (
            vec!["oracle: skipped (analysis diverged)".to_string()],
            false,
        );
    }
    let res = oracle::reachable(p, oc);
    let total: usize = res.states.iter().map(|s| s.len()).sum();
    let coverage = if res.truncated {
        "truncated"
    } else {
        "complete"
    };
    let mut lines = vec![format!(
        "oracle: {total} states enumerated over [{}, {}], cap {} ({coverage})",
        oc.lo, oc.hi, oc.cap
    )];
    match oracle::check_soundness(&res, values) {
        Ok(()) => {
            lines.push(if res.truncated {
                "oracle: no violations among enumerated states".to_string()
            } else {
                "oracle: no violations".to_string()
            });
            (lines, false)
        }
        Err((node, store)) => {
            let vals: Vec<String> = p
                .vars
                .iter()
                .zip(&store)
                .map(|(n, v)| format!("{n} = {v}"))
                .collect();
            lines.push(format!(
                "oracle: VIOLATION at node {node}: reachable state ({}) escapes the invariant",
                vals.join(", ")
            ));
            (lines, true)
        }
    }
}

fn run_for_domain(
    p: &Program,
    method: MethodArg,
    domain: DomainArg,
    cfg: &EngineConfig,
    control_deps: bool,
    style: RationalStyle,
    orc: Option<&OracleConfig>,
) -> Result<Outcome, String> {
    let r = match domain {
        DomainArg::Polyhedra => run_method::<Polyhedron>(p, method, cfg, control_deps, style, orc),
        DomainArg::Intervals => {
            run_method::<IntervalValue>(p, method, cfg, control_deps, style, orc)
        }
    };
    r.map_err(|e| e.to_string())
}

fn strata_lines(p: &Program, control_deps: bool) -> Vec<String> {
    let strata = compute_strata(p, control_deps);
    let mut lines = vec!["strata:".to_string()];
    for (i, s) in strata.sets.iter().enumerate() {
        let mut ns: Vec<&str> = s.iter().map(|&v| p.vars[v].as_str()).collect();
        ns.sort_unstable();
        lines.push(format!("  S{i} = {{ {} }}", ns.join(", ")));
    }
    for (i, preds) in strata.imm_preds.iter().enumerate() {
        for &pi in preds {
            lines.push(format!("  S{pi} < S{i}"));
        }
    }
    lines
}

#[derive(Serialize)]
struct JsonNode {
    id: usize,
    #[serde(skip_serializing_if = "String::is_empty")]
    role: String,
    invariant: Vec<String>,
}

#[derive(Serialize)]
struct JsonDivergence {
    node: usize,
    widenings: usize,
}

#[derive(Serialize)]
struct JsonDump {
    method: &'static str,
    domain: &'static str,
    iterations: usize,
    converged: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    divergence: Option<JsonDivergence>,
    nodes: Vec<JsonNode>,
}

fn cmd_analyze(a: AnalyzeArgs) -> Result<i32, String> {
    let style = style_from_env()?;
    let p = load_program(&a.file)?;
    let cfg = a.engine.to_config();
    let orc = if a.check_oracle {
        Some(OracleConfig {
            lo: a.oracle_range.0,
            hi: a.oracle_range.1,
            cap: a.oracle_cap,
        })
    } else {
        None
    };
    let out = run_for_domain(
        &p,
        a.method,
        a.domain,
        &cfg,
        a.engine.control_deps,
        style,
        orc.as_ref(),
    )?;
    let ann = annotations(&p);

    if a.json {
        let dump = JsonDump {
            method: a.method.name(),
            domain: a.domain.name(),
            iterations: out.widenings,
            converged: out.diverged.is_none(),
            divergence: out.diverged.map(|d| JsonDivergence {
                node: d.node,
                widenings: d.widenings,
            }),
            nodes: out
                .node_lines
                .iter()
                .enumerate()
                .map(|(id, lines)| JsonNode {
                    id,
                    role: ann[id].replace("[", "").replace("]", "").trim().to_string(),
                    invariant: lines.clone(),
                })
                .collect(),
        };
        println!(
            "{}",
            serde_json::to_string_pretty(&dump).expect("serializable dump")
        );
    } else {
        println!("method: {}", a.method.name());
        println!("domain: {}", a.domain.name());
        if a.dump_strata {
            for l in strata_lines(&p, a.engine.control_deps) {
                println!("{l}");
            }
        }
        if a.trace {
            println!("trace:");
            for l in &out.trace_lines {
                println!("  {l}");
            }
            if !out.tuple_trace_lines.is_empty() {
                println!("tuple trace:");
                for l in &out.tuple_trace_lines {
                    println!("  {l}");
                }
            }
        }
        match out.diverged {
            Some(d) => {
                println!(
                    "divergence suspected: node {} exceeded {} widenings",
                    d.node, d.widenings
                );
                println!("last iterates at node {}:", d.node);
                for l in &out.divergence_lines {
                    println!("  {l}");
                }
            }
            None => {
                for (id, lines) in out.node_lines.iter().enumerate() {
                    println!("node {id}{}:", ann[id]);
                    for l in lines {
                        println!("  {l}");
                    }
                }
                println!("widenings: {}", out.widenings);
                println!("narrowing passes: {}", out.narrowing_passes);
            }
        }
        for l in &out.oracle_lines {
            println!("{l}");
        }
    }

    if out.diverged.is_some() {
        Ok(2)
    } else if out.oracle_violation {
        Ok(1)
    } else {
        Ok(0)
    }
}

fn cmd_compare(a: CompareArgs) -> Result<i32, String> {
    let style = style_from_env()?;
    let p = load_program(&a.file)?;
    let cfg = a.engine.to_config();
    let oa = run_for_domain(
        &p,
        a.method_a,
        a.domain_a,
        &cfg,
        a.engine.control_deps,
        style,
        None,
    )?;
    let ob = run_for_domain(
        &p,
        a.method_b,
        a.domain_b,
        &cfg,
        a.engine.control_deps,
        style,
        None,
    )?;

    println!("method a: {} ({})", a.method_a.name(), a.domain_a.name());
    println!("method b: {} ({})", a.method_b.name(), a.domain_b.name());

    for (side, out) in [("a", &oa), ("b", &ob)] {
        if let Some(d) = out.diverged {
            println!(
                "method {side} diverged: node {} exceeded {} widenings; no comparison",
                d.node, d.widenings
            );
            return Ok(2);
        }
    }
    if oa.lifted.len() != ob.lifted.len() {
        return Err("node mismatch between the two analyses".to_string());
    }

    let ann = annotations(&p);
    let mut counts = [0usize; 4]; // equal, stronger, weaker, incomparable
    for (id, (x, y)) in oa.lifted.iter().zip(&ob.lifted).enumerate() {
        let label = if x == y {
            counts[0] += 1;
            "equal"
        } else if x.includes(y) {
            counts[1] += 1;
            "stronger"
        } else if y.includes(x) {
            counts[2] += 1;
            "weaker"
        } else {
            counts[3] += 1;
            "incomparable"
        };
        println!("node {id}{}: {label}", ann[id]);
    }
    println!(
        "summary: equal {}, stronger {}, weaker {}, incomparable {}",
        counts[0], counts[1], counts[2], counts[3]
    );
    Ok(0)
}
