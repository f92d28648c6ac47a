//! Command-line front end: compute exact cover costs, run simulations,
//! run the verification suites, and generate graph files.
//!
//! Exit codes: 0 success, 1 usage error, 2 input error, 3 verification
//! failure.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rand::Rng;
use serde_json::json;

use crate::graph::{generate, parse_graph, Graph, GraphKind};
use crate::{closed_forms, escape, hitting, simulate, verify, CoverCost};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

/// Above this `n`, the O(n^5) theorem method gets a stderr warning.
const THEOREM_SIZE_WARNING: usize = 60;

#[derive(Parser)]
#[command(
    name = "covercost",
    about = "Cover cost of random walks on finite graphs: exact methods, closed forms, simulation",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the exact cover cost of a graph from a chosen root.
    Compute {
        /// Graph file in edge-list format.
        #[arg(long)]
        graph: PathBuf,
        /// Root vertex, or "all" for a per-root table.
        #[arg(long, default_value = "0")]
        root: RootArg,
        /// Exact method to use.
        #[arg(long, value_enum, default_value_t = Method::Hitting)]
        method: Method,
        /// Emit a single JSON object instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Estimate cover time and cover cost by Monte Carlo cover tours.
    Simulate {
        /// Graph file in edge-list format.
        #[arg(long)]
        graph: PathBuf,
        /// Root vertex of every tour.
        #[arg(long, default_value_t = 0)]
        root: usize,
        /// Number of independent walks.
        #[arg(long)]
        walks: u64,
        /// RNG seed; drawn from entropy (and echoed) when omitted.
        #[arg(long)]
        seed: Option<u64>,
        /// Emit a single JSON object instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Run the built-in cross-validation suites.
    Verify {
        /// Suite name: path, star, tree, methods, oracle, montecarlo, all.
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Generate a graph file from a built-in family.
    Gen {
        /// Family: path, cycle, star, complete, random_tree, gnp.
        kind: String,
        /// Size parameter (edges for path, leaves for star, vertices otherwise).
        n: usize,
        /// Edge probability (gnp only).
        p: Option<f64>,
        /// Seed for the random families; drawn from entropy (and echoed) when omitted.
        #[arg(long)]
        seed: Option<u64>,
        /// Output file; stdout when omitted.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Hitting,
    Theorem,
    Dvector,
    Tree,
    #[value(name = "closed_form")]
    ClosedForm,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Hitting => "hitting",
            Method::Theorem => "theorem",
            Method::Dvector => "dvector",
            Method::Tree => "tree",
            Method::ClosedForm => "closed_form",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum RootArg {
    All,
    One(usize),
}

impl FromStr for RootArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("all") {
            Ok(RootArg::All)
        } else {
            s.parse()
                .map(RootArg::One)
                .map_err(|_| format!("expected a vertex index or \"all\", got {s:?}"))
        }
    }
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Input(String),
    Verification,
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Input(_) => EXIT_INPUT,
            CliError::Verification => EXIT_VERIFY,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Input(m) => write!(f, "{m}"),
            CliError::Verification => write!(f, "verification failed"),
        }
    }
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

/// Parse `std::env::args` and run; returns the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            if !matches!(e, CliError::Verification) {
                eprintln!("error: {e}");
            }
            e.code()
        }
    }
}

fn dispatch(command: Command) -> Result<(), CliError> {
    match command {
        Command::Compute {
            graph,
            root,
            method,
            json,
        } => cmd_compute(&graph, root, method, json),
        Command::Simulate {
            graph,
            root,
            walks,
            seed,
            json,
        } => cmd_simulate(&graph, root, walks, seed, json),
        Command::Verify { suite } => cmd_verify(&suite),
        Command::Gen { kind, n, p, seed, out } => cmd_gen(&kind, n, p, seed, out.as_deref()),
    }
}

fn load_graph(path: &Path) -> Result<Graph, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    parse_graph(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn cmd_compute(path: &Path, root: RootArg, method: Method, json: bool) -> Result<(), CliError> {
    let g = load_graph(path)?;
    if let RootArg::One(r) = root {
        g.check_vertex(r)
            .map_err(|e| CliError::Input(e.to_string()))?;
    }
    if method == Method::Theorem && g.n() > THEOREM_SIZE_WARNING {
        eprintln!(
            "warning: the theorem method is O(n^5); n = {} will be slow",
            g.n()
        );
    }
    let started = Instant::now();
    let costs: Vec<(usize, CoverCost)> = compute_costs(&g, root, method)?;
    let elapsed = started.elapsed().as_secs_f64();
    let n = g.n();

    match (root, json) {
        (RootArg::One(r), true) => {
            let (_, cost) = costs[0];
            println!(
                "{}",
                json!({
                    "method": method.name(),
                    "root": r,
                    "n": n,
                    "cc": cost.per_vertex,
                    "CC": cost.total,
                    "elapsed_seconds": elapsed,
                })
            );
        }
        (RootArg::All, true) => {
            let roots: Vec<_> = costs
                .iter()
                .map(|(r, c)| json!({"root": r, "cc": c.per_vertex, "CC": c.total}))
                .collect();
            println!(
                "{}",
                json!({
                    "method": method.name(),
                    "root": "all",
                    "n": n,
                    "roots": roots,
                    "elapsed_seconds": elapsed,
                })
            );
        }
        (RootArg::One(r), false) => {
            let (_, cost) = costs[0];
            println!(
                "method={} root={r} n={n} cc={} CC={} elapsed={elapsed:.6}s",
                method.name(),
                cost.per_vertex,
                cost.total
            );
        }
        (RootArg::All, false) => {
            println!("method={} root=all n={n} elapsed={elapsed:.6}s", method.name());
            for (r, cost) in &costs {
                println!("root {r}: cc={} CC={}", cost.per_vertex, cost.total);
            }
        }
    }
    Ok(())
}

fn compute_costs(
    g: &Graph,
    root: RootArg,
    method: Method,
) -> Result<Vec<(usize, CoverCost)>, CliError> {
    let all_roots: Vec<usize> = match root {
        RootArg::All => (0..g.vertex_count()).collect(),
        RootArg::One(r) => vec![r],
    };
    let costs = match method {
        Method::Hitting => match root {
            RootArg::All => hitting::cover_cost_all_roots(g)?,
            RootArg::One(r) => vec![hitting::cover_cost_hitting(g, r)?],
        },
        Method::Theorem => match root {
            RootArg::All => escape::cover_cost_theorem_all_roots(g)?,
            RootArg::One(r) => vec![escape::cover_cost_theorem(g, r)?],
        },
        Method::Dvector => all_roots
            .iter()
            .map(|&r| escape::d_vector(g, r).map(|d| d.cover_cost()))
            .collect::<Result<_, _>>()?,
        Method::Tree => all_roots
            .iter()
            .map(|&r| closed_forms::cover_cost_tree(g, r))
            .collect::<Result<_, _>>()?,
        Method::ClosedForm => closed_form_costs(g, &all_roots)?,
    };
    Ok(all_roots.into_iter().zip(costs).collect())
}

/// Closed-form evaluation for the families that have one: any root of a
/// path, or the center of a star.
fn closed_form_costs(g: &Graph, roots: &[usize]) -> Result<Vec<CoverCost>, CliError> {
    let n = g.n();
    if let Some(positions) = path_positions(g) {
        return roots
            .iter()
            .map(|&r| {
                let cc = closed_forms::cc_path(n, positions[r])?;
                Ok(CoverCost::from_per_vertex(cc, n))
            })
            .collect();
    }
    if let Some(center) = star_center(g) {
        return roots
            .iter()
            .map(|&r| {
                if r == center {
                    Ok(CoverCost::from_per_vertex(closed_forms::cc_star_center(n)?, n))
                } else {
                    Err(CliError::Input(format!(
                        "closed_form on a star applies only to the center (vertex {center})"
                    )))
                }
            })
            .collect();
    }
    Err(CliError::Input(
        "closed_form requires a path (any root) or a star (center root)".into(),
    ))
}

/// If the graph is a path, the position of every vertex along it.
fn path_positions(g: &Graph) -> Option<Vec<usize>> {
    let v = g.vertex_count();
    if !g.is_tree() {
        return None;
    }
    let endpoints: Vec<usize> = (0..v).filter(|&u| g.degree(u) == 1).collect();
    if endpoints.len() != 2 || (0..v).any(|u| g.degree(u) > 2) {
        return None;
    }
    Some(g.bfs_distances(endpoints[0]).expect("valid endpoint"))
}

/// If the graph is a star with at least 2 leaves, its center. A single
/// edge counts as a path, which covers the 1-leaf star.
fn star_center(g: &Graph) -> Option<usize> {
    let v = g.vertex_count();
    let center = (0..v).find(|&u| g.degree(u) == v - 1)?;
    if v >= 3 && (0..v).all(|u| u == center || g.degree(u) == 1) {
        Some(center)
    } else {
        None
    }
}

fn cmd_simulate(
    path: &Path,
    root: usize,
    walks: u64,
    seed: Option<u64>,
    json: bool,
) -> Result<(), CliError> {
    let g = load_graph(path)?;
    let seed = seed.unwrap_or_else(|| rand::thread_rng().gen());
    let summary = simulate::estimate(&g, root, walks, seed)?;
    let ratio = summary.mean_cost / summary.mean_steps;
    if json {
        println!(
            "{}",
            json!({
                "walks": summary.walks,
                "seed": summary.seed,
                "rng": simulate::RNG_SPEC,
                "mean_steps": summary.mean_steps,
                "ci95_steps": summary.ci95_steps,
                "mean_cost": summary.mean_cost,
                "ci95_cost": summary.ci95_cost,
            })
        );
    } else {
        println!(
            "walks={} seed={} rng={}",
            summary.walks,
            summary.seed,
            simulate::RNG_SPEC
        );
        println!(
            "cover time estimate: mean_steps={} ci95={}",
            summary.mean_steps, summary.ci95_steps
        );
        println!(
            "cover cost estimate: mean_cost={} ci95={}",
            summary.mean_cost, summary.ci95_cost
        );
        println!("cc/CT ratio estimate: {ratio}");
    }
    Ok(())
}

fn cmd_verify(suite: &str) -> Result<(), CliError> {
    let reports = verify::run(suite)
        .map_err(|e| CliError::Input(e.to_string()))?
        .ok_or_else(|| {
            CliError::Usage(format!(
                "unknown suite {suite:?}; expected one of {:?} or \"all\"",
                verify::SUITE_NAMES
            ))
        })?;
    let mut all_pass = true;
    for report in &reports {
        println!("suite {}:", report.suite);
        for check in &report.checks {
            let status = if check.pass { "PASS" } else { "FAIL" };
            println!(
                "  [{status}] {}: max_err={:.3e} (tol {:.1e})",
                check.name, check.max_err, check.tol
            );
            all_pass &= check.pass;
        }
    }
    if all_pass {
        println!("all checks passed");
        Ok(())
    } else {
        println!("verification FAILED");
        Err(CliError::Verification)
    }
}

fn cmd_gen(
    kind: &str,
    n: usize,
    p: Option<f64>,
    seed: Option<u64>,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let needs_p = kind == "gnp";
    if needs_p && p.is_none() {
        return Err(CliError::Usage("gnp requires an edge probability".into()));
    }
    if !needs_p && p.is_some() {
        return Err(CliError::Usage(format!(
            "{kind} takes no edge probability"
        )));
    }
    let randomized = matches!(kind, "random_tree" | "gnp");
    let seed = seed.unwrap_or_else(|| rand::thread_rng().gen());
    let kind_desc;
    let graph_kind = match kind {
        "path" => {
            kind_desc = format!("path n={n}");
            GraphKind::Path { edges: n }
        }
        "cycle" => {
            kind_desc = format!("cycle n={n}");
            GraphKind::Cycle { vertices: n }
        }
        "star" => {
            kind_desc = format!("star n={n}");
            GraphKind::Star { leaves: n }
        }
        "complete" => {
            kind_desc = format!("complete n={n}");
            GraphKind::Complete { vertices: n }
        }
        "random_tree" => {
            kind_desc = format!("random_tree n={n} seed={seed}");
            GraphKind::RandomTree {
                vertices: n,
                seed,
            }
        }
        "gnp" => {
            let p = p.expect("validated above");
            kind_desc = format!("gnp n={n} p={p} seed={seed}");
            GraphKind::Gnp {
                vertices: n,
                edge_probability: p,
                seed,
            }
        }
        other => {
            return Err(CliError::Usage(format!(
                "unknown graph kind {other:?}; expected path, cycle, star, complete, random_tree or gnp"
            )))
        }
    };
    let g = generate(graph_kind).map_err(|e| CliError::Input(e.to_string()))?;
    if randomized {
        eprintln!("seed={seed}");
    }
    let body = format!("# {kind_desc}\n{}", g.to_edge_list());
    match out {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{body}"),
    }
    Ok(())
}
