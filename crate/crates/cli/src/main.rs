use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use genprod::connectivity::{
    bfs_verdict, kappa_circ, lambda_circ, otimes_connected_via_family, predict_disconnection_via_partitions,
    predict_otimes_connectivity, sufficient_connectivity_check,
};
use genprod::cuts::{kappa_by_flow, lambda_by_flow, min_edge_cut, min_vertex_cut, ENUMERATION_GUARD};
use genprod::invariants::{
    alpha_circ, alpha_otimes_lower, chi_circ_pair, chi_circ_upper, chi_omega_otimes_bounds, exact, gamma_circ_upper,
    gamma_otimes_lower, h_tuple_chromatic, BoundKind, Guards, Invariant, InvariantReport,
};
use genprod::io::{parse_graph, parse_instance, to_canonical_json, write_edge_list, Kind};
use genprod::product::build;
use genprod::random::{random_instance, RandomParams};
use genprod::structure::{decompose, DECOMPOSE_GUARD};
use genprod::verify::{tally, verify, SUITES};
use genprod::{Error, Graph, Instance};

#[derive(Parser)]
#[command(name = "genprod", version, about = "Generalized direct and lexicographic graph products")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Edgelist,
}

#[derive(Subcommand)]
enum Command {
    /// Build the product of an instance document.
    Product {
        /// Instance file, or `-` for stdin.
        input: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Connectivity verdicts and witnesses.
    Connect { input: String },
    /// Exact invariant of a graph or of an instance's product, with bounds.
    Invariant {
        /// alpha, omega, chi, gamma, gamma_t, kappa, lambda or chi_h.
        which: String,
        input: String,
        /// Size guard for the exact solvers.
        #[arg(long)]
        guard: Option<usize>,
        /// Per-vertex demands for chi_h, comma separated.
        #[arg(long, value_delimiter = ',')]
        demands: Vec<usize>,
    },
    /// Vertex connectivity with a minimum separating set.
    Kappa {
        input: String,
        #[arg(long)]
        guard: Option<usize>,
    },
    /// Edge connectivity with a minimum cut.
    Lambda {
        input: String,
        #[arg(long)]
        guard: Option<usize>,
    },
    /// Search for a decomposition G ≅ H ⊗_h Γ with k blocks.
    Decompose {
        input: String,
        #[arg(long)]
        k: usize,
        /// Allow loops in H and in the members.
        #[arg(long)]
        loops: bool,
        #[arg(long)]
        guard: Option<usize>,
    },
    /// Run a verification suite over a seed range.
    Verify {
        #[arg(long)]
        suite: String,
        /// A seed `N` or an inclusive range `A..B`.
        #[arg(long, default_value = "1..100")]
        seed: String,
    },
    /// Print a seeded random instance document.
    Gen {
        #[arg(long, default_value = "otimes")]
        kind: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        base_order: Option<usize>,
        #[arg(long)]
        inner_order: Option<usize>,
        #[arg(long)]
        density: Option<f64>,
        #[arg(long)]
        family_size: Option<usize>,
        /// Allow a disconnected base.
        #[arg(long)]
        base_disconnected: bool,
        #[arg(long)]
        member_connected: bool,
        #[arg(long)]
        min_degree_one: bool,
        #[arg(long, conflicts_with = "nonbipartite")]
        bipartite: bool,
        #[arg(long)]
        nonbipartite: bool,
        /// Draw `circ` member orders from 1..=inner-order.
        #[arg(long)]
        mixed: bool,
    },
}

enum Input {
    Graph(Graph),
    Instance(Instance),
}

enum Failure {
    Usage(String),
    Violation(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = std::result::Result<Value, Failure>;

fn read_text(path: &str) -> std::result::Result<String, Failure> {
    let mut text = String::new();
    let res = if path == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
    Ok(text)
}

/// Instance documents carry a `kind` key; anything else is a bare graph.
fn read_input(path: &str) -> std::result::Result<Input, Failure> {
    let text = read_text(path)?;
    let is_instance = serde_json::from_str::<Value>(&text)
        .ok()
        .is_some_and(|v| v.get("kind").is_some());
    let wrap = |e: Error| Failure::Usage(format!("{path}: {e}"));
    if is_instance {
        parse_instance(&text).map(Input::Instance).map_err(wrap)
    } else {
        parse_graph(&text).map(Input::Graph).map_err(wrap)
    }
}

fn read_instance(path: &str) -> std::result::Result<Instance, Failure> {
    match read_input(path)? {
        Input::Instance(i) => Ok(i),
        Input::Graph(_) => Err(Failure::Usage(format!("{path}: expected an instance document"))),
    }
}

fn target_graph(input: &Input) -> Graph {
    match input {
        Input::Graph(g) => g.clone(),
        Input::Instance(i) => build(i).graph,
    }
}

fn product(path: &str, format: Format) -> std::result::Result<String, Failure> {
    let p = build(&read_instance(path)?);
    Ok(match format {
        Format::Edgelist => write_edge_list(&p.graph),
        Format::Json => to_canonical_json(&json!({
            "graph": p.graph,
            "kind": p.kind,
            "vertices": p.index_map(),
        })),
    })
}

fn err_value(e: Error) -> Value {
    json!({ "error": e.to_string() })
}

fn connect(path: &str) -> Outcome {
    let input = read_input(path)?;
    let g = target_graph(&input);
    let truth = bfs_verdict(&g);
    let Input::Instance(Instance::Otimes(inst)) = &input else {
        return Ok(json!({ "bfs": truth }));
    };
    let mut disagree = Vec::new();
    let mut verdict = |name: &str, v: genprod::Result<genprod::connectivity::ConnectivityVerdict>| match v {
        Ok(v) => {
            if v.connected != truth.connected || v.component_count != truth.component_count {
                disagree.push(name.to_string());
            }
            json!(v)
        }
        Err(e) => err_value(e),
    };
    let theorem = verdict("theorem", predict_otimes_connectivity(inst));
    let family = verdict("family", otimes_connected_via_family(inst));
    let partitions = match predict_disconnection_via_partitions(inst) {
        Ok(p) => {
            if p.witness.is_some() == truth.connected {
                disagree.push("partitions".into());
            }
            json!(p)
        }
        Err(e) => err_value(e),
    };
    let sufficient = match sufficient_connectivity_check(inst) {
        Ok(c) => {
            if c.is_some() && !truth.connected {
                disagree.push("sufficient".into());
            }
            json!(c)
        }
        Err(e) => err_value(e),
    };
    let doc = json!({
        "bfs": truth,
        "family": family,
        "partitions": partitions,
        "sufficient": sufficient,
        "theorem": theorem,
    });
    if disagree.is_empty() {
        Ok(doc)
    } else {
        eprintln!("disagreement with BFS: {}", disagree.join(", "));
        Err(Failure::Violation(doc))
    }
}

fn add_bounds(mut report: InvariantReport, inst: &Instance, guards: &Guards) -> InvariantReport {
    use BoundKind::*;
    use Invariant::*;
    let mut bounds: Vec<(&str, BoundKind, genprod::Result<usize>)> = Vec::new();
    match (inst, report.invariant) {
        (Instance::Otimes(i), Alpha) => bounds.push(("alpha_otimes_lower", Lower, alpha_otimes_lower(i, guards))),
        (Instance::Circ(c), Alpha) => match alpha_circ(c, guards) {
            Ok(r) if r.hypotheses_met => bounds.push(("alpha_circ", Equal, Ok(r.value))),
            Ok(_) => report.hypotheses_met = false,
            Err(e) => bounds.push(("alpha_circ", Equal, Err(e))),
        },
        (Instance::Otimes(i), Gamma | GammaT) => match gamma_otimes_lower(i, guards) {
            Ok(b) => {
                bounds.push(("gamma_local_union_lower", Lower, Ok(b.theorem)));
                if report.invariant == Gamma {
                    bounds.push(("gamma_union_lower", Lower, Ok(b.corollary)));
                }
            }
            Err(e) => bounds.push(("gamma_local_union_lower", Lower, Err(e))),
        },
        (Instance::Circ(c), Gamma) => bounds.push(("gamma_circ_upper", Upper, gamma_circ_upper(c, guards).map(|p| p.0))),
        (Instance::Otimes(i), Chi | Omega) => {
            let b = chi_omega_otimes_bounds(i, guards);
            if report.invariant == Chi {
                bounds.push(("chi_otimes_upper", Upper, b.map(|p| p.0)));
            } else {
                bounds.push(("omega_otimes_upper", Upper, b.map(|p| p.1)));
            }
        }
        (Instance::Circ(c), Chi) => {
            bounds.push(("chi_circ_upper", Upper, chi_circ_upper(c, guards)));
            bounds.push(("chi_complete_fibers", Equal, chi_circ_pair(c, guards).map(|p| p.2)));
        }
        (Instance::Circ(c), Kappa) => bounds.push(("kappa_circ", Equal, kappa_circ(c))),
        (Instance::Circ(c), Lambda) => bounds.push(("lambda_circ", Equal, lambda_circ(c))),
        _ => {}
    }
    for (name, kind, value) in bounds {
        match value {
            Ok(v) => report = report.with_bound(name, kind, v),
            Err(Error::Hypothesis(why)) => {
                eprintln!("{name}: hypothesis not met: {why}");
                report.hypotheses_met = false;
            }
            Err(e) => eprintln!("{name}: {e}"),
        }
    }
    report
}

fn invariant(which: &str, path: &str, guard: Option<usize>, demands: &[usize]) -> Outcome {
    let which: Invariant = which.parse()?;
    let guards = guard.map(Guards::uniform).unwrap_or_default();
    let input = read_input(path)?;
    let report = if which == Invariant::ChiH {
        let Input::Graph(g) = &input else {
            return Err(Failure::Usage("chi_h takes a bare graph and --demands".into()));
        };
        let demands = if demands.is_empty() { vec![1; g.order()] } else { demands.to_vec() };
        h_tuple_chromatic(g, &demands, guards.coloring)?
    } else {
        let report = exact(&target_graph(&input), which, &guards)?;
        match &input {
            Input::Instance(i) => add_bounds(report, i, &guards),
            Input::Graph(_) => report,
        }
    };
    if report.all_bounds_satisfied() {
        Ok(json!(report))
    } else {
        Err(Failure::Violation(json!(report)))
    }
}

fn cut(path: &str, guard: Option<usize>, vertex: bool) -> Outcome {
    let input = read_input(path)?;
    let g = target_graph(&input);
    let guard = guard.unwrap_or(ENUMERATION_GUARD);
    let (value, cut) = if vertex {
        match min_vertex_cut(&g, guard) {
            Ok((k, s)) => (k, Some(json!(s))),
            Err(Error::GuardExceeded { .. }) => (kappa_by_flow(&g), None),
            Err(e) => return Err(e.into()),
        }
    } else {
        match min_edge_cut(&g, guard) {
            Ok((l, s)) => (l, Some(json!(s))),
            Err(Error::GuardExceeded { .. }) => (lambda_by_flow(&g), None),
            Err(e) => return Err(e.into()),
        }
    };
    let formula = match &input {
        Input::Instance(Instance::Circ(c)) => {
            let f = if vertex { kappa_circ(c) } else { lambda_circ(c) };
            match f {
                Ok(v) => Some(v),
                Err(e) => {
                    eprintln!("formula not applicable: {e}");
                    None
                }
            }
        }
        _ => None,
    };
    let doc = json!({ "cut": cut, "formula": formula, "value": value });
    match formula {
        Some(f) if f != value => Err(Failure::Violation(doc)),
        _ => Ok(doc),
    }
}

fn decompose_verb(path: &str, k: usize, loops: bool, guard: Option<usize>) -> Outcome {
    let g = match read_input(path)? {
        Input::Graph(g) => g,
        Input::Instance(i) => build(&i).graph,
    };
    let (found, stats) = decompose(&g, k, loops, guard.unwrap_or(DECOMPOSE_GUARD))?;
    if let Some(d) = &found {
        if !d.satisfies_condition(&g) {
            return Err(Failure::Violation(json!({ "decomposition": d, "stats": stats })));
        }
    }
    Ok(json!({ "decomposition": found, "stats": stats }))
}

fn parse_seeds(s: &str) -> std::result::Result<std::ops::RangeInclusive<u64>, Failure> {
    let bad = || Failure::Usage(format!("bad seed range {s:?}, expected N or A..B"));
    match s.split_once("..") {
        Some((a, b)) => {
            let a: u64 = a.parse().map_err(|_| bad())?;
            let b: u64 = b.trim_start_matches('=').parse().map_err(|_| bad())?;
            if a > b {
                return Err(bad());
            }
            Ok(a..=b)
        }
        None => {
            let n: u64 = s.parse().map_err(|_| bad())?;
            Ok(n..=n)
        }
    }
}

fn verify_verb(suite: &str, seed: &str) -> Outcome {
    if !SUITES.contains(&suite) {
        return Err(Failure::Usage(format!("unknown suite {suite:?}; known: {}", SUITES.join(", "))));
    }
    let seeds = parse_seeds(seed)?;
    let start = std::time::Instant::now();
    let reports = verify(suite, seeds)?;
    let t = tally(&reports);
    eprintln!(
        "{suite}: {} confirmed, {} hypothesis-unmet, {} violations, {} degree checks in {:.2?}",
        t.confirmed,
        t.hypothesis_unmet,
        t.violations,
        t.degree_checks,
        start.elapsed()
    );
    let doc = json!({ "reports": reports, "suite": suite, "tally": t });
    if t.violations > 0 {
        Err(Failure::Violation(doc))
    } else {
        Ok(doc)
    }
}

#[allow(clippy::too_many_arguments)]
fn gen(
    kind: &str,
    seed: u64,
    base_order: Option<usize>,
    inner_order: Option<usize>,
    density: Option<f64>,
    family_size: Option<usize>,
    base_disconnected: bool,
    member_connected: bool,
    min_degree_one: bool,
    bipartite: Option<bool>,
    mixed: bool,
) -> std::result::Result<String, Failure> {
    let d = RandomParams::default();
    let params = RandomParams {
        kind: kind.parse::<Kind>()?,
        base_order: base_order.unwrap_or(d.base_order),
        inner_order: inner_order.unwrap_or(d.inner_order),
        edge_density: density.unwrap_or(d.edge_density),
        family_size: family_size.unwrap_or(d.family_size),
        base_connected: !base_disconnected,
        member_connected,
        member_min_degree_one: min_degree_one,
        member_bipartite: bipartite,
        mixed_inner_orders: mixed,
    };
    Ok(genprod::io::serialize_instance(&random_instance(seed, &params)?))
}

fn run(cli: Cli) -> std::result::Result<String, Failure> {
    let json = |o: Outcome| o.map(|v| to_canonical_json(&v));
    match cli.command {
        Command::Product { input, format } => product(&input, format),
        Command::Connect { input } => json(connect(&input)),
        Command::Invariant { which, input, guard, demands } => json(invariant(&which, &input, guard, &demands)),
        Command::Kappa { input, guard } => json(cut(&input, guard, true)),
        Command::Lambda { input, guard } => json(cut(&input, guard, false)),
        Command::Decompose { input, k, loops, guard } => json(decompose_verb(&input, k, loops, guard)),
        Command::Verify { suite, seed } => json(verify_verb(&suite, &seed)),
        Command::Gen {
            kind,
            seed,
            base_order,
            inner_order,
            density,
            family_size,
            base_disconnected,
            member_connected,
            min_degree_one,
            bipartite,
            nonbipartite,
            mixed,
        } => {
            let bip = if bipartite { Some(true) } else if nonbipartite { Some(false) } else { None };
            gen(
                &kind,
                seed,
                base_order,
                inner_order,
                density,
                family_size,
                base_disconnected,
                member_connected,
                min_degree_one,
                bip,
                mixed,
            )
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Violation(doc)) => {
            print!("{}", to_canonical_json(&doc));
            eprintln!("violation");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
