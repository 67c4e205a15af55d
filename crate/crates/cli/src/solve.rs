//! `tg solve`: runs a solver, re-checks its answer and prints a result envelope.

use serde_json::{json, Value};
use tempotw::decomposition::{parse_td, treewidth_heuristic, validate_tdc, TreeDecomposition};
use tempotw::solvers::{
    explore_bruteforce, explore_connected, is_delta_matching, is_r_connected, matching,
    matching_exact_with_budget, max_path_reach, replay, rmtc_bruteforce, rmtc_dp_from_td,
    separated, separation_bruteforce, separation_dp, trted_bruteforce, ExplorationSchedule, Move,
    SeparationInstance, DEFAULT_MATCHING_BUDGET,
};
use tempotw::{Rational, TemporalEdge, TemporalGraph, Weight};

use crate::args::{Format, Problem, SolveArgs};
use crate::error::{CliError, CliResult};
use crate::input::{pick, print_json, read_graph, read_text};

/// What a solver found, before rendering.
struct Outcome {
    value: Option<Value>,
    witness: Witness,
    exact: bool,
    note: Option<String>,
}

enum Witness {
    None,
    Vertices(Vec<usize>),
    Edges(Vec<TemporalEdge>),
    Schedule(ExplorationSchedule),
}

impl Outcome {
    fn infeasible(exact: bool) -> Self {
        Outcome {
            value: None,
            witness: Witness::None,
            exact,
            note: None,
        }
    }
}

fn problem_name(p: Problem) -> &'static str {
    match p {
        Problem::Separation => "separation",
        Problem::Rmtc => "rmtc",
        Problem::Matching => "matching",
        Problem::Trted => "trted",
        Problem::Explore => "explore",
    }
}

fn need<T: Copy>(v: Option<T>, flag: &str, problem: Problem) -> CliResult<T> {
    v.ok_or_else(|| CliError::Usage(format!("{} needs --{flag}", problem_name(problem))))
}

fn vertex(g: &TemporalGraph, v: usize, what: &str) -> CliResult<usize> {
    if v < g.n() {
        Ok(v)
    } else {
        Err(CliError::Input(format!(
            "{what} {v} is not a vertex of a graph on {} vertices",
            g.n()
        )))
    }
}

fn decomposition(a: &SolveArgs, g: &TemporalGraph) -> CliResult<TreeDecomposition> {
    let under = g.underlying_graph();
    let Some(path) = &a.td else {
        return Ok(treewidth_heuristic(&under).1);
    };
    let (d, n) = parse_td(&read_text(path)?)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    if n != g.n() {
        return Err(CliError::Input(format!(
            "{}: declares {n} vertices, graph has {}",
            path.display(),
            g.n()
        )));
    }
    if !validate_tdc(&under, &d)?.is_valid() {
        return Err(CliError::Input(format!(
            "{}: not a tree decomposition of the underlying graph",
            path.display()
        )));
    }
    Ok(d)
}

fn weight_value(w: &Rational) -> Value {
    if w.is_integer() {
        json!(w.to_integer())
    } else {
        json!(*w.numer() as f64 / *w.denom() as f64)
    }
}

fn separation(a: &SolveArgs, g: &TemporalGraph) -> CliResult<Outcome> {
    let s = vertex(g, need(a.source, "source", a.problem)?, "source")?;
    let z = vertex(g, need(a.target, "target", a.problem)?, "target")?;
    let inst = SeparationInstance {
        g,
        s,
        z,
        strict: a.strict.resolve(false),
    };
    let k = a.k.unwrap_or(g.n());
    let found = if a.oracle {
        separation_bruteforce(&inst, k)?
    } else {
        separation_dp(&inst, k, &decomposition(a, g)?)?
    };
    let Some(sep) = found else {
        return Ok(Outcome::infeasible(true));
    };
    if sep.len() > k || sep.contains(&s) || sep.contains(&z) || !separated(&inst, &sep) {
        return Err(CliError::Verification(format!(
            "{sep:?} does not separate {s} from {z}"
        )));
    }
    Ok(Outcome {
        value: Some(json!(sep.len())),
        witness: Witness::Vertices(sep),
        exact: true,
        note: None,
    })
}

fn rmtc(a: &SolveArgs, g: &TemporalGraph) -> CliResult<Outcome> {
    let r = vertex(g, need(a.root, "root", a.problem)?, "root")?;
    let found = if a.oracle {
        rmtc_bruteforce(g, r)?
    } else {
        rmtc_dp_from_td(g, r, &decomposition(a, g)?)?
    };
    let Some(sol) = found else {
        return Ok(Outcome::infeasible(true));
    };
    let mut cost = Rational::from_integer(0);
    for e in &sol.edges {
        let i = g
            .edge_index(e)
            .ok_or_else(|| CliError::Verification(format!("edge {e:?} is not in the graph")))?;
        cost += g.weight_or_one(i);
    }
    if cost != sol.cost || !is_r_connected(g, r, &sol.edges) {
        return Err(CliError::Verification(format!(
            "edge set of cost {} does not connect root {r}",
            sol.cost
        )));
    }
    Ok(Outcome {
        value: Some(weight_value(&sol.cost)),
        note: Some(format!("cost {}", sol.cost.to_decimal())),
        witness: Witness::Edges(sol.edges),
        exact: true,
    })
}

fn matching_cmd(a: &SolveArgs, g: &TemporalGraph) -> CliResult<Outcome> {
    let delta = need(a.delta, "delta", a.problem)?;
    let budget = a.budget_n.unwrap_or(DEFAULT_MATCHING_BUDGET);
    let (edges, exact) = if a.oracle {
        (matching_exact_with_budget(g, delta, budget)?, true)
    } else {
        let r = matching(g, delta, budget);
        (r.edges, r.exact)
    };
    if !is_delta_matching(&edges, delta) || edges.iter().any(|e| g.edge_index(e).is_none()) {
        return Err(CliError::Verification(format!(
            "edge set is not a {delta}-temporal matching"
        )));
    }
    let note = (!exact).then(|| format!("greedy result: more than {budget} temporal edges"));
    Ok(Outcome {
        value: Some(json!(edges.len())),
        witness: Witness::Edges(edges),
        exact,
        note,
    })
}

fn trted(a: &SolveArgs, g: &TemporalGraph) -> CliResult<Outcome> {
    let alpha = need(a.alpha, "alpha", a.problem)?;
    let beta = need(a.beta, "beta", a.problem)?;
    let k = need(a.k, "k", a.problem)?;
    let h = need(a.h, "h", a.problem)?;
    let Some(deleted) = trted_bruteforce(g, alpha, beta, k, h)? else {
        return Ok(Outcome::infeasible(true));
    };
    let mut mask = vec![false; g.num_edges()];
    for e in &deleted {
        let i = g
            .edge_index(e)
            .ok_or_else(|| CliError::Verification(format!("edge {e:?} is not in the graph")))?;
        mask[i] = true;
    }
    let reach = max_path_reach(g, alpha, beta, &mask);
    if deleted.len() > k || reach > h {
        return Err(CliError::Verification(format!(
            "after {} deletions some vertex still reaches {reach}",
            deleted.len()
        )));
    }
    Ok(Outcome {
        value: Some(json!(deleted.len())),
        witness: Witness::Edges(deleted),
        exact: true,
        note: Some(format!("max reach {reach}")),
    })
}

fn explore(a: &SolveArgs, g: &TemporalGraph) -> CliResult<Outcome> {
    let s = vertex(g, a.source.unwrap_or(0), "source")?;
    if a.connected && a.return_to_base {
        return Err(CliError::Usage(
            "--connected does not support --return".into(),
        ));
    }
    let found = if a.connected {
        Some(explore_connected(g, s)?)
    } else {
        explore_bruteforce(g, s, a.return_to_base)?
    };
    let Some(schedule) = found else {
        return Ok(Outcome::infeasible(!a.connected));
    };
    let run = replay(g, &schedule).map_err(CliError::Verification)?;
    if !run.all_visited() || (a.return_to_base && run.end != s) {
        return Err(CliError::Verification(
            "schedule leaves a vertex unvisited".into(),
        ));
    }
    let finish = schedule.steps.last().map_or(0, |st| st.t);
    let note = Some(format!("{} traversals", schedule.traversals()));
    Ok(Outcome {
        value: Some(json!(finish)),
        witness: Witness::Schedule(schedule),
        exact: !a.connected,
        note,
    })
}

fn witness_json(w: &Witness) -> Value {
    match w {
        Witness::None => Value::Null,
        Witness::Vertices(v) => json!(v),
        Witness::Edges(e) => json!(e),
        Witness::Schedule(s) => json!(s),
    }
}

fn witness_text(w: &Witness) -> String {
    let parts: Vec<String> = match w {
        Witness::None => vec!["-".into()],
        Witness::Vertices(v) => v.iter().map(usize::to_string).collect(),
        Witness::Edges(es) => es
            .iter()
            .map(|e| format!("{}-{}@{}", e.u, e.v, e.t))
            .collect(),
        Witness::Schedule(s) => std::iter::once(format!("start {}", s.start))
            .chain(s.steps.iter().map(|st| match st.mv {
                Move::Stay => format!("{}:stay", st.t),
                Move::Traverse { to } => format!("{}:{to}", st.t),
            }))
            .collect(),
    };
    if parts.is_empty() {
        "-".into()
    } else {
        parts.join(" ")
    }
}

pub fn run(a: &SolveArgs) -> CliResult {
    let format = pick(a.format.format, &[Format::Json, Format::Text])?;
    let name = problem_name(a.problem);
    let g = read_graph(&a.graph)?;
    let outcome = match a.problem {
        Problem::Separation => separation(a, &g),
        Problem::Rmtc => rmtc(a, &g),
        Problem::Matching => matching_cmd(a, &g),
        Problem::Trted => trted(a, &g),
        Problem::Explore => explore(a, &g),
    };
    let o = match outcome {
        Ok(o) => o,
        Err(e @ (CliError::Budget(_) | CliError::Verification(_))) => {
            if format == Format::Json {
                print_json(&json!({
                    "problem": name,
                    "status": "error",
                    "value": null,
                    "witness": null,
                    "exact": false,
                    "message": e.to_string(),
                }));
            }
            return Err(e);
        }
        Err(e) => return Err(e),
    };
    let status = if o.value.is_some() {
        "feasible"
    } else {
        "infeasible"
    };
    match format {
        Format::Json => {
            let mut env = json!({
                "problem": name,
                "status": status,
                "value": o.value.clone().unwrap_or(Value::Null),
                "witness": witness_json(&o.witness),
                "exact": o.exact,
            });
            if let Some(n) = &o.note {
                env["message"] = json!(n);
            }
            print_json(&env);
        }
        _ => {
            println!("problem {name}");
            println!("status {status}");
            match &o.value {
                Some(v) => println!("value {v}"),
                None => println!("value -"),
            }
            println!("witness {}", witness_text(&o.witness));
            println!("exact {}", o.exact);
            if let Some(n) = &o.note {
                println!("note {n}");
            }
        }
    }
    Ok(())
}
