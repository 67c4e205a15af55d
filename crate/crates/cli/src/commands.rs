//! Every subcommand except `solve` and `gen`.

use std::fmt::Write;

use serde_json::{json, Value};
use tempotw::decomposition::{
    parse_td, treewidth_exact, treewidth_heuristic, validate_tdc, write_td, TreeDecomposition,
};
use tempotw::expansion::{
    appearance_of, delta_temporal_line_graph, label_graph, static_expansion,
    strict_static_expansion, undirected_static_expansion,
};
use tempotw::export::{digraph_to_dimacs, digraph_to_dot, graph_to_dimacs, graph_to_dot};
use tempotw::reach::{as_path, foremost_walk, reachable_set, verify_walk, WalkQuery};
use tempotw::twidth::{
    parse_ttdc, ttw, validate_ttdc, width_report, write_ttdc, Mode, TemporalTreeDecomposition,
    Width, WidthOptions,
};
use tempotw::{Error, StaticDigraph, StaticGraph, TemporalGraph};

use crate::args::{
    ExpandArgs, Format, InfoArgs, LabelGraphArgs, LineGraphArgs, ParamsArgs, TdcArgs, ValidateArgs,
    WalkArgs, WidthArgs,
};
use crate::error::{CliError, CliResult};
use crate::input::{pick, print_json, read_graph, read_text};

pub fn width_options(w: WidthArgs) -> WidthOptions {
    let opts = if w.heuristic {
        WidthOptions::heuristic()
    } else {
        WidthOptions::exact()
    };
    match w.budget_n {
        Some(n) => opts.with_budget(n),
        None => opts,
    }
}

fn flag(w: Width) -> &'static str {
    if w.exact {
        "exact"
    } else {
        "heuristic"
    }
}

fn check_vertex(g: &TemporalGraph, v: usize, what: &str) -> CliResult {
    if v < g.n() {
        Ok(())
    } else {
        Err(CliError::Input(format!(
            "{what} {v} is not a vertex of a graph on {} vertices",
            g.n()
        )))
    }
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    let parts: Vec<String> = items.into_iter().map(|x| x.to_string()).collect();
    if parts.is_empty() {
        "-".into()
    } else {
        parts.join(" ")
    }
}

pub fn info(a: &InfoArgs) -> CliResult {
    let g = read_graph(&a.graph)?;
    let layers = g.layer_edge_counts();
    let isolated = g.isolated_vertices();
    match pick(a.format.format, &[Format::Text, Format::Json])? {
        Format::Json => print_json(&json!({
            "n": g.n(),
            "tau": g.tau(),
            "m": g.num_edges(),
            "weighted": g.is_weighted(),
            "layer_edges": layers,
            "isolated": isolated,
        })),
        _ => {
            println!("n={} tau={} m={}", g.n(), g.tau(), g.num_edges());
            println!("layers {}", join(&layers));
            println!("isolated {}", join(&isolated));
        }
    }
    Ok(())
}

pub fn params(a: &ParamsArgs) -> CliResult {
    let g = read_graph(&a.graph)?;
    let deltas: Vec<usize> = if a.delta.is_empty() {
        (1..=g.tau()).collect()
    } else {
        a.delta.clone()
    };
    let opts = width_options(a.width);
    let report = width_report(&g, &deltas, opts)?;
    let violations = report.ordering_violations(g.tau());
    if !violations.is_empty() {
        return Err(CliError::Verification(violations.join("; ")));
    }
    let entry = |w: Width| json!({ "value": w.value, "exact": w.exact });
    match pick(a.format.format, &[Format::Text, Format::Json])? {
        Format::Json => print_json(&json!({
            "n": g.n(),
            "tau": g.tau(),
            "mode": opts.mode,
            "tw_layers": entry(report.tw_layer_max),
            "tw_slice": report.tw_slice.iter().map(|(&d, &w)| json!({ "delta": d, "value": w.value, "exact": w.exact })).collect::<Vec<_>>(),
            "tw_underlying": entry(report.tw_underlying),
            "ttw": entry(report.ttw),
        })),
        _ => {
            println!(
                "tw_layers {} {}",
                report.tw_layer_max.value,
                flag(report.tw_layer_max)
            );
            for (d, w) in &report.tw_slice {
                println!("tw_slice {d} {} {}", w.value, flag(*w));
            }
            println!(
                "tw_underlying {} {}",
                report.tw_underlying.value,
                flag(report.tw_underlying)
            );
            println!("ttw {} {}", report.ttw.value, flag(report.ttw));
        }
    }
    Ok(())
}

fn appearance_label(n: usize, id: usize) -> String {
    let l = appearance_of(n, id);
    format!("{}@{}", l.vertex, l.row)
}

fn print_digraph(d: &StaticDigraph, n: usize, kind: &str, format: Format) {
    match format {
        Format::Json => print_json(&json!({
            "kind": kind,
            "vertices": (0..d.n()).map(|id| { let l = appearance_of(n, id); [l.vertex, l.row] }).collect::<Vec<_>>(),
            "arcs": d.arcs().map(|(u, v)| [u, v]).collect::<Vec<_>>(),
        })),
        Format::Dot => print!("{}", digraph_to_dot(d, "expansion")),
        Format::Dimacs => print!("{}", digraph_to_dimacs(d)),
        Format::Text => {
            let mut s = format!("{kind} vertices={} arcs={}\n", d.n(), d.num_arcs());
            for (u, v) in d.arcs() {
                let _ = writeln!(
                    s,
                    "{} -> {}",
                    appearance_label(n, u),
                    appearance_label(n, v)
                );
            }
            print!("{s}");
        }
    }
}

pub fn expand(a: &ExpandArgs) -> CliResult {
    let g = read_graph(&a.graph)?;
    let format = pick(
        a.format.format,
        &[Format::Text, Format::Json, Format::Dot, Format::Dimacs],
    )?;
    let n = g.n();
    if !a.undirected {
        let strict = a.strict.resolve(false);
        let (d, kind) = if strict {
            (strict_static_expansion(&g), "strict")
        } else {
            (static_expansion(&g), "nonstrict")
        };
        print_digraph(&d, n, kind, format);
        return Ok(());
    }
    let u = undirected_static_expansion(&g);
    match format {
        Format::Json => print_json(&json!({
            "kind": "undirected",
            "vertices": (0..u.n()).map(|id| { let l = appearance_of(n, id); [l.vertex, l.row] }).collect::<Vec<_>>(),
            "edges": u.edges().map(|(x, y)| [x, y]).collect::<Vec<_>>(),
        })),
        Format::Dot => print!(
            "{}",
            graph_to_dot(&u, "expansion", |id| appearance_label(n, id))
        ),
        Format::Dimacs => print!("{}", graph_to_dimacs(&u)),
        Format::Text => {
            println!("undirected vertices={} edges={}", u.n(), u.num_edges());
            for (x, y) in u.edges() {
                println!("{} -- {}", appearance_label(n, x), appearance_label(n, y));
            }
        }
    }
    Ok(())
}

pub fn linegraph(a: &LineGraphArgs) -> CliResult {
    let g = read_graph(&a.graph)?;
    let lg = delta_temporal_line_graph(&g, a.delta);
    let name = |i: usize| {
        let e = g.edges()[i];
        format!("{}-{}@{}", e.u, e.v, e.t)
    };
    match pick(
        a.format.format,
        &[Format::Text, Format::Json, Format::Dot, Format::Dimacs],
    )? {
        Format::Json => print_json(&json!({
            "delta": a.delta,
            "vertices": g.edges(),
            "edges": lg.edges().map(|(x, y)| [x, y]).collect::<Vec<_>>(),
        })),
        Format::Dot => print!("{}", graph_to_dot(&lg, "linegraph", name)),
        Format::Dimacs => print!("{}", graph_to_dimacs(&lg)),
        Format::Text => {
            println!(
                "linegraph delta={} vertices={} edges={}",
                a.delta,
                lg.n(),
                lg.num_edges()
            );
            for (x, y) in lg.edges() {
                println!("{} -- {}", name(x), name(y));
            }
        }
    }
    Ok(())
}

pub fn labelgraph(a: &LabelGraphArgs) -> CliResult {
    let g = read_graph(&a.graph)?;
    let l = label_graph(&g)?;
    let times = |bits: u64| {
        (1..=l.tau)
            .filter(|t| bits >> (t - 1) & 1 == 1)
            .collect::<Vec<_>>()
    };
    match pick(a.format.format, &[Format::Text, Format::Json])? {
        Format::Json => print_json(&json!({
            "n": l.base.n(),
            "tau": l.tau,
            "edges": l.label.iter().map(|(&(u, v), &bits)| json!({ "u": u, "v": v, "mask": bits, "times": times(bits) })).collect::<Vec<_>>(),
        })),
        _ => {
            println!("{} {}", l.base.n(), l.tau);
            for (&(u, v), &bits) in &l.label {
                println!("{u} {v} {}", join(times(bits)));
            }
        }
    }
    Ok(())
}

fn bag_tree_dot(labels: &[String], edges: &[(usize, usize)]) -> String {
    let tree = StaticGraph::from_edges(labels.len(), edges.iter().copied());
    graph_to_dot(&tree, "decomposition", |i| labels[i].clone())
}

fn over_budget(what: &str) -> CliError {
    CliError::Budget(format!(
        "{what} is too large for the exact solver; raise --budget-n or pass --heuristic"
    ))
}

pub fn tdc(a: &TdcArgs) -> CliResult {
    let g = read_graph(&a.graph)?;
    let opts = width_options(a.width);
    let format = pick(a.format.format, &[Format::Text, Format::Json, Format::Dot])?;
    if a.temporal {
        let (w, d) = ttw(&g, opts);
        if opts.mode == Mode::Exact && !w.exact {
            return Err(over_budget("the static expansion"));
        }
        match format {
            Format::Json => print_json(&json!({
                "kind": "ttdc",
                "width": w.value,
                "exact": w.exact,
                "bags": d.bags,
                "edges": d.edges,
            })),
            Format::Dot => {
                let labels: Vec<String> = d
                    .bags
                    .iter()
                    .map(|b| {
                        b.iter()
                            .map(|(v, t)| format!("{v}@{t}"))
                            .collect::<Vec<_>>()
                            .join(" ")
                    })
                    .collect();
                print!("{}", bag_tree_dot(&labels, &d.edges));
            }
            _ => print!("{}", write_ttdc(&d, g.n(), g.tau())),
        }
        return Ok(());
    }
    let under = g.underlying_graph();
    let (w, d) = match opts.mode {
        Mode::Exact => {
            let (value, d) = treewidth_exact(&under, opts.budget_n).map_err(|e| match e {
                Error::Budget(_) => over_budget("the underlying graph"),
                e => e.into(),
            })?;
            (Width { value, exact: true }, d)
        }
        Mode::Heuristic => {
            let (value, d) = treewidth_heuristic(&under);
            (
                Width {
                    value,
                    exact: false,
                },
                d,
            )
        }
    };
    match format {
        Format::Json => print_json(&json!({
            "kind": "td",
            "width": w.value,
            "exact": w.exact,
            "bags": d.bags,
            "edges": d.edges,
        })),
        Format::Dot => {
            let labels: Vec<String> = d.bags.iter().map(join).collect();
            print!("{}", bag_tree_dot(&labels, &d.edges));
        }
        _ => print!("{}", write_td(&d, g.n())),
    }
    Ok(())
}

fn is_ttdc(text: &str) -> bool {
    text.lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('c'))
        .is_some_and(|l| l.split_whitespace().nth(1) == Some("ttdc"))
}

struct Verdict {
    kind: &'static str,
    width: Option<usize>,
    problems: Vec<String>,
}

fn structural(e: Error) -> CliResult<Vec<String>> {
    match e {
        Error::InvalidDecomposition(m) => Ok(vec![m]),
        e => Err(e.into()),
    }
}

fn check_td(g: &TemporalGraph, d: &TreeDecomposition, n: usize) -> CliResult<Verdict> {
    let mut problems = Vec::new();
    if n != g.n() {
        problems.push(format!("declared {n} vertices, graph has {}", g.n()));
    }
    match validate_tdc(&g.underlying_graph(), d) {
        Ok(r) => {
            if let Some(v) = r.uncovered_vertex {
                problems.push(format!("vertex {v} is in no bag"));
            }
            if let Some((u, v)) = r.uncovered_edge {
                problems.push(format!("edge {u}-{v} is in no bag"));
            }
            if let Some(v) = r.disconnected_vertex {
                problems.push(format!("bags holding vertex {v} are not connected"));
            }
        }
        Err(e) => problems.extend(structural(e)?),
    }
    Ok(Verdict {
        kind: "td",
        width: Some(d.width()),
        problems,
    })
}

fn check_ttdc(
    g: &TemporalGraph,
    d: &TemporalTreeDecomposition,
    n: usize,
    tau: usize,
) -> CliResult<Verdict> {
    let mut problems = Vec::new();
    if (n, tau) != (g.n(), g.tau()) {
        problems.push(format!(
            "declared n={n} tau={tau}, graph has n={} tau={}",
            g.n(),
            g.tau()
        ));
    }
    match validate_ttdc(g, d) {
        Ok(r) => {
            if let Some((v, t)) = r.uncovered_appearance {
                problems.push(format!("appearance {v}@{t} is in no bag"));
            }
            if let Some(e) = r.uncovered_edge {
                problems.push(format!(
                    "temporal edge {} {} {} is in no bag",
                    e.u, e.v, e.t
                ));
            }
            if let Some((v, t)) = r.broken_succession {
                problems.push(format!("{v}@{t} and {v}@{} share no bag", t + 1));
            }
            if let Some((v, t)) = r.disconnected_appearance {
                problems.push(format!("bags holding {v}@{t} are not connected"));
            }
        }
        Err(e) => problems.extend(structural(e)?),
    }
    Ok(Verdict {
        kind: "ttdc",
        width: Some(d.width()),
        problems,
    })
}

pub fn validate(a: &ValidateArgs) -> CliResult {
    let g = read_graph(&a.graph)?;
    let text = read_text(&a.decomposition)?;
    let located = |e: Error| CliError::Input(format!("{}: {e}", a.decomposition.display()));
    let verdict = if is_ttdc(&text) {
        let (d, n, tau) = parse_ttdc(&text).map_err(located)?;
        check_ttdc(&g, &d, n, tau)?
    } else {
        let (d, n) = parse_td(&text).map_err(located)?;
        check_td(&g, &d, n)?
    };
    let valid = verdict.problems.is_empty();
    match pick(a.format.format, &[Format::Text, Format::Json])? {
        Format::Json => print_json(&json!({
            "kind": verdict.kind,
            "valid": valid,
            "width": verdict.width,
            "problems": verdict.problems,
        })),
        _ => {
            if valid {
                println!(
                    "valid {} width={}",
                    verdict.kind,
                    verdict.width.unwrap_or(0)
                );
            } else {
                println!("invalid {}", verdict.kind);
                for p in &verdict.problems {
                    println!("  {p}");
                }
            }
        }
    }
    if valid {
        Ok(())
    } else {
        Err(CliError::Invalid)
    }
}

pub fn walk(a: &WalkArgs) -> CliResult {
    let g = read_graph(&a.graph)?;
    check_vertex(&g, a.source, "source")?;
    if let (Some(al), Some(b)) = (a.alpha, a.beta) {
        if al > b {
            return Err(CliError::Input(format!("alpha {al} exceeds beta {b}")));
        }
    }
    let strict = a.strict.resolve(false);
    let q = WalkQuery::from(a.source)
        .strict(strict)
        .gaps(a.alpha, a.beta)
        .depart_after(a.depart_after);
    let format = pick(a.format.format, &[Format::Text, Format::Json])?;
    let Some(target) = a.target else {
        let reached = reachable_set(&g, &q);
        match format {
            Format::Json => {
                print_json(&json!({ "source": a.source, "strict": strict, "reachable": reached }))
            }
            _ => println!("reachable {}", join(&reached)),
        }
        return Ok(());
    };
    check_vertex(&g, target, "target")?;
    let q = q.to(target);
    let found = foremost_walk(&g, &q).map(|w| {
        if a.as_path {
            as_path(&g, &w, &q).unwrap_or(w)
        } else {
            w
        }
    });
    if let Some(w) = &found {
        if !verify_walk(&g, w, &q) {
            return Err(CliError::Verification(format!(
                "walk {w} breaks the query constraints"
            )));
        }
    }
    match format {
        Format::Json => {
            let walk: Value = match &found {
                Some(w) => {
                    json!({ "start": w.start, "hops": w.hops, "arrival": w.arrival(), "text": w.to_string() })
                }
                None => Value::Null,
            };
            print_json(
                &json!({ "source": a.source, "target": target, "strict": strict, "reachable": found.is_some(), "walk": walk }),
            );
        }
        _ => match &found {
            Some(w) => {
                println!("{w}");
                match w.arrival() {
                    Some(t) => println!("arrival {t}"),
                    None => println!("arrival -"),
                }
            }
            None => println!("unreachable"),
        },
    }
    Ok(())
}
