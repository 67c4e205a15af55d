//! `tg gen`: writes an instance and a JSON sidecar describing how it was built.

use std::fs;
use std::path::Path;

use serde_json::{json, Value};
use tempotw::generators::{
    gen_connected_layers, gen_random, gen_random_weighted, gen_rtbtge_from_sat,
    gen_trted_from_clique, CliqueInstance, Sat3Formula,
};
use tempotw::io::write_temporal_graph;
use tempotw::{StaticGraph, TemporalGraph};

use crate::args::{GenArgs, GenKind};
use crate::error::{CliError, CliResult};

fn need<T: Copy>(v: Option<T>, flag: &str) -> CliResult<T> {
    v.ok_or_else(|| CliError::Usage(format!("this generator needs --{flag}")))
}

/// `1,-2;2,3` with `;` between clauses.
pub fn parse_clauses(s: &str) -> CliResult<Vec<Vec<i32>>> {
    s.split(';')
        .filter(|c| !c.trim().is_empty())
        .map(|c| {
            c.split(',')
                .map(|l| {
                    let lit: i32 = l
                        .trim()
                        .parse()
                        .map_err(|_| CliError::Input(format!("bad literal `{}`", l.trim())))?;
                    if lit == 0 {
                        return Err(CliError::Input("literal 0 does not name a variable".into()));
                    }
                    Ok(lit)
                })
                .collect()
        })
        .collect()
}

/// `0-1,1-2`.
pub fn parse_edges(s: &str, n: usize) -> CliResult<Vec<(usize, usize)>> {
    s.split(',')
        .filter(|e| !e.trim().is_empty())
        .map(|e| {
            let bad = || CliError::Input(format!("bad edge `{}`", e.trim()));
            let (u, v) = e.trim().split_once('-').ok_or_else(bad)?;
            let (u, v): (usize, usize) =
                (u.parse().map_err(|_| bad())?, v.parse().map_err(|_| bad())?);
            if u == v || u >= n || v >= n {
                return Err(CliError::Input(format!(
                    "edge {u}-{v} is not a pair of distinct vertices below {n}"
                )));
            }
            Ok((u, v))
        })
        .collect()
}

fn summary(g: &TemporalGraph) -> Value {
    json!({ "n": g.n(), "tau": g.tau(), "m": g.num_edges() })
}

fn build(a: &GenArgs) -> CliResult<(TemporalGraph, Value)> {
    match a.kind {
        GenKind::Sat => {
            let clauses = parse_clauses(
                a.clauses
                    .as_deref()
                    .ok_or_else(|| CliError::Usage("sat needs --clauses".into()))?,
            )?;
            let used = clauses
                .iter()
                .flatten()
                .map(|l| l.unsigned_abs() as usize)
                .max()
                .unwrap_or(0);
            let vars = a.vars.unwrap_or(used);
            if vars < used {
                return Err(CliError::Input(format!(
                    "--vars {vars} is below the largest variable {used}"
                )));
            }
            let f = Sat3Formula::new(vars, clauses)?;
            let c = gen_rtbtge_from_sat(&f)?;
            let side = json!({
                "kind": "sat",
                "formula": f,
                "satisfiable": f.is_satisfiable(),
                "graph": summary(&c.graph),
                "construction": c,
            });
            Ok((c.graph, side))
        }
        GenKind::Clique => {
            let n = need(a.n, "n")?;
            let r = need(a.r, "r")?;
            let edges = parse_edges(a.edges.as_deref().unwrap_or(""), n)?;
            let inst = CliqueInstance {
                graph: StaticGraph::from_edges(n, edges.iter().copied()),
                r,
            };
            let c = gen_trted_from_clique(&inst, a.alpha, a.beta)?;
            let side = json!({
                "kind": "clique",
                "input": { "n": n, "edges": edges, "r": r },
                "graph": summary(&c.graph),
                "construction": c,
            });
            Ok((c.graph, side))
        }
        GenKind::Random | GenKind::Connected => {
            let n = need(a.n, "n")?;
            let tau = need(a.tau, "tau")?;
            if !(0.0..=1.0).contains(&a.p) {
                return Err(CliError::Input(format!(
                    "probability {} outside [0, 1]",
                    a.p
                )));
            }
            let (g, kind) = match (a.kind, a.weighted) {
                (GenKind::Connected, _) => {
                    (gen_connected_layers(n, tau, a.p, a.seed)?, "connected")
                }
                (_, Some(q)) => (gen_random_weighted(n, tau, a.p, q, a.seed)?, "random"),
                (_, None) => (gen_random(n, tau, a.p, a.seed)?, "random"),
            };
            let side = json!({
                "kind": kind,
                "params": { "n": n, "tau": tau, "p": a.p, "seed": a.seed, "weighted": a.weighted },
                "graph": summary(&g),
            });
            Ok((g, side))
        }
    }
}

fn write(path: &Path, text: &str) -> CliResult {
    fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn run(a: &GenArgs) -> CliResult {
    let sidecar = a.out.with_extension("json");
    if sidecar == a.out {
        return Err(CliError::Usage(
            "--out must not end in .json; the sidecar takes that name".into(),
        ));
    }
    let (g, side) = build(a)?;
    write(&a.out, &write_temporal_graph(&g))?;
    write(
        &sidecar,
        &(serde_json::to_string_pretty(&side).expect("JSON values always serialize") + "\n"),
    )?;
    println!(
        "wrote {} and {} (n={} tau={} m={})",
        a.out.display(),
        sidecar.display(),
        g.n(),
        g.tau(),
        g.num_edges()
    );
    Ok(())
}
