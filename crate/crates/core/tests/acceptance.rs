//! Acceptance criteria, one line per criterion. Exits nonzero if any fails.
//!
//! Numeric arguments select a subset, e.g. `cargo test --test acceptance -- 2 9`.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use tempotw::decomposition::{cops_win, treewidth_exact, treewidth_heuristic};
use tempotw::expansion::delta_temporal_line_graph;
use tempotw::generators::{
    gen_connected_layers, gen_random, gen_random_weighted, gen_rtbtge_from_sat,
    gen_trted_from_clique, CliqueInstance, Sat3Formula,
};
use tempotw::reach::{foremost_walk, reachable_mask, WalkQuery};
use tempotw::solvers::{
    explore_bruteforce, explore_connected, is_delta_matching, matching_exact,
    maximum_independent_set, replay, rmtc_bruteforce, rmtc_dp_from_td, separation_bruteforce,
    separation_dp_with_stats, trted_bruteforce, SeparationInstance,
};
use tempotw::twidth::{ttw, tw_layers, tw_slice, tw_underlying, validate_ttdc, WidthOptions};
use tempotw::{Rational, StaticGraph, TemporalGraph};

use common::*;

struct Outcome {
    failures: Vec<String>,
    summary: String,
}

impl Outcome {
    fn new(summary: impl Into<String>, failures: Vec<String>) -> Self {
        Outcome {
            failures,
            summary: summary.into(),
        }
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Edge probability giving on average between 40% and 100% of `edges` temporal edges.
fn density(r: &mut ChaCha8Rng, n: usize, tau: usize, edges: usize) -> f64 {
    let slots = (n * (n - 1) / 2 * tau).max(1) as f64;
    (r.gen_range(0.4..1.0) * edges as f64 / slots).min(1.0)
}

fn collect_failures<T: Send>(
    items: Vec<T>,
    check: impl Fn(T) -> Vec<String> + Sync + Send,
) -> Vec<String> {
    items.into_par_iter().flat_map(check).collect()
}

fn ordering_chain() -> Outcome {
    let opts = WidthOptions::exact().with_budget(32);
    let failures = collect_failures((0..200u64).collect(), |seed| {
        let mut r = rng(seed);
        let n = r.gen_range(1..=7);
        let tau = r.gen_range(1..=4);
        let p = r.gen_range(0.2..0.7);
        let g = gen_random(n, tau, p, seed).unwrap();
        let mut bad = Vec::new();
        let layers = tw_layers(&g, opts).unwrap();
        let under = tw_underlying(&g, opts).unwrap();
        let (t, d) = ttw(&g, opts);
        if !t.exact {
            bad.push(format!("seed {seed}: ttw not exact"));
        }
        if !validate_ttdc(&g, &d).unwrap().is_valid() || d.width() != t.value {
            bad.push(format!("seed {seed}: ttw decomposition invalid"));
        }
        for delta in 1..=tau {
            let slice = tw_slice(&g, delta, opts).unwrap();
            if !(layers <= slice && slice <= under) {
                bad.push(format!(
                    "seed {seed}: tw_layers {layers}, tw_{delta} {slice}, tw_underlying {under}"
                ));
            }
        }
        if !(under <= t.value && t.value < (under + 1) * tau) {
            bad.push(format!(
                "seed {seed}: tw_underlying {under}, ttw {}, tau {tau}",
                t.value
            ));
        }
        bad
    });
    Outcome::new("200 random graphs, n ≤ 7, τ ≤ 4, every Δ in 1..τ", failures)
}

fn grid_case() -> Outcome {
    let mut failures = Vec::new();
    for (nv, tau) in (2..=4).cartesian_product(2..=4) {
        let g = TemporalGraph::<Rational>::new(
            nv,
            tau,
            (0..nv - 1)
                .cartesian_product(1..=tau)
                .map(|(v, t)| (v, v + 1, t)),
        )
        .unwrap();
        let (w, _) = ttw(&g, WidthOptions::exact());
        if !w.exact || w.value != nv.min(tau) {
            failures.push(format!(
                "|V|={nv} τ={tau}: ttw {} (exact {}), expected {}",
                w.value,
                w.exact,
                nv.min(tau)
            ));
        }
    }
    Outcome::new("paths with all stamps, |V|, τ ∈ {2,3,4}", failures)
}

fn cops_and_treewidth() -> Outcome {
    let graphs: Vec<StaticGraph> = (1..=6)
        .flat_map(graphs_up_to_isomorphism)
        .filter(|g| g.is_connected())
        .collect();
    let count = graphs.len();
    let failures = collect_failures(graphs, |g| {
        let (tw, _) = treewidth_exact(&g, None).unwrap();
        (0..=g.n())
            .filter(|&k| cops_win(&g, k + 1).unwrap() != (tw <= k))
            .map(|k| {
                format!(
                    "{:?}: tw {tw}, cops_win with {} cops disagrees",
                    g.edges().collect_vec(),
                    k + 1
                )
            })
            .collect()
    });
    Outcome::new(
        format!("{count} connected graphs on ≤ 6 vertices up to isomorphism"),
        failures,
    )
}

fn separation() -> Outcome {
    let failures = collect_failures((0..300u64).collect(), |seed| {
        let mut r = rng(1_000 + seed);
        let n = r.gen_range(2..=8);
        let tau = r.gen_range(1..=4);
        let g = gen_random(n, tau, r.gen_range(0.1..0.45), seed).unwrap();
        let s = r.gen_range(0..n);
        let z = (s + r.gen_range(1..n)) % n;
        let td = treewidth_heuristic(&g.underlying_graph()).1;
        let mut bad = Vec::new();
        for strict in [false, true] {
            let inst = SeparationInstance {
                g: &g,
                s,
                z,
                strict,
            };
            let brute = separation_bruteforce(&inst, n).unwrap();
            let (dp, stats) = separation_dp_with_stats(&inst, n, &td).unwrap();
            let tag = format!("seed {seed} strict {strict}");
            if brute.as_ref().map(Vec::len) != dp.as_ref().map(Vec::len) {
                bad.push(format!("{tag}: brute {brute:?}, dp {dp:?}"));
                continue;
            }
            if let Some(sep) = &dp {
                let mut removed = vec![false; n];
                sep.iter().for_each(|&v| removed[v] = true);
                let q = WalkQuery::from(s).strict(strict);
                if removed[s]
                    || removed[z]
                    || enumerate_walks(&g.without_vertices(&removed), &q).reached[z]
                {
                    bad.push(format!("{tag}: {sep:?} does not separate"));
                }
                if !sep.is_empty() {
                    let (tight, _) = separation_dp_with_stats(&inst, sep.len() - 1, &td).unwrap();
                    if tight.is_some() {
                        bad.push(format!("{tag}: budget below optimum still feasible"));
                    }
                }
            }
            for &(bag, rows) in &stats.tables {
                if rows as u128 > ((tau + 2) as u128).pow(bag as u32 + 1) {
                    bad.push(format!("{tag}: table of {rows} rows at bag size {bag}"));
                }
            }
        }
        bad
    });
    Outcome::new(
        "300 instances × 2 modes, n ≤ 8, τ ≤ 4, rows ≤ (τ+2)^(bag+1)",
        failures,
    )
}

fn rmtc() -> Outcome {
    let failures = collect_failures((0..300u64).collect(), |seed| {
        let mut r = rng(2_000 + seed);
        let n = r.gen_range(1..=6);
        let tau = r.gen_range(1..=3);
        let p = density(&mut r, n, tau, 12);
        let g = (0..)
            .map(|attempt| gen_random_weighted(n, tau, p, 8, seed * 1_000 + attempt).unwrap())
            .find(|g| g.num_edges() <= 12)
            .unwrap();
        let root = r.gen_range(0..n);
        let td = treewidth_heuristic(&g.underlying_graph()).1;
        let brute = rmtc_bruteforce(&g, root).unwrap();
        let dp = rmtc_dp_from_td(&g, root, &td).unwrap();
        let tag = format!("seed {seed}");
        match (&brute, &dp) {
            (None, None) => vec![],
            (Some(b), Some(d)) if b.cost == d.cost => {
                let keep: Vec<usize> = d.edges.iter().filter_map(|e| g.edge_index(e)).collect();
                let total = keep.iter().fold(Rational::from_integer(0), |acc, &i| {
                    acc + g.weights().unwrap()[i]
                });
                let sub = g.filter_edges(|i, _| keep.contains(&i));
                let spans = enumerate_walks(&sub, &WalkQuery::from(root))
                    .reached
                    .iter()
                    .all(|&b| b);
                if keep.len() != d.edges.len() || total != d.cost || !spans {
                    vec![format!(
                        "{tag}: witness {:?} fails re-verification",
                        d.edges
                    )]
                } else {
                    vec![]
                }
            }
            _ => vec![format!(
                "{tag}: brute {:?}, dp {:?}",
                brute.map(|b| b.cost),
                dp.map(|d| d.cost)
            )],
        }
    });
    Outcome::new("300 weighted instances, n ≤ 6, τ ≤ 3, |E| ≤ 12", failures)
}

fn line_graph_matching() -> Outcome {
    let failures = collect_failures((0..200u64).collect(), |seed| {
        let mut r = rng(3_000 + seed);
        let n = r.gen_range(2..=7);
        let tau = r.gen_range(1..=5);
        let p = density(&mut r, n, tau, 14);
        let g = (0..)
            .map(|a| gen_random(n, tau, p, seed * 1_000 + a).unwrap())
            .find(|g| g.num_edges() <= 14)
            .unwrap();
        let mut bad = Vec::new();
        for delta in 0..=3 {
            let mis = maximum_independent_set(&delta_temporal_line_graph(&g, delta))
                .unwrap()
                .len();
            let brute = matching_by_subsets(&g, delta);
            let m = matching_exact(&g, delta).unwrap();
            let pairwise = m
                .iter()
                .tuple_combinations()
                .all(|(a, b)| compatible(a, b, delta));
            if mis != brute || m.len() != brute || !pairwise || !is_delta_matching(&m, delta) {
                bad.push(format!(
                    "seed {seed} Δ={delta}: mis {mis}, brute {brute}, matching {}",
                    m.len()
                ));
            }
        }
        bad
    });
    Outcome::new("200 instances, |E| ≤ 14, Δ ∈ {0,1,2,3}", failures)
}

fn sat_formulas() -> Vec<(usize, Vec<Vec<i32>>)> {
    let mut out = Vec::new();
    for vars in 0..=3usize {
        let clauses: Vec<Vec<i32>> = (1..=vars as i32)
            .powerset()
            .filter(|s| !s.is_empty())
            .flat_map(|s| {
                let k = s.len();
                (0..1u32 << k).map(move |signs| {
                    s.iter()
                        .enumerate()
                        .map(|(i, &v)| if signs >> i & 1 == 1 { -v } else { v })
                        .collect()
                })
            })
            .collect();
        for size in 0..=4 {
            for f in clauses.iter().cloned().combinations_with_replacement(size) {
                let ok = (1..=vars as i32)
                    .all(|v| f.iter().flatten().filter(|l| l.abs() == v).count() <= 3);
                if ok {
                    out.push((vars, f));
                }
            }
        }
    }
    out
}

fn reductions() -> Outcome {
    let formulas = sat_formulas();
    let num_formulas = formulas.len();
    let mut failures = collect_failures(formulas, |(vars, clauses)| {
        let f = Sat3Formula::new(vars, clauses.clone()).unwrap();
        let c = gen_rtbtge_from_sat(&f).unwrap();
        let schedule = explore_bruteforce(&c.graph, c.source, true).unwrap();
        let sat = satisfiable(vars, &clauses);
        if schedule.is_some() != sat {
            return vec![format!(
                "{vars} vars {clauses:?}: satisfiable {sat}, explorable {}",
                schedule.is_some()
            )];
        }
        if let Some(s) = schedule {
            match replay(&c.graph, &s) {
                Ok(r) if r.all_visited() && r.end == c.source => {}
                other => return vec![format!("{clauses:?}: schedule fails replay: {other:?}")],
            }
        }
        vec![]
    });
    let cases: Vec<(StaticGraph, usize)> = (1..=5)
        .flat_map(graphs_up_to_isomorphism)
        .flat_map(|g| (1..=3.min(g.n())).map(move |r| (g.clone(), r)))
        .collect();
    let num_cases = cases.len();
    failures.extend(collect_failures(cases, |(g, r)| {
        let c = gen_trted_from_clique(
            &CliqueInstance {
                graph: g.clone(),
                r,
            },
            1,
            2,
        )
        .unwrap();
        let tag = format!("{:?} on {} vertices, r={r}", g.edges().collect_vec(), g.n());
        let u = c.graph.underlying_graph();
        let leaves_ok = (0..u.n())
            .filter(|&v| v != c.x && v != c.y)
            .all(|v| u.degree(v) == 1);
        if !u.has_edge(c.x, c.y) || !leaves_ok {
            return vec![format!("{tag}: not two stars")];
        }
        let answer = trted_bruteforce(&c.graph, 1, 2, c.k, c.h).unwrap();
        let clique = has_clique(&g, r);
        if answer.is_some() != clique {
            return vec![format!("{tag}: clique {clique}, deletion set {answer:?}")];
        }
        if let Some(set) = answer {
            let deleted: Vec<bool> = c.graph.edges().iter().map(|e| set.contains(e)).collect();
            let worst = (0..c.graph.n())
                .map(|v| path_reach_by_enumeration(&c.graph, v, 1, 2, &deleted))
                .max()
                .unwrap();
            if set.len() > c.k || worst > c.h {
                return vec![format!(
                    "{tag}: deletion set {set:?} leaves reach {worst} > {}",
                    c.h
                )];
            }
        }
        vec![]
    }));
    Outcome::new(
        format!("{num_formulas} formulas (≤ 3 vars, ≤ 4 clauses), {num_cases} clique cases (≤ 5 vertices, r ≤ 3)"),
        failures,
    )
}

fn exploration() -> Outcome {
    let failures = collect_failures((0..100u64).collect(), |seed| {
        let mut r = rng(4_000 + seed);
        let n = r.gen_range(2..=8);
        let tau = n * (n - 1);
        let g = gen_connected_layers(n, tau, r.gen_range(0.0..0.4), seed).unwrap();
        let s = r.gen_range(0..n);
        let tag = format!("seed {seed} n={n}");
        let schedule = match explore_connected(&g, s) {
            Ok(x) => x,
            Err(e) => return vec![format!("{tag}: {e}")],
        };
        let mut bad = Vec::new();
        match replay(&g, &schedule) {
            Ok(rep) if rep.all_visited() => {}
            other => bad.push(format!("{tag}: replay {other:?}")),
        }
        if schedule.steps.len() > n * (n - 1) {
            bad.push(format!("{tag}: {} steps", schedule.steps.len()));
        }
        let best = explore_bruteforce(&g, s, false).unwrap();
        match best {
            Some(b) if b.steps.last().map(|x| x.t) <= schedule.steps.last().map(|x| x.t) => {}
            _ => bad.push(format!(
                "{tag}: brute force finishes no earlier than the greedy schedule"
            )),
        }
        bad
    });
    Outcome::new(
        "100 always-connected instances, n ≤ 8, τ = n(n−1)",
        failures,
    )
}

fn reachability() -> Outcome {
    let gaps = [
        (None, None),
        (Some(1), Some(1)),
        (Some(1), Some(2)),
        (Some(2), Some(3)),
    ];
    let failures = collect_failures((0..200u64).collect(), |seed| {
        let mut r = rng(5_000 + seed);
        let n = r.gen_range(1..=6);
        let tau = r.gen_range(1..=4);
        let g = gen_random(n, tau, r.gen_range(0.1..0.5), seed).unwrap();
        let mut bad = Vec::new();
        for (strict, &(alpha, beta), source) in itertools::iproduct!([false, true], &gaps, 0..n) {
            let q = WalkQuery::from(source).strict(strict).gaps(alpha, beta);
            let oracle = enumerate_walks(&g, &q);
            let tag = format!("seed {seed} strict {strict} gaps {alpha:?}/{beta:?} from {source}");
            if reachable_mask(&g, &q, None) != oracle.reached {
                bad.push(format!("{tag}: reach sets differ"));
            }
            for target in (0..n).filter(|&z| z != source) {
                let w = foremost_walk(&g, &q.to(target));
                let hops: Option<Vec<(usize, usize)>> = w
                    .as_ref()
                    .map(|w| w.hops.iter().map(|h| (h.to, h.t)).collect());
                let walk_ok = hops
                    .as_ref()
                    .is_none_or(|h| walk_respects(&g, &q.to(target), source, h));
                if w.as_ref().and_then(|w| w.arrival()) != oracle.earliest[target] || !walk_ok {
                    bad.push(format!(
                        "{tag} to {target}: foremost {w:?}, oracle arrival {:?}",
                        oracle.earliest[target]
                    ));
                }
            }
        }
        bad
    });
    Outcome::new(
        "200 instances, n ≤ 6, τ ≤ 4, both modes, four gap settings, foremost walks",
        failures,
    )
}

type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (
            "ordering chain",
            ordering_chain,
            Some(Duration::from_secs(60)),
        ),
        ("grid temporal treewidth", grid_case, None),
        (
            "cops and robber vs treewidth",
            cops_and_treewidth,
            Some(Duration::from_secs(300)),
        ),
        ("separation DP vs brute force", separation, None),
        ("r-MTC DP vs brute force", rmtc, None),
        (
            "line-graph independent sets vs matchings",
            line_graph_matching,
            None,
        ),
        ("reduction soundness sweeps", reductions, None),
        ("exploration of always-connected graphs", exploration, None),
        ("reachability vs walk enumeration", reachability, None),
    ];
    let selected: Vec<usize> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let mut all_pass = true;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        if !selected.is_empty() && !selected.contains(&(i + 1)) {
            continue;
        }
        let start = Instant::now();
        let mut outcome = run();
        let elapsed = start.elapsed();
        if let Some(limit) = limit {
            if elapsed > *limit {
                outcome
                    .failures
                    .push(format!("took {elapsed:.1?}, limit {limit:?}"));
            }
        }
        let pass = outcome.failures.is_empty();
        all_pass &= pass;
        println!(
            "{} criterion {}: {name}: {} [{} failures, {elapsed:.2?}]",
            if pass { "PASS" } else { "FAIL" },
            i + 1,
            outcome.summary,
            outcome.failures.len()
        );
        for f in outcome.failures.iter().take(5) {
            println!("    {f}");
        }
    }
    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
