//! Cross-check suites. Each suite pairs an oracle with a subject over a
//! seeded corpus and reports one record per check, in corpus order.

use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;

use super::corpus::{
    all_connected_hex, all_graphs, connect_corpus, graph_corpus, hex_corpus, hypergraph_corpus, qelim_corpus, random_claims, rng,
    sgg_corpus, HypergraphBounds, Labeled, SimpleGraph,
};
use super::gadgets::gadget_lemma_records;
use super::report::{CheckRecord, CheckReport, Outcome};
use super::{brute_force_evaluate, geometrically_aligned, has_independent_set, reference_solve};
use crate::games::{solve_short, solve_with, Board, ConnectSpec, GameInstance, SolverConfig, Variant};
use crate::logic::{classify, estimate_cost, evaluate, Formula, FragmentTag, Structure};
use crate::qelim::to_sigma1;
use crate::reductions::{aligned_formula, budget_for, compile, reduce_is_to_ea, reduce_sgg_to_mm, CompileOutcome, EXISTS_TOKEN, FORALL_TOKEN};

/// Compiled formulas whose estimated evaluation cost exceeds this are skipped.
pub const COST_CEILING: f64 = 1e9;
/// The estimate is a worst case without short-circuiting. k-Connect, MB and
/// eliminated Σ1 formulas overshoot it by orders of magnitude (a 3×3
/// k-Connect check estimates ~3e11 and evaluates in milliseconds), so those
/// suites default to a higher ceiling.
pub const RAISED_COST_CEILING: f64 = 1e13;
/// Per-search node budget for the gadget lemma checks.
pub const GADGET_NODE_LIMIT: u64 = 20_000_000;

/// Default suites, in run order; [`run_suite`] also accepts `sgg-full`.
pub const SUITES: &[&str] = &["qelim", "hex", "mb", "mm", "ea", "connect", "aligned", "is2ea", "gadgets", "sgg", "solver"];

fn timed(suite: &str, f: impl FnOnce() -> Vec<CheckRecord>) -> CheckReport {
    let t = Instant::now();
    let records = f();
    CheckReport::new(suite, records, t.elapsed())
}

fn verdict(id: &str, oracle: bool, subject: bool, how: &str) -> CheckRecord {
    let outcome = if oracle == subject { Outcome::Agree } else { Outcome::Disagree };
    CheckRecord::new(id, oracle, format!("{how}:{subject}"), outcome)
}

fn mismatch(id: &str, oracle: impl ToString, subject: impl ToString) -> CheckRecord {
    CheckRecord::new(id, oracle.to_string(), subject.to_string(), Outcome::Disagree)
}

/// Truth of a compiled formula, or why it was not evaluated.
fn evaluate_bounded(s: &Structure, f: &Formula, ceiling: f64) -> Result<bool, String> {
    let cost = estimate_cost(s, f).map_err(|e| format!("error:{e}"))?;
    if cost > ceiling {
        return Err(format!("cost:{cost:.1e}"));
    }
    evaluate(s, f).map_err(|e| format!("error:{e}"))
}

fn compile_record(inst: &Labeled<GameInstance>, ceiling: f64) -> CheckRecord {
    let id = inst.id.as_str();
    let want = match solve_short(&inst.item) {
        Ok(v) => v.first_player_wins,
        Err(e) => return CheckRecord::skip(id, "-", format!("solver:{e}"), false),
    };
    match compile(&inst.item) {
        Err(e) => mismatch(id, want, format!("compile-error:{e}")),
        Ok(CompileOutcome::Decided { answer, .. }) => verdict(id, want, answer, "decided"),
        Ok(CompileOutcome::BruteForceFallback { .. }) => verdict(id, want, reference_solve(&inst.item), "fallback"),
        Ok(CompileOutcome::Formula(c)) => {
            let tag = classify(&c.formula).tag;
            if tag > c.expected_fragment {
                return mismatch(id, want, format!("fragment:{tag:?}"));
            }
            match evaluate_bounded(&c.structure, &c.formula, ceiling) {
                Ok(truth) => verdict(id, want, c.answer_from(truth), "formula"),
                Err(why) if why.starts_with("cost") => CheckRecord::skip(id, want, why, false),
                Err(why) => mismatch(id, want, why),
            }
        }
    }
}

/// Compiled-formula truth against the game solver.
pub fn xcheck_compile(suite: &str, corpus: &[Labeled<GameInstance>], ceiling: f64) -> CheckReport {
    timed(suite, || corpus.par_iter().map(|inst| compile_record(inst, ceiling).with_detail(|| inst.item.to_text())).collect())
}

/// Quantifier elimination: the Σ1 output agrees with brute force on the
/// input, the evaluator agrees too, and the output is existential.
pub fn xcheck_qelim(corpus: &[Labeled<(Formula, Structure)>], ceiling: f64) -> CheckReport {
    timed("qelim", || {
        corpus
            .par_iter()
            .map(|inst| {
                let (f, s) = &inst.item;
                let id = inst.id.as_str();
                let want = brute_force_evaluate(s, f);
                match evaluate(s, f) {
                    Ok(direct) if direct != want => return mismatch(id, want, format!("evaluator:{direct}")),
                    Err(e) => return mismatch(id, want, format!("evaluator-error:{e}")),
                    _ => {}
                }
                let g = match to_sigma1(f) {
                    Ok((g, _)) => g,
                    Err(e) => return mismatch(id, want, format!("qelim-error:{e}")),
                };
                let tag = classify(&g).tag;
                if tag != FragmentTag::Sigma1 {
                    return mismatch(id, want, format!("fragment:{tag:?}"));
                }
                match evaluate_bounded(s, &g, ceiling) {
                    Ok(truth) => verdict(id, want, truth, "sigma1"),
                    Err(why) if why.starts_with("cost") => CheckRecord::skip(id, want, why, false),
                    Err(why) => mismatch(id, want, why),
                }
            })
            .collect()
    })
}

fn board_structure(spec: &ConnectSpec) -> Structure {
    let graph = spec.graph();
    let mut st = Structure::new(graph.vertices().iter()).expect("cell names");
    st.declare("EDGE", 2).expect("fresh relation");
    for (a, b) in graph.edges() {
        st.add_tuple("EDGE", &[a, b]).expect("known cells");
        st.add_tuple("EDGE", &[b, a]).expect("known cells");
    }
    for r in ["U", "V", "W"] {
        st.declare(r, 1).expect("fresh relation");
    }
    st
}

/// The alignment formula against coordinates, on every ordered triple of
/// distinct cells of a rows×cols board.
pub fn xcheck_aligned(rows: usize, cols: usize) -> CheckReport {
    timed("aligned", || {
        let spec = ConnectSpec { rows, cols, k: 3, p: 1 };
        let base = board_structure(&spec);
        let f = aligned_formula();
        let cells: Vec<(usize, usize)> = (1..=rows).flat_map(|r| (1..=cols).map(move |c| (r, c))).collect();
        let mut triples = Vec::new();
        for &a in &cells {
            for &b in &cells {
                for &c in &cells {
                    if a != b && b != c && a != c {
                        triples.push((a, b, c));
                    }
                }
            }
        }
        triples
            .par_iter()
            .map(|&(a, b, c)| {
                let mut st = base.clone();
                for (rel, p) in [("U", a), ("V", b), ("W", c)] {
                    st.add_tuple(rel, &[ConnectSpec::cell(p.0, p.1)]).expect("declared");
                }
                let geo = |p: (usize, usize)| (p.0 as i64, p.1 as i64);
                let want = geometrically_aligned(geo(a), geo(b), geo(c));
                let id = format!("{rows}x{cols}-{}-{}-{}", ConnectSpec::cell(a.0, a.1), ConnectSpec::cell(b.0, b.1), ConnectSpec::cell(c.0, c.1))
                    .replace(' ', "_");
                match evaluate(&st, &f) {
                    Ok(got) => verdict(&id, want, got, "formula"),
                    Err(e) => mismatch(&id, want, format!("error:{e}")),
                }
            })
            .collect()
    })
}

/// Independent set of size k exists iff Avoider wins the reduced game.
pub fn xcheck_is_to_ea(corpus: &[(String, SimpleGraph, usize)]) -> CheckReport {
    timed("is2ea", || {
        corpus
            .par_iter()
            .map(|(id, graph, k)| {
                let want = has_independent_set(graph.n, &graph.edges, *k);
                let names: Vec<String> = (0..graph.n).map(|i| format!("v{i}")).collect();
                let edges: Vec<(String, String)> = graph.edges.iter().map(|&(u, v)| (names[u].clone(), names[v].clone())).collect();
                let game = match reduce_is_to_ea(&names, &edges, *k) {
                    Ok(g) => g,
                    Err(e) => return mismatch(id, want, format!("reduce-error:{e}")),
                };
                match solve_short(&game) {
                    Ok(v) => verdict(id, want, !v.first_player_wins, "avoider-wins"),
                    Err(e) => CheckRecord::skip(id.as_str(), want, format!("solver:{e}"), true),
                }
            })
            .collect()
    })
}

/// Gadget lemmas on isolated gadgets; exhausted searches are inconclusive.
pub fn xcheck_gadgets(node_limit: u64) -> CheckReport {
    timed("gadgets", || gadget_lemma_records(node_limit))
}

/// Shape of the geography → Maker-Maker output against closed forms.
pub fn xcheck_sgg_structure(corpus: &[Labeled<GameInstance>]) -> CheckReport {
    timed("sgg", || {
        corpus
            .par_iter()
            .flat_map_iter(|inst| {
                let id = &inst.id;
                let r = match reduce_sgg_to_mm(&inst.item) {
                    Ok(r) => r,
                    Err(e) => return vec![mismatch(id, "reduction", format!("error:{e}"))],
                };
                let Board::Sgg { graph, left, .. } = &inst.item.board else { unreachable!("SGG corpus") };
                let adj = graph.adjacency();
                let (mut named, mut delay, mut sets) = (0, 0, 0);
                for u in graph.vertices() {
                    let n = adj.get(u).map_or(0, |s| s.len());
                    let pos = usize::from(n > 0);
                    if left.contains(u) {
                        named += 6 + 3 * n;
                        delay += 18 + 27 * n;
                        sets += 27 + 33 * n;
                    } else {
                        named += 6 + 4 * n;
                        delay += 18 + 30 * n + 3 * pos;
                        sets += 27 + 33 * n + 3 * pos;
                    }
                }
                let h = r.game.hypergraph().expect("Maker-Maker on a hypergraph");
                let one_token = h.edges().iter().all(|(_, e)| e.contains(EXISTS_TOKEN) as u8 + e.contains(FORALL_TOKEN) as u8 == 1);
                let map_lines = r.map.to_text().lines().count();
                // Vertices used by more than one gadget must be a^w entry points.
                let mut users: std::collections::BTreeMap<&String, std::collections::BTreeSet<&str>> = Default::default();
                for gd in &r.map.gadgets {
                    for e in gd.edges() {
                        for v in e {
                            if let Some(v) = h.vertices().get(&v) {
                                users.entry(v).or_default().insert(gd.vertex.as_str());
                            }
                        }
                    }
                }
                let entry_only = users.iter().all(|(v, us)| us.len() < 2 || v.starts_with("a^") || *v == EXISTS_TOKEN || *v == FORALL_TOKEN);
                let delay_sizes = r.map.gadgets.iter().flat_map(|g| &g.delays).chain(&r.map.escapes).all(|d| d.edges.len() == 3usize.pow(d.delta as u32));
                let Board::Sgg { start, .. } = &inst.item.board else { unreachable!() };
                let start_edge: std::collections::BTreeSet<String> = [FORALL_TOKEN.to_string(), format!("a^{start}")].into();
                let tokens_ok = r.game.position.p1.iter().eq([EXISTS_TOKEN.to_string()].iter())
                    && r.game.position.p2.iter().eq([FORALL_TOKEN.to_string()].iter());
                vec![
                    CheckRecord::compare(format!("{id}/shared-only-entry"), true, entry_only),
                    CheckRecord::compare(format!("{id}/delay-edge-counts"), true, delay_sizes),
                    CheckRecord::compare(format!("{id}/start-edge"), true, h.edges().iter().any(|(_, e)| *e == start_edge)),
                    CheckRecord::compare(format!("{id}/tokens-preclaimed"), true, tokens_ok),
                    CheckRecord::compare(format!("{id}/vertices"), 2 + named + delay + 24, h.vertices().len()),
                    CheckRecord::compare(format!("{id}/edges"), 1 + sets + 162, h.edges().len()),
                    CheckRecord::compare(format!("{id}/budget"), budget_for(inst.item.budget), r.game.budget),
                    CheckRecord::compare(format!("{id}/one-token-per-edge"), true, one_token),
                    CheckRecord::compare(format!("{id}/map-covers-vertices"), h.vertices().len(), map_lines),
                    CheckRecord::compare(format!("{id}/valid"), true, r.game.validate().is_ok()),
                ]
            })
            .collect()
    })
}

/// Best-effort end-to-end check on the smallest geography instance: the
/// reduced Maker-Maker game (ℓ = 24) is searched under a node cap, so the
/// usual outcome is an inconclusive skip. Not part of the default suites.
pub fn xcheck_sgg_full(node_limit: u64) -> CheckReport {
    timed("sgg-full", || {
        let text = "variant SGG\nbudget 1\nvertices x1 y1\nedge x1 y1\nleft x1\nright y1\nstart x1\n";
        let g = crate::games::parse_game(text).expect("fixed instance");
        let want = solve_short(&g).expect("tiny geography").first_player_wins;
        let r = match reduce_sgg_to_mm(&g) {
            Ok(r) => r,
            Err(e) => return vec![mismatch("SGG-path-k1", want, format!("error:{e}"))],
        };
        vec![match solve_with(&r.game, SolverConfig::default().with_node_limit(node_limit)) {
            Ok(v) => verdict("SGG-path-k1", want, v.first_player_wins, "reduced"),
            Err(e) => CheckRecord::skip("SGG-path-k1", want, format!("solver:{e}"), true),
        }]
    })
}

/// Optimised solver against the reference enumeration, with and without
/// pruning.
pub fn xcheck_solver(corpus: &[Labeled<GameInstance>]) -> CheckReport {
    timed("solver", || {
        corpus
            .par_iter()
            .flat_map_iter(|inst| {
                let want = reference_solve(&inst.item);
                let mut out = Vec::new();
                let no_tt = SolverConfig { transposition: false, ..SolverConfig::default() };
                for (suffix, cfg) in [("", SolverConfig::default()), ("/no-tt", no_tt), ("/plain", SolverConfig::plain())] {
                    let id = format!("{}{suffix}", inst.id);
                    let rec = match solve_with(&inst.item, cfg) {
                        Ok(v) => verdict(&id, want, v.first_player_wins, "solver"),
                        Err(e) => mismatch(&id, want, format!("error:{e}")),
                    };
                    out.push(rec.with_detail(|| inst.item.to_text()));
                }
                out
            })
            .collect()
    })
}

pub fn hex_suite_corpus(seed: u64) -> Vec<Labeled<GameInstance>> {
    let mut out = all_connected_hex(5, &[1, 2]);
    out.extend(hex_corpus(seed, 200, 7, &[2], 0.15));
    out
}

pub fn mb_suite_corpus(seed: u64) -> Vec<Labeled<GameInstance>> {
    hypergraph_corpus(Variant::MB, seed, 500, &HypergraphBounds::new(7, 5, 3, 3))
}

pub fn mm_suite_corpus(seed: u64) -> Vec<Labeled<GameInstance>> {
    hypergraph_corpus(Variant::MM, seed, 300, &HypergraphBounds::new(6, 4, 3, 2))
}

/// Mostly boards large enough for the formula path, plus small ones that
/// fall back to brute force.
pub fn ea_suite_corpus(seed: u64) -> Vec<Labeled<GameInstance>> {
    let mut out = hypergraph_corpus(Variant::EA, seed, 600, &HypergraphBounds::new(10, 5, 3, 3));
    for mut g in hypergraph_corpus(Variant::EA, seed, 100, &HypergraphBounds::new(5, 4, 3, 3)) {
        g.id = g.id.replacen("EA-", "EA-small-", 1);
        out.push(g);
    }
    out
}

/// 3×3 tic-tac-toe positions (k = 3, p = 1) with one move left.
pub fn connect_suite_corpus(seed: u64, count: usize) -> Vec<Labeled<GameInstance>> {
    let mut r = rng(seed);
    let spec = ConnectSpec { rows: 3, cols: 3, k: 3, p: 1 };
    let cells = spec.cells();
    let mut out = Vec::new();
    while out.len() < count {
        let rate = r.gen_range(0.0..0.6);
        let pos = random_claims(&mut r, &cells, rate);
        if let Ok(g) = GameInstance::new(Variant::CONNECT, Board::Connect(spec), pos, 1) {
            out.push(Labeled { id: format!("CONNECT-s{seed}-{:04}", out.len()), item: g });
        }
    }
    out
}

/// All graphs on up to four vertices with k ∈ {1, 2, 3}, then 200 random
/// graphs on up to six vertices.
pub fn is_suite_corpus(seed: u64) -> Vec<(String, SimpleGraph, usize)> {
    let mut out = Vec::new();
    for n in 1..=4 {
        for g in all_graphs(n) {
            for k in 1..=3 {
                out.push((format!("{}-k{k}", g.id), g.item.clone(), k));
            }
        }
    }
    for (i, g) in graph_corpus(seed, 200, 6).into_iter().enumerate() {
        let k = 1 + i % 3;
        out.push((format!("{}-k{k}", g.id), g.item, k));
    }
    out
}

pub fn solver_suite_corpus(seed: u64) -> Vec<Labeled<GameInstance>> {
    let mut out = Vec::new();
    for v in [Variant::MM, Variant::MB, Variant::EA] {
        out.extend(hypergraph_corpus(v, seed, 100, &HypergraphBounds::new(7, 5, 3, 3)));
    }
    out.extend(hex_corpus(seed, 100, 7, &[1, 2, 3], 0.1));
    out.extend(connect_corpus(seed, 30, 2));
    out.extend(sgg_corpus(seed, 100, 8, 4));
    out
}

/// Default evaluation-cost ceiling of a suite.
pub fn default_ceiling(name: &str) -> f64 {
    match name {
        "qelim" | "mb" | "connect" => RAISED_COST_CEILING,
        _ => COST_CEILING,
    }
}

/// Runs a suite by name on its default corpus; `ceiling` overrides the
/// suite's default evaluation-cost ceiling.
pub fn run_suite(name: &str, seed: u64, ceiling: Option<f64>) -> Option<CheckReport> {
    let c = ceiling.unwrap_or_else(|| default_ceiling(name));
    Some(match name {
        "qelim" => xcheck_qelim(&qelim_corpus(seed, 1000, 4, 4), c),
        "hex" => xcheck_compile("hex", &hex_suite_corpus(seed), c),
        "mb" => xcheck_compile("mb", &mb_suite_corpus(seed), c),
        "mm" => xcheck_compile("mm", &mm_suite_corpus(seed), c),
        "ea" => xcheck_compile("ea", &ea_suite_corpus(seed), c),
        "connect" => xcheck_compile("connect", &connect_suite_corpus(seed, 40), c),
        "aligned" => xcheck_aligned(4, 4),
        "is2ea" => xcheck_is_to_ea(&is_suite_corpus(seed)),
        "gadgets" => xcheck_gadgets(GADGET_NODE_LIMIT),
        "sgg" => xcheck_sgg_structure(&sgg_corpus(seed, 50, 8, 4)),
        "solver" => xcheck_solver(&solver_suite_corpus(seed)),
        "sgg-full" => xcheck_sgg_full(2_000_000),
        _ => return None,
    })
}
