//! Seeded instance generators. Validity is enforced by rejection: a candidate
//! that fails its invariants is discarded and the generator draws again.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::games::{Board, ConnectSpec, GameInstance, Graph, Hypergraph, Position, Variant};
use crate::logic::{Formula, Matrix, Quantifier, Structure};

/// An item with a deterministic identifier.
#[derive(Debug, Clone)]
pub struct Labeled<T> {
    pub id: String,
    pub item: T,
}

fn label<T>(prefix: &str, seed: u64, i: usize, item: T) -> Labeled<T> {
    Labeled { id: format!("{prefix}-s{seed}-{i:04}"), item }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Size caps for hypergraph-board corpora.
#[derive(Debug, Clone, Copy)]
pub struct HypergraphBounds {
    pub max_vertices: usize,
    pub max_edges: usize,
    pub max_edge_size: usize,
    pub min_budget: usize,
    pub max_budget: usize,
    /// Probability that a vertex starts claimed by each player.
    pub claim_rate: f64,
}

impl HypergraphBounds {
    pub fn new(max_vertices: usize, max_edges: usize, max_edge_size: usize, max_budget: usize) -> Self {
        HypergraphBounds { max_vertices, max_edges, max_edge_size, min_budget: 1, max_budget, claim_rate: 0.1 }
    }
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

pub fn random_claims<R: Rng>(rng: &mut R, pool: &[String], rate: f64) -> Position {
    let mut pos = Position::default();
    for v in pool {
        let r: f64 = rng.gen();
        if r < rate {
            pos.p1.insert(v.clone());
        } else if r < 2.0 * rate {
            pos.p2.insert(v.clone());
        }
    }
    pos
}

pub fn random_hypergraph_game<R: Rng>(rng: &mut R, variant: Variant, b: &HypergraphBounds) -> GameInstance {
    loop {
        let n = rng.gen_range(1..=b.max_vertices);
        let vs = names("v", n);
        let m = rng.gen_range(1..=b.max_edges);
        let sets: Vec<BTreeSet<String>> = (0..m)
            .map(|_| {
                let size = rng.gen_range(1..=b.max_edge_size.min(n));
                vs.choose_multiple(rng, size).cloned().collect()
            })
            .collect();
        let edges = sets.into_iter().enumerate().map(|(i, e)| (format!("e{}", i + 1), e)).collect();
        let Ok(h) = Hypergraph::new(vs.iter(), edges) else { continue };
        let pos = random_claims(rng, &vs, b.claim_rate);
        let budget = rng.gen_range(b.min_budget..=b.max_budget);
        if let Ok(g) = GameInstance::new(variant, Board::Hypergraph(h), pos, budget) {
            return g;
        }
    }
}

pub fn hypergraph_corpus(variant: Variant, seed: u64, count: usize, b: &HypergraphBounds) -> Vec<Labeled<GameInstance>> {
    let mut r = rng(seed);
    (0..count).map(|i| label(variant.name(), seed, i, random_hypergraph_game(&mut r, variant, b))).collect()
}

fn random_graph<R: Rng>(rng: &mut R, vs: &[String], density: f64) -> Graph {
    let mut g = Graph::new(vs.iter(), &[]).expect("fresh names");
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            if rng.gen_bool(density) {
                g.add_edge(&vs[i], &vs[j]).expect("known vertices");
            }
        }
    }
    g
}

/// Random Hex instances on 2..=max_vertices vertices.
pub fn hex_corpus(seed: u64, count: usize, max_vertices: usize, budgets: &[usize], claim_rate: f64) -> Vec<Labeled<GameInstance>> {
    let mut r = rng(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let n = r.gen_range(2..=max_vertices);
        let vs = names("v", n);
        let graph = random_graph(&mut r, &vs, 0.45);
        let pair: Vec<&String> = vs.choose_multiple(&mut r, 2).collect();
        let (s, t) = (pair[0].clone(), pair[1].clone());
        let inner: Vec<String> = vs.iter().filter(|v| **v != s && **v != t).cloned().collect();
        let pos = random_claims(&mut r, &inner, claim_rate);
        let budget = *budgets.choose(&mut r).expect("non-empty budgets");
        if let Ok(g) = GameInstance::new(Variant::HEX, Board::Hex { graph, s, t }, pos, budget) {
            let i = out.len();
            out.push(label("HEX", seed, i, g));
        }
    }
    out
}

/// Every connected labelled graph on 2..=max_vertices vertices with s = v1 and
/// t = vn; since all labellings appear this covers every (graph, s, t) shape.
pub fn all_connected_hex(max_vertices: usize, budgets: &[usize]) -> Vec<Labeled<GameInstance>> {
    let mut out = Vec::new();
    for n in 2..=max_vertices {
        let vs = names("v", n);
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        for mask in 0u32..(1 << pairs.len()) {
            let mut graph = Graph::new(vs.iter(), &[]).expect("fresh names");
            for (bit, &(i, j)) in pairs.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    graph.add_edge(&vs[i], &vs[j]).expect("known vertices");
                }
            }
            if !is_connected(&graph) {
                continue;
            }
            for &budget in budgets {
                let board = Board::Hex { graph: graph.clone(), s: vs[0].clone(), t: vs[n - 1].clone() };
                let g = GameInstance::new(Variant::HEX, board, Position::default(), budget).expect("valid hex");
                out.push(Labeled { id: format!("HEX-all-n{n}-m{mask}-l{budget}"), item: g });
            }
        }
    }
    out
}

fn is_connected(g: &Graph) -> bool {
    let Some(first) = g.vertices().iter().next() else { return true };
    let mut seen = BTreeSet::from([first.clone()]);
    let mut stack = vec![first.clone()];
    while let Some(v) = stack.pop() {
        for w in g.neighbours(&v) {
            if seen.insert(w.clone()) {
                stack.push(w);
            }
        }
    }
    seen.len() == g.vertices().len()
}

/// Small k-Connect boards: 3×3 or 4×4, k = 3, a few stones already placed.
pub fn connect_corpus(seed: u64, count: usize, max_budget: usize) -> Vec<Labeled<GameInstance>> {
    let mut r = rng(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let side = r.gen_range(3..=4);
        let p = if side == 3 { r.gen_range(1..=2) } else { 1 };
        let spec = ConnectSpec { rows: side, cols: side, k: 3, p };
        let cells = spec.cells();
        let pos = random_claims(&mut r, &cells, 0.08);
        let budget = r.gen_range(1..=max_budget);
        if let Ok(g) = GameInstance::new(Variant::CONNECT, Board::Connect(spec), pos, budget) {
            let i = out.len();
            out.push(label("CONNECT", seed, i, g));
        }
    }
    out
}

/// Random bipartite geography instances; left vertices are x*, right y*.
pub fn random_sgg<R: Rng>(rng: &mut R, max_vertices: usize, max_k: usize) -> GameInstance {
    loop {
        let n = rng.gen_range(2..=max_vertices.max(2));
        let nl = rng.gen_range(1..n);
        let left = names("x", nl);
        let right = names("y", n - nl);
        let mut graph = Graph::new(left.iter().chain(right.iter()), &[]).expect("fresh names");
        for u in &left {
            for v in &right {
                if rng.gen_bool(0.45) {
                    graph.add_edge(u, v).expect("known vertices");
                }
            }
        }
        let start = left.choose(rng).expect("non-empty").clone();
        let board = Board::Sgg { graph, left: left.into_iter().collect(), right: right.into_iter().collect(), start };
        let k = rng.gen_range(1..=max_k);
        if let Ok(g) = GameInstance::new(Variant::SGG, board, Position::default(), k) {
            return g;
        }
    }
}

pub fn sgg_corpus(seed: u64, count: usize, max_vertices: usize, max_k: usize) -> Vec<Labeled<GameInstance>> {
    let mut r = rng(seed);
    (0..count).map(|i| label("SGG", seed, i, random_sgg(&mut r, max_vertices, max_k))).collect()
}

/// A simple graph on `0..n` as an edge list with `u < v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

/// All labelled simple graphs on exactly `n` vertices.
pub fn all_graphs(n: usize) -> Vec<Labeled<SimpleGraph>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    (0u32..(1 << pairs.len()))
        .map(|mask| {
            let edges = pairs.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &e)| e).collect();
            Labeled { id: format!("G-all-n{n}-m{mask}"), item: SimpleGraph { n, edges } }
        })
        .collect()
}

pub fn graph_corpus(seed: u64, count: usize, max_vertices: usize) -> Vec<Labeled<SimpleGraph>> {
    let mut r = rng(seed);
    (0..count)
        .map(|i| {
            let n = r.gen_range(1..=max_vertices);
            let density: f64 = r.gen_range(0.1..0.8);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if r.gen_bool(density) {
                        edges.push((u, v));
                    }
                }
            }
            label("G", seed, i, SimpleGraph { n, edges })
        })
        .collect()
}

/// Random structure over elements a, b, c, d (first `size`) with a binary `R`,
/// a binary `S` and a unary `P`.
pub fn random_structure<R: Rng>(rng: &mut R, size: usize) -> Structure {
    let elems: Vec<String> = ["a", "b", "c", "d", "e", "f"][..size].iter().map(|s| s.to_string()).collect();
    let mut s = Structure::new(elems.iter()).expect("non-empty universe");
    for (name, arity) in [("R", 2), ("S", 2), ("P", 1)] {
        s.declare(name, arity).expect("fresh relation");
    }
    for x in &elems {
        if rng.gen_bool(0.5) {
            s.add_tuple("P", &[x]).expect("declared");
        }
        for y in &elems {
            if rng.gen_bool(0.4) {
                s.add_tuple("R", &[x, y]).expect("declared");
            }
            if rng.gen_bool(0.3) {
                s.add_tuple("S", &[x, y]).expect("declared");
            }
        }
    }
    s
}

struct MatrixGen<'a> {
    any: &'a [String],
    existential: &'a [String],
    /// When false, universally bound variables appear only in `!=` atoms.
    general: bool,
}

impl MatrixGen<'_> {
    fn atom<R: Rng>(&self, rng: &mut R) -> Matrix {
        let pool = if self.general || !self.existential.is_empty() && rng.gen_bool(0.7) {
            if self.general { self.any } else { self.existential }
        } else {
            let a = self.any.choose(rng).expect("variables");
            let b = self.any.choose(rng).expect("variables");
            return Matrix::neq(a, b);
        };
        let pick = |rng: &mut R| pool.choose(rng).expect("variables").clone();
        let atom = match rng.gen_range(0..5) {
            0 | 1 => Matrix::rel("R", &[&pick(rng), &pick(rng)]),
            2 => Matrix::rel("S", &[&pick(rng), &pick(rng)]),
            3 => Matrix::rel("P", &[&pick(rng)]),
            _ => Matrix::eq(&pick(rng), &pick(rng)),
        };
        if rng.gen_bool(0.35) {
            Matrix::not(atom)
        } else {
            atom
        }
    }

    fn matrix<R: Rng>(&self, rng: &mut R, depth: u32) -> Matrix {
        if depth == 0 || rng.gen_bool(0.3) {
            return self.atom(rng);
        }
        let width = rng.gen_range(2..=3);
        let parts = (0..width).map(|_| self.matrix(rng, depth - 1)).collect();
        let m = if rng.gen_bool(0.5) { Matrix::And(parts) } else { Matrix::Or(parts) };
        if self.general && rng.gen_bool(0.2) {
            Matrix::not(m)
        } else {
            m
        }
    }
}

fn random_formula<R: Rng>(rng: &mut R, max_quantifiers: usize, general: bool) -> Formula {
    let q = rng.gen_range(1..=max_quantifiers);
    let prefix: Vec<(Quantifier, String)> = (1..=q)
        .map(|i| (if rng.gen_bool(0.5) { Quantifier::Exists } else { Quantifier::Forall }, format!("x{i}")))
        .collect();
    let any: Vec<String> = prefix.iter().map(|(_, v)| v.clone()).collect();
    let existential: Vec<String> =
        prefix.iter().filter(|(q, _)| *q == Quantifier::Exists).map(|(_, v)| v.clone()).collect();
    let gen = MatrixGen { any: &any, existential: &existential, general };
    let matrix = gen.matrix(rng, 3);
    Formula::new(prefix, matrix).expect("distinct prefix variables")
}

/// Random ∀≠-FO sentence: universally bound variables occur only in `!=`.
pub fn random_forall_neq_formula<R: Rng>(rng: &mut R, max_quantifiers: usize) -> Formula {
    random_formula(rng, max_quantifiers, false)
}

/// Random sentence with arbitrary atoms and negations anywhere.
pub fn random_general_formula<R: Rng>(rng: &mut R, max_quantifiers: usize) -> Formula {
    random_formula(rng, max_quantifiers, true)
}

/// (formula, structure) pairs for quantifier-elimination checks.
pub fn qelim_corpus(seed: u64, count: usize, max_quantifiers: usize, max_universe: usize) -> Vec<Labeled<(Formula, Structure)>> {
    let mut r = rng(seed);
    (0..count)
        .map(|i| {
            let f = random_forall_neq_formula(&mut r, max_quantifiers);
            let size = r.gen_range(1..=max_universe);
            let s = random_structure(&mut r, size);
            label("QE", seed, i, (f, s))
        })
        .collect()
}
