//! Short generalized geography → Maker-Maker. Each geography vertex becomes
//! a gadget built from delay sub-gadgets; every hyperedge carries exactly one
//! of the two pre-claimed tokens, which fixes whose winning set it is.

use std::collections::{BTreeMap, BTreeSet};

use super::ReductionError;
use crate::games::{Board, GameInstance, Hypergraph, Player, Position, Variant};

/// Pre-claimed by player 1.
pub const EXISTS_TOKEN: &str = "∃";
/// Pre-claimed by player 2.
pub const FORALL_TOKEN: &str = "∀";

pub fn token(owner: Player) -> &'static str {
    match owner {
        Player::P1 => EXISTS_TOKEN,
        Player::P2 => FORALL_TOKEN,
    }
}

/// D^owner_δ(S): every set S ∪ {token} ∪ {one fresh vertex per layer}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DelayGadget {
    pub owner: Player,
    pub delta: usize,
    pub anchor: Vec<String>,
    /// δ layers of three fresh vertices each.
    pub layers: Vec<Vec<String>>,
    pub edges: Vec<BTreeSet<String>>,
}

impl DelayGadget {
    /// Identifies (owner, δ, S); fresh names embed it.
    pub fn key(&self) -> String {
        let side = if self.owner == Player::P1 { "E" } else { "A" };
        format!("{side}{}:{}", self.delta, self.anchor.join("+"))
    }

    pub fn fresh(&self) -> impl Iterator<Item = &String> {
        self.layers.iter().flatten()
    }
}

/// Builds D^owner_δ(anchor) for δ ∈ {1, 2, 4}.
pub fn delay_gadget(owner: Player, delta: usize, anchor: &[&str]) -> DelayGadget {
    assert!(matches!(delta, 1 | 2 | 4), "delay gadgets come in sizes 1, 2 and 4");
    let mut g = DelayGadget {
        owner,
        delta,
        anchor: anchor.iter().map(|s| s.to_string()).collect(),
        layers: Vec::new(),
        edges: Vec::new(),
    };
    let key = g.key();
    g.layers = ["x", "y", "z", "t"][..delta]
        .iter()
        .map(|letter| (1..=3).map(|i| format!("{letter}^{{{key}}}_{i}")).collect())
        .collect();
    let mut base: BTreeSet<String> = g.anchor.iter().cloned().collect();
    base.insert(token(owner).to_string());
    let mut edges = vec![base];
    for layer in &g.layers {
        edges = edges
            .into_iter()
            .flat_map(|e| {
                layer.iter().map(move |v| {
                    let mut e = e.clone();
                    e.insert(v.clone());
                    e
                })
            })
            .collect();
    }
    g.edges = edges;
    g
}

/// The gadget of one geography vertex.
#[derive(Debug, Clone)]
pub struct Gadget {
    pub vertex: String,
    pub existential: bool,
    /// (role, vertex name), roles like `a` or `c:v`.
    pub named: Vec<(String, String)>,
    pub delays: Vec<DelayGadget>,
}

impl Gadget {
    /// Vertices introduced by this gadget: its named ones and delay vertices.
    pub fn vertices(&self) -> BTreeSet<String> {
        let mut out: BTreeSet<String> = self.named.iter().map(|(_, n)| n.clone()).collect();
        for d in &self.delays {
            out.extend(d.fresh().cloned());
        }
        out
    }

    pub fn edges(&self) -> Vec<BTreeSet<String>> {
        self.delays.iter().flat_map(|d| d.edges.iter().cloned()).collect()
    }

    pub fn name(&self, role: &str) -> &str {
        &self.named.iter().find(|(r, _)| r == role).unwrap_or_else(|| panic!("no role {role}")).1
    }

    pub fn delay_vertex_count(&self) -> usize {
        self.delays.iter().map(|d| d.fresh().count()).sum()
    }
}

fn named(u: &str, letter: &str) -> (String, String) {
    (letter.to_string(), format!("{letter}^{u}"))
}

fn per_neighbour(u: &str, letter: &str, v: &str) -> (String, String) {
    (format!("{letter}:{v}"), format!("{letter}^{u}_{v}"))
}

struct Builder {
    delays: Vec<DelayGadget>,
    seen: BTreeSet<String>,
}

impl Builder {
    fn add(&mut self, owner: Player, delta: usize, anchor: &[&str]) {
        let d = delay_gadget(owner, delta, anchor);
        if self.seen.insert(d.key()) {
            self.delays.push(d);
        }
    }
}

use crate::games::Player::{P1 as E, P2 as A};

/// E^∃(u) for u on player 1's side.
pub fn existential_gadget(u: &str, neighbours: &[String]) -> Gadget {
    let mut names: Vec<(String, String)> = ["a", "b", "e", "f", "g", "h"].iter().map(|l| named(u, l)).collect();
    for v in neighbours {
        for l in ["c", "d", "i"] {
            names.push(per_neighbour(u, l, v));
        }
    }
    let n = |role: &str| names.iter().find(|(r, _)| r == role).unwrap().1.clone();
    let (a, b, e, f, g, h) = (n("a"), n("b"), n("e"), n("f"), n("g"), n("h"));
    let mut bld = Builder { delays: Vec::new(), seen: BTreeSet::new() };
    bld.add(E, 2, &[&a, &b]);
    bld.add(A, 2, &[&b, &e]);
    bld.add(A, 2, &[&b, &g]);
    for v in neighbours {
        let (c, d, i) = (n(&format!("c:{v}")), n(&format!("d:{v}")), n(&format!("i:{v}")));
        let av = format!("a^{v}");
        bld.add(E, 1, &[&a, &c, &d]);
        bld.add(A, 1, &[&b, &d, &e]);
        bld.add(E, 1, &[&c, &e, &f]);
        bld.add(A, 1, &[&d, &f, &g]);
        bld.add(E, 1, &[&c, &g, &h]);
        bld.add(A, 2, &[&d, &i]);
        bld.add(E, 2, &[&i, &av]);
    }
    Gadget { vertex: u.to_string(), existential: true, named: names, delays: bld.delays }
}

/// E^∀(u) for u on player 2's side. The sub-gadget D^∃₁(f, h, i) does not
/// depend on the neighbour and is emitted once.
pub fn universal_gadget(u: &str, neighbours: &[String]) -> Gadget {
    let mut names: Vec<(String, String)> = ["a", "b", "f", "g", "h", "i"].iter().map(|l| named(u, l)).collect();
    for v in neighbours {
        for l in ["c", "d", "e", "j"] {
            names.push(per_neighbour(u, l, v));
        }
    }
    let n = |role: &str| names.iter().find(|(r, _)| r == role).unwrap().1.clone();
    let (a, b, f, g, h, i) = (n("a"), n("b"), n("f"), n("g"), n("h"), n("i"));
    let mut bld = Builder { delays: Vec::new(), seen: BTreeSet::new() };
    bld.add(A, 2, &[&a, &b]);
    bld.add(E, 2, &[&b, &g]);
    bld.add(E, 2, &[&b, &i]);
    for v in neighbours {
        let (c, d, e, j) = (n(&format!("c:{v}")), n(&format!("d:{v}")), n(&format!("e:{v}")), n(&format!("j:{v}")));
        let av = format!("a^{v}");
        bld.add(A, 1, &[&a, &c, &d]);
        bld.add(E, 1, &[&b, &d, &e]);
        bld.add(A, 1, &[&c, &e, &f]);
        bld.add(E, 1, &[&b, &c, &j]);
        bld.add(A, 1, &[&d, &j, &f]);
        bld.add(E, 1, &[&c, &f, &g]);
        bld.add(E, 1, &[&d, &f, &g]);
        bld.add(A, 1, &[&e, &g, &h]);
        bld.add(E, 1, &[&f, &h, &i]);
        bld.add(A, 2, &[&e, &av]);
    }
    Gadget { vertex: u.to_string(), existential: false, named: names, delays: bld.delays }
}

/// Everything the reduction generated, addressable by role.
#[derive(Debug, Clone)]
pub struct GadgetVertexMap {
    pub gadgets: Vec<Gadget>,
    /// D^∃₄(∅) and D^∀₄(∅).
    pub escapes: Vec<DelayGadget>,
    pub start: String,
}

impl GadgetVertexMap {
    pub fn gadget(&self, u: &str) -> Option<&Gadget> {
        self.gadgets.iter().find(|g| g.vertex == u)
    }

    /// One `gadget-vertex ROLE NAME` line per generated vertex.
    pub fn to_text(&self) -> String {
        let mut out = format!("gadget-vertex token:exists {EXISTS_TOKEN}\ngadget-vertex token:forall {FORALL_TOKEN}\n");
        for g in &self.gadgets {
            let side = if g.existential { "exists" } else { "forall" };
            for (role, name) in &g.named {
                out.push_str(&format!("gadget-vertex {side}:{}:{role} {name}\n", g.vertex));
            }
            for d in &g.delays {
                for v in d.fresh() {
                    out.push_str(&format!("gadget-vertex delay:{} {v}\n", g.vertex));
                }
            }
        }
        for d in &self.escapes {
            for v in d.fresh() {
                out.push_str(&format!("gadget-vertex escape:{} {v}\n", token(d.owner)));
            }
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct SggReduction {
    pub game: GameInstance,
    pub map: GadgetVertexMap,
}

/// ℓ = 9(k + 1) + 6 player-1 moves.
pub fn budget_for(k: usize) -> usize {
    9 * (k + 1) + 6
}

/// Builds the Maker-Maker instance for a bipartite geography instance.
pub fn reduce_sgg_to_mm(g: &GameInstance) -> Result<SggReduction, ReductionError> {
    let Board::Sgg { graph, left, right, start } = &g.board else {
        return Err(ReductionError::Unsupported(g.variant));
    };
    if !left.contains(start) {
        return Err(ReductionError::StartNotLeft(start.clone()));
    }
    let sides_ok = left.is_disjoint(right)
        && left.union(right).cloned().collect::<BTreeSet<_>>() == *graph.vertices()
        && graph.edges().iter().all(|(a, b)| left.contains(a) != left.contains(b));
    if !sides_ok {
        return Err(ReductionError::NotBipartite);
    }
    let adjacency: BTreeMap<String, BTreeSet<String>> = graph.adjacency();
    let mut gadgets = Vec::new();
    for u in graph.vertices() {
        let nbrs: Vec<String> = adjacency.get(u).map(|s| s.iter().cloned().collect()).unwrap_or_default();
        gadgets.push(if left.contains(u) { existential_gadget(u, &nbrs) } else { universal_gadget(u, &nbrs) });
    }
    let escapes = vec![delay_gadget(E, 4, &[]), delay_gadget(A, 4, &[])];

    let mut vertices: BTreeSet<String> = [EXISTS_TOKEN.to_string(), FORALL_TOKEN.to_string()].into();
    let mut sets: Vec<BTreeSet<String>> = vec![[FORALL_TOKEN.to_string(), format!("a^{start}")].into()];
    for gd in &gadgets {
        vertices.extend(gd.vertices());
        sets.extend(gd.edges());
    }
    for d in &escapes {
        vertices.extend(d.fresh().cloned());
        sets.extend(d.edges.iter().cloned());
    }
    let edges = sets.into_iter().enumerate().map(|(i, e)| (format!("e{}", i + 1), e)).collect();
    let h = Hypergraph::new(vertices.iter(), edges)?;
    let game = GameInstance::new(
        Variant::MM,
        Board::Hypergraph(h),
        Position::new(&[EXISTS_TOKEN], &[FORALL_TOKEN]),
        budget_for(g.budget),
    )?;
    Ok(SggReduction { game, map: GadgetVertexMap { gadgets, escapes, start: start.clone() } })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::parse_game;

    #[test]
    fn delay_sizes() {
        for (delta, count) in [(1, 3), (2, 9), (4, 81)] {
            let d = delay_gadget(E, delta, &["p", "q"]);
            assert_eq!(d.edges.len(), count);
            assert_eq!(d.fresh().count(), 3 * delta);
            assert!(d.edges.iter().all(|e| e.contains(EXISTS_TOKEN) && e.len() == 3 + delta));
        }
        assert_eq!(delay_gadget(A, 4, &[]).edges.len(), 81);
    }

    #[test]
    fn existential_closed_forms() {
        for n in 0..4 {
            let nbrs: Vec<String> = (1..=n).map(|i| format!("y{i}")).collect();
            let g = existential_gadget("x1", &nbrs);
            assert_eq!(g.named.len(), 6 + 3 * n);
            assert_eq!(g.delay_vertex_count(), 18 + 27 * n);
            assert_eq!(g.edges().len(), 27 + 33 * n);
        }
    }

    #[test]
    fn path_instance() {
        let g = parse_game("variant SGG\nbudget 1\nvertices x1 y1\nedge x1 y1\nleft x1\nright y1\nstart x1\n").unwrap();
        let r = reduce_sgg_to_mm(&g).unwrap();
        assert_eq!(r.game.budget, 24);
        let h = r.game.hypergraph().unwrap();
        let start: BTreeSet<String> = [FORALL_TOKEN.to_string(), "a^x1".to_string()].into();
        assert!(h.edges().iter().any(|(_, e)| *e == start));
        for (_, e) in h.edges() {
            assert_eq!(e.contains(EXISTS_TOKEN) as u8 + e.contains(FORALL_TOKEN) as u8, 1);
        }
        assert!(r.map.to_text().lines().all(|l| l.split_whitespace().count() == 3));
    }
}
