//! Boards, positions and exact bounded-move solvers for the six game variants.

mod engine;
mod format;
mod sgg;
mod solve;
mod vset;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

pub use engine::SolverConfig;
pub use format::parse_game;
pub use solve::{
    forces_win, has_threat, hex_winning_sets, is_win, legal_moves, solve_short, solve_unvalidated, solve_with,
    winning_sets,
};
pub use vset::{VSet, MAX_VERTICES};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GameError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("invalid instance: {0}")]
    Invalid(String),
    #[error("illegal history: {0}")]
    History(String),
    #[error("board has {0} vertices, the solver supports at most {MAX_VERTICES}")]
    TooLarge(usize),
    #[error("search aborted after {nodes} nodes")]
    NodeLimit { nodes: u64 },
    #[error("operation not defined for {0}")]
    Unsupported(Variant),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    MM,
    MB,
    EA,
    HEX,
    CONNECT,
    SGG,
}

impl Variant {
    pub const ALL: [Variant; 6] = [Variant::MM, Variant::MB, Variant::EA, Variant::HEX, Variant::CONNECT, Variant::SGG];

    pub fn name(self) -> &'static str {
        match self {
            Variant::MM => "MM",
            Variant::MB => "MB",
            Variant::EA => "EA",
            Variant::HEX => "HEX",
            Variant::CONNECT => "CONNECT",
            Variant::SGG => "SGG",
        }
    }

    pub fn from_name(s: &str) -> Option<Variant> {
        Variant::ALL.into_iter().find(|v| v.name().eq_ignore_ascii_case(s))
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Player {
    P1,
    P2,
}

impl Player {
    pub fn other(self) -> Player {
        match self {
            Player::P1 => Player::P2,
            Player::P2 => Player::P1,
        }
    }
}

/// Named hyperedges over a named vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    vertices: BTreeSet<String>,
    edges: Vec<(String, BTreeSet<String>)>,
}

impl Hypergraph {
    pub fn new<V, S>(vertices: V, edges: Vec<(String, BTreeSet<String>)>) -> Result<Self, GameError>
    where
        V: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let vertices: BTreeSet<String> = vertices.into_iter().map(Into::into).collect();
        let mut names = BTreeSet::new();
        for (name, members) in &edges {
            if !names.insert(name.clone()) {
                return Err(GameError::Invalid(format!("duplicate edge name {}", name)));
            }
            if let Some(v) = members.iter().find(|v| !vertices.contains(*v)) {
                return Err(GameError::Invalid(format!("edge {} uses unknown vertex {}", name, v)));
            }
        }
        Ok(Hypergraph { vertices, edges })
    }

    /// Edges named `e1, e2, ...` in the given order.
    pub fn from_sets<V, S>(vertices: V, sets: &[Vec<&str>]) -> Result<Self, GameError>
    where
        V: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let edges = sets
            .iter()
            .enumerate()
            .map(|(i, e)| (format!("e{}", i + 1), e.iter().map(|v| v.to_string()).collect()))
            .collect();
        Hypergraph::new(vertices, edges)
    }

    pub fn vertices(&self) -> &BTreeSet<String> {
        &self.vertices
    }

    pub fn edges(&self) -> &[(String, BTreeSet<String>)] {
        &self.edges
    }
}

/// Simple undirected graph; edges are stored with the smaller name first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertices: BTreeSet<String>,
    edges: BTreeSet<(String, String)>,
}

impl Graph {
    pub fn new<V, S>(vertices: V, edges: &[(&str, &str)]) -> Result<Self, GameError>
    where
        V: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut g = Graph { vertices: vertices.into_iter().map(Into::into).collect(), edges: BTreeSet::new() };
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: &str, v: &str) -> Result<(), GameError> {
        if u == v {
            return Err(GameError::Invalid(format!("loop at {}", u)));
        }
        for w in [u, v] {
            if !self.vertices.contains(w) {
                return Err(GameError::Invalid(format!("edge uses unknown vertex {}", w)));
            }
        }
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        self.edges.insert((a.to_string(), b.to_string()));
        Ok(())
    }

    pub fn vertices(&self) -> &BTreeSet<String> {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeSet<(String, String)> {
        &self.edges
    }

    pub fn has_edge(&self, u: &str, v: &str) -> bool {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        self.edges.contains(&(a.to_string(), b.to_string()))
    }

    pub fn neighbours(&self, v: &str) -> BTreeSet<String> {
        self.edges
            .iter()
            .filter_map(|(a, b)| {
                if a == v {
                    Some(b.clone())
                } else if b == v {
                    Some(a.clone())
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn adjacency(&self) -> BTreeMap<String, BTreeSet<String>> {
        let mut adj: BTreeMap<String, BTreeSet<String>> =
            self.vertices.iter().map(|v| (v.clone(), BTreeSet::new())).collect();
        for (a, b) in &self.edges {
            adj.get_mut(a).unwrap().insert(b.clone());
            adj.get_mut(b).unwrap().insert(a.clone());
        }
        adj
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConnectSpec {
    pub rows: usize,
    pub cols: usize,
    pub k: usize,
    pub p: usize,
}

impl ConnectSpec {
    pub fn cell(row: usize, col: usize) -> String {
        format!("r{}c{}", row, col)
    }

    pub fn parse_cell(name: &str) -> Option<(usize, usize)> {
        let rest = name.strip_prefix('r')?;
        let (r, c) = rest.split_once('c')?;
        Some((r.parse().ok()?, c.parse().ok()?))
    }

    pub fn cells(&self) -> Vec<String> {
        let mut out = Vec::with_capacity(self.rows * self.cols);
        for r in 1..=self.rows {
            for c in 1..=self.cols {
                out.push(ConnectSpec::cell(r, c));
            }
        }
        out
    }

    /// All sets of `k` consecutive cells along a row, column or diagonal.
    pub fn lines(&self) -> Vec<Vec<String>> {
        let mut out = Vec::new();
        let (m, n, k) = (self.rows as i64, self.cols as i64, self.k as i64);
        for r in 1..=m {
            for c in 1..=n {
                for (dr, dc) in [(0, 1), (1, 0), (1, 1), (1, -1)] {
                    let (er, ec) = (r + dr * (k - 1), c + dc * (k - 1));
                    if er >= 1 && er <= m && ec >= 1 && ec <= n {
                        out.push(
                            (0..k).map(|i| ConnectSpec::cell((r + dr * i) as usize, (c + dc * i) as usize)).collect(),
                        );
                    }
                }
            }
        }
        out
    }

    /// King-move adjacency on the grid.
    pub fn graph(&self) -> Graph {
        let mut g = Graph { vertices: self.cells().into_iter().collect(), edges: BTreeSet::new() };
        for r in 1..=self.rows as i64 {
            for c in 1..=self.cols as i64 {
                for (dr, dc) in [(0, 1), (1, 0), (1, 1), (1, -1)] {
                    let (r2, c2) = (r + dr, c + dc);
                    if r2 >= 1 && r2 <= self.rows as i64 && c2 >= 1 && c2 <= self.cols as i64 {
                        g.add_edge(&ConnectSpec::cell(r as usize, c as usize), &ConnectSpec::cell(r2 as usize, c2 as usize))
                            .unwrap();
                    }
                }
            }
        }
        g
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Board {
    Hypergraph(Hypergraph),
    Hex { graph: Graph, s: String, t: String },
    Connect(ConnectSpec),
    Sgg { graph: Graph, left: BTreeSet<String>, right: BTreeSet<String>, start: String },
}

impl Board {
    /// Claimable vertices (SGG: all vertices of the graph).
    pub fn vertices(&self) -> BTreeSet<String> {
        match self {
            Board::Hypergraph(h) => h.vertices.clone(),
            Board::Hex { graph, .. } | Board::Sgg { graph, .. } => graph.vertices.clone(),
            Board::Connect(spec) => spec.cells().into_iter().collect(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Position {
    pub p1: BTreeSet<String>,
    pub p2: BTreeSet<String>,
}

impl Position {
    pub fn new<A: AsRef<str>, B: AsRef<str>>(p1: &[A], p2: &[B]) -> Self {
        Position {
            p1: p1.iter().map(|s| s.as_ref().to_string()).collect(),
            p2: p2.iter().map(|s| s.as_ref().to_string()).collect(),
        }
    }

    pub fn stones(&self, player: Player) -> &BTreeSet<String> {
        match player {
            Player::P1 => &self.p1,
            Player::P2 => &self.p2,
        }
    }

    pub fn is_claimed(&self, v: &str) -> bool {
        self.p1.contains(v) || self.p2.contains(v)
    }
}

/// One move: a single vertex, or `p` cells for CONNECT.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Move(pub Vec<String>);

impl Move {
    pub fn single(v: &str) -> Move {
        Move(vec![v.to_string()])
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.join("+"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameInstance {
    pub variant: Variant,
    pub board: Board,
    pub position: Position,
    pub budget: usize,
}

impl GameInstance {
    pub fn new(variant: Variant, board: Board, position: Position, budget: usize) -> Result<Self, GameError> {
        let g = GameInstance { variant, board, position, budget };
        g.validate()?;
        Ok(g)
    }

    pub fn hypergraph(&self) -> Option<&Hypergraph> {
        match &self.board {
            Board::Hypergraph(h) => Some(h),
            _ => None,
        }
    }

    /// Checks the variant's invariants; rejects pre-claimed Hex terminals.
    pub fn validate(&self) -> Result<(), GameError> {
        self.validate_structure()?;
        if let Board::Hex { s, t, .. } = &self.board {
            if self.position.is_claimed(s) || self.position.is_claimed(t) {
                return Err(GameError::Invalid("terminal s or t is claimed".into()));
            }
        }
        Ok(())
    }

    pub(crate) fn validate_structure(&self) -> Result<(), GameError> {
        let bad = |m: String| Err(GameError::Invalid(m));
        let kind_ok = matches!(
            (self.variant, &self.board),
            (Variant::MM | Variant::MB | Variant::EA, Board::Hypergraph(_))
                | (Variant::HEX, Board::Hex { .. })
                | (Variant::CONNECT, Board::Connect(_))
                | (Variant::SGG, Board::Sgg { .. })
        );
        if !kind_ok {
            return bad(format!("board does not match variant {}", self.variant));
        }
        let vertices = self.board.vertices();
        if let Some(v) = self.position.p1.intersection(&self.position.p2).next() {
            return bad(format!("{} claimed by both players", v));
        }
        if let Some(v) = self.position.p1.iter().chain(&self.position.p2).find(|v| !vertices.contains(*v)) {
            return bad(format!("claimed vertex {} is not on the board", v));
        }
        match &self.board {
            Board::Hex { graph, s, t } => {
                if s == t {
                    return bad("s and t coincide".into());
                }
                if !graph.vertices.contains(s) || !graph.vertices.contains(t) {
                    return bad("s or t is not a vertex".into());
                }
            }
            Board::Connect(spec) => {
                if spec.rows == 0 || spec.cols == 0 {
                    return bad("empty board".into());
                }
                if spec.p < 1 || spec.p >= spec.k {
                    return bad(format!("need 1 <= p < k, got p = {}, k = {}", spec.p, spec.k));
                }
            }
            Board::Sgg { graph, left, right, start } => {
                if !self.position.p1.is_empty() || !self.position.p2.is_empty() {
                    return bad("geography positions are given by the start vertex only".into());
                }
                if let Some(v) = left.intersection(right).next() {
                    return bad(format!("{} is on both sides", v));
                }
                let all: BTreeSet<String> = left.union(right).cloned().collect();
                if all != graph.vertices {
                    return bad("left and right must partition the vertices".into());
                }
                if !left.contains(start) {
                    return bad(format!("start vertex {} is not on the left side", start));
                }
                for (a, b) in &graph.edges {
                    if left.contains(a) == left.contains(b) {
                        return bad(format!("edge {} {} is not bipartite", a, b));
                    }
                }
            }
            Board::Hypergraph(_) => {}
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        format::write_game(self)
    }
}

/// Solver answer with an optional witness line (alternating moves, player 1 first).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub first_player_wins: bool,
    pub principal_variation: Option<Vec<Move>>,
    pub nodes: u64,
}
