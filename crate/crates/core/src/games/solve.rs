use std::collections::{BTreeSet, HashMap, VecDeque};

use super::engine::{combinations, Avoid, Race, SolverConfig};
use super::sgg::Geography;
use super::vset::{VSet, MAX_VERTICES};
use super::{Board, GameError, GameInstance, Graph, Move, Player, Position, Variant, Verdict};

struct Index {
    names: Vec<String>,
    of: HashMap<String, usize>,
}

impl Index {
    fn new(names: BTreeSet<String>) -> Result<Self, GameError> {
        if names.len() > MAX_VERTICES {
            return Err(GameError::TooLarge(names.len()));
        }
        let names: Vec<String> = names.into_iter().collect();
        let of = names.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        Ok(Index { names, of })
    }

    fn set<'a>(&self, vs: impl IntoIterator<Item = &'a String>) -> VSet {
        vs.into_iter().fold(VSet::EMPTY, |s, v| s.with(self.of[v]))
    }

    fn to_move(&self, s: VSet) -> Move {
        Move(s.iter().map(|i| self.names[i].clone()).collect())
    }
}

/// Interiors of simple s-t paths avoiding `blocked` whose vertices outside
/// `own` number at most `max_missing`; inclusion-minimal ones only.
fn hex_paths(
    graph: &Graph,
    s: &str,
    t: &str,
    blocked: &BTreeSet<String>,
    own: &BTreeSet<String>,
    max_missing: usize,
) -> Vec<BTreeSet<String>> {
    let adj = graph.adjacency();
    let mut found: Vec<BTreeSet<String>> = Vec::new();
    let mut path: Vec<String> = Vec::new();
    let mut on_path: BTreeSet<String> = BTreeSet::from([s.to_string()]);

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        v: &str,
        t: &str,
        adj: &std::collections::BTreeMap<String, BTreeSet<String>>,
        blocked: &BTreeSet<String>,
        own: &BTreeSet<String>,
        budget: usize,
        path: &mut Vec<String>,
        on_path: &mut BTreeSet<String>,
        found: &mut Vec<BTreeSet<String>>,
    ) {
        for w in &adj[v] {
            if w == t {
                found.push(path.iter().cloned().collect());
                continue;
            }
            if on_path.contains(w) || blocked.contains(w) {
                continue;
            }
            let cost = usize::from(!own.contains(w));
            if cost > budget {
                continue;
            }
            path.push(w.clone());
            on_path.insert(w.clone());
            dfs(w, t, adj, blocked, own, budget - cost, path, on_path, found);
            on_path.remove(w);
            path.pop();
        }
    }
    dfs(s, t, &adj, blocked, own, max_missing, &mut path, &mut on_path, &mut found);
    found.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    found.dedup();
    let mut minimal: Vec<BTreeSet<String>> = Vec::new();
    for f in found {
        if !minimal.iter().any(|m| m.is_subset(&f)) {
            minimal.push(f);
        }
    }
    minimal
}

/// Inclusion-minimal interiors of all simple s-t paths.
pub fn hex_winning_sets(graph: &Graph, s: &str, t: &str) -> Vec<BTreeSet<String>> {
    hex_paths(graph, s, t, &BTreeSet::from([t.to_string()]), &BTreeSet::new(), usize::MAX)
}

/// Player 1's winning sets (EA: the sets Avoider must not complete).
pub fn winning_sets(g: &GameInstance) -> Vec<BTreeSet<String>> {
    match &g.board {
        Board::Hypergraph(h) => h.edges().iter().map(|(_, e)| e.clone()).collect(),
        Board::Hex { graph, s, t } => hex_winning_sets(graph, s, t),
        Board::Connect(spec) => spec.lines().into_iter().map(|l| l.into_iter().collect()).collect(),
        Board::Sgg { .. } => Vec::new(),
    }
}

/// Sets relevant to a solve with the given budget (Hex paths are pruned by cost).
fn search_sets(g: &GameInstance, position: &Position, budget: usize) -> Vec<BTreeSet<String>> {
    match &g.board {
        Board::Hex { graph, s, t } => {
            let mut blocked = position.p2.clone();
            blocked.insert(s.clone());
            hex_paths(graph, s, t, &blocked, &position.p1, budget)
        }
        _ => winning_sets(g),
    }
}

pub fn solve_short(g: &GameInstance) -> Result<Verdict, GameError> {
    solve_with(g, SolverConfig::default())
}

pub fn solve_with(g: &GameInstance, cfg: SolverConfig) -> Result<Verdict, GameError> {
    g.validate()?;
    solve_unvalidated(g, cfg)
}

/// Like [`solve_with`] but tolerates claimed Hex terminals (they lie on no
/// winning set, so claiming them changes nothing).
pub fn solve_unvalidated(g: &GameInstance, cfg: SolverConfig) -> Result<Verdict, GameError> {
    g.validate_structure()?;
    let budget = g.budget as u32;
    if let Board::Sgg { graph, start, .. } = &g.board {
        let idx = Index::new(graph.vertices().clone())?;
        let adj = idx.names.iter().map(|v| idx.set(&graph.neighbours(v))).collect();
        let mut geo = Geography::new(adj, budget, cfg);
        let s = idx.of[start];
        let visited = VSet::singleton(s);
        let wins = geo.first(visited, s, 1);
        if geo.aborted {
            return Err(GameError::NodeLimit { nodes: geo.nodes });
        }
        let pv = wins.then(|| {
            geo.principal_variation(visited, s).into_iter().map(|v| Move::single(&idx.names[v])).collect()
        });
        return Ok(Verdict { first_player_wins: wins, principal_variation: pv, nodes: geo.nodes });
    }

    let idx = Index::new(g.board.vertices())?;
    let p1 = idx.set(&g.position.p1);
    let p2 = idx.set(&g.position.p2);
    let n = idx.names.len();
    let sets: Vec<VSet> = search_sets(g, &g.position, g.budget).iter().map(|e| idx.set(e)).collect();

    if g.variant == Variant::EA {
        let mut av = Avoid::new(&sets, n, cfg);
        if av.caught(p2) {
            return Ok(Verdict { first_player_wins: true, principal_variation: Some(Vec::new()), nodes: 0 });
        }
        let wins = av.enforcer(p1, p2, budget);
        if av.aborted {
            return Err(GameError::NodeLimit { nodes: av.nodes });
        }
        let pv = wins.then(|| av.principal_variation(p1, p2, budget).into_iter().map(|m| idx.to_move(m)).collect());
        return Ok(Verdict { first_player_wins: wins, principal_variation: pv, nodes: av.nodes });
    }

    let both_sides = matches!(g.variant, Variant::MM | Variant::CONNECT);
    let theirs: Vec<VSet> = if both_sides { sets.clone() } else { Vec::new() };
    let p = match &g.board {
        Board::Connect(spec) => spec.p,
        _ => 1,
    };
    let mut race = Race::new(&sets, &theirs, n, p, cfg);
    if race.defender_completes(p2) {
        return Ok(Verdict { first_player_wins: false, principal_variation: None, nodes: 0 });
    }
    if race.completes(p1) {
        return Ok(Verdict { first_player_wins: true, principal_variation: Some(Vec::new()), nodes: 0 });
    }
    let wins = race.attacker(p1, p2, budget);
    if race.aborted {
        return Err(GameError::NodeLimit { nodes: race.nodes });
    }
    let pv = wins.then(|| race.principal_variation(p1, p2, budget).into_iter().map(|m| idx.to_move(m)).collect());
    Ok(Verdict { first_player_wins: wins, principal_variation: pv, nodes: race.nodes })
}

/// Whether `attacker` forces completion of one of its sets within `delta` own
/// moves, where the opponent completing a set first stops the attempt
/// (Maker-Maker rules on the board's winning sets). `None` means the node
/// limit was hit.
pub fn forces_win(
    g: &GameInstance,
    position: &Position,
    attacker: Player,
    attacker_to_move: bool,
    delta: usize,
    cfg: SolverConfig,
) -> Result<Option<bool>, GameError> {
    if g.variant == Variant::SGG {
        return Err(GameError::Unsupported(g.variant));
    }
    let idx = Index::new(g.board.vertices())?;
    let sets: Vec<VSet> = winning_sets(g).iter().map(|e| idx.set(e)).collect();
    let (own, opp) = (idx.set(position.stones(attacker)), idx.set(position.stones(attacker.other())));
    let hex = matches!(g.board, Board::Hex { .. });
    let (mine, theirs): (Vec<VSet>, Vec<VSet>) = match (hex, attacker) {
        (true, Player::P1) => (sets, Vec::new()),
        (true, Player::P2) => (Vec::new(), sets),
        (false, _) => (sets.clone(), sets),
    };
    let p = match &g.board {
        Board::Connect(spec) => spec.p,
        _ => 1,
    };
    let mut race = Race::new(&mine, &theirs, idx.names.len(), p, cfg);
    if race.completes(own) {
        return Ok(Some(true));
    }
    if race.defender_completes(opp) {
        return Ok(Some(false));
    }
    let result = if attacker_to_move {
        race.attacker(own, opp, delta as u32)
    } else {
        race.defender(own, opp, delta as u32)
    };
    Ok(if race.aborted { None } else { Some(result) })
}

/// `player`, moving first, forces a completed set within `delta` own moves.
pub fn has_threat(g: &GameInstance, position: &Position, player: Player, delta: usize) -> Result<bool, GameError> {
    match forces_win(g, position, player, true, delta, SolverConfig::default())? {
        Some(v) => Ok(v),
        None => unreachable!("no node limit configured"),
    }
}

enum Replayed {
    Positional(Position),
    Token { visited: BTreeSet<String>, token: String },
}

fn replay(g: &GameInstance, history: &[Move]) -> Result<Replayed, GameError> {
    let err = |i: usize, m: &Move, why: &str| GameError::History(format!("move {} ({}): {}", i + 1, m, why));
    match &g.board {
        Board::Sgg { graph, start, .. } => {
            let mut visited = BTreeSet::from([start.clone()]);
            let mut token = start.clone();
            for (i, m) in history.iter().enumerate() {
                let [v] = m.0.as_slice() else { return Err(err(i, m, "geography moves are single vertices")) };
                if !graph.has_edge(&token, v) {
                    return Err(err(i, m, "not adjacent to the token"));
                }
                if !visited.insert(v.clone()) {
                    return Err(err(i, m, "already visited"));
                }
                token = v.clone();
            }
            Ok(Replayed::Token { visited, token })
        }
        board => {
            let size = if let Board::Connect(spec) = board { spec.p } else { 1 };
            let vertices = board.vertices();
            let mut pos = g.position.clone();
            for (i, m) in history.iter().enumerate() {
                let distinct: BTreeSet<&String> = m.0.iter().collect();
                if m.0.len() != size || distinct.len() != size {
                    return Err(err(i, m, &format!("a move claims {} distinct vertices", size)));
                }
                for v in &m.0 {
                    if !vertices.contains(v) {
                        return Err(err(i, m, "unknown vertex"));
                    }
                    if pos.is_claimed(v) {
                        return Err(err(i, m, "already claimed"));
                    }
                }
                let side = if i % 2 == 0 { &mut pos.p1 } else { &mut pos.p2 };
                side.extend(m.0.iter().cloned());
            }
            Ok(Replayed::Positional(pos))
        }
    }
}

/// Moves available after `history` (player 1 moves first).
pub fn legal_moves(g: &GameInstance, history: &[Move]) -> Result<Vec<Move>, GameError> {
    match (replay(g, history)?, &g.board) {
        (Replayed::Token { visited, token }, Board::Sgg { graph, .. }) => {
            Ok(graph.neighbours(&token).difference(&visited).map(|v| Move::single(v)).collect())
        }
        (Replayed::Positional(pos), board) => {
            let free: Vec<String> = board.vertices().into_iter().filter(|v| !pos.is_claimed(v)).collect();
            let size = if let Board::Connect(spec) = board { spec.p } else { 1 };
            let pool: Vec<usize> = (0..free.len()).collect();
            Ok(combinations(&pool, size)
                .into_iter()
                .map(|s| Move(s.iter().map(|i| free[i].clone()).collect()))
                .collect())
        }
        _ => unreachable!(),
    }
}

fn hex_connected(graph: &Graph, s: &str, t: &str, own: &BTreeSet<String>) -> bool {
    let mut seen = BTreeSet::from([s.to_string()]);
    let mut queue = VecDeque::from([s.to_string()]);
    while let Some(v) = queue.pop_front() {
        for w in graph.neighbours(&v) {
            if w == t {
                return true;
            }
            if own.contains(&w) && seen.insert(w.clone()) {
                queue.push_back(w);
            }
        }
    }
    false
}

/// Whether `player` has won after `history` under the variant's rules.
pub fn is_win(g: &GameInstance, history: &[Move], player: Player) -> Result<bool, GameError> {
    let state = replay(g, history)?;
    let contains_set = |stones: &BTreeSet<String>| winning_sets(g).iter().any(|e| e.is_subset(stones));
    Ok(match (state, &g.board) {
        (Replayed::Token { visited, token }, Board::Sgg { graph, .. }) => {
            let to_move = if history.len() % 2 == 0 { Player::P1 } else { Player::P2 };
            to_move == player.other() && graph.neighbours(&token).difference(&visited).next().is_none()
        }
        (Replayed::Positional(pos), board) => match (g.variant, player) {
            (Variant::MM | Variant::CONNECT, _) => contains_set(pos.stones(player)),
            (Variant::MB, Player::P1) => contains_set(&pos.p1),
            (Variant::HEX, Player::P1) => match board {
                Board::Hex { graph, s, t } => hex_connected(graph, s, t, &pos.p1),
                _ => unreachable!(),
            },
            (Variant::EA, Player::P1) => contains_set(&pos.p2),
            _ => false,
        },
        _ => unreachable!(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::{parse_game, ConnectSpec};

    fn game(text: &str) -> GameInstance {
        parse_game(text).unwrap()
    }

    #[test]
    fn maker_breaker_double_threat() {
        let g = game("variant MB\nbudget 2\nvertices a b c\nedge a b\nedge a c\n");
        let v = solve_short(&g).unwrap();
        assert!(v.first_player_wins);
        assert_eq!(v.principal_variation.unwrap()[0], Move::single("a"));
    }

    #[test]
    fn maker_maker_single_edge_blocked() {
        let g = game("variant MM\nbudget 2\nvertices a b\nedge a b\n");
        assert!(!solve_short(&g).unwrap().first_player_wins);
    }

    #[test]
    fn legal_move_examples() {
        let g = game("variant MB\nbudget 1\nvertices a b c\nedge a b\np1 a\n");
        assert_eq!(legal_moves(&g, &[]).unwrap(), vec![Move::single("b"), Move::single("c")]);
        let g = game("variant SGG\nbudget 2\nleft v0 x\nright w\nedge v0 w\nedge w x\nstart v0\n");
        assert_eq!(legal_moves(&g, &[]).unwrap(), vec![Move::single("w")]);
        let g = game("variant CONNECT\nbudget 1\nboard 3 3\nk 3\np 2\n");
        assert_eq!(legal_moves(&g, &[]).unwrap().len(), 36);
        assert!(legal_moves(&g, &[Move::single("r1c1")]).is_err());
    }

    #[test]
    fn win_predicates() {
        let g = game("variant HEX\nbudget 0\nvertices s t\nedge s t\ns s\nt t\n");
        assert!(is_win(&g, &[], Player::P1).unwrap());
        assert!(solve_short(&g).unwrap().first_player_wins);
        let g = game("variant MB\nbudget 0\nvertices a b\nedge a b\np1 a b\n");
        assert!(is_win(&g, &[], Player::P1).unwrap());
        let g = game("variant CONNECT\nbudget 0\nboard 3 3\nk 3\np 1\np1 1 1\np1 2 2\np1 3 3\n");
        assert!(is_win(&g, &[], Player::P1).unwrap());
        assert!(!is_win(&g, &[], Player::P2).unwrap());
    }

    #[test]
    fn geography_stuck_opponent() {
        // v0 - w - x: P1 moves to w, P2 moves to x, P1 is stuck
        let g = game("variant SGG\nbudget 4\nleft v0 x\nright w\nedge v0 w\nedge w x\nstart v0\n");
        assert!(!solve_short(&g).unwrap().first_player_wins);
        // v0 - w only: P2 is stuck after P1's first move
        let g = game("variant SGG\nbudget 1\nleft v0\nright w\nedge v0 w\nstart v0\n");
        let v = solve_short(&g).unwrap();
        assert!(v.first_player_wins);
        assert!(is_win(&g, &[Move::single("w")], Player::P1).unwrap());
    }

    #[test]
    fn hex_path_sets() {
        let g = Graph::new(["s", "a", "b", "t"], &[("s", "a"), ("a", "b"), ("b", "t"), ("a", "t")]).unwrap();
        let sets = hex_winning_sets(&g, "s", "t");
        assert_eq!(sets, vec![BTreeSet::from(["a".to_string()])]);
    }

    #[test]
    fn connect_tic_tac_toe_three_moves() {
        // P1 holds two corners and the centre is free: immediate fork
        let g = game("variant CONNECT\nbudget 2\nboard 3 3\nk 3\np 1\np1 1 1\np1 3 3\np2 1 3\np2 3 1\n");
        assert!(solve_short(&g).unwrap().first_player_wins);
        assert_eq!(ConnectSpec { rows: 3, cols: 3, k: 3, p: 1 }.lines().len(), 8);
    }

    #[test]
    fn threat_in_gadget_like_board() {
        let g = game("variant MM\nbudget 1\nvertices o x1 x2 x3\nedge o x1\nedge o x2\nedge o x3\n");
        let pos = Position::new(&["o"], &["x1"]);
        assert!(has_threat(&g, &pos, Player::P1, 1).unwrap());
        let pos = Position::new(&["o"], &["x1", "x2"]);
        assert!(has_threat(&g, &pos, Player::P1, 1).unwrap());
        assert_eq!(forces_win(&g, &pos, Player::P1, false, 1, SolverConfig::default()).unwrap(), Some(false));
    }
}
