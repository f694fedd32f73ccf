//! Full-enumeration reference solver. Shares no search or win-detection code
//! with `games`: states are plain string sets and every legal move is tried.

use std::collections::BTreeSet;

use crate::games::{Board, ConnectSpec, GameInstance, Variant};

type Set = BTreeSet<String>;

struct Rules<'a> {
    g: &'a GameInstance,
    vertices: Vec<String>,
    move_size: usize,
}

impl<'a> Rules<'a> {
    fn holds_edge(&self, stones: &Set) -> bool {
        match &self.g.board {
            Board::Hypergraph(h) => h.edges().iter().any(|(_, e)| e.iter().all(|v| stones.contains(v))),
            _ => unreachable!(),
        }
    }

    fn connected(&self, stones: &Set) -> bool {
        let Board::Hex { graph, s, t } = &self.g.board else { unreachable!() };
        // depth-first flood from s through owned vertices
        let mut stack = vec![s.clone()];
        let mut seen = Set::new();
        while let Some(v) = stack.pop() {
            if !seen.insert(v.clone()) {
                continue;
            }
            for w in graph.vertices() {
                if graph.has_edge(&v, w) {
                    if w == t {
                        return true;
                    }
                    if stones.contains(w) {
                        stack.push(w.clone());
                    }
                }
            }
        }
        false
    }

    fn in_a_row(&self, stones: &Set) -> bool {
        let Board::Connect(spec) = &self.g.board else { unreachable!() };
        let cells: Vec<(i64, i64)> = stones
            .iter()
            .map(|c| {
                let (r, c) = ConnectSpec::parse_cell(c).unwrap();
                (r as i64, c as i64)
            })
            .collect();
        let has = |r: i64, c: i64| cells.contains(&(r, c));
        cells.iter().any(|&(r, c)| {
            [(0, 1), (1, 0), (1, 1), (1, -1)]
                .iter()
                .any(|&(dr, dc)| (0..spec.k as i64).all(|i| has(r + dr * i, c + dc * i)))
        })
    }

    /// Player 1's target condition on its own stones (EA: on Avoider's stones).
    fn p1_goal(&self, stones: &Set) -> bool {
        match self.g.variant {
            Variant::MM | Variant::MB | Variant::EA => self.holds_edge(stones),
            Variant::HEX => self.connected(stones),
            Variant::CONNECT => self.in_a_row(stones),
            Variant::SGG => unreachable!(),
        }
    }

    fn p2_goal(&self, stones: &Set) -> bool {
        match self.g.variant {
            Variant::MM => self.holds_edge(stones),
            Variant::CONNECT => self.in_a_row(stones),
            _ => false,
        }
    }

    fn moves(&self, p1: &Set, p2: &Set) -> Vec<Vec<String>> {
        let free: Vec<&String> = self.vertices.iter().filter(|v| !p1.contains(*v) && !p2.contains(*v)).collect();
        let mut out = Vec::new();
        let mut pick = Vec::new();
        fn rec(free: &[&String], k: usize, start: usize, pick: &mut Vec<String>, out: &mut Vec<Vec<String>>) {
            if pick.len() == k {
                out.push(pick.clone());
                return;
            }
            for i in start..free.len() {
                pick.push(free[i].clone());
                rec(free, k, i + 1, pick, out);
                pick.pop();
            }
        }
        rec(&free, self.move_size, 0, &mut pick, &mut out);
        out
    }

    /// Maker-style play: player 1 has `left1` moves, player 2 `left2`.
    fn race(&self, p1: &Set, p2: &Set, p1_turn: bool, left1: usize, left2: usize) -> bool {
        if p1_turn {
            if left1 == 0 {
                return false;
            }
            self.moves(p1, p2).into_iter().any(|m| {
                let mut next = p1.clone();
                next.extend(m);
                self.p1_goal(&next) || self.race(&next, p2, false, left1 - 1, left2)
            })
        } else {
            if left1 == 0 || left2 == 0 {
                return false;
            }
            let moves = self.moves(p1, p2);
            if moves.is_empty() {
                return false;
            }
            moves.into_iter().all(|m| {
                let mut next = p2.clone();
                next.extend(m);
                !self.p2_goal(&next) && self.race(p1, &next, true, left1, left2 - 1)
            })
        }
    }

    /// Enforcer (player 1) moves first; `left` rounds remain.
    fn enforce(&self, e: &Set, a: &Set, left: usize) -> bool {
        if left == 0 {
            return false;
        }
        self.moves(e, a).into_iter().any(|m| {
            let mut e2 = e.clone();
            e2.extend(m);
            let replies = self.moves(&e2, a);
            !replies.is_empty()
                && replies.into_iter().all(|r| {
                    let mut a2 = a.clone();
                    a2.extend(r);
                    self.p1_goal(&a2) || self.enforce(&e2, &a2, left - 1)
                })
        })
    }
}

fn geography(g: &GameInstance, visited: &mut Vec<String>, p1_turn: bool, ply: usize) -> bool {
    let Board::Sgg { graph, .. } = &g.board else { unreachable!() };
    let token = visited.last().unwrap().clone();
    let options: Vec<String> = graph
        .vertices()
        .iter()
        .filter(|w| graph.has_edge(&token, w) && !visited.contains(w))
        .cloned()
        .collect();
    if p1_turn {
        if ply > g.budget {
            return false;
        }
        options.into_iter().any(|w| {
            visited.push(w);
            let r = geography(g, visited, false, ply + 1);
            visited.pop();
            r
        })
    } else {
        if options.is_empty() {
            return true;
        }
        if ply > g.budget {
            return false;
        }
        options.into_iter().all(|w| {
            visited.push(w);
            let r = geography(g, visited, true, ply + 1);
            visited.pop();
            r
        })
    }
}

/// Whether player 1 wins within the budget, by exhaustive enumeration.
pub fn reference_solve(g: &GameInstance) -> bool {
    if let Board::Sgg { start, .. } = &g.board {
        return geography(g, &mut vec![start.clone()], true, 1);
    }
    let rules = Rules {
        g,
        vertices: g.board.vertices().into_iter().collect(),
        move_size: if let Board::Connect(spec) = &g.board { spec.p } else { 1 },
    };
    let (p1, p2) = (&g.position.p1, &g.position.p2);
    match g.variant {
        Variant::EA => rules.p1_goal(p2) || rules.enforce(p1, p2, g.budget),
        _ => {
            if rules.p2_goal(p2) {
                return false;
            }
            if rules.p1_goal(p1) {
                return true;
            }
            rules.race(p1, p2, true, g.budget, g.budget.saturating_sub(1))
        }
    }
}
