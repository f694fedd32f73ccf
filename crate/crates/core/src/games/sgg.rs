//! Short generalized geography: the players alternately move a token to an
//! unvisited neighbour; whoever cannot move loses. Player 1 moves first from
//! the start vertex, and only the first `horizon` moves (both players) count.

use std::collections::HashMap;

use super::engine::SolverConfig;
use super::vset::VSet;

pub(crate) struct Geography {
    adj: Vec<VSet>,
    horizon: u32,
    cfg: SolverConfig,
    tt: HashMap<(VSet, usize, u32), bool>,
    pub nodes: u64,
    pub aborted: bool,
}

impl Geography {
    pub fn new(adj: Vec<VSet>, horizon: u32, cfg: SolverConfig) -> Self {
        Geography { adj, horizon, cfg, tt: HashMap::new(), nodes: 0, aborted: false }
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if let Some(limit) = self.cfg.node_limit {
            if self.nodes > limit {
                self.aborted = true;
            }
        }
        self.aborted
    }

    pub fn options(&self, visited: VSet, token: usize) -> VSet {
        self.adj[token].difference(&visited)
    }

    /// Player 1 to make move number `ply` (1-based).
    pub fn first(&mut self, visited: VSet, token: usize, ply: u32) -> bool {
        if self.tick() || ply > self.horizon {
            return false;
        }
        let key = (visited, token, ply);
        if self.cfg.transposition {
            if let Some(&v) = self.tt.get(&key) {
                return v;
            }
        }
        let mut result = false;
        for v in self.options(visited, token).iter().collect::<Vec<_>>() {
            if self.second(visited.with(v), v, ply + 1) {
                result = true;
                break;
            }
        }
        if self.cfg.transposition && !self.aborted {
            self.tt.insert(key, result);
        }
        result
    }

    /// Player 2 to move; player 1 wins if player 2 is stuck.
    pub fn second(&mut self, visited: VSet, token: usize, ply: u32) -> bool {
        if self.tick() {
            return false;
        }
        let options: Vec<usize> = self.options(visited, token).iter().collect();
        if options.is_empty() {
            return true;
        }
        if ply > self.horizon {
            return false;
        }
        let key = (visited, token, ply);
        if self.cfg.transposition {
            if let Some(&v) = self.tt.get(&key) {
                return v;
            }
        }
        let mut result = true;
        for v in options {
            if !self.first(visited.with(v), v, ply + 1) {
                result = false;
                break;
            }
        }
        if self.cfg.transposition && !self.aborted {
            self.tt.insert(key, result);
        }
        result
    }

    pub fn principal_variation(&mut self, mut visited: VSet, mut token: usize) -> Vec<usize> {
        let mut line = Vec::new();
        let mut ply = 1;
        while ply <= self.horizon {
            let Some(m) = self.options(visited, token).iter().find(|&v| self.second(visited.with(v), v, ply + 1))
            else {
                break;
            };
            line.push(m);
            visited.insert(m);
            token = m;
            let Some(reply) = self.options(visited, token).first() else { break };
            line.push(reply);
            visited.insert(reply);
            token = reply;
            ply += 2;
        }
        line
    }
}
