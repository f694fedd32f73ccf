//! Bitset game-tree search.
//!
//! [`Race`] decides whether an attacker completes one of its sets within a
//! number of own moves while the defender, moving in between, neither blocks
//! every set nor completes one of its own first. Maker-Maker, Maker-Breaker,
//! Hex and k-Connect are all instances. [`Avoid`] handles Enforcer-Avoider.

use std::collections::HashMap;

use super::vset::VSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverConfig {
    pub transposition: bool,
    /// With one stone per move, answer an immediate threat only by blocking it.
    pub forced_moves: bool,
    /// Collapse vertices that cannot matter within the remaining budget.
    pub relevance: bool,
    pub node_limit: Option<u64>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { transposition: true, forced_moves: true, relevance: true, node_limit: None }
    }
}

impl SolverConfig {
    /// Every pruning switched off.
    pub fn plain() -> Self {
        SolverConfig { transposition: false, forced_moves: false, relevance: false, node_limit: None }
    }

    pub fn with_node_limit(mut self, limit: u64) -> Self {
        self.node_limit = Some(limit);
        self
    }
}

type Key = (VSet, VSet, bool, u32);

/// All `p`-subsets of `pool`, in lexicographic order of indices.
pub(crate) fn combinations(pool: &[usize], p: usize) -> Vec<VSet> {
    fn rec(pool: &[usize], p: usize, start: usize, acc: VSet, out: &mut Vec<VSet>) {
        if p == 0 {
            out.push(acc);
            return;
        }
        for i in start..pool.len() {
            if pool.len() - i < p {
                break;
            }
            rec(pool, p - 1, i + 1, acc.with(pool[i]), out);
        }
    }
    let mut out = Vec::new();
    rec(pool, p, 0, VSet::EMPTY, &mut out);
    out
}

pub(crate) struct Race<'a> {
    mine: &'a [VSet],
    theirs: &'a [VSet],
    all: VSet,
    p: usize,
    cfg: SolverConfig,
    tt: HashMap<Key, bool>,
    pub nodes: u64,
    pub aborted: bool,
}

impl<'a> Race<'a> {
    pub fn new(mine: &'a [VSet], theirs: &'a [VSet], n: usize, p: usize, cfg: SolverConfig) -> Self {
        Race { mine, theirs, all: VSet::full(n), p, cfg, tt: HashMap::new(), nodes: 0, aborted: false }
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

    pub fn completes(&self, a: VSet) -> bool {
        self.mine.iter().any(|s| s.is_subset(&a))
    }

    pub fn defender_completes(&self, d: VSet) -> bool {
        self.theirs.iter().any(|s| s.is_subset(&d))
    }

    fn candidates(&self, a: VSet, d: VSet, attacker_moving: bool, rem: u32) -> Vec<VSet> {
        let free = self.all.difference(&a.union(&d));
        let pool: Vec<usize> = if self.cfg.relevance {
            let own_reach = rem as usize * self.p;
            let def_moves = if attacker_moving { rem as usize - 1 } else { rem as usize };
            let mut rel = VSet::EMPTY;
            for s in self.mine {
                if !s.intersects(&d) && s.missing_from(&a) <= own_reach {
                    rel = rel.union(&s.difference(&a));
                }
            }
            for t in self.theirs {
                if !t.intersects(&a) && t.missing_from(&d) <= def_moves * self.p {
                    rel = rel.union(&t.difference(&d));
                }
            }
            let rel = rel.intersection(&free);
            let spare = free.difference(&rel);
            let mut pool: Vec<usize> = rel.iter().chain(spare.iter().take(self.p)).collect();
            pool.sort_unstable();
            pool
        } else {
            free.iter().collect()
        };
        combinations(&pool, self.p)
    }

    /// Single vertices completing some live set of `sets` (held by `own`, blocked by `opp`).
    fn threats(sets: &[VSet], own: VSet, opp: VSet) -> VSet {
        let mut out = VSet::EMPTY;
        for s in sets {
            if !s.intersects(&opp) && s.missing_from(&own) == 1 {
                out = out.union(&s.difference(&own));
            }
        }
        out
    }

    /// Attacker to move with `rem >= 1` own moves left.
    pub fn attacker(&mut self, a: VSet, d: VSet, rem: u32) -> bool {
        if self.tick() {
            return false;
        }
        let free = self.all.difference(&a.union(&d));
        if free.len() < self.p || rem == 0 {
            return false;
        }
        let reach = rem as usize * self.p;
        let mut live = false;
        for s in self.mine {
            if s.intersects(&d) {
                continue;
            }
            let missing = s.missing_from(&a);
            if missing <= self.p {
                return true;
            }
            live |= missing <= reach;
        }
        if !live || rem == 1 {
            return false;
        }
        let key = (a, d, true, rem);
        if self.cfg.transposition {
            if let Some(&v) = self.tt.get(&key) {
                return v;
            }
        }
        let moves = if self.cfg.forced_moves && self.p == 1 {
            let blocks = Race::threats(self.theirs, d, a);
            match blocks.len() {
                0 => self.candidates(a, d, true, rem),
                1 => vec![blocks],
                _ => {
                    // two open threats: the defender completes one of them
                    return self.store(key, false);
                }
            }
        } else {
            self.candidates(a, d, true, rem)
        };
        let mut result = false;
        for m in moves {
            if self.defender(a.union(&m), d, rem - 1) {
                result = true;
                break;
            }
            if self.aborted {
                return false;
            }
        }
        self.store(key, result)
    }

    /// Defender to move; the attacker still has `rem` moves afterwards.
    pub fn defender(&mut self, a: VSet, d: VSet, rem: u32) -> bool {
        if self.tick() || rem == 0 {
            return false;
        }
        let free = self.all.difference(&a.union(&d));
        if free.len() < self.p {
            return false;
        }
        if self.theirs.iter().any(|t| !t.intersects(&a) && t.missing_from(&d) <= self.p) {
            return false;
        }
        let reach = rem as usize * self.p;
        if !self.mine.iter().any(|s| !s.intersects(&d) && s.missing_from(&a) <= reach) {
            return false;
        }
        let key = (a, d, false, rem);
        if self.cfg.transposition {
            if let Some(&v) = self.tt.get(&key) {
                return v;
            }
        }
        let moves = if self.cfg.forced_moves && self.p == 1 {
            let blocks = Race::threats(self.mine, a, d);
            match blocks.len() {
                0 => self.candidates(a, d, false, rem),
                1 => vec![blocks],
                _ => return self.store(key, true),
            }
        } else {
            self.candidates(a, d, false, rem)
        };
        let mut result = true;
        for m in moves {
            if !self.attacker(a, d.union(&m), rem) {
                result = false;
                break;
            }
            if self.aborted {
                return false;
            }
        }
        self.store(key, result)
    }

    fn store(&mut self, key: Key, v: bool) -> bool {
        if self.cfg.transposition && !self.aborted {
            self.tt.insert(key, v);
        }
        v
    }

    /// Witness line from a winning attacker position: smallest winning
    /// attacker move, smallest defender reply, until a set is completed.
    pub fn principal_variation(&mut self, mut a: VSet, mut d: VSet, mut rem: u32) -> Vec<VSet> {
        let mut line = Vec::new();
        while rem > 0 && !self.aborted {
            let free: Vec<usize> = self.all.difference(&a.union(&d)).iter().collect();
            let mut chosen = None;
            for m in combinations(&free, self.p) {
                let next = a.union(&m);
                if self.completes(next) || self.defender(next, d, rem - 1) {
                    chosen = Some(m);
                    break;
                }
            }
            let Some(m) = chosen else { break };
            line.push(m);
            a = a.union(&m);
            if self.completes(a) {
                break;
            }
            rem -= 1;
            let free: Vec<usize> = self.all.difference(&a.union(&d)).iter().collect();
            let Some(reply) = combinations(&free, self.p).into_iter().next() else { break };
            line.push(reply);
            d = d.union(&reply);
        }
        line
    }
}

/// Enforcer (first player) tries to make Avoider complete an edge within
/// `rem` Avoider moves; Enforcer moves before each Avoider move.
pub(crate) struct Avoid<'a> {
    edges: &'a [VSet],
    all: VSet,
    cfg: SolverConfig,
    tt: HashMap<Key, bool>,
    pub nodes: u64,
    pub aborted: bool,
}

impl<'a> Avoid<'a> {
    pub fn new(edges: &'a [VSet], n: usize, cfg: SolverConfig) -> Self {
        Avoid { edges, all: VSet::full(n), cfg, tt: HashMap::new(), nodes: 0, aborted: false }
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

    pub fn caught(&self, a: VSet) -> bool {
        self.edges.iter().any(|s| s.is_subset(&a))
    }

    /// Free vertices, with those outside every reachable edge collapsed to one.
    /// `None` when Avoider provably survives.
    fn pool(&self, e: VSet, a: VSet, rem: u32) -> Option<Vec<usize>> {
        let free = self.all.difference(&e.union(&a));
        if !self.cfg.relevance {
            return Some(free.iter().collect());
        }
        let mut rel = VSet::EMPTY;
        for s in self.edges {
            if !s.intersects(&e) && s.missing_from(&a) <= rem as usize {
                rel = rel.union(&s.difference(&a));
            }
        }
        let spare = free.difference(&rel);
        if rel.is_empty() || spare.len() >= 2 * rem as usize {
            return None;
        }
        let mut pool: Vec<usize> = rel.intersection(&free).iter().chain(spare.first()).collect();
        pool.sort_unstable();
        Some(pool)
    }

    pub fn enforcer(&mut self, e: VSet, a: VSet, rem: u32) -> bool {
        if self.tick() || rem == 0 {
            return false;
        }
        let Some(pool) = self.pool(e, a, rem) else { return false };
        if pool.is_empty() {
            return false;
        }
        let key = (e, a, true, rem);
        if self.cfg.transposition {
            if let Some(&v) = self.tt.get(&key) {
                return v;
            }
        }
        let mut result = false;
        for m in pool {
            if self.avoider(e.with(m), a, rem) {
                result = true;
                break;
            }
            if self.aborted {
                return false;
            }
        }
        self.store(key, result)
    }

    pub fn avoider(&mut self, e: VSet, a: VSet, rem: u32) -> bool {
        if self.tick() {
            return false;
        }
        let Some(pool) = self.pool(e, a, rem) else { return false };
        if pool.is_empty() {
            return false;
        }
        let key = (e, a, false, rem);
        if self.cfg.transposition {
            if let Some(&v) = self.tt.get(&key) {
                return v;
            }
        }
        let mut result = true;
        for m in pool {
            let next = a.with(m);
            if self.caught(next) {
                continue;
            }
            if rem == 1 || !self.enforcer(e, next, rem - 1) {
                result = false;
                break;
            }
            if self.aborted {
                return false;
            }
        }
        self.store(key, result)
    }

    fn store(&mut self, key: Key, v: bool) -> bool {
        if self.cfg.transposition && !self.aborted {
            self.tt.insert(key, v);
        }
        v
    }

    pub fn principal_variation(&mut self, mut e: VSet, mut a: VSet, mut rem: u32) -> Vec<VSet> {
        let mut line = Vec::new();
        while rem > 0 && !self.aborted {
            let free: Vec<usize> = self.all.difference(&e.union(&a)).iter().collect();
            let Some(&m) = free.iter().find(|&&m| self.avoider(e.with(m), a, rem)) else { break };
            line.push(VSet::singleton(m));
            e.insert(m);
            let Some(reply) = self.all.difference(&e.union(&a)).first() else { break };
            line.push(VSet::singleton(reply));
            a.insert(reply);
            if self.caught(a) {
                break;
            }
            rem -= 1;
        }
        line
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> VSet {
        v.iter().fold(VSet::EMPTY, |s, &i| s.with(i))
    }

    #[test]
    fn combinations_count() {
        assert_eq!(combinations(&(0..9).collect::<Vec<_>>(), 2).len(), 36);
        assert_eq!(combinations(&[1, 2], 3).len(), 0);
    }

    #[test]
    fn double_threat_maker_breaker() {
        let sets = [set(&[0, 1]), set(&[0, 2])];
        let mut r = Race::new(&sets, &[], 3, 1, SolverConfig::default());
        assert!(r.attacker(VSet::EMPTY, VSet::EMPTY, 2));
        assert!(!r.attacker(VSet::EMPTY, VSet::EMPTY, 1));
        let pv = r.principal_variation(VSet::EMPTY, VSet::EMPTY, 2);
        assert_eq!(pv[0], set(&[0]));
    }

    #[test]
    fn pruning_agrees_with_plain_search() {
        let sets = [set(&[0, 1, 2]), set(&[2, 3]), set(&[1, 3, 4]), set(&[4, 5])];
        for rem in 1..=3 {
            let mut a = Race::new(&sets, &sets, 6, 1, SolverConfig::default());
            let mut b = Race::new(&sets, &sets, 6, 1, SolverConfig::plain());
            assert_eq!(a.attacker(VSet::EMPTY, VSet::EMPTY, rem), b.attacker(VSet::EMPTY, VSet::EMPTY, rem));
        }
    }

    #[test]
    fn node_limit_aborts() {
        let sets = [set(&[0, 1, 2, 3])];
        let mut r = Race::new(&sets, &[], 8, 1, SolverConfig::plain().with_node_limit(3));
        r.attacker(VSet::EMPTY, VSet::EMPTY, 4);
        assert!(r.aborted);
    }

    #[test]
    fn avoider_single_pair() {
        // one edge {0,1} among two vertices: Enforcer takes nothing useful, Avoider must not be caught in 1 move
        let edges = [set(&[0, 1])];
        let mut av = Avoid::new(&edges, 2, SolverConfig::default());
        assert!(!av.enforcer(VSet::EMPTY, VSet::EMPTY, 1));
        // Avoider already holds 0; with two moves on three vertices Avoider is forced onto 1
        let mut av = Avoid::new(&edges, 3, SolverConfig::plain());
        assert!(av.enforcer(VSet::EMPTY, set(&[0]), 1));
    }
}
