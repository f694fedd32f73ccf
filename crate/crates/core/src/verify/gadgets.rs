//! Forced-line checks for the geography gadgets, run on small local
//! Maker-Maker games built from one gadget in isolation.
//!
//! A step "`mover` plays `v`, forced by `attacker` within δ" is checked by
//! trying every other free vertex for `mover` and asking the solver whether
//! `attacker` then completes a set within δ own moves; the scripted reply
//! itself must leave no such win. Moves that answer with a smaller threat
//! of their own only postpone the reply and are not counted.

use std::collections::BTreeSet;

use super::report::CheckRecord;
use crate::games::{forces_win, Board, GameInstance, Hypergraph, Player, Position, SolverConfig, Variant};
use crate::reductions::{delay_gadget, existential_gadget, token, universal_gadget, Gadget, EXISTS_TOKEN, FORALL_TOKEN};

use Player::{P1, P2};

struct Local {
    game: GameInstance,
    cfg: SolverConfig,
}

impl Local {
    fn new(vertices: BTreeSet<String>, sets: Vec<BTreeSet<String>>, node_limit: u64) -> Local {
        let edges = sets.into_iter().enumerate().map(|(i, e)| (format!("e{}", i + 1), e)).collect();
        let h = Hypergraph::new(vertices.iter(), edges).expect("gadget hypergraph");
        let game = GameInstance::new(Variant::MM, Board::Hypergraph(h), Position::default(), 1).expect("gadget game");
        Local { game, cfg: SolverConfig::default().with_node_limit(node_limit) }
    }

    fn free(&self, pos: &Position) -> Vec<String> {
        self.game.board.vertices().into_iter().filter(|v| !pos.is_claimed(v)).collect()
    }

    fn wins(&self, pos: &Position, attacker: Player, to_move: bool, delta: usize) -> Option<bool> {
        forces_win(&self.game, pos, attacker, to_move, delta, self.cfg).expect("local games are positional")
    }
}

fn with(pos: &Position, player: Player, v: &str) -> Position {
    let mut p = pos.clone();
    match player {
        P1 => p.p1.insert(v.to_string()),
        P2 => p.p2.insert(v.to_string()),
    };
    p
}

/// Verdict of a yes/no lemma instance; `None` = search budget exhausted.
fn record(id: String, expected: bool, got: Option<bool>) -> CheckRecord {
    match got {
        Some(v) => CheckRecord::compare(id, expected, v),
        None => CheckRecord::skip(id, expected, "node-limit", true),
    }
}

/// Extra attacker moves allowed for alternatives that only prepare a
/// counter-threat (a stone that becomes a threat one move later).
pub const TEMPO_SLACK: usize = 2;

/// Every alternative to `reply` loses, and `reply` does not lose within δ.
/// Alternatives that give the mover a (δ−1)-threat of its own are exempt:
/// they only postpone the reply, as delay sets allow. Others must lose
/// within δ, or within δ + [`TEMPO_SLACK`] when they set up such a threat.
fn forced_step(local: &Local, pos: &Position, mover: Player, reply: &str, delta: usize, id: &str) -> Vec<CheckRecord> {
    let attacker = mover.other();
    let mut all = Some(true);
    for m in local.free(pos) {
        if m == reply {
            continue;
        }
        let after = with(pos, mover, &m);
        if local.wins(&after, mover, true, delta - 1) == Some(true) {
            continue;
        }
        let verdict = match local.wins(&after, attacker, true, delta) {
            Some(false) => local.wins(&after, attacker, true, delta + TEMPO_SLACK),
            v => v,
        };
        match verdict {
            Some(true) => {}
            Some(false) => {
                all = Some(false);
                break;
            }
            None => all = all.and(None),
        }
    }
    let holds = local.wins(&with(pos, mover, reply), attacker, true, delta).map(|w| !w);
    vec![record(format!("{id}/alternatives-lose"), true, all), record(format!("{id}/reply-holds"), true, holds)]
}

enum Step<'a> {
    /// A move with no obligation attached.
    Free(Player, &'a str),
    /// A move forced by the opponent's threat of the given size.
    Forced(Player, &'a str, usize),
}

fn run_script(local: &Local, start: Position, steps: &[Step], id: &str) -> (Position, Vec<CheckRecord>) {
    let mut pos = start;
    let mut out = Vec::new();
    for (n, step) in steps.iter().enumerate() {
        let (mover, v) = match *step {
            Step::Free(p, v) => (p, v),
            Step::Forced(p, v, delta) => {
                out.extend(forced_step(local, &pos, p, v, delta, &format!("{id}/{}:{}", n + 1, v)));
                (p, v)
            }
        };
        pos = with(&pos, mover, v);
    }
    (pos, out)
}

fn gadget_local(g: &Gadget, neighbours: &[String], node_limit: u64) -> Local {
    let mut vertices = g.vertices();
    vertices.extend(neighbours.iter().map(|v| format!("a^{v}")));
    vertices.insert(EXISTS_TOKEN.into());
    vertices.insert(FORALL_TOKEN.into());
    Local::new(vertices, g.edges(), node_limit)
}

fn tokens(p1: &[&str], p2: &[&str]) -> Position {
    let mut a = vec![EXISTS_TOKEN];
    a.extend(p1);
    let mut b = vec![FORALL_TOKEN];
    b.extend(p2);
    Position::new(&a, &b)
}

fn neighbours(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("w{i}")).collect()
}

/// Existential gadget, entered by player 1 holding `a^u`.
fn existential_checks(n: usize, node_limit: u64) -> Vec<CheckRecord> {
    let nb = neighbours(n);
    let g = existential_gadget("u", &nb);
    let local = gadget_local(&g, &nb, node_limit);
    let start = tokens(&[g.name("a")], &[]);
    let id = format!("exists-n{n}");
    let mut out = Vec::new();

    if n == 0 {
        // No way out: after the forced b, player 2's b–e and b–g delays
        // cannot both be stopped.
        let (pos, recs) = run_script(&local, start, &[Step::Forced(P2, g.name("b"), 3)], &id);
        out.extend(recs);
        out.push(record(format!("{id}/dead-end"), true, local.wins(&pos, P2, false, 3)));
        return out;
    }
    let v = &nb[0];
    let (c, d, i) = (g.name(&format!("c:{v}")), g.name(&format!("d:{v}")), g.name(&format!("i:{v}")));
    let av = format!("a^{v}");
    let (b, e, f, gg, h) = (g.name("b"), g.name("e"), g.name("f"), g.name("g"), g.name("h"));
    let steps = [
        Step::Forced(P2, b, 3),
        Step::Free(P1, c),
        Step::Forced(P2, d, 2),
        Step::Forced(P1, e, 2),
        Step::Forced(P2, f, 2),
        Step::Forced(P1, gg, 2),
        Step::Forced(P2, h, 2),
        Step::Forced(P1, i, 3),
        Step::Forced(P2, &av, 3),
    ];
    let (end, recs) = run_script(&local, start.clone(), &steps, &id);
    out.extend(recs);
    for (who, name) in [(P1, "p1"), (P2, "p2")] {
        out.push(record(format!("{id}/quiet-end-{name}"), false, local.wins(&end, who, true, 3)));
    }

    // Opening with e or g instead of a c-vertex hands player 2 a delay.
    let after_b = with(&start, P2, b);
    for wrong in [e, gg] {
        out.push(record(format!("{id}/opening-{wrong}-loses"), true, local.wins(&with(&after_b, P1, wrong), P2, true, 3)));
    }
    out.push(record(format!("{id}/opening-{c}-safe"), false, local.wins(&with(&after_b, P1, c), P2, true, 3)));
    out
}

/// Universal gadget, entered by player 2 holding `a^u`.
fn universal_checks(n: usize, node_limit: u64) -> Vec<CheckRecord> {
    let nb = neighbours(n);
    let g = universal_gadget("u", &nb);
    let local = gadget_local(&g, &nb, node_limit);
    let start = tokens(&[], &[g.name("a")]);
    let id = format!("forall-n{n}");
    let mut out = Vec::new();

    if n == 0 {
        let (pos, recs) = run_script(&local, start, &[Step::Forced(P1, g.name("b"), 3)], &id);
        out.extend(recs);
        out.push(record(format!("{id}/dead-end"), true, local.wins(&pos, P1, false, 3)));
        return out;
    }
    let v = &nb[0];
    let (c, d, e, j) =
        (g.name(&format!("c:{v}")), g.name(&format!("d:{v}")), g.name(&format!("e:{v}")), g.name(&format!("j:{v}")));
    let av = format!("a^{v}");
    let (b, f, gg, h, i) = (g.name("b"), g.name("f"), g.name("g"), g.name("h"), g.name("i"));
    let steps = [
        Step::Forced(P1, b, 3),
        Step::Free(P2, c),
        Step::Forced(P1, d, 2),
        Step::Forced(P2, e, 2),
        Step::Forced(P1, f, 2),
        Step::Forced(P2, gg, 2),
        Step::Forced(P1, h, 2),
        Step::Forced(P2, i, 2),
        Step::Forced(P1, &av, 3),
    ];
    let (end, recs) = run_script(&local, start.clone(), &steps, &id);
    out.extend(recs);
    for (who, name) in [(P1, "p1"), (P2, "p2")] {
        out.push(record(format!("{id}/quiet-end-{name}"), false, local.wins(&end, who, true, 3)));
    }

    let after_b = with(&start, P1, b);
    for wrong in [gg, i] {
        out.push(record(format!("{id}/opening-{wrong}-loses"), true, local.wins(&with(&after_b, P2, wrong), P1, true, 3)));
    }
    // Starting with d instead of c lets player 1 turn the tables.
    let branch = [Step::Free(P2, d), Step::Free(P1, c), Step::Forced(P2, j, 2), Step::Free(P1, f), Step::Forced(P2, gg, 2)];
    let (pos, recs) = run_script(&local, after_b, &branch, &format!("{id}/d-first"));
    out.extend(recs);
    out.push(record(format!("{id}/d-first/p1-wins"), true, local.wins(&pos, P1, true, 3)));
    out
}

/// D^owner_δ(S) with S held by the owner: the owner completes a set in
/// exactly δ moves whoever moves first, even after one opponent stone.
fn delay_checks(node_limit: u64) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    for delta in [1, 2, 4] {
        for owner in [P1, P2] {
            let d = delay_gadget(owner, delta, &["s1", "s2"]);
            let mut vertices: BTreeSet<String> = d.fresh().cloned().collect();
            vertices.extend(["s1".to_string(), "s2".to_string(), EXISTS_TOKEN.into(), FORALL_TOKEN.into()]);
            let local = Local::new(vertices, d.edges.clone(), node_limit);
            let mut base = tokens(&[], &[]);
            for s in ["s1", "s2"] {
                base = with(&base, owner, s);
            }
            let mut starts = vec![("clean".to_string(), base.clone())];
            for v in d.fresh() {
                starts.push((format!("opp@{v}"), with(&base, owner.other(), v)));
            }
            let side = token(owner);
            for (label, pos) in &starts {
                for to_move in [true, false] {
                    let id = format!("delay-{side}{delta}/{label}/{}", if to_move { "owner-first" } else { "opp-first" });
                    out.push(record(format!("{id}/within"), true, local.wins(pos, owner, to_move, delta)));
                    out.push(record(format!("{id}/not-sooner"), false, local.wins(pos, owner, to_move, delta - 1)));
                }
            }
        }
    }
    // Two opponent stones in one layer with the opponent to move kill D^∃₁.
    let d = delay_gadget(P1, 1, &["s1"]);
    let mut vertices: BTreeSet<String> = d.fresh().cloned().collect();
    vertices.extend(["s1".to_string(), EXISTS_TOKEN.into(), FORALL_TOKEN.into()]);
    let local = Local::new(vertices, d.edges.clone(), node_limit);
    let layer = &d.layers[0];
    let pos = tokens(&["s1"], &[&layer[0], &layer[1]]);
    out.push(record("delay-∃1/two-opp-stones/opp-first".into(), false, local.wins(&pos, P1, false, 1)));
    out
}

/// All gadget lemma checks, in a fixed order.
pub fn gadget_lemma_records(node_limit: u64) -> Vec<CheckRecord> {
    let mut out = delay_checks(node_limit);
    for n in 0..=2 {
        out.extend(existential_checks(n, node_limit));
        out.extend(universal_checks(n, node_limit));
    }
    out
}
