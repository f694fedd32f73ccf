use super::builder::{and, close, eq, exists, forall, implies, neq, not, or, rel, Scoped};
use super::{CompiledCheck, Provenance, ReductionError};
use crate::games::{Board, GameInstance, Variant};
use crate::logic::{Formula, FragmentTag, Quantifier, Structure};

fn path(u: &str, v: &str, w: &str) -> Scoped {
    and(vec![rel("EDGE", &[u, v]), rel("EDGE", &[v, w])])
}

/// u and w have v as their only common neighbour: a diagonal step pair.
fn d_aligned(u: &str, v: &str, w: &str) -> Scoped {
    and(vec![path(u, v, w), forall("o", implies(neq("o", v), not(path(u, "o", w))))])
}

fn common(a: &str, b: &str, z: &str) -> Scoped {
    and(vec![rel("EDGE", &[a, z]), rel("EDGE", &[b, z])])
}

/// a–b is a diagonal step: exactly two common neighbours c1, c2, whose own
/// common neighbours are exactly a and b. Orthogonal pairs fail the second
/// test on boards with at least three rows and columns.
fn diagonal(a: &str, b: &str) -> Scoped {
    and(vec![
        rel("EDGE", &[a, b]),
        exists(
            "c1",
            exists(
                "c2",
                and(vec![
                    neq("c1", "c2"),
                    common(a, b, "c1"),
                    common(a, b, "c2"),
                    forall("o", implies(common(a, b, "o"), or(vec![eq("o", "c1"), eq("o", "c2")]))),
                    forall("o", implies(common("c1", "c2", "o"), or(vec![eq("o", a), eq("o", b)]))),
                ]),
            ),
        ),
    ])
}

fn orthogonal(a: &str, b: &str) -> Scoped {
    and(vec![rel("EDGE", &[a, b]), not(diagonal(a, b))])
}

/// Two equal orthogonal steps: u, w distinct and not adjacent rules out the
/// turning and reversing cases.
fn straight(u: &str, v: &str, w: &str) -> Scoped {
    and(vec![neq(u, w), not(rel("EDGE", &[u, w])), orthogonal(u, v), orthogonal(v, w)])
}

/// u, v, w are consecutive cells of a line, in this order.
fn aligned(u: &str, v: &str, w: &str) -> Scoped {
    or(vec![straight(u, v, w), d_aligned(u, v, w)])
}

/// The alignment predicate on its own, as a formula with free u, v, w
/// closed into a prefix `∃u ∃v ∃w` — callers evaluate it with u, v, w fixed
/// through unary marker relations `U`, `V`, `W`.
pub fn aligned_formula() -> Formula {
    let prefix = ["u", "v", "w"].iter().map(|v| (Quantifier::Exists, v.to_string())).collect();
    let body = and(vec![rel("U", &["u"]), rel("V", &["v"]), rel("W", &["w"]), aligned("u", "v", "w")]);
    close(prefix, &body)
}

fn x(j: usize, t: usize) -> String {
    format!("x{j}_{t}")
}

fn y(j: usize, t: usize) -> String {
    format!("y{j}_{t}")
}

fn legal(i: usize, p: usize, mine: fn(usize, usize) -> String, theirs: fn(usize, usize) -> String, lag: usize) -> Scoped {
    let mut parts = Vec::new();
    for j in 1..=i {
        for t in 1..=p {
            let me = mine(j, t);
            parts.push(not(rel("V1", &[&me])));
            parts.push(not(rel("V2", &[&me])));
            for r in 1..j {
                for q in 1..=p {
                    parts.push(neq(&me, &mine(r, q)));
                }
            }
            for q in 1..t {
                parts.push(neq(&me, &mine(j, q)));
            }
            // Player 2's j-th move follows player 1's j-th move.
            for r in 1..j + lag {
                for q in 1..=p {
                    parts.push(neq(&me, &theirs(r, q)));
                }
            }
        }
    }
    and(parts)
}

fn config(i: usize, p: usize, owner: &str, stone: fn(usize, usize) -> String, cells: &[String]) -> Scoped {
    let mut parts = Vec::new();
    for (j, c) in cells.iter().enumerate() {
        let mut held = vec![rel(owner, &[c])];
        for r in 1..=i {
            for q in 1..=p {
                held.push(eq(c, &stone(r, q)));
            }
        }
        parts.push(or(held));
        for prev in &cells[..j] {
            parts.push(neq(c, prev));
        }
    }
    and(parts)
}

fn line(cells: &[String]) -> Scoped {
    and(cells.windows(3).map(|w| aligned(&w[0], &w[1], &w[2])).collect())
}

/// k-Connect compiler over the king-move board graph with V1/V2 claims.
pub fn compile_kconnect(g: &GameInstance) -> Result<CompiledCheck, ReductionError> {
    g.validate_structure()?;
    let Board::Connect(spec) = &g.board else { return Err(ReductionError::Unsupported(g.variant)) };
    let (k, p, l) = (spec.k, spec.p, g.budget);
    if p >= k {
        return Err(ReductionError::TrivialConnect { p, k });
    }
    if spec.rows < 3 || spec.cols < 3 || k < 3 {
        return Err(ReductionError::BoardTooSmall);
    }
    let graph = spec.graph();
    let mut st = Structure::new(graph.vertices().iter())?;
    for (name, arity) in [("EDGE", 2), ("V1", 1), ("V2", 1)] {
        st.declare(name, arity)?;
    }
    for (a, b) in graph.edges() {
        st.add_tuple("EDGE", &[a, b])?;
        st.add_tuple("EDGE", &[b, a])?;
    }
    for v in &g.position.p1 {
        st.add_tuple("V1", &[v])?;
    }
    for v in &g.position.p2 {
        st.add_tuple("V2", &[v])?;
    }

    let mut prefix = Vec::new();
    for j in 1..=l {
        prefix.extend((1..=p).map(|t| (Quantifier::Exists, x(j, t))));
        if j < l {
            prefix.extend((1..=p).map(|t| (Quantifier::Forall, y(j, t))));
        }
    }
    let us: Vec<String> = (1..=k).map(|j| format!("u{j}")).collect();
    let vs: Vec<String> = (1..=k).map(|j| format!("v{j}")).collect();
    prefix.extend(us.iter().map(|u| (Quantifier::Exists, u.clone())));
    prefix.extend(vs.iter().map(|v| (Quantifier::Forall, v.clone())));

    let cases = (0..=l)
        .map(|i| {
            let p2_config = config(i.saturating_sub(1), p, "V2", y, &vs);
            and(vec![
                legal(i, p, x, y, 0),
                or(vec![
                    not(legal(i.saturating_sub(1), p, y, x, 1)),
                    and(vec![
                        config(i, p, "V1", x, &us),
                        line(&us),
                        or(vec![not(p2_config), not(line(&vs))]),
                    ]),
                ]),
            ])
        })
        .collect();
    Ok(CompiledCheck {
        structure: st,
        formula: close(prefix, &or(cases)),
        provenance: Provenance { variant: Variant::CONNECT, budget: l, log: Vec::new() },
        expected_fragment: FragmentTag::GeneralFO,
        negated: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::{parse_game, solve_short, ConnectSpec};
    use crate::logic::evaluate;
    use crate::verify::geometrically_aligned;

    fn board(rows: usize, cols: usize) -> Structure {
        let spec = ConnectSpec { rows, cols, k: 3, p: 1 };
        let graph = spec.graph();
        let mut st = Structure::new(graph.vertices().iter()).unwrap();
        for (a, b) in graph.edges() {
            st.add_tuple("EDGE", &[a, b]).unwrap();
            st.add_tuple("EDGE", &[b, a]).unwrap();
        }
        st
    }

    #[test]
    fn aligned_matches_geometry_on_small_boards() {
        let f = aligned_formula();
        for (rows, cols) in [(3, 3), (3, 4)] {
            let base = board(rows, cols);
            let cells: Vec<(usize, usize)> = (1..=rows).flat_map(|r| (1..=cols).map(move |c| (r, c))).collect();
            for &a in &cells {
                for &b in &cells {
                    for &c in &cells {
                        if a == b || b == c || a == c {
                            continue;
                        }
                        let mut st = base.clone();
                        st.add_tuple("U", &[ConnectSpec::cell(a.0, a.1)]).unwrap();
                        st.add_tuple("V", &[ConnectSpec::cell(b.0, b.1)]).unwrap();
                        st.add_tuple("W", &[ConnectSpec::cell(c.0, c.1)]).unwrap();
                        let geo = |p: (usize, usize)| (p.0 as i64, p.1 as i64);
                        assert_eq!(
                            evaluate(&st, &f).unwrap(),
                            geometrically_aligned(geo(a), geo(b), geo(c)),
                            "{a:?} {b:?} {c:?} on {rows}x{cols}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn tic_tac_toe_one_move() {
        let text = "variant CONNECT\nbudget 1\nboard 3 3\nk 3\np 1\np1 1 1\np1 1 2\np2 2 1\np2 2 2\n";
        let g = parse_game(text).unwrap();
        let c = compile_kconnect(&g).unwrap();
        assert_eq!(c.structure.len(), 9);
        let want = solve_short(&g).unwrap().first_player_wins;
        assert!(want);
        assert_eq!(evaluate(&c.structure, &c.formula).unwrap(), want);
    }

    #[test]
    fn trivial_games_rejected() {
        let g = parse_game("variant CONNECT\nbudget 1\nboard 3 3\nk 3\np 1\n").unwrap();
        let mut g2 = g.clone();
        if let Board::Connect(spec) = &mut g2.board {
            spec.p = 3;
        }
        assert!(matches!(compile_kconnect(&g2), Err(ReductionError::TrivialConnect { .. }) | Err(ReductionError::Game(_))));
    }
}
