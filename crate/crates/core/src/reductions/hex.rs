use std::collections::BTreeSet;

use super::builder::{and, close, eq, or, rel, Scoped};
use super::{alternating_prefix, diff, CompileOutcome, CompiledCheck, Provenance, ReductionError};
use crate::games::{Board, GameInstance, Graph, Variant};
use crate::logic::{FragmentTag, Quantifier, Structure};

/// Removes claimed vertices: a player-1 vertex is contracted (its
/// neighbourhood becomes a clique), a player-2 vertex is deleted.
pub fn hex_preprocess(
    graph: &Graph,
    p1: &BTreeSet<String>,
    p2: &BTreeSet<String>,
    log: &mut Vec<String>,
) -> Graph {
    let mut g = graph.clone();
    for v in p1 {
        let around: Vec<String> = g.neighbours(v).into_iter().collect();
        g = without(&g, v);
        for (i, a) in around.iter().enumerate() {
            for b in &around[i + 1..] {
                g.add_edge(a, b).expect("surviving vertices");
            }
        }
        log.push(format!("contract {v} (player 1), clique on {} neighbours", around.len()));
    }
    for v in p2 {
        g = without(&g, v);
        log.push(format!("delete {v} (player 2)"));
    }
    g
}

fn without(g: &Graph, v: &str) -> Graph {
    let edges: Vec<(&str, &str)> =
        g.edges().iter().filter(|(a, b)| a != v && b != v).map(|(a, b)| (a.as_str(), b.as_str())).collect();
    Graph::new(g.vertices().iter().filter(|w| *w != v), &edges).expect("subgraph of a valid graph")
}

fn path(i: usize, j: usize) -> Scoped {
    let mut parts = Vec::new();
    for h in 1..j {
        parts.push(rel("EDGE", &[&format!("z{h}"), &format!("z{}", h + 1)]));
    }
    for h in 1..=j {
        parts.push(or((1..=i).map(|k| eq(&format!("z{h}"), &format!("x{k}"))).collect()));
    }
    and(parts)
}

/// Hex membership compiler: preprocesses claims away, then emits the
/// ∃s∃t∃x1∀y1…∃xℓ∃z1…∃zℓ path formula.
pub fn compile_hex(g: &GameInstance) -> Result<CompileOutcome, ReductionError> {
    g.validate_structure()?;
    let Board::Hex { graph, s, t } = &g.board else { return Err(ReductionError::Unsupported(g.variant)) };
    for terminal in [s, t] {
        if g.position.is_claimed(terminal) {
            return Err(ReductionError::ClaimedTerminal(terminal.clone()));
        }
    }
    let l = g.budget;
    let mut log = Vec::new();
    let pre = hex_preprocess(graph, &g.position.p1, &g.position.p2, &mut log);

    let mut st = Structure::new(pre.vertices().iter())?;
    for (name, arity) in [("EDGE", 2), ("S", 1), ("T", 1)] {
        st.declare(name, arity)?;
    }
    for (a, b) in pre.edges() {
        st.add_tuple("EDGE", &[a, b])?;
        st.add_tuple("EDGE", &[b, a])?;
    }
    st.add_tuple("S", &[s])?;
    st.add_tuple("T", &[t])?;

    let mut prefix = vec![(Quantifier::Exists, "s".to_string()), (Quantifier::Exists, "t".to_string())];
    prefix.extend(alternating_prefix(l, Quantifier::Exists));
    prefix.extend((1..=l).map(|j| (Quantifier::Exists, format!("z{j}"))));

    let mut wins = vec![rel("EDGE", &["s", "t"])];
    for i in 1..=l {
        for j in 1..=i {
            wins.push(and(vec![
                rel("EDGE", &["s", "z1"]),
                rel("EDGE", &[&format!("z{j}"), "t"]),
                path(i, j),
                diff(i),
            ]));
        }
    }
    let body = and(vec![rel("S", &["s"]), rel("T", &["t"]), or(wins)]);
    Ok(CompileOutcome::Formula(CompiledCheck {
        structure: st,
        formula: close(prefix, &body),
        provenance: Provenance { variant: Variant::HEX, budget: l, log },
        expected_fragment: FragmentTag::ForallNeqFO,
        negated: false,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::{parse_game, solve_short};
    use crate::logic::{classify, evaluate};

    fn run(text: &str) -> (bool, CompiledCheck) {
        let g = parse_game(text).unwrap();
        let c = compile_hex(&g).unwrap().check().unwrap().clone();
        (evaluate(&c.structure, &c.formula).unwrap(), c)
    }

    #[test]
    fn path_through_middle() {
        let (truth, c) = run("variant HEX\nbudget 1\nvertices s v t\nedge s v\nedge v t\ns s\nt t\n");
        assert!(truth);
        assert!(classify(&c.formula).tag <= FragmentTag::ForallNeqFO);
    }

    #[test]
    fn direct_edge_with_zero_budget() {
        let (truth, c) = run("variant HEX\nbudget 0\nvertices s t\nedge s t\ns s\nt t\n");
        assert!(truth);
        assert_eq!(c.formula.quantifier_count(), 2);
    }

    #[test]
    fn prefix_length() {
        let (_, c) = run("variant HEX\nbudget 2\nvertices s a b t\nedge s a\nedge a b\nedge b t\ns s\nt t\n");
        assert_eq!(c.formula.prefix().len(), 7);
    }

    #[test]
    fn contraction_matches_solver() {
        let text = "variant HEX\nbudget 1\nvertices s a b c t\nedge s a\nedge a b\nedge b t\nedge s c\nedge c t\np1 a\np2 c\ns s\nt t\n";
        let (truth, c) = run(text);
        assert_eq!(truth, solve_short(&parse_game(text).unwrap()).unwrap().first_player_wins);
        assert!(truth);
        assert_eq!(c.provenance.log.len(), 2);
    }
}
