use std::collections::BTreeSet;

use super::builder::{and, close, neq, not, rel};
use super::{CompileOutcome, CompiledCheck, Provenance, ReductionError};
use crate::games::{Board, GameInstance, Hypergraph, Position, Variant};
use crate::logic::{FragmentTag, Quantifier, Structure};

fn permutations(items: &[String]) -> Vec<Vec<String>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head.clone());
            out.push(tail);
        }
    }
    out
}

fn index_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    crate::verify::subsets(n, k).into_iter().map(|s| s.into_iter().collect()).collect()
}

/// Compiles the Enforcer-Avoider co-problem (Avoider survives ℓ rounds).
/// The formula's truth is the negation of the game answer. Enforcer's
/// variables are unconstrained: replaying an occupied vertex never helps it.
pub fn compile_ea_co(g: &GameInstance) -> Result<CompileOutcome, ReductionError> {
    g.validate()?;
    let h = g.hypergraph().ok_or(ReductionError::Unsupported(g.variant))?;
    let (enforcer, avoider) = (&g.position.p1, &g.position.p2);
    let l = g.budget;
    let mut log = Vec::new();

    let mut edges: Vec<BTreeSet<String>> = Vec::new();
    for (name, e) in h.edges() {
        let rest: BTreeSet<String> = e.difference(avoider).cloned().collect();
        if rest.is_empty() {
            return Ok(CompileOutcome::Decided {
                answer: true,
                reason: format!("avoider already covers edge {name}"),
            });
        }
        if let Some(v) = rest.iter().find(|v| enforcer.contains(*v)) {
            log.push(format!("drop edge {name}: enforcer holds {v}"));
            continue;
        }
        edges.push(rest);
    }
    let vertices: Vec<String> =
        h.vertices().iter().filter(|v| !enforcer.contains(*v) && !avoider.contains(*v)).cloned().collect();
    if vertices.len() < h.vertices().len() {
        log.push(format!("remove {} claimed vertices", h.vertices().len() - vertices.len()));
    }
    if vertices.len() < 2 * l || vertices.is_empty() {
        return Ok(CompileOutcome::BruteForceFallback {
            reason: format!("{} free vertices, fewer than 2ℓ = {}", vertices.len(), 2 * l),
        });
    }

    let mut st = Structure::new(vertices.iter())?;
    for i in 1..=l {
        st.declare(&format!("EDGE_{i}"), i)?;
    }
    for e in &edges {
        if e.len() <= l {
            let items: Vec<String> = e.iter().cloned().collect();
            for p in permutations(&items) {
                st.add_tuple(&format!("EDGE_{}", e.len()), &p)?;
            }
        }
    }

    let mut prefix = Vec::new();
    for i in 1..=l {
        prefix.push((Quantifier::Forall, format!("y{i}")));
        prefix.push((Quantifier::Exists, format!("x{i}")));
    }
    let mut parts = Vec::new();
    for k in 1..=l {
        for j in 1..k {
            parts.push(neq(&format!("x{j}"), &format!("x{k}")));
        }
        for j in 1..=k {
            parts.push(neq(&format!("y{j}"), &format!("x{k}")));
        }
    }
    for i in 1..=l {
        for idx in index_subsets(l, i) {
            let names: Vec<String> = idx.iter().map(|k| format!("x{}", k + 1)).collect();
            let args: Vec<&str> = names.iter().map(String::as_str).collect();
            parts.push(not(rel(&format!("EDGE_{i}"), &args)));
        }
    }
    Ok(CompileOutcome::Formula(CompiledCheck {
        structure: st,
        formula: close(prefix, &and(parts)),
        provenance: Provenance { variant: Variant::EA, budget: l, log },
        expected_fragment: FragmentTag::ForallNeqFO,
        negated: true,
    }))
}

/// Independent Set → Enforcer-Avoider: every vertex becomes a (k+1)-clique
/// of pair edges, every graph edge joins all copies of its endpoints.
/// Vertex `v`'s copies are named `v(1)` … `v(k+1)`.
///
/// With k > n the construction would run out of vertices before Avoider's
/// k-th move; such inputs have no independent set of size k and map to a
/// fixed instance Enforcer wins (two singleton edges, one move each).
pub fn reduce_is_to_ea(vertices: &[String], edges: &[(String, String)], k: usize) -> Result<GameInstance, ReductionError> {
    if k > vertices.len() {
        let h = Hypergraph::from_sets(["no1", "no2"], &[vec!["no1"], vec!["no2"]])?;
        return Ok(GameInstance::new(Variant::EA, Board::Hypergraph(h), Position::default(), 1)?);
    }
    let copy = |v: &str, i: usize| format!("{v}({i})");
    let mut all = Vec::new();
    let mut sets: Vec<BTreeSet<String>> = Vec::new();
    for v in vertices {
        for i in 1..=k + 1 {
            all.push(copy(v, i));
            for j in i + 1..=k + 1 {
                sets.push([copy(v, i), copy(v, j)].into());
            }
        }
    }
    for (u, v) in edges {
        if u == v {
            continue;
        }
        for i in 1..=k + 1 {
            for j in 1..=k + 1 {
                sets.push([copy(u, i), copy(v, j)].into());
            }
        }
    }
    let named = sets.into_iter().enumerate().map(|(i, e)| (format!("e{}", i + 1), e)).collect();
    let h = Hypergraph::new(all.iter(), named)?;
    Ok(GameInstance::new(Variant::EA, Board::Hypergraph(h), Position::default(), k)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::{parse_game, solve_short};
    use crate::logic::{classify, evaluate};

    fn names(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn pair_edge_gets_both_orders() {
        let g = parse_game("variant EA\nbudget 2\nvertices a b c d\nedge a b\n").unwrap();
        let c = compile_ea_co(&g).unwrap().check().unwrap().clone();
        assert_eq!(c.structure.relation("EDGE_2").unwrap().tuples.len(), 2);
        assert_eq!(classify(&c.formula).tag, FragmentTag::ForallNeqFO);
    }

    #[test]
    fn avoider_dodges_a_far_edge() {
        let mut text = String::from("variant EA\nbudget 2\nvertices");
        for i in 1..=12 {
            text.push_str(&format!(" v{i}"));
        }
        text.push_str("\nedge v11 v12\n");
        let g = parse_game(&text).unwrap();
        let c = compile_ea_co(&g).unwrap().check().unwrap().clone();
        assert!(evaluate(&c.structure, &c.formula).unwrap());
        assert!(!solve_short(&g).unwrap().first_player_wins);
    }

    #[test]
    fn avoider_stone_emptying_an_edge_decides() {
        let g = parse_game("variant EA\nbudget 1\nvertices a b c\nedge a\np2 a\n").unwrap();
        assert!(matches!(compile_ea_co(&g).unwrap(), CompileOutcome::Decided { answer: true, .. }));
    }

    #[test]
    fn is_reduction_examples() {
        let g = reduce_is_to_ea(&names(&["v"]), &[], 1).unwrap();
        let h = g.hypergraph().unwrap();
        assert_eq!(h.vertices().len(), 2);
        assert_eq!(h.edges().len(), 1);
        assert!(!solve_short(&g).unwrap().first_player_wins);

        let g = reduce_is_to_ea(&names(&["u", "v"]), &[("u".into(), "v".into())], 2).unwrap();
        assert!(solve_short(&g).unwrap().first_player_wins);

        let tri = [("a".into(), "b".into()), ("b".into(), "c".into()), ("a".into(), "c".into())];
        let g = reduce_is_to_ea(&names(&["a", "b", "c"]), &tri, 1).unwrap();
        assert!(!solve_short(&g).unwrap().first_player_wins);

        let g = reduce_is_to_ea(&names(&["v"]), &[], 2).unwrap();
        assert!(solve_short(&g).unwrap().first_player_wins);
    }
}
