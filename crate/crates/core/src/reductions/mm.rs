use std::collections::BTreeSet;

use super::builder::{and, close, eq, exists, forall, neq, not, or, rel, Scoped};
use super::{alternating_prefix, fresh_name, CompiledCheck, Provenance, ReductionError};
use crate::games::{GameInstance, Variant};
use crate::logic::{FragmentTag, Quantifier, Structure};

fn legal_p1(i: usize) -> Scoped {
    let mut parts = Vec::new();
    for j in 1..=i {
        let x = format!("x{j}");
        parts.push(not(rel("V1", &[&x])));
        parts.push(not(rel("V2", &[&x])));
    }
    for k in 1..=i {
        for j in 1..k {
            parts.push(neq(&format!("x{j}"), &format!("x{k}")));
            parts.push(neq(&format!("y{j}"), &format!("x{k}")));
        }
    }
    and(parts)
}

/// Empty (true) for `i` = 0 and for the `i` = −1 case at the first disjunct.
fn legal_p2(i: usize) -> Scoped {
    let mut parts = Vec::new();
    for j in 1..=i {
        let y = format!("y{j}");
        parts.push(not(rel("V1", &[&y])));
        parts.push(not(rel("V2", &[&y])));
    }
    for k in 1..=i {
        for j in 1..k {
            parts.push(neq(&format!("y{j}"), &format!("y{k}")));
        }
        for j in 1..=k {
            parts.push(neq(&format!("x{j}"), &format!("y{k}")));
        }
    }
    and(parts)
}

/// The player owning `claimed` and stones `stone1..stone_i` covers an edge.
fn win(claimed: &str, stone: &str, i: usize) -> Scoped {
    let mut cover = vec![not(rel("IN", &["z", "e"])), rel(claimed, &["z"])];
    cover.extend((1..=i).map(|j| eq("z", &format!("{stone}{j}"))));
    exists("e", forall("z", and(vec![rel("EDGE", &["e"]), or(cover)])))
}

/// Maker-Maker compiler over the universe V ∪ E; claims live in V1/V2.
pub fn compile_mm(g: &GameInstance) -> Result<CompiledCheck, ReductionError> {
    g.validate()?;
    let h = g.hypergraph().ok_or(ReductionError::Unsupported(g.variant))?;
    let l = g.budget;
    let mut taken: BTreeSet<String> = h.vertices().clone();
    let mut edge_elems = Vec::new();
    for (name, _) in h.edges() {
        let elem = fresh_name(format!("edge:{name}"), &taken);
        taken.insert(elem.clone());
        edge_elems.push(elem);
    }
    let mut st = Structure::new(h.vertices().iter().chain(&edge_elems))?;
    for (name, arity) in [("V1", 1), ("V2", 1), ("EDGE", 1), ("IN", 2)] {
        st.declare(name, arity)?;
    }
    for v in &g.position.p1 {
        st.add_tuple("V1", &[v])?;
    }
    for v in &g.position.p2 {
        st.add_tuple("V2", &[v])?;
    }
    for ((_, e), elem) in h.edges().iter().zip(&edge_elems) {
        st.add_tuple("EDGE", &[elem])?;
        for v in e {
            st.add_tuple("IN", &[v, elem])?;
        }
    }

    let cases = (0..=l)
        .map(|i| {
            let (p2_legal, p2_win) = match i.checked_sub(1) {
                Some(prev) => (legal_p2(prev), win("V2", "y", prev)),
                None => (and(vec![]), win("V2", "y", 0)),
            };
            and(vec![legal_p1(i), or(vec![not(p2_legal), and(vec![win("V1", "x", i), not(p2_win)])])])
        })
        .collect();
    Ok(CompiledCheck {
        structure: st,
        formula: close(alternating_prefix(l, Quantifier::Exists), &or(cases)),
        provenance: Provenance { variant: Variant::MM, budget: l, log: Vec::new() },
        expected_fragment: FragmentTag::GeneralFO,
        negated: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::parse_game;
    use crate::logic::{classify, evaluate};

    fn truth(text: &str) -> bool {
        let c = compile_mm(&parse_game(text).unwrap()).unwrap();
        assert_eq!(classify(&c.formula).tag, FragmentTag::GeneralFO);
        evaluate(&c.structure, &c.formula).unwrap()
    }

    #[test]
    fn fork_wins_in_two() {
        assert!(truth("variant MM\nbudget 2\nvertices a b c d\nedge a b\nedge a c\n"));
    }

    #[test]
    fn already_won_with_zero_budget() {
        assert!(truth("variant MM\nbudget 0\nvertices a b\nedge a b\np1 a b\n"));
        assert!(!truth("variant MM\nbudget 0\nvertices a b\nedge a b\n"));
    }

    #[test]
    fn single_pair_is_blocked() {
        assert!(!truth("variant MM\nbudget 2\nvertices a b\nedge a b\n"));
    }
}
