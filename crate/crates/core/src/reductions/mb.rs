use std::collections::BTreeSet;

use super::builder::{and, close, eq, exists, neq, or, rel};
use super::{alternating_prefix, diff, fresh_name, CompileOutcome, CompiledCheck, Provenance, ReductionError};
use crate::games::{GameInstance, Variant};
use crate::logic::{FragmentTag, Quantifier, Structure};

/// Maker-Breaker compiler over the universe V ∪ E ∪ {int_1, …, int_|V|}.
///
/// The vocabulary has no constants, so `SIZE(e, j)` is written
/// `∃n (NUM_j(n) ∧ SIZE(e, n))` with a unary marker `NUM_j = {int_j}`.
pub fn compile_mb(g: &GameInstance) -> Result<CompileOutcome, ReductionError> {
    g.validate()?;
    let h = g.hypergraph().ok_or(ReductionError::Unsupported(g.variant))?;
    let (p1, p2) = (&g.position.p1, &g.position.p2);
    let l = g.budget;
    let mut log = Vec::new();

    let mut edges: Vec<(String, BTreeSet<String>)> = Vec::new();
    for (name, e) in h.edges() {
        if let Some(v) = e.iter().find(|v| p2.contains(*v)) {
            log.push(format!("drop edge {name}: breaker holds {v}"));
            continue;
        }
        let rest: BTreeSet<String> = e.difference(p1).cloned().collect();
        if rest.len() < e.len() {
            log.push(format!("shrink edge {name} by {} maker vertices", e.len() - rest.len()));
        }
        if rest.is_empty() {
            return Ok(CompileOutcome::Decided { answer: true, reason: format!("maker already holds edge {name}") });
        }
        edges.push((name.clone(), rest));
    }
    let vertices: Vec<String> = h.vertices().iter().filter(|v| !p1.contains(*v) && !p2.contains(*v)).cloned().collect();
    if vertices.len() < h.vertices().len() {
        log.push(format!("remove {} claimed vertices", h.vertices().len() - vertices.len()));
    }
    if vertices.is_empty() {
        return Ok(CompileOutcome::Decided { answer: false, reason: "no free vertices and no completed edge".into() });
    }

    let mut taken: BTreeSet<String> = vertices.iter().cloned().collect();
    let mut edge_elems = Vec::new();
    for (name, _) in &edges {
        let elem = fresh_name(format!("edge:{name}"), &taken);
        taken.insert(elem.clone());
        edge_elems.push(elem);
    }
    let ints: Vec<String> = (1..=vertices.len())
        .map(|i| {
            let elem = fresh_name(format!("int_{i}"), &taken);
            taken.insert(elem.clone());
            elem
        })
        .collect();

    let mut st = Structure::new(vertices.iter().chain(&edge_elems).chain(&ints))?;
    st.declare("IN", 2)?;
    st.declare("SIZE", 2)?;
    for j in 1..=l {
        st.declare(&format!("NUM_{j}"), 1)?;
        if let Some(elem) = ints.get(j - 1) {
            st.add_tuple(&format!("NUM_{j}"), &[elem])?;
        }
    }
    for ((_, e), elem) in edges.iter().zip(&edge_elems) {
        for v in e {
            st.add_tuple("IN", &[v, elem])?;
        }
        st.add_tuple("SIZE", &[elem, &ints[e.len() - 1]])?;
    }

    let mut prefix = alternating_prefix(l, Quantifier::Exists);
    prefix.push((Quantifier::Exists, "e".into()));
    prefix.extend((1..=l).map(|k| (Quantifier::Exists, format!("z{k}"))));

    let mut cases = Vec::new();
    for i in 1..=l {
        for j in 1..=i {
            let mut parts = vec![diff(i), exists("n", and(vec![rel(&format!("NUM_{j}"), &["n"]), rel("SIZE", &["e", "n"])]))];
            for k in 1..=j {
                let z = format!("z{k}");
                parts.push(or((1..=i).map(|h| eq(&z, &format!("x{h}"))).collect()));
                for hh in k + 1..=j {
                    parts.push(neq(&z, &format!("z{hh}")));
                }
                parts.push(rel("IN", &[&z, "e"]));
            }
            cases.push(and(parts));
        }
    }
    Ok(CompileOutcome::Formula(CompiledCheck {
        structure: st,
        formula: close(prefix, &or(cases)),
        provenance: Provenance { variant: Variant::MB, budget: l, log },
        expected_fragment: FragmentTag::ForallNeqFO,
        negated: false,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::parse_game;
    use crate::logic::{classify, evaluate};

    #[test]
    fn universe_layout() {
        let g = parse_game("variant MB\nbudget 1\nvertices a b c\nedge a b\n").unwrap();
        let c = compile_mb(&g).unwrap().check().unwrap().clone();
        assert_eq!(c.structure.len(), 7);
        assert!(c.structure.holds("SIZE", &["edge:e1", "int_2"]));
        assert!(classify(&c.formula).tag <= FragmentTag::ForallNeqFO);
    }

    #[test]
    fn two_edges_sharing_a_vertex() {
        let g = parse_game("variant MB\nbudget 2\nvertices a b c\nedge a b\nedge a c\n").unwrap();
        let c = compile_mb(&g).unwrap().check().unwrap().clone();
        assert!(evaluate(&c.structure, &c.formula).unwrap());
    }

    #[test]
    fn claimed_edge_is_flagged() {
        let g = parse_game("variant MB\nbudget 1\nvertices a b\nedge a\np1 a\n").unwrap();
        assert!(matches!(compile_mb(&g).unwrap(), CompileOutcome::Decided { answer: true, .. }));
    }
}
