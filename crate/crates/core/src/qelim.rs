//! Elimination of universal quantifiers from formulas whose universal
//! variables occur only in inequalities.
//!
//! The rightmost universal `A x_i` with existential tail `x_{i+1}..x_k` is
//! replaced by an existential block over
//!
//! 1. `psi[y_i/x_i, .., y_k/x_k]`,
//! 2. for every earlier variable `x_j`: `psi[x_j/x_i, fresh tail]`,
//! 3. for every later variable `x_j`: `psi[y_j/x_i, fresh tail]`.
//!
//! Fresh names: round `r` renames `v` to `v@r` in part 1 and to `v@r_c` in
//! the `c`-th copy of parts 2/3. `r` exceeds every number following an `@`
//! in the input, so names never collide.

use std::collections::BTreeMap;

use crate::logic::{classify, is_nnf, to_nnf, Formula, FragmentTag, LogicError, Matrix, Quantifier};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QelimError {
    #[error("universal variable {variable} occurs outside an inequality in {atom}")]
    OutsideFragment { variable: String, atom: String },
    #[error("matrix is not in negation normal form")]
    NotNnf,
    #[error(transparent)]
    Logic(#[from] LogicError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Round {
    pub variable: String,
    /// Names introduced for part 1 (`y_i .. y_k`).
    pub part1: Vec<String>,
    /// One entry per copy in parts 2 and 3: the variable substituted for the
    /// eliminated one, and the fresh tail names.
    pub copies: Vec<(String, Vec<String>)>,
    pub size_before: usize,
    pub size_after: usize,
    /// The variable did not occur in the matrix; its quantifier was dropped.
    pub degenerate: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EliminationTrace {
    pub rounds: Vec<Round>,
}

impl EliminationTrace {
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for (n, r) in self.rounds.iter().enumerate() {
            out.push_str(&format!(
                "round {}: eliminated {}{}, {} copies, size {} -> {}\n",
                n + 1,
                r.variable,
                if r.degenerate { " (unused, dropped)" } else { "" },
                r.copies.len(),
                r.size_before,
                r.size_after
            ));
        }
        out
    }
}

fn next_round(f: &Formula) -> usize {
    let mut max = 0usize;
    for name in f.all_variables() {
        for part in name.split('@').skip(1) {
            let digits: String = part.chars().take_while(|c| c.is_ascii_digit()).collect();
            if let Ok(n) = digits.parse::<usize>() {
                max = max.max(n);
            }
        }
    }
    max + 1
}

fn check_input(f: &Formula) -> Result<(), QelimError> {
    let frag = classify(f);
    if let Some(v) = frag.violations.first() {
        return Err(QelimError::OutsideFragment { variable: v.variable.clone(), atom: v.atom.clone() });
    }
    if !is_nnf(f.matrix()) {
        return Err(QelimError::NotNnf);
    }
    Ok(())
}

fn rename(
    m: &Matrix,
    pairs: impl IntoIterator<Item = (String, String)>,
) -> Matrix {
    let map: BTreeMap<String, String> = pairs.into_iter().collect();
    crate::logic::substitute_matrix(m, &map)
}

fn eliminate_round(f: &Formula) -> Result<Option<(Formula, Round)>, QelimError> {
    check_input(f)?;
    let prefix = f.prefix();
    let Some(i) = prefix.iter().rposition(|(q, _)| *q == Quantifier::Forall) else {
        return Ok(None);
    };
    let psi = f.matrix();
    let xi = prefix[i].1.clone();
    let size_before = f.size();
    if !psi.mentions(&xi) {
        let mut new_prefix = prefix.to_vec();
        new_prefix.remove(i);
        let out = Formula::new(new_prefix, psi.clone())?;
        let round = Round {
            variable: xi,
            part1: Vec::new(),
            copies: Vec::new(),
            size_before,
            size_after: out.size(),
            degenerate: true,
        };
        return Ok(Some((out, round)));
    }

    let r = next_round(f);
    let tail: Vec<String> = prefix[i + 1..].iter().map(|(_, v)| v.clone()).collect();
    // earlier variables: free ones (implicitly existential, outermost) then the prefix
    let mut earlier = f.free_variables();
    earlier.extend(prefix[..i].iter().map(|(_, v)| v.clone()));

    let y = |v: &str| format!("{}@{}", v, r);
    let part1_names: Vec<String> = std::iter::once(&xi).chain(&tail).map(|v| y(v)).collect();
    let mut conjuncts = vec![rename(psi, std::iter::once(&xi).chain(&tail).map(|v| (v.clone(), y(v))))];
    let mut new_prefix: Vec<(Quantifier, String)> = prefix[..i].to_vec();
    new_prefix.extend(part1_names.iter().map(|v| (Quantifier::Exists, v.clone())));

    let targets: Vec<String> = earlier.iter().cloned().chain(tail.iter().map(|v| y(v))).collect();
    let mut copies = Vec::new();
    for (c, target) in targets.into_iter().enumerate() {
        let fresh: Vec<String> = tail.iter().map(|v| format!("{}@{}_{}", v, r, c + 1)).collect();
        let mut pairs = vec![(xi.clone(), target.clone())];
        pairs.extend(tail.iter().cloned().zip(fresh.iter().cloned()));
        conjuncts.push(rename(psi, pairs));
        new_prefix.extend(fresh.iter().map(|v| (Quantifier::Exists, v.clone())));
        copies.push((target, fresh));
    }

    let out = Formula::new(new_prefix, Matrix::all(conjuncts))?;
    let round = Round { variable: xi, part1: part1_names, copies, size_before, size_after: out.size(), degenerate: false };
    Ok(Some((out, round)))
}

/// One elimination step. Formulas without universal quantifiers come back unchanged.
pub fn eliminate_rightmost_universal(f: &Formula) -> Result<Formula, QelimError> {
    Ok(eliminate_round(f)?.map(|(g, _)| g).unwrap_or_else(|| f.clone()))
}

/// Eliminates every universal quantifier, normalizing the matrix first.
pub fn to_sigma1(f: &Formula) -> Result<(Formula, EliminationTrace), QelimError> {
    let mut current = to_nnf(f);
    check_input(&current)?;
    let mut trace = EliminationTrace::default();
    while let Some((next, round)) = eliminate_round(&current)? {
        trace.rounds.push(round);
        current = next;
    }
    debug_assert_eq!(classify(&current).tag, FragmentTag::Sigma1);
    Ok((current, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{evaluate, parse_formula, Structure};

    fn universe(n: usize) -> Structure {
        Structure::new((0..n).map(|i| format!("e{}", i))).unwrap()
    }

    #[test]
    fn forall_exists_inequality() {
        let f = parse_formula("A y E x : x != y").unwrap();
        let g = eliminate_rightmost_universal(&f).unwrap();
        assert_eq!(g.to_string(), "E y@1 E x@1 E x@1_1 : x@1 != y@1 & x@1_1 != x@1");
        assert_eq!(classify(&g).tag, FragmentTag::Sigma1);
        assert!(!evaluate(&universe(1), &g).unwrap());
        assert!(evaluate(&universe(2), &g).unwrap());
    }

    #[test]
    fn exists_forall_inequality() {
        let f = parse_formula("E x A y : x != y").unwrap();
        let g = eliminate_rightmost_universal(&f).unwrap();
        assert_eq!(g.to_string(), "E x E y@1 : x != y@1 & x != x");
        for n in 1..=3 {
            assert_eq!(evaluate(&universe(n), &g).unwrap(), evaluate(&universe(n), &f).unwrap());
            assert!(!evaluate(&universe(n), &g).unwrap());
        }
    }

    #[test]
    fn sigma1_unchanged() {
        let f = parse_formula("E x E y : EDGE(x,y)").unwrap();
        assert_eq!(eliminate_rightmost_universal(&f).unwrap(), f);
        let (g, trace) = to_sigma1(&f).unwrap();
        assert_eq!(g, f);
        assert!(trace.rounds.is_empty());
    }

    #[test]
    fn two_universals_two_rounds() {
        let f = parse_formula("A y1 E x1 A y2 E x2 : x1 != y1 & x2 != y2 & x2 != y1").unwrap();
        let (g, trace) = to_sigma1(&f).unwrap();
        assert_eq!(trace.rounds.len(), 2);
        assert_eq!(trace.rounds[0].variable, "y2");
        assert_eq!(trace.rounds[1].variable, "y1");
        assert_eq!(classify(&g).tag, FragmentTag::Sigma1);
        assert!(g.to_string().contains("@2"));
        for n in 1..=4 {
            assert_eq!(evaluate(&universe(n), &g).unwrap(), evaluate(&universe(n), &f).unwrap(), "n = {}", n);
        }
    }

    #[test]
    fn unused_universal_is_dropped() {
        let f = parse_formula("E x A y : P(x)").unwrap();
        let (g, trace) = to_sigma1(&f).unwrap();
        assert_eq!(g.to_string(), "E x : P(x)");
        assert!(trace.rounds[0].degenerate);
    }

    #[test]
    fn refuses_general_fo_and_non_nnf() {
        let f = parse_formula("E x A y : EDGE(x,y)").unwrap();
        match eliminate_rightmost_universal(&f) {
            Err(QelimError::OutsideFragment { variable, atom }) => {
                assert_eq!(variable, "y");
                assert_eq!(atom, "EDGE(x,y)");
            }
            other => panic!("unexpected {:?}", other),
        }
        let f = parse_formula("E x A y : ~(x = y & P(x))").unwrap();
        assert_eq!(eliminate_rightmost_universal(&f), Err(QelimError::NotNnf));
        assert!(to_sigma1(&f).is_ok());
    }

    #[test]
    fn output_reparses() {
        let f = parse_formula("A y E x : x != y").unwrap();
        let (g, _) = to_sigma1(&f).unwrap();
        assert_eq!(parse_formula(&g.to_file_text()).unwrap(), g);
        // a second pass over generated names picks a fresh round number
        let h = parse_formula("# generated\nE z@3 A y E x : x != y & z@3 = z@3").unwrap();
        let (k, _) = to_sigma1(&h).unwrap();
        assert!(k.to_string().contains("x@4"));
    }
}
