use std::collections::BTreeMap;

use super::formula::{Formula, Matrix, Quantifier};
use super::LogicError;

/// Pushes negations down to atoms. `~(x = y)` becomes `x != y` and vice versa.
pub fn nnf_matrix(m: &Matrix) -> Matrix {
    push(m, false)
}

fn push(m: &Matrix, negated: bool) -> Matrix {
    match (m, negated) {
        (Matrix::Rel(..), false) => m.clone(),
        (Matrix::Rel(..), true) => Matrix::not(m.clone()),
        (Matrix::Eq(a, b), false) | (Matrix::Neq(a, b), true) => Matrix::Eq(a.clone(), b.clone()),
        (Matrix::Eq(a, b), true) | (Matrix::Neq(a, b), false) => Matrix::Neq(a.clone(), b.clone()),
        (Matrix::Not(inner), n) => push(inner, !n),
        (Matrix::And(ms), false) => Matrix::And(ms.iter().map(|c| push(c, false)).collect()),
        (Matrix::Or(ms), false) => Matrix::Or(ms.iter().map(|c| push(c, false)).collect()),
        (Matrix::And(ms), true) => Matrix::Or(ms.iter().map(|c| push(c, true)).collect()),
        (Matrix::Or(ms), true) => Matrix::And(ms.iter().map(|c| push(c, true)).collect()),
    }
}

pub fn to_nnf(f: &Formula) -> Formula {
    Formula::new(f.prefix().to_vec(), nnf_matrix(f.matrix())).expect("prefix already validated")
}

/// True when `Not` occurs only directly above relation atoms.
pub fn is_nnf(m: &Matrix) -> bool {
    match m {
        Matrix::Rel(..) | Matrix::Eq(..) | Matrix::Neq(..) => true,
        Matrix::Not(inner) => matches!(inner.as_ref(), Matrix::Rel(..)),
        Matrix::And(ms) | Matrix::Or(ms) => ms.iter().all(is_nnf),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FragmentTag {
    Sigma1,
    ForallNeqFO,
    GeneralFO,
}

/// Where a universal variable occurs outside an inequality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub variable: String,
    pub atom: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fragment {
    pub tag: FragmentTag,
    pub universals: Vec<String>,
    /// Inequality atoms (in the NNF matrix) mentioning some universal variable.
    pub inequalities: Vec<(String, String)>,
    pub violations: Vec<Violation>,
}

/// Most specific of Sigma1 / ForallNeqFO / GeneralFO, judged on the NNF matrix.
pub fn classify(f: &Formula) -> Fragment {
    let universals: Vec<String> = f
        .prefix()
        .iter()
        .filter(|(q, _)| *q == Quantifier::Forall)
        .map(|(_, v)| v.clone())
        .collect();
    if universals.is_empty() {
        return Fragment { tag: FragmentTag::Sigma1, universals, inequalities: Vec::new(), violations: Vec::new() };
    }
    let nnf = nnf_matrix(f.matrix());
    let mut inequalities = Vec::new();
    let mut violations = Vec::new();
    scan(&nnf, &universals, &mut inequalities, &mut violations);
    let tag = if violations.is_empty() { FragmentTag::ForallNeqFO } else { FragmentTag::GeneralFO };
    Fragment { tag, universals, inequalities, violations }
}

fn scan(m: &Matrix, universals: &[String], ineqs: &mut Vec<(String, String)>, bad: &mut Vec<Violation>) {
    let is_univ = |v: &String| universals.contains(v);
    match m {
        Matrix::Neq(a, b) => {
            if is_univ(a) || is_univ(b) {
                ineqs.push((a.clone(), b.clone()));
            }
        }
        Matrix::Eq(a, b) => {
            for v in [a, b] {
                if is_univ(v) {
                    bad.push(Violation { variable: v.clone(), atom: m.to_string() });
                }
            }
        }
        Matrix::Rel(_, args) => {
            for v in args.iter().filter(|v| is_univ(v)) {
                bad.push(Violation { variable: v.clone(), atom: m.to_string() });
            }
        }
        Matrix::Not(inner) => {
            let mut dummy = Vec::new();
            let before = bad.len();
            scan(inner, universals, &mut dummy, bad);
            // report the negated atom as written
            for v in bad.iter_mut().skip(before) {
                v.atom = m.to_string();
            }
        }
        Matrix::And(ms) | Matrix::Or(ms) => ms.iter().for_each(|c| scan(c, universals, ineqs, bad)),
    }
}

/// Simultaneous variable substitution on a quantifier-free formula.
pub fn substitute(f: &Formula, replacements: &BTreeMap<String, String>) -> Result<Formula, LogicError> {
    if !f.prefix().is_empty() {
        return Err(LogicError::QuantifiedSubstitution);
    }
    Formula::open(substitute_matrix(f.matrix(), replacements))
}

pub fn substitute_matrix(m: &Matrix, r: &BTreeMap<String, String>) -> Matrix {
    let map = |v: &String| r.get(v).cloned().unwrap_or_else(|| v.clone());
    match m {
        Matrix::Rel(name, args) => Matrix::Rel(name.clone(), args.iter().map(map).collect()),
        Matrix::Eq(a, b) => Matrix::Eq(map(a), map(b)),
        Matrix::Neq(a, b) => Matrix::Neq(map(a), map(b)),
        Matrix::Not(inner) => Matrix::not(substitute_matrix(inner, r)),
        Matrix::And(ms) => Matrix::And(ms.iter().map(|c| substitute_matrix(c, r)).collect()),
        Matrix::Or(ms) => Matrix::Or(ms.iter().map(|c| substitute_matrix(c, r)).collect()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_formula;

    fn m(text: &str) -> Matrix {
        parse_formula(&format!(": {}", text)).unwrap().matrix().clone()
    }

    fn subst(text: &str, pairs: &[(&str, &str)]) -> String {
        let r = pairs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        substitute(&parse_formula(&format!(": {}", text)).unwrap(), &r).unwrap().matrix().to_string()
    }

    #[test]
    fn de_morgan() {
        assert_eq!(nnf_matrix(&m("~(A(x) & B(y))")), m("~A(x) | ~B(y)"));
    }

    #[test]
    fn negated_equality_becomes_inequality() {
        assert_eq!(nnf_matrix(&m("~(x = y)")), Matrix::neq("x", "y"));
        assert_eq!(nnf_matrix(&m("~(x != y)")), Matrix::eq("x", "y"));
    }

    #[test]
    fn double_negation() {
        assert_eq!(nnf_matrix(&m("~~A(x)")), m("A(x)"));
    }

    #[test]
    fn constants_flip() {
        assert_eq!(nnf_matrix(&m("~true")), Matrix::falsity());
    }

    #[test]
    fn classify_examples() {
        let c = |t: &str| classify(&parse_formula(t).unwrap()).tag;
        assert_eq!(c("E x E y : EDGE(x,y)"), FragmentTag::Sigma1);
        assert_eq!(c("E x A y : x != y & EDGE(x,x)"), FragmentTag::ForallNeqFO);
        assert_eq!(c("E x A y : EDGE(x,y)"), FragmentTag::GeneralFO);
        // judged after normalization: a doubly negated equality is still an equality
        assert_eq!(c("E x A y : ~~(x = y)"), FragmentTag::GeneralFO);
        assert_eq!(c("E x A y : ~(x = y)"), FragmentTag::ForallNeqFO);
    }

    #[test]
    fn classify_reports_offending_atom() {
        let frag = classify(&parse_formula("E x A y : x != y & ~EDGE(y,x)").unwrap());
        assert_eq!(frag.tag, FragmentTag::GeneralFO);
        assert_eq!(frag.violations[0].variable, "y");
        assert_eq!(frag.violations[0].atom, "~EDGE(y,x)");
        assert_eq!(frag.inequalities, vec![("x".to_string(), "y".to_string())]);
    }

    #[test]
    fn substitution_examples() {
        assert_eq!(subst("x != y", &[("y", "z")]), "x != z");
        assert_eq!(subst("EDGE(x,y)", &[("y", "x"), ("x", "y")]), "EDGE(y,x)");
        assert_eq!(subst("x = x", &[("x", "w")]), "w = w");
    }

    #[test]
    fn substitution_refuses_prefix() {
        let f = parse_formula("E x : x = x").unwrap();
        assert!(matches!(substitute(&f, &BTreeMap::new()), Err(LogicError::QuantifiedSubstitution)));
    }
}
