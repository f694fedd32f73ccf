//! Formulas with nested quantifiers, flattened to prenex form on output.
//! Inner bound variables are renamed `_q1`, `_q2`, … before hoisting, so
//! pulling them outward never captures anything; the universe is never empty,
//! which keeps hoisting across ∧/∨ sound.

use std::collections::BTreeMap;

use crate::logic::{Formula, Matrix, Quantifier};

#[derive(Debug, Clone)]
pub(crate) enum Scoped {
    Atom(Matrix),
    Not(Box<Scoped>),
    And(Vec<Scoped>),
    Or(Vec<Scoped>),
    Quant(Quantifier, String, Box<Scoped>),
}

pub(crate) fn rel(name: &str, args: &[&str]) -> Scoped {
    Scoped::Atom(Matrix::rel(name, args))
}

pub(crate) fn eq(a: &str, b: &str) -> Scoped {
    Scoped::Atom(Matrix::eq(a, b))
}

pub(crate) fn neq(a: &str, b: &str) -> Scoped {
    Scoped::Atom(Matrix::neq(a, b))
}

pub(crate) fn not(s: Scoped) -> Scoped {
    Scoped::Not(Box::new(s))
}

pub(crate) fn and(parts: Vec<Scoped>) -> Scoped {
    Scoped::And(parts)
}

pub(crate) fn or(parts: Vec<Scoped>) -> Scoped {
    Scoped::Or(parts)
}

pub(crate) fn implies(a: Scoped, b: Scoped) -> Scoped {
    or(vec![not(a), b])
}

pub(crate) fn exists(var: &str, body: Scoped) -> Scoped {
    Scoped::Quant(Quantifier::Exists, var.to_string(), Box::new(body))
}

pub(crate) fn forall(var: &str, body: Scoped) -> Scoped {
    Scoped::Quant(Quantifier::Forall, var.to_string(), Box::new(body))
}

struct Hoister {
    names: BTreeMap<String, String>,
    counter: usize,
}

impl Hoister {
    fn rename(&self, v: &str) -> String {
        self.names.get(v).cloned().unwrap_or_else(|| v.to_string())
    }

    fn atom(&self, m: &Matrix) -> Matrix {
        match m {
            Matrix::Rel(name, args) => Matrix::Rel(name.clone(), args.iter().map(|a| self.rename(a)).collect()),
            Matrix::Eq(a, b) => Matrix::Eq(self.rename(a), self.rename(b)),
            Matrix::Neq(a, b) => Matrix::Neq(self.rename(a), self.rename(b)),
            Matrix::Not(inner) => Matrix::not(self.atom(inner)),
            Matrix::And(ms) => Matrix::all(ms.iter().map(|x| self.atom(x)).collect()),
            Matrix::Or(ms) => Matrix::any(ms.iter().map(|x| self.atom(x)).collect()),
        }
    }

    /// Returns the hoisted prefix and the quantifier-free matrix of `s`
    /// (negated when `neg`), pushing negations to atoms.
    fn hoist(&mut self, s: &Scoped, neg: bool) -> (Vec<(Quantifier, String)>, Matrix) {
        match s {
            Scoped::Atom(m) => {
                let m = self.atom(m);
                let m = if neg {
                    match m {
                        Matrix::Eq(a, b) => Matrix::Neq(a, b),
                        Matrix::Neq(a, b) => Matrix::Eq(a, b),
                        Matrix::Not(inner) => *inner,
                        other => crate::logic::nnf_matrix(&Matrix::not(other)),
                    }
                } else {
                    m
                };
                (Vec::new(), m)
            }
            Scoped::Not(inner) => self.hoist(inner, !neg),
            Scoped::And(parts) | Scoped::Or(parts) => {
                let conj = matches!(s, Scoped::And(_)) != neg;
                let mut prefix = Vec::new();
                let mut ms = Vec::new();
                for p in parts {
                    let (pp, m) = self.hoist(p, neg);
                    prefix.extend(pp);
                    ms.push(m);
                }
                (prefix, if conj { Matrix::all(ms) } else { Matrix::any(ms) })
            }
            Scoped::Quant(q, v, body) => {
                let q = if neg { q.dual() } else { *q };
                self.counter += 1;
                let fresh = format!("_q{}", self.counter);
                let saved = self.names.insert(v.clone(), fresh.clone());
                let (mut prefix, m) = self.hoist(body, neg);
                match saved {
                    Some(old) => self.names.insert(v.clone(), old),
                    None => self.names.remove(v),
                };
                prefix.insert(0, (q, fresh));
                (prefix, m)
            }
        }
    }
}

/// `prefix` followed by `body`, flattened into a prenex formula.
pub(crate) fn close(prefix: Vec<(Quantifier, String)>, body: &Scoped) -> Formula {
    let mut h = Hoister { names: BTreeMap::new(), counter: 0 };
    let (inner, matrix) = h.hoist(body, false);
    let mut all = prefix;
    all.extend(inner);
    Formula::new(all, matrix).expect("compiler emits distinct bound variables")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{evaluate, Structure};

    #[test]
    fn negated_inner_quantifier_flips() {
        // ¬∃z EDGE(x,z) with x free-at-top: ∀ after hoisting
        let body = not(exists("z", rel("EDGE", &["x", "z"])));
        let f = close(vec![(Quantifier::Exists, "x".into())], &body);
        assert_eq!(f.to_string(), "E x A _q1 : ~EDGE(x,_q1)");
        let mut s = Structure::new(["a", "b"]).unwrap();
        s.add_tuple("EDGE", &["a", "b"]).unwrap();
        assert!(evaluate(&s, &f).unwrap());
    }

    #[test]
    fn reused_names_stay_apart() {
        let body = and(vec![exists("z", eq("x", "z")), forall("z", neq("z", "z"))]);
        let f = close(vec![(Quantifier::Exists, "x".into())], &body);
        assert_eq!(f.prefix().len(), 3);
        let s = Structure::new(["a"]).unwrap();
        assert!(!evaluate(&s, &f).unwrap());
    }
}
