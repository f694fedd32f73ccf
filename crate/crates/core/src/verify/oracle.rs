//! Brute-force oracles independent of the code they check.

use std::collections::{BTreeMap, BTreeSet};

use crate::logic::{Formula, Matrix, Quantifier, Structure};

fn matrix_holds(s: &Structure, m: &Matrix, asg: &BTreeMap<String, String>) -> bool {
    match m {
        Matrix::Rel(name, args) => {
            let tuple: Vec<&str> = args.iter().map(|a| asg[a].as_str()).collect();
            s.holds(name, &tuple)
        }
        Matrix::Eq(a, b) => asg[a] == asg[b],
        Matrix::Neq(a, b) => asg[a] != asg[b],
        Matrix::Not(inner) => !matrix_holds(s, inner, asg),
        Matrix::And(ms) => ms.iter().all(|c| matrix_holds(s, c, asg)),
        Matrix::Or(ms) => ms.iter().any(|c| matrix_holds(s, c, asg)),
    }
}

/// Truth of `f` by enumerating assignments in prefix order (free variables
/// existentially first), evaluating the matrix as written.
pub fn brute_force_evaluate(s: &Structure, f: &Formula) -> bool {
    let mut order: Vec<(Quantifier, String)> =
        f.free_variables().into_iter().map(|v| (Quantifier::Exists, v)).collect();
    order.extend(f.prefix().iter().cloned());
    fn go(s: &Structure, m: &Matrix, order: &[(Quantifier, String)], asg: &mut BTreeMap<String, String>) -> bool {
        let Some(((q, v), rest)) = order.split_first() else {
            return matrix_holds(s, m, asg);
        };
        let mut values = s.universe().iter();
        let mut test = |e: &String| {
            asg.insert(v.clone(), e.clone());
            go(s, m, rest, asg)
        };
        match q {
            Quantifier::Exists => values.any(&mut test),
            Quantifier::Forall => values.all(&mut test),
        }
    }
    go(s, f.matrix(), &order, &mut BTreeMap::new())
}

/// Whether `graph` (vertex count, edge list) has an independent set of size `k`.
pub fn has_independent_set(n: usize, edges: &[(usize, usize)], k: usize) -> bool {
    fn choose(n: usize, k: usize, start: usize, pick: &mut Vec<usize>, edges: &[(usize, usize)]) -> bool {
        if pick.len() == k {
            return true;
        }
        for v in start..n {
            if pick.iter().all(|&u| !edges.contains(&(u, v)) && !edges.contains(&(v, u))) {
                pick.push(v);
                if choose(n, k, v + 1, pick, edges) {
                    return true;
                }
                pick.pop();
            }
        }
        false
    }
    choose(n, k, 0, &mut Vec::new(), edges)
}

/// Geometric collinearity of three grid cells, in this order, with unit steps.
pub fn geometrically_aligned(u: (i64, i64), v: (i64, i64), w: (i64, i64)) -> bool {
    let d1 = (v.0 - u.0, v.1 - u.1);
    let d2 = (w.0 - v.0, w.1 - v.1);
    d1 == d2 && d1 != (0, 0) && d1.0.abs() <= 1 && d1.1.abs() <= 1
}

/// All `k`-subsets of `0..n`.
pub fn subsets(n: usize, k: usize) -> Vec<BTreeSet<usize>> {
    let mut out = Vec::new();
    fn rec(n: usize, k: usize, start: usize, acc: &mut Vec<usize>, out: &mut Vec<BTreeSet<usize>>) {
        if acc.len() == k {
            out.push(acc.iter().copied().collect());
            return;
        }
        for i in start..n {
            acc.push(i);
            rec(n, k, i + 1, acc, out);
            acc.pop();
        }
    }
    rec(n, k, 0, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_formula;

    #[test]
    fn evaluation_examples() {
        let mut s = Structure::new(["a", "b"]).unwrap();
        s.add_tuple("EDGE", &["a", "b"]).unwrap();
        assert!(brute_force_evaluate(&s, &parse_formula("E x E y : EDGE(x,y)").unwrap()));
        let one = Structure::new(["a"]).unwrap();
        let f = parse_formula("A y E x : x != y").unwrap();
        assert!(!brute_force_evaluate(&one, &f));
        assert!(brute_force_evaluate(&s, &f));
    }

    #[test]
    fn independent_sets() {
        assert!(has_independent_set(3, &[(0, 1)], 2));
        assert!(!has_independent_set(3, &[(0, 1), (1, 2), (0, 2)], 2));
        assert!(has_independent_set(4, &[], 4));
    }

    #[test]
    fn alignment() {
        assert!(geometrically_aligned((1, 1), (1, 2), (1, 3)));
        assert!(geometrically_aligned((3, 1), (2, 2), (1, 3)));
        assert!(!geometrically_aligned((1, 1), (1, 2), (2, 3)));
        assert!(!geometrically_aligned((1, 1), (1, 3), (1, 2)));
    }
}
