//! Model checking by recursion over the quantifier prefix.
//!
//! Before evaluation the prefix is scoped back into the matrix (a quantifier
//! moves into the only conjunct/disjunct that mentions its variable, `E`
//! distributes over `|`, `A` over `&`). This is an equivalence on non-empty
//! universes and keeps independently quantified blocks from multiplying.

use std::collections::{HashMap, HashSet};

use super::formula::{Formula, Matrix, Quantifier};
use super::normal::nnf_matrix;
use super::structure::Structure;
use super::LogicError;

const DENSE_LIMIT: usize = 1 << 22;

enum Table {
    Dense { stride: Vec<usize>, bits: Vec<bool> },
    Sparse(HashSet<Vec<u32>>),
}

impl Table {
    fn contains(&self, tuple: &[u32]) -> bool {
        match self {
            Table::Dense { stride, bits } => {
                let idx: usize = tuple.iter().zip(stride).map(|(&e, &s)| e as usize * s).sum();
                bits[idx]
            }
            Table::Sparse(set) => set.contains(tuple),
        }
    }
}

#[derive(Debug, Clone)]
enum Node {
    Const(bool),
    Rel { rel: usize, args: Vec<usize>, positive: bool },
    Eq(usize, usize),
    Neq(usize, usize),
    And(Vec<Node>),
    Or(Vec<Node>),
    Quant(Quantifier, usize, Box<Node>),
}

impl Node {
    fn mentions(&self, slot: usize) -> bool {
        match self {
            Node::Const(_) => false,
            Node::Rel { args, .. } => args.contains(&slot),
            Node::Eq(a, b) | Node::Neq(a, b) => *a == slot || *b == slot,
            Node::And(ns) | Node::Or(ns) => ns.iter().any(|n| n.mentions(slot)),
            Node::Quant(_, v, body) => *v != slot && body.mentions(slot),
        }
    }

    fn quantifier_depth(&self) -> usize {
        match self {
            Node::And(ns) | Node::Or(ns) => ns.iter().map(Node::quantifier_depth).max().unwrap_or(0),
            Node::Quant(_, _, body) => 1 + body.quantifier_depth(),
            _ => 0,
        }
    }

    fn cost(&self, n: f64) -> f64 {
        match self {
            Node::And(ns) | Node::Or(ns) => 1.0 + ns.iter().map(|c| c.cost(n)).sum::<f64>(),
            Node::Quant(_, _, body) => n * body.cost(n),
            _ => 1.0,
        }
    }
}

fn scope(q: Quantifier, slot: usize, node: Node) -> Node {
    if !node.mentions(slot) {
        return node;
    }
    let distributes = |is_and: bool| (is_and && q == Quantifier::Forall) || (!is_and && q == Quantifier::Exists);
    match node {
        Node::And(children) => scope_junction(q, slot, children, true, distributes(true)),
        Node::Or(children) => scope_junction(q, slot, children, false, distributes(false)),
        other => Node::Quant(q, slot, Box::new(other)),
    }
}

fn scope_junction(q: Quantifier, slot: usize, children: Vec<Node>, is_and: bool, distributes: bool) -> Node {
    let wrap = |ns: Vec<Node>| if is_and { Node::And(ns) } else { Node::Or(ns) };
    if distributes {
        return wrap(children.into_iter().map(|c| if c.mentions(slot) { scope(q, slot, c) } else { c }).collect());
    }
    let (mut dependent, mut rest): (Vec<Node>, Vec<Node>) = children.into_iter().partition(|c| c.mentions(slot));
    let inner = if dependent.len() == 1 {
        scope(q, slot, dependent.pop().unwrap())
    } else {
        Node::Quant(q, slot, Box::new(wrap(dependent)))
    };
    if rest.is_empty() {
        return inner;
    }
    rest.push(inner);
    wrap(rest)
}

fn order_children(node: &mut Node) {
    match node {
        Node::And(ns) | Node::Or(ns) => {
            ns.iter_mut().for_each(order_children);
            ns.sort_by_key(Node::quantifier_depth);
        }
        Node::Quant(_, _, body) => order_children(body),
        _ => {}
    }
}

/// A formula bound to a structure, ready for repeated evaluation.
pub struct Compiled<'s> {
    structure: &'s Structure,
    tables: Vec<Table>,
    root: Node,
    slots: usize,
}

struct Binder<'a> {
    structure: &'a Structure,
    slots: HashMap<String, usize>,
    rel_ids: HashMap<String, usize>,
    tables: Vec<Table>,
}

impl<'a> Binder<'a> {
    fn relation(&mut self, name: &str, arity: usize) -> Result<usize, LogicError> {
        if let Some(&id) = self.rel_ids.get(name) {
            return Ok(id);
        }
        let rel = self
            .structure
            .relation(name)
            .ok_or_else(|| LogicError::UnknownRelation(name.to_string()))?;
        if rel.arity != arity {
            return Err(LogicError::ArityMismatch { relation: name.to_string(), expected: rel.arity, found: arity });
        }
        let n = self.structure.len();
        let encode = |t: &Vec<String>| -> Vec<u32> {
            t.iter().map(|e| self.structure.element_index(e).unwrap() as u32).collect()
        };
        let table = match n.checked_pow(arity as u32) {
            Some(cells) if cells <= DENSE_LIMIT => {
                let mut stride = vec![1usize; arity];
                for i in (0..arity.saturating_sub(1)).rev() {
                    stride[i] = stride[i + 1] * n;
                }
                let mut bits = vec![false; cells.max(1)];
                for t in &rel.tuples {
                    let idx: usize = encode(t).iter().zip(&stride).map(|(&e, &s)| e as usize * s).sum();
                    bits[idx] = true;
                }
                Table::Dense { stride, bits }
            }
            _ => Table::Sparse(rel.tuples.iter().map(encode).collect()),
        };
        let id = self.tables.len();
        self.tables.push(table);
        self.rel_ids.insert(name.to_string(), id);
        Ok(id)
    }

    fn node(&mut self, m: &Matrix) -> Result<Node, LogicError> {
        Ok(match m {
            Matrix::Rel(name, args) => Node::Rel {
                rel: self.relation(name, args.len())?,
                args: args.iter().map(|a| self.slots[a]).collect(),
                positive: true,
            },
            Matrix::Not(inner) => match self.node(inner)? {
                Node::Rel { rel, args, positive } => Node::Rel { rel, args, positive: !positive },
                _ => unreachable!("matrix is in negation normal form"),
            },
            Matrix::Eq(a, b) => Node::Eq(self.slots[a], self.slots[b]),
            Matrix::Neq(a, b) => Node::Neq(self.slots[a], self.slots[b]),
            Matrix::And(ms) if ms.is_empty() => Node::Const(true),
            Matrix::Or(ms) if ms.is_empty() => Node::Const(false),
            Matrix::And(ms) => {
                let mut out = Vec::with_capacity(ms.len());
                for c in ms {
                    match self.node(c)? {
                        Node::And(inner) => out.extend(inner),
                        Node::Const(true) => {}
                        Node::Const(false) => return Ok(Node::Const(false)),
                        n => out.push(n),
                    }
                }
                if out.is_empty() { Node::Const(true) } else { Node::And(out) }
            }
            Matrix::Or(ms) => {
                let mut out = Vec::with_capacity(ms.len());
                for c in ms {
                    match self.node(c)? {
                        Node::Or(inner) => out.extend(inner),
                        Node::Const(false) => {}
                        Node::Const(true) => return Ok(Node::Const(true)),
                        n => out.push(n),
                    }
                }
                if out.is_empty() { Node::Const(false) } else { Node::Or(out) }
            }
        })
    }
}

impl<'s> Compiled<'s> {
    pub fn new(structure: &'s Structure, f: &Formula) -> Result<Self, LogicError> {
        let mut order: Vec<(Quantifier, String)> =
            f.free_variables().into_iter().map(|v| (Quantifier::Exists, v)).collect();
        order.extend(f.prefix().iter().cloned());
        let slots = order.iter().enumerate().map(|(i, (_, v))| (v.clone(), i)).collect();
        let mut binder = Binder { structure, slots, rel_ids: HashMap::new(), tables: Vec::new() };
        let mut root = binder.node(&nnf_matrix(f.matrix()))?;
        for (slot, (q, _)) in order.iter().enumerate().rev() {
            root = scope(*q, slot, root);
        }
        order_children(&mut root);
        Ok(Compiled { structure, tables: binder.tables, root, slots: order.len() })
    }

    /// Upper bound on atom evaluations for one `evaluate` call.
    pub fn estimated_cost(&self) -> f64 {
        self.root.cost(self.structure.len() as f64)
    }

    pub fn evaluate(&self) -> bool {
        let mut asg = vec![0u32; self.slots];
        let n = self.structure.len() as u32;
        let mut buf = Vec::new();
        self.eval(&self.root, &mut asg, n, &mut buf)
    }

    fn eval(&self, node: &Node, asg: &mut [u32], n: u32, buf: &mut Vec<u32>) -> bool {
        match node {
            Node::Const(b) => *b,
            Node::Rel { rel, args, positive } => {
                buf.clear();
                buf.extend(args.iter().map(|&a| asg[a]));
                self.tables[*rel].contains(buf) == *positive
            }
            Node::Eq(a, b) => asg[*a] == asg[*b],
            Node::Neq(a, b) => asg[*a] != asg[*b],
            Node::And(ns) => ns.iter().all(|c| self.eval(c, asg, n, buf)),
            Node::Or(ns) => ns.iter().any(|c| self.eval(c, asg, n, buf)),
            Node::Quant(q, slot, body) => {
                let saved = asg[*slot];
                let mut result = *q == Quantifier::Forall;
                for e in 0..n {
                    asg[*slot] = e;
                    let v = self.eval(body, asg, n, buf);
                    if v != result {
                        result = v;
                        break;
                    }
                }
                asg[*slot] = saved;
                result
            }
        }
    }
}

/// Decides whether `f` has a satisfying assignment in `s` (free variables are
/// existentially closed).
pub fn evaluate(s: &Structure, f: &Formula) -> Result<bool, LogicError> {
    Ok(Compiled::new(s, f)?.evaluate())
}

/// Estimated evaluation cost, see [`Compiled::estimated_cost`].
pub fn estimate_cost(s: &Structure, f: &Formula) -> Result<f64, LogicError> {
    Ok(Compiled::new(s, f)?.estimated_cost())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_formula;

    fn line(n: usize) -> Structure {
        Structure::new((0..n).map(|i| format!("v{}", i))).unwrap()
    }

    #[test]
    fn edge_exists() {
        let mut s = Structure::new(["a", "b"]).unwrap();
        s.add_tuple("EDGE", &["a", "b"]).unwrap();
        assert!(evaluate(&s, &parse_formula("E x E y : EDGE(x,y)").unwrap()).unwrap());
        assert!(!evaluate(&s, &parse_formula("E x : EDGE(x,x)").unwrap()).unwrap());
    }

    #[test]
    fn inequality_needs_two_elements() {
        let f = parse_formula("A y E x : x != y").unwrap();
        assert!(!evaluate(&line(1), &f).unwrap());
        assert!(evaluate(&line(2), &f).unwrap());
    }

    #[test]
    fn free_variables_are_existential() {
        let mut s = line(2);
        s.add_tuple("P", &["v1"]).unwrap();
        assert!(evaluate(&s, &parse_formula(": P(x)").unwrap()).unwrap());
        assert!(!evaluate(&s, &parse_formula("A y : P(x) & x != y").unwrap()).unwrap());
    }

    #[test]
    fn unknown_relation_and_arity() {
        let s = line(2);
        assert!(matches!(
            evaluate(&s, &parse_formula("E x : R(x)").unwrap()),
            Err(LogicError::UnknownRelation(_))
        ));
        let mut s = line(2);
        s.declare("R", 2).unwrap();
        assert!(matches!(
            evaluate(&s, &parse_formula("E x : R(x)").unwrap()),
            Err(LogicError::ArityMismatch { .. })
        ));
    }

    #[test]
    fn independent_blocks_stay_cheap() {
        // 20 variables, but every block scopes to its own conjunct
        let mut text = String::new();
        let mut conj = Vec::new();
        for i in 0..10 {
            text.push_str(&format!("E a{i} A b{i} "));
            conj.push(format!("(P(a{i}) | b{i} != a{i})"));
        }
        let f = parse_formula(&format!("{}: {}", text, conj.join(" & "))).unwrap();
        let mut s = line(6);
        s.add_tuple("P", &["v3"]).unwrap();
        let c = Compiled::new(&s, &f).unwrap();
        assert!(c.estimated_cost() < 1e5);
        assert!(c.evaluate());
    }
}
