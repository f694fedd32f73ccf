use std::collections::BTreeSet;
use std::fmt;

use super::LogicError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Quantifier {
    Exists,
    Forall,
}

impl Quantifier {
    pub fn dual(self) -> Self {
        match self {
            Quantifier::Exists => Quantifier::Forall,
            Quantifier::Forall => Quantifier::Exists,
        }
    }

    fn keyword(self) -> &'static str {
        match self {
            Quantifier::Exists => "E",
            Quantifier::Forall => "A",
        }
    }
}

/// Quantifier-free part of a prenex formula.
///
/// `And(vec![])` is the constant true and `Or(vec![])` the constant false;
/// they print as `true` / `false`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Matrix {
    Rel(String, Vec<String>),
    Eq(String, String),
    Neq(String, String),
    Not(Box<Matrix>),
    And(Vec<Matrix>),
    Or(Vec<Matrix>),
}

impl Matrix {
    pub fn rel<S: Into<String>>(name: S, args: &[&str]) -> Self {
        Matrix::Rel(name.into(), args.iter().map(|a| a.to_string()).collect())
    }

    pub fn eq(a: &str, b: &str) -> Self {
        Matrix::Eq(a.to_string(), b.to_string())
    }

    pub fn neq(a: &str, b: &str) -> Self {
        Matrix::Neq(a.to_string(), b.to_string())
    }

    pub fn not(m: Matrix) -> Self {
        Matrix::Not(Box::new(m))
    }

    pub fn truth() -> Self {
        Matrix::And(Vec::new())
    }

    pub fn falsity() -> Self {
        Matrix::Or(Vec::new())
    }

    /// Conjunction that collapses singleton lists.
    pub fn all(mut parts: Vec<Matrix>) -> Self {
        if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Matrix::And(parts)
        }
    }

    /// Disjunction that collapses singleton lists.
    pub fn any(mut parts: Vec<Matrix>) -> Self {
        if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Matrix::Or(parts)
        }
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, Matrix::Rel(..) | Matrix::Eq(..) | Matrix::Neq(..))
    }

    /// Atoms plus connectives; constants count as one connective.
    pub fn size(&self) -> usize {
        match self {
            Matrix::Rel(..) | Matrix::Eq(..) | Matrix::Neq(..) => 1,
            Matrix::Not(m) => 1 + m.size(),
            Matrix::And(ms) | Matrix::Or(ms) => {
                if ms.is_empty() {
                    1
                } else {
                    (ms.len() - 1).max(1) + ms.iter().map(Matrix::size).sum::<usize>()
                }
            }
        }
    }

    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_variables(&mut out);
        out
    }

    fn collect_variables(&self, out: &mut BTreeSet<String>) {
        match self {
            Matrix::Rel(_, args) => out.extend(args.iter().cloned()),
            Matrix::Eq(a, b) | Matrix::Neq(a, b) => {
                out.insert(a.clone());
                out.insert(b.clone());
            }
            Matrix::Not(m) => m.collect_variables(out),
            Matrix::And(ms) | Matrix::Or(ms) => ms.iter().for_each(|m| m.collect_variables(out)),
        }
    }

    pub fn mentions(&self, var: &str) -> bool {
        match self {
            Matrix::Rel(_, args) => args.iter().any(|a| a == var),
            Matrix::Eq(a, b) | Matrix::Neq(a, b) => a == var || b == var,
            Matrix::Not(m) => m.mentions(var),
            Matrix::And(ms) | Matrix::Or(ms) => ms.iter().any(|m| m.mentions(var)),
        }
    }

    /// Relation names with the arity of their first use, in first-use order.
    pub fn relations(&self) -> Vec<(String, usize)> {
        let mut out: Vec<(String, usize)> = Vec::new();
        self.visit_relations(&mut |name, arity| {
            if !out.iter().any(|(n, _)| n == name) {
                out.push((name.to_string(), arity));
            }
        });
        out
    }

    pub(crate) fn visit_relations(&self, f: &mut impl FnMut(&str, usize)) {
        match self {
            Matrix::Rel(name, args) => f(name, args.len()),
            Matrix::Eq(..) | Matrix::Neq(..) => {}
            Matrix::Not(m) => m.visit_relations(f),
            Matrix::And(ms) | Matrix::Or(ms) => ms.iter().for_each(|m| m.visit_relations(f)),
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, nested: bool) -> fmt::Result {
        match self {
            Matrix::Rel(name, args) => write!(f, "{}({})", name, args.join(",")),
            Matrix::Eq(a, b) => write!(f, "{} = {}", a, b),
            Matrix::Neq(a, b) => write!(f, "{} != {}", a, b),
            Matrix::Not(m) => {
                write!(f, "~")?;
                match m.as_ref() {
                    Matrix::Eq(..) | Matrix::Neq(..) => {
                        write!(f, "(")?;
                        m.fmt_prec(f, false)?;
                        write!(f, ")")
                    }
                    Matrix::And(ms) | Matrix::Or(ms) if !ms.is_empty() => {
                        write!(f, "(")?;
                        m.fmt_prec(f, false)?;
                        write!(f, ")")
                    }
                    _ => m.fmt_prec(f, true),
                }
            }
            Matrix::And(ms) if ms.is_empty() => write!(f, "true"),
            Matrix::Or(ms) if ms.is_empty() => write!(f, "false"),
            Matrix::And(ms) | Matrix::Or(ms) => {
                let sep = if matches!(self, Matrix::And(_)) { " & " } else { " | " };
                if nested || ms.len() == 1 {
                    write!(f, "(")?;
                }
                for (i, m) in ms.iter().enumerate() {
                    if i > 0 {
                        write!(f, "{}", sep)?;
                    }
                    let child_nested = matches!(m, Matrix::And(c) | Matrix::Or(c) if !c.is_empty());
                    m.fmt_prec(f, child_nested)?;
                }
                if nested || ms.len() == 1 {
                    write!(f, ")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, false)
    }
}

/// A prenex first-order formula: quantifier prefix plus quantifier-free matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Formula {
    prefix: Vec<(Quantifier, String)>,
    matrix: Matrix,
}

impl Formula {
    /// Builds a formula, rejecting repeated prefix variables.
    pub fn new(prefix: Vec<(Quantifier, String)>, matrix: Matrix) -> Result<Self, LogicError> {
        let mut seen = BTreeSet::new();
        for (_, v) in &prefix {
            if !seen.insert(v.as_str()) {
                return Err(LogicError::DuplicateVariable(v.clone()));
            }
        }
        let mut arities: Vec<(String, usize)> = Vec::new();
        let mut clash = None;
        matrix.visit_relations(&mut |name, arity| {
            match arities.iter().find(|(n, _)| n == name) {
                Some((_, a)) if *a != arity && clash.is_none() => {
                    clash = Some(LogicError::InconsistentArity {
                        relation: name.to_string(),
                        first: *a,
                        second: arity,
                    })
                }
                Some(_) => {}
                None => arities.push((name.to_string(), arity)),
            }
        });
        if let Some(e) = clash {
            return Err(e);
        }
        Ok(Formula { prefix, matrix })
    }

    /// A quantifier-free formula (empty prefix).
    pub fn open(matrix: Matrix) -> Result<Self, LogicError> {
        Formula::new(Vec::new(), matrix)
    }

    pub fn prefix(&self) -> &[(Quantifier, String)] {
        &self.prefix
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn into_parts(self) -> (Vec<(Quantifier, String)>, Matrix) {
        (self.prefix, self.matrix)
    }

    pub fn quantifier_count(&self) -> usize {
        self.prefix.len()
    }

    pub fn universal_count(&self) -> usize {
        self.prefix.iter().filter(|(q, _)| *q == Quantifier::Forall).count()
    }

    /// Variables of the matrix that are not bound by the prefix, sorted.
    pub fn free_variables(&self) -> Vec<String> {
        let bound: BTreeSet<&str> = self.prefix.iter().map(|(_, v)| v.as_str()).collect();
        self.matrix
            .variables()
            .into_iter()
            .filter(|v| !bound.contains(v.as_str()))
            .collect()
    }

    /// Atoms + connectives + quantifiers.
    pub fn size(&self) -> usize {
        self.prefix.len() + self.matrix.size()
    }

    /// All variable names, bound or free.
    pub fn all_variables(&self) -> BTreeSet<String> {
        let mut vars = self.matrix.variables();
        vars.extend(self.prefix.iter().map(|(_, v)| v.clone()));
        vars
    }

    /// Text with a `# generated` header when generated (`@`) names are present,
    /// so the parser accepts it back.
    pub fn to_file_text(&self) -> String {
        let text = self.to_string();
        if text.contains('@') {
            format!("# generated\n{}\n", text)
        } else {
            format!("{}\n", text)
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (q, v) in &self.prefix {
            write!(f, "{} {} ", q.keyword(), v)?;
        }
        write!(f, ": ")?;
        self.matrix.fmt(f)
    }
}
