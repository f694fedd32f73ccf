use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use super::LogicError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub arity: usize,
    pub tuples: BTreeSet<Vec<String>>,
}

/// Finite relational structure over named elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Structure {
    universe: Vec<String>,
    index: HashMap<String, usize>,
    relations: BTreeMap<String, Relation>,
}

impl Structure {
    pub fn new<I, S>(universe: I) -> Result<Self, LogicError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut s = Structure { universe: Vec::new(), index: HashMap::new(), relations: BTreeMap::new() };
        for e in universe {
            let e = e.into();
            if s.index.contains_key(&e) {
                return Err(LogicError::Structure(format!("duplicate universe element {}", e)));
            }
            s.index.insert(e.clone(), s.universe.len());
            s.universe.push(e);
        }
        if s.universe.is_empty() {
            return Err(LogicError::EmptyUniverse);
        }
        Ok(s)
    }

    /// Declares an (initially empty) relation. Redeclaring with the same arity is a no-op.
    pub fn declare(&mut self, name: &str, arity: usize) -> Result<(), LogicError> {
        match self.relations.get(name) {
            Some(r) if r.arity != arity => Err(LogicError::ArityMismatch {
                relation: name.to_string(),
                expected: r.arity,
                found: arity,
            }),
            Some(_) => Ok(()),
            None => {
                self.relations.insert(name.to_string(), Relation { arity, tuples: BTreeSet::new() });
                Ok(())
            }
        }
    }

    pub fn add_tuple<S: AsRef<str>>(&mut self, name: &str, tuple: &[S]) -> Result<(), LogicError> {
        let tuple: Vec<String> = tuple.iter().map(|s| s.as_ref().to_string()).collect();
        self.declare(name, tuple.len())?;
        for e in &tuple {
            if !self.index.contains_key(e) {
                return Err(LogicError::Structure(format!("element {} of {} is not in the universe", e, name)));
            }
        }
        self.relations.get_mut(name).unwrap().tuples.insert(tuple);
        Ok(())
    }

    pub fn universe(&self) -> &[String] {
        &self.universe
    }

    pub fn len(&self) -> usize {
        self.universe.len()
    }

    pub fn is_empty(&self) -> bool {
        self.universe.is_empty()
    }

    pub fn element_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn relation(&self, name: &str) -> Option<&Relation> {
        self.relations.get(name)
    }

    pub fn relations(&self) -> impl Iterator<Item = (&String, &Relation)> {
        self.relations.iter()
    }

    pub fn holds<S: AsRef<str>>(&self, name: &str, tuple: &[S]) -> bool {
        self.relations
            .get(name)
            .map(|r| {
                let t: Vec<String> = tuple.iter().map(|s| s.as_ref().to_string()).collect();
                r.tuples.contains(&t)
            })
            .unwrap_or(false)
    }

    pub fn parse(text: &str) -> Result<Self, LogicError> {
        let err = |line: usize, msg: String| LogicError::Syntax { line, col: 1, msg };
        let mut structure: Option<Structure> = None;
        let mut current: Option<(String, usize)> = None;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("");
            if line.trim().is_empty() {
                continue;
            }
            let indented = line.starts_with(' ') || line.starts_with('\t');
            let words: Vec<&str> = line.split_whitespace().collect();
            if indented {
                let (name, arity) = current
                    .clone()
                    .ok_or_else(|| err(line_no, "tuple line outside a rel block".into()))?;
                if words.len() != arity {
                    return Err(err(line_no, format!("tuple of {} has {} entries, arity is {}", name, words.len(), arity)));
                }
                let s = structure.as_mut().unwrap();
                s.add_tuple(&name, &words).map_err(|e| err(line_no, e.to_string()))?;
                continue;
            }
            match words[0] {
                "universe" => {
                    if structure.is_some() {
                        return Err(err(line_no, "universe declared twice".into()));
                    }
                    structure = Some(Structure::new(words[1..].iter().copied()).map_err(|e| err(line_no, e.to_string()))?);
                }
                "rel" => {
                    let s = structure
                        .as_mut()
                        .ok_or_else(|| err(line_no, "rel before universe".into()))?;
                    if words.len() != 3 {
                        return Err(err(line_no, "expected: rel NAME ARITY".into()));
                    }
                    let arity: usize = words[2]
                        .parse()
                        .map_err(|_| err(line_no, format!("bad arity {}", words[2])))?;
                    s.declare(words[1], arity).map_err(|e| err(line_no, e.to_string()))?;
                    current = Some((words[1].to_string(), arity));
                }
                other => return Err(err(line_no, format!("unknown directive {}", other))),
            }
        }
        structure.ok_or(LogicError::EmptyUniverse)
    }
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "universe {}", self.universe.join(" "))?;
        for (name, rel) in &self.relations {
            writeln!(f, "rel {} {}", name, rel.arity)?;
            for t in &rel.tuples {
                writeln!(f, "  {}", t.join(" "))?;
            }
        }
        Ok(())
    }
}
