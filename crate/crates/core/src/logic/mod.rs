//! First-order formulas over finite relational structures.

mod eval;
mod formula;
mod normal;
mod parse;
mod structure;

pub use eval::{estimate_cost, evaluate, Compiled};
pub use formula::{Formula, Matrix, Quantifier};
pub use normal::{
    classify, is_nnf, nnf_matrix, substitute, substitute_matrix, to_nnf, Fragment, FragmentTag, Violation,
};
pub use parse::{parse_formula, parse_generated_formula};
pub use structure::{Relation, Structure};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LogicError {
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("variable {0} is quantified twice")]
    DuplicateVariable(String),
    #[error("relation {relation} used with arity {first} and {second}")]
    InconsistentArity { relation: String, first: usize, second: usize },
    #[error("universe must be non-empty")]
    EmptyUniverse,
    #[error("{0}")]
    Structure(String),
    #[error("relation {relation} has arity {expected}, used with {found}")]
    ArityMismatch { relation: String, expected: usize, found: usize },
    #[error("substitution into a formula with a quantifier prefix")]
    QuantifiedSubstitution,
    #[error("unknown relation {0}")]
    UnknownRelation(String),
}
