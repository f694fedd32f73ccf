//! Game → (structure, formula) compilers and the two instance reductions.

mod builder;
mod ea;
mod hex;
mod kconnect;
mod mb;
mod mm;
mod sgg;

use std::collections::BTreeSet;
use std::fmt;

use crate::games::{GameError, GameInstance, Variant};
use crate::logic::{classify, Formula, FragmentTag, LogicError, Structure};

pub use ea::{compile_ea_co, reduce_is_to_ea};
pub use hex::{compile_hex, hex_preprocess};
pub use kconnect::{aligned_formula, compile_kconnect};
pub use mb::compile_mb;
pub use mm::compile_mm;
pub use sgg::{
    budget_for, delay_gadget, existential_gadget, reduce_sgg_to_mm, token, universal_gadget, DelayGadget, Gadget, GadgetVertexMap,
    SggReduction, EXISTS_TOKEN, FORALL_TOKEN,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReductionError {
    #[error("invalid game: {0}")]
    Game(#[from] GameError),
    #[error("{0}")]
    Logic(#[from] LogicError),
    #[error("no formula compiler for {0}")]
    Unsupported(Variant),
    #[error("trivial k-Connect game: p = {p} is not below k = {k}")]
    TrivialConnect { p: usize, k: usize },
    #[error("k-Connect compilation needs at least a 3×3 board and k ≥ 3")]
    BoardTooSmall,
    #[error("terminal {0} is already claimed")]
    ClaimedTerminal(String),
    #[error("start vertex {0} is not on the left side")]
    StartNotLeft(String),
    #[error("graph is not bipartite for the given sides")]
    NotBipartite,
}

/// Where a compiled check came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    pub variant: Variant,
    pub budget: usize,
    /// Human-readable preprocessing steps, in order.
    pub log: Vec<String>,
}

/// A model-checking instance whose truth encodes a game answer.
#[derive(Debug, Clone)]
pub struct CompiledCheck {
    pub structure: Structure,
    pub formula: Formula,
    pub provenance: Provenance,
    pub expected_fragment: FragmentTag,
    /// The formula states the complement of the game answer (EA co-problem).
    pub negated: bool,
}

impl CompiledCheck {
    /// Game answer implied by the formula's truth value.
    pub fn answer_from(&self, truth: bool) -> bool {
        truth != self.negated
    }

    /// Plain `key: value` lines describing the compilation.
    pub fn sidecar(&self) -> String {
        let mut out = format!(
            "variant: {}\nbudget: {}\nexpected_fragment: {:?}\nfragment: {:?}\nnegated: {}\nquantifiers: {}\nsize: {}\n",
            self.provenance.variant.name(),
            self.provenance.budget,
            self.expected_fragment,
            classify(&self.formula).tag,
            self.negated,
            self.formula.quantifier_count(),
            self.formula.size(),
        );
        for step in &self.provenance.log {
            out.push_str(&format!("preprocess: {step}\n"));
        }
        out
    }
}

/// Result of compiling one game instance.
#[derive(Debug, Clone)]
pub enum CompileOutcome {
    Formula(CompiledCheck),
    /// Preprocessing already settled the game; `answer` is the game's answer.
    Decided { answer: bool, reason: String },
    /// Too few vertices remain for the formula's distinctness constraints.
    BruteForceFallback { reason: String },
}

impl CompileOutcome {
    pub fn check(&self) -> Option<&CompiledCheck> {
        match self {
            CompileOutcome::Formula(c) => Some(c),
            _ => None,
        }
    }
}

impl fmt::Display for CompileOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CompileOutcome::Formula(c) => write!(f, "formula ({:?}, {} quantifiers)", c.expected_fragment, c.formula.quantifier_count()),
            CompileOutcome::Decided { answer, reason } => write!(f, "decided {answer}: {reason}"),
            CompileOutcome::BruteForceFallback { reason } => write!(f, "brute-force fallback: {reason}"),
        }
    }
}

/// Dispatches to the compiler for the instance's variant.
pub fn compile(g: &GameInstance) -> Result<CompileOutcome, ReductionError> {
    match g.variant {
        Variant::CONNECT => compile_kconnect(g).map(CompileOutcome::Formula),
        Variant::HEX => compile_hex(g),
        Variant::MB => compile_mb(g),
        Variant::MM => compile_mm(g).map(CompileOutcome::Formula),
        Variant::EA => compile_ea_co(g),
        Variant::SGG => Err(ReductionError::Unsupported(Variant::SGG)),
    }
}

/// `base`, primed until it avoids every name in `taken`.
pub(crate) fn fresh_name(base: String, taken: &BTreeSet<String>) -> String {
    let mut name = base;
    while taken.contains(&name) {
        name.push('\'');
    }
    name
}

/// Prefix ∃x1 ∀y1 ∃x2 … ∃x_ℓ (no trailing y).
pub(crate) fn alternating_prefix(l: usize, first: crate::logic::Quantifier) -> Vec<(crate::logic::Quantifier, String)> {
    let mut prefix = Vec::new();
    for i in 1..=l {
        prefix.push((first, format!("x{i}")));
        if i < l {
            prefix.push((first.dual(), format!("y{i}")));
        }
    }
    prefix
}

/// diff_i: the x's are pairwise distinct and each x_k avoids y_j for j < k.
pub(crate) fn diff(i: usize) -> builder::Scoped {
    let mut parts = Vec::new();
    for k in 1..=i {
        for j in 1..k {
            parts.push(builder::neq(&format!("x{j}"), &format!("x{k}")));
            parts.push(builder::neq(&format!("y{j}"), &format!("x{k}")));
        }
    }
    builder::and(parts)
}
