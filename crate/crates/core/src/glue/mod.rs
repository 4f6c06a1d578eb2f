//! Montagovian glue: lexicons, sentence trees, composition and coercions.

pub mod coercion;
pub mod compose;
pub mod lexicon;
pub mod tree;

use thiserror::Error;

pub use coercion::{apply_coercion, coercion_mode, lift_raising, CoercionError, CoercionMode};
pub use compose::{compose, compose_typed, infer_instantiation, ComposeError, InstantiationError};
pub use lexicon::{check_lexicon, load_lexicon, Coercion, EntryKind, EntryReport, Lexicon, LexiconError};
pub use tree::{parse_tree, SentenceTree};

use crate::kernel::parse::ParseError;
use crate::kernel::reduce::{normalize, FuelExhausted};
use crate::kernel::typing::Context;
use crate::readback::{readback_formula, Formula, ReadbackError};

/// A road seen as the traveller following it, who is tired.
pub const DEMO_SENTENCE: &str = "(tired this_road@traveller)";

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Compose(#[from] ComposeError),
    #[error(transparent)]
    Fuel(#[from] FuelExhausted),
    #[error(transparent)]
    Readback(#[from] ReadbackError),
}

/// Composes, normalizes and reads back a tree, returning the formula and
/// the number of reduction steps.
pub fn sentence_formula(lex: &Lexicon, tree: &SentenceTree) -> Result<(Formula, u64), PipelineError> {
    let term = compose(lex, tree)?;
    let normal = normalize(&Context::new(lex.signature()), &term)?;
    Ok((readback_formula(lex.signature(), &normal.term)?, normal.steps))
}

/// Reads [`DEMO_SENTENCE`]: the lexicon's `traveller` coercion maps the path
/// `this_road` to the human chosen by `tau{human}` among those following it.
pub fn virtual_traveller_demo(lex: &Lexicon) -> Result<Formula, PipelineError> {
    let tree = parse_tree(DEMO_SENTENCE, Some(lex.signature()))?;
    Ok(sentence_formula(lex, &tree)?.0)
}
