//! A laboratory for evaluation strategies of the pure lambda calculus.
//!
//! One generic eval-apply evaluator and one generic readback evaluator are
//! instantiated from compact strategy encodings (uniform triples, hybrid
//! triple pairs and readback pairs). On top of them sit a notation layer that
//! validates and fuses encodings, and a differential checker that compares
//! strategies contraction by contraction over generated corpora.

pub mod corpus;
pub mod engine;
pub mod equiv;
pub mod factorial;
pub mod notation;
pub mod term;

pub use engine::{derivation_tree, eval, eval_with, EvalError, Limits, Outcome, Status, TraceEvent, DEFAULT_FUEL};
pub use equiv::{compare, CompareVerdict, VerdictKind};
pub use notation::{parse_spec, StrategySpec};
pub use term::{parse_term, Term};

/// Run `f`, first growing the stack onto the heap if it is nearly exhausted.
/// Every recursive traversal goes through here, so nesting depth is bounded
/// by memory rather than by the native stack.
#[inline]
pub(crate) fn deep<R>(f: impl FnOnce() -> R) -> R {
    stacker::maybe_grow(128 * 1024, 8 * 1024 * 1024, f)
}
