//! A small language for σ-algebra identities.
//!
//! Scripts declare spaces and variables, optionally pin variables to
//! partition literals, and state checks such as
//! `check (A*F)^(A*G) == A*(F^G)`. `*`, `^` and `|` are product, meet and
//! join, binding in that order.

use thiserror::Error;

use crate::error::SpaceError;

pub mod ast;
pub mod eval;
pub mod mine;
pub mod parser;
pub mod typecheck;

pub use ast::{Check, Expr, Pos, Relation, Script, Spanned, Statement};
pub use eval::{check, evaluate, run_checks, Env, Evaluated};
pub use mine::{
    default_max_size, mine, Certificate, Counterexample, MineOptions, MineResult, SearchMode,
};
pub use parser::{parse, parse_expr};
pub use typecheck::{typecheck, SpaceTy, TypedCheck, TypedScript};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DslError {
    #[error("{pos}: expected {expected}, found {found}")]
    Syntax {
        pos: Pos,
        expected: String,
        found: String,
    },
    #[error("{pos}: {message}")]
    Type { pos: Pos, message: String },
    #[error("unassigned variable `{0}`")]
    Unassigned(String),
    #[error("unknown space `{0}`")]
    UnknownSpace(String),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error("{0}")]
    Usage(String),
}

/// Parses and typechecks in one step.
pub fn load(text: &str) -> Result<TypedScript, DslError> {
    typecheck(&parse(text)?)
}
