//! A sequent-calculus proof kernel for first-order logic in three modes
//! (classical, intuitionistic, minimal), together with a checked
//! transformation of classical derivations of geometric implications in
//! geometric theories into intuitionistic derivations.
//!
//! The calculus follows the Gentzen/Takeuti presentation: antecedents and
//! succedents are *sequences* of formulas with explicit structural rules,
//! falsum `bot` is a propositional constant with the axiom scheme
//! `Γ, bot ⇒ Δ`, and a reserved propositional constant `E` acts as a
//! substitutable placeholder. Derivations are plain trees of rule
//! applications; [`calculus::check`] re-validates every node, so everything
//! the builder modules produce can be independently audited.
//!
//! The transformation pipeline ([`pipeline::barr_transform`]) never performs
//! cut elimination; it combines a placeholder-based double-negation
//! translation of whole derivations with embedding derivations for the
//! syntactic classes computed by [`classes::classify`], so proof size grows
//! polynomially rather than superexponentially.

pub mod bench;
pub mod calculus;
pub mod classes;
pub mod combinators;
pub mod corpus;
mod gadgets;
pub mod pipeline;
pub mod sexp;
pub mod substitution;
pub mod syntax;
pub mod translation;

pub use calculus::{check, size, Derivation, Mode, RuleTag, Sequent, SizeReport, Theory};
pub use classes::{classify, validate_theory, ClassMembership, TheoryRequirement};
pub use syntax::{Formula, Signature, Term};

use std::fmt;

/// Errors reported by parsing and by the derivation-building operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Concrete-syntax error with a byte position into the source text.
    Parse { pos: usize, msg: String },
    /// A precondition on an operation's input was violated.
    Input(String),
    /// An internal consistency check failed. These indicate a bug in a
    /// builder, never bad user input, and are surfaced loudly on purpose.
    Internal(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Parse { pos, msg } => write!(f, "syntax error at byte {pos}: {msg}"),
            Error::Input(msg) => write!(f, "invalid input: {msg}"),
            Error::Internal(msg) => write!(f, "internal error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Error {
        Error::Parse { pos, msg: msg.into() }
    }

    pub(crate) fn input(msg: impl Into<String>) -> Error {
        Error::Input(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Error {
        Error::Internal(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
