//! Desk-scale computational models of MV-algebras and EMV-algebras.
//!
//! The crate provides finite MV-algebras given by tables, several backends
//! for (possibly top-less) EMV-algebras — finite tables, finitely-supported
//! direct sums, the algebra of finite subsets of the naturals — and the
//! partial-morphism calculus on top of them: validation of morphism families,
//! similarity, composition, standardness, kernels, quotients, products, and
//! lifts out of free algebras. Everything infinite is probed through bounded,
//! deterministic enumerations; checks return [`Verdict`]s that say whether
//! they were exhaustive.
//!
//! ## Design
//!
//! * Elements are plain data ([`Elem`]); each algebra value interprets them.
//! * Checks never assume lawfulness of their inputs: axiom checkers exist for
//!   every structure, and failing checks carry replayable witnesses.
//! * Any operation that searches an infinite carrier takes a `level` bound and
//!   reports `pass-up-to-bound` instead of `pass` when it could not finish.

pub mod category;
pub mod congruence;
pub mod doc;
pub mod emv;
pub mod free;
pub mod morphism;
pub mod mv;
pub mod suite;
pub mod verdict;

pub use emv::{DirectSumEmv, Elem, Emv, FinSetBooleanEmv, FinSupp, ProductEmv, TableEmv, UnitElem, UnitizedMv};
pub use free::FreeMv;
pub use morphism::{EmvMorphism, StrongEmvHom};
pub use mv::{FiniteMvAlgebra, MvTerm};
pub use verdict::{DecidedBy, Report, Status, Verdict, Witness};

/// Default enumeration bound: direct sums are probed on their first four
/// coordinates, finite-set algebras on subsets of `{1..4}`, and so on.
pub const DEFAULT_BOUND: u32 = 4;

/// Reads `EMVKIT_BOUND` if set and sane, else [`DEFAULT_BOUND`].
pub fn env_bound() -> u32 {
    match std::env::var("EMVKIT_BOUND") {
        Ok(s) => s.trim().parse().ok().filter(|b| (1..=16).contains(b)).unwrap_or(DEFAULT_BOUND),
        Err(_) => DEFAULT_BOUND,
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Malformed construction data: ragged tables, out-of-range indices,
    /// undersized carriers, entries that are not interval homomorphisms.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// Structurally fine input used outside its domain (e.g. λ of an element
    /// not below the given idempotent).
    #[error("domain error: {0}")]
    Domain(String),
    /// A bounded search ran out of room before it could decide.
    #[error("bound exhausted: {0}")]
    BoundExhausted(String),
    /// The operation is not defined for this backend at all.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// A documented precondition of the operation does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
