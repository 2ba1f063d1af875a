//! Exact arithmetic for double coset (Hecke-type) operators acting on
//! eta-quotients.
//!
//! The crate provides:
//!
//! * number-theoretic primitives: Kronecker symbols, Moebius/sigma functions,
//!   square-part radicals and quadratic Gauss sums ([`arith`]);
//! * the metaplectic double cover of `GL(2)+`: sign cocycle, composition,
//!   coset representatives and a verified triangular decomposition
//!   ([`metaplectic`]);
//! * eta multiplier systems, real Dirichlet twists and the closed-form
//!   compatibility test that decides when a double coset operator maps one
//!   eta-character to another ([`characters`]);
//! * exact q-expansions on the 1/24-integral lattice, eta-power and
//!   eta-quotient coefficients, cusp orders and Sturm-type certification
//!   budgets ([`qseries`]);
//! * the operators themselves: coefficient-filter action, level-one
//!   eta-power action with its two independent evaluation paths, and
//!   Newman-style coefficient recursions ([`heckeops`]);
//! * enumeration of holomorphic eta-quotients in one-dimensional spaces and
//!   the search for admissible operator indices ([`search`]);
//! * an algorithm expressing sub-progressions of eta-power coefficients as
//!   linear combinations of eta-quotients, with certified verification and
//!   LaTeX/JSON emission ([`express`]).
//!
//! Run `cargo run -p etaops -- --help` for the command line interface, or
//! look at the `examples/` directory: each major capability has a runnable
//! example (`cargo run -p etaops --example <name>`).

pub mod arith;
pub mod characters;
pub mod cli;
pub mod express;
pub mod fixedpoint;
pub mod heckeops;
pub mod metaplectic;
pub mod qseries;
pub mod search;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum EtaError {
    /// A caller-supplied argument violates a documented precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// The requested computation is outside the supported domain.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// A verification step failed; the payload describes the witness.
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    /// An external resource (cache file, output path) failed.
    #[error("resource error: {0}")]
    Resource(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, EtaError>;
