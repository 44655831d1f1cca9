//! Exact computation of c-nilpotent multipliers of finite abelian groups.
//!
//! The crate is organised bottom-up:
//!
//! - [`hallbasis`]: Möbius function, Witt formula and Hall basic commutators.
//! - [`abelian`]: cyclic decompositions, invariant factors, primary parts and
//!   integer partitions standing in for abelian p-groups.
//! - [`multiplier`]: the closed-form structure of `M^(c)(G)` for abelian `G`.
//! - [`oracle`]: brute-force cross-checks (Lyndon words, direct-product Schur
//!   multiplier) that share no code path with the formulas above.
//! - [`classify`]: exhaustive scans of the order bound, the classification of
//!   groups by multiplier order, and the auxiliary inequalities, reported
//!   case-by-case rather than assumed.

pub mod abelian;
pub mod classify;
mod error;
pub mod hallbasis;
pub mod multiplier;
pub mod oracle;

pub use error::{Error, Result};
