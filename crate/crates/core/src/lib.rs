//! Finite semigroups and their extensions by rank-bounded symmetric
//! inverse semigroups.
//!
//! The crate builds `I_λ^n(S)`, the semigroup of partial bijections of a
//! `λ`-point set of rank at most `n` whose mapped pairs carry labels from a
//! finite semigroup `S`, and checks its structure (idempotents, regularity,
//! Green's relations, the zero-label congruence, ideal series) against
//! brute-force computations on the materialized Cayley table.

pub mod bicyclic;
pub mod cayley;
pub mod cli;
pub mod eggbox;
pub mod error;
pub mod extension;
pub mod green;
pub mod green_ext;
pub mod perm;
pub mod pinj;
pub mod semigroup;
pub mod series;
pub mod verify;
pub mod zoo;

pub use error::{Error, Result};
pub use extension::{ExtElement, ExtensionSemigroup, Materialized, Triple};
pub use green::{green, GreenRelation, GreenStructure, Partition};
pub use pinj::PartialInjection;
pub use semigroup::{DirectPower, FiniteSemigroup, Regularity, Stability};
pub use series::IdealSeries;

/// Upper bound on the number of elements any operation may materialize.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SizeGuard(usize);

impl SizeGuard {
    pub const DEFAULT_LIMIT: usize = 20_000;
    pub const ENV_VAR: &'static str = "SEMIEXT_SIZE_GUARD";

    pub fn new(limit: usize) -> Self {
        SizeGuard(limit.max(1))
    }

    /// Default limit, overridden by `SEMIEXT_SIZE_GUARD` when it parses.
    pub fn from_env() -> Self {
        std::env::var(Self::ENV_VAR)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map(SizeGuard::new)
            .unwrap_or_default()
    }

    pub fn limit(&self) -> usize {
        self.0
    }

    pub fn check(&self, requested: u128) -> Result<()> {
        if requested > self.0 as u128 {
            Err(Error::SizeGuardExceeded { requested, limit: self.0 })
        } else {
            Ok(())
        }
    }
}

impl Default for SizeGuard {
    fn default() -> Self {
        SizeGuard(Self::DEFAULT_LIMIT)
    }
}
