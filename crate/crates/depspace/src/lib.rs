//! Finite dependence spaces: a ground set together with a family of
//! directly dependent subsets, each of size at least two.
//!
//! From the family the crate derives the dependence relation between
//! elements and subsets, one-step and iterated span, independence, and
//! bases, and verifies structural properties exhaustively: the
//! transitivity axiom (by direct scan and by span idempotence), the
//! exchange lemma, and the exchange of independent sets, reporting a
//! canonical first counterexample in scan order whenever one exists.
//! Instance generators produce spaces from uniform, graphic (cycle),
//! and binary (GF(2) column) matroids alongside rank oracles computed
//! by independent means, plus seeded pseudorandom families. A canonical
//! JSON document format with a content hash makes runs reproducible.
//!
//! Ground sets are capped at 64 elements so subsets are single machine
//! words; the exhaustive scans carry much tighter per-operation limits.

pub mod axioms;
pub mod document;
pub mod error;
pub mod instances;
pub mod properties;
mod scan;
pub mod space;

#[cfg(test)]
pub(crate) mod testutil;

pub use error::Error;
pub use space::{MAX_GROUND, Space, Subset};
