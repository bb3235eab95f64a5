//! Exact combinatorics of permutation shapes and inversions.
//!
//! The insertion algorithm pairs every permutation with a partition,
//! its shape; this crate studies how the inversion statistic spreads
//! over a fixed shape class. It provides:
//!
//! - [`partition`]: partitions, conjugates, frequency notation,
//!   multinomials, and colored-partition counting and enumeration;
//! - [`permutation`]: one-line permutations with inversion counting,
//!   longest monotone subsequences, and the K±/KD± move families;
//! - [`tableau`]: row insertion, the permutation ↔ tableau-pair
//!   bijection, and shapes;
//! - [`minimal`]: layered permutations, the minimum inversion count of
//!   a shape class, and the layered-structure recognizer;
//! - [`jump`]: inner/outer jump partitions acting on layered
//!   permutations, enumeration, validity, and the two-column
//!   decomposition;
//! - [`oracle`]: exhaustive sweeps of S_n bucketed by (shape, excess),
//!   restricted shape-class sweeps, and verification reports comparing
//!   observed counts against the closed forms.

pub mod error;
pub mod jump;
pub mod minimal;
pub mod oracle;
pub mod partition;
pub mod permutation;
pub mod tableau;

pub use error::{Error, Result};

/// Crate version, embedded in shape tables for cache validation.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
