//! Schreier families, Cantor–Bendixson ranks of their closures, dyadic tree
//! indices, Tsirelson-type norms and oscillation indices of sequences of
//! indicator functions, computed exactly.
//!
//! The crate is `no_std` and needs only `alloc`. File formats and the
//! command-line front-end live in the companion `schreier` crate.

#![no_std]

extern crate alloc;

pub mod families;
pub mod indices;
pub mod finset;
pub mod norms;
pub mod ordinal;
pub mod trees;

pub use families::{BlockRule, FamilyError, FamilySpec};
pub use finset::FinSet;
pub use ordinal::{Ordinal, OrdinalKind};
