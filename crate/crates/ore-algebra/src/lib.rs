//! Exact symbolic computation in Ore extension rings R[x;sigma,delta].
//!
//! The crate provides:
//!
//! - exact base fields (Q and F_p) and dense exact linear algebra,
//! - a catalog of coefficient rings with canonical normal forms,
//! - validated endomorphisms and twisted derivations,
//! - Ore polynomial arithmetic driven by the commutation rule
//!   `x r = sigma(r) x + delta(r)`,
//! - truncated centralizer / center / constants solvers with re-verified
//!   bases,
//! - simplicity analysis: invariant-ideal witnesses and replayable
//!   certificates that express 1 in the two-sided ideal of a given element.
//!
//! All arithmetic is exact; nothing in this crate uses floating point.

pub mod catalog;
pub mod error;
pub mod linalg;
pub mod maps;
mod poly;
pub mod ore;
pub mod ring;
pub mod scalar;
pub mod simplicity;
pub mod structure;

pub use error::{OreError, Result};
