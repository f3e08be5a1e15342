//! Invariants of Lefschetz fibrations presented by monodromy words or by charts.
//!
//! The pipeline runs from generator words ([`words`]) through their symplectic
//! images ([`symplectic`]) to the signature cocycle ([`meyer`]) and the local
//! signature of a factorization ([`signature`]). Charts ([`chart`]) carry the
//! same data as a labeled graph in the base surface; [`moves`] rewrites them and
//! [`classifier`] decides stable equivalence from the invariant tuple.

pub mod chart;
pub mod classifier;
pub mod cli;
pub mod error;
pub mod formats;
pub mod linalg;
pub mod meyer;
pub mod moves;
pub mod signature;
pub mod symplectic;
pub mod words;

pub use error::{Error, Result};
