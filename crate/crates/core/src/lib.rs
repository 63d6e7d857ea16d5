//! Dominating-set reconfiguration graphs for small seed graphs.
//!
//! Builds `D_k(G)`, decides whether it is Eulerian, extracts Euler circuits
//! and verifies the known Eulerian characterizations exhaustively on small
//! instances.

pub mod cli;
pub mod domination;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod reconfig;
pub mod spec_string;
pub mod theorems;

pub use error::{Error, Result};
