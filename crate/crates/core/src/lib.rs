//! Exact equivariant cohomology and genus-zero Gromov–Witten invariants of
//! GKM graphs, with quantum products and local Calabi–Yau BPS counts.

pub mod algebra;
pub mod cli;
pub mod cohomology;
pub mod connection;
pub mod curves;
pub mod cy;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod gw;
pub mod quantum;

pub use error::{Error, Result};
