//! Exact computation of resultant polytopes and their projections from an
//! output-sensitive vertex oracle.

pub mod cayley;
pub mod cli;
pub mod error;
pub mod exactlin;
pub mod geometry;
pub mod oracle;
pub mod reconstruct;

pub use error::{Error, Result};
