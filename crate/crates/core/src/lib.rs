//! Exact geometry, hole analysis, and SAT encodings for Erdős–Szekeres-type
//! hole problems.

pub mod combin;
pub mod geometry;
pub mod holes;
pub mod encoder;
pub mod harness;
pub mod search;
pub mod cli;
