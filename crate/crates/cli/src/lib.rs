//! Library half of the `berge` command-line tool: pattern specs, sweep
//! configuration, and the sweep engine itself. Kept out of `main.rs` so
//! the CSV output can be tested byte for byte.

pub mod pattern;
pub mod sweep;
