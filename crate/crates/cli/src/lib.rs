//! File formats, synthetic map generation, report serialization, and the
//! benchmark harness behind the `salpart` command-line tool. The actual
//! partitioning algorithms live in `salpart-core`; this crate adds
//! everything that needs the standard library.

pub mod bench;
pub mod formats;
pub mod report;
pub mod synth;

pub use salpart_core as core;
