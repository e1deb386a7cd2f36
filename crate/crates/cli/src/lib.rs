//! Command-line front end for `phaseprobe-core`.
//!
//! [`app::run`] is the whole CLI as a function from arguments to
//! [`app::Outcome`]; the `phaseprobe` binary only forwards to it.

pub mod app;
pub mod ensemble;
pub mod report;
