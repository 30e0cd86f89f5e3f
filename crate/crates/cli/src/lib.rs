//! Command-line front end and verification suites for `derivimage-core`.

pub mod app;
pub mod cache;
pub mod json;
pub mod sampling;
pub mod scans;
pub mod text;
pub mod verify;
