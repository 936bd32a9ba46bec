//! Manifest files, structured reports and the command pipelines behind the
//! `conformal-kernel` binary.

pub mod build;
pub mod commands;
pub mod manifest;
pub mod report;
pub mod runner;
