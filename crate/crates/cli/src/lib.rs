//! Command-line front end for the thermoforge toolkit: configuration,
//! suite orchestration, report/plot/manifest emission, and frozen test
//! fixtures.

pub mod config;
pub mod fixtures;
pub mod manifest;
pub mod report;
pub mod runner;
pub mod suites;
pub mod svg;
