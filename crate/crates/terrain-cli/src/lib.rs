//! Command-line driver for `terrain-core`: the terrain file format, JSON
//! and CSV reports, SVG rendering and the `terrain` binary's subcommands.

pub mod app;
pub mod bench;
pub mod dump;
pub mod format;
pub mod render;
pub mod report;

pub use app::run;
