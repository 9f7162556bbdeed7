//! File formats, reports and the command line for `skein-core`.

pub mod fixtures;
pub mod report;
