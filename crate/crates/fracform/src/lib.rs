//! File formats, parallel sweeps and the `fracform` command line on top of
//! [`fracform_core`].

pub mod cli;
pub mod explain;
pub mod format;
pub mod report;
pub mod sweep;
