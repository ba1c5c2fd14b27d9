//! File formats, the result cache, verification suites and report output
//! for `signfam-core`.

pub mod cache;
pub mod io;
pub mod report;
pub mod suites;
