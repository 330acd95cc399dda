//! File formats for the `it2fls` command-line tool: JSON system definitions
//! and CSV datasets. Split out from the binary so tests can exercise the
//! parsing and serialization logic directly.

pub mod dataset;
pub mod format;
