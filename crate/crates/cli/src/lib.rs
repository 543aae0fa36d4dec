//! Library surface of the CLI: the matroid/plan file formats and the report
//! types, shared between the binary and its integration tests.

pub mod format;
pub mod report;
