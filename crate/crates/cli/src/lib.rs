//! IO companion to `emptri-core`: the point-file format, graph export
//! formats, and report serialization used by the `emptri` binary.

pub mod formats;
pub mod pointfile;
