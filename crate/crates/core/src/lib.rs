//! Exact combinatorics of empty triangles in planar point sets.
//!
//! Everything here reduces to integer arithmetic: points live on a bounded
//! integer grid and every geometric decision is the sign of a small-degree
//! determinant, so the counts and graphs this crate produces are exact.
//!
//! The crate is `no_std` + `alloc`; IO, file formats, and the command-line
//! front end live in the companion `emptri` crate.

#![cfg_attr(not(any(test, feature = "std")), no_std)]

extern crate alloc;

pub mod experiments;
pub mod extremal;
pub mod generators;
pub mod geom;
pub mod graph;
pub mod realizability;
pub mod triangles;

pub use geom::{Orientation, Point, PointSet, TrianglePosition, ValidationReport};
pub use graph::{Graph, IncidenceGraph};
pub use triangles::{CountsReport, EmptyTriangleSet, Triangle};
