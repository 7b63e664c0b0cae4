//! Orthogonal tree decompositions.
//!
//! Builds, validates and measures pairs of decompositions with bounded bag
//! intersections, compresses them into treewidth and separator certificates,
//! lifts decompositions through planarisations of curve arrangements and
//! drawings, and hunts cliques in rectangle and box intersection graphs.

pub mod compress;
pub mod constructions;
pub mod decomp;
pub mod error;
pub mod graph;
pub mod io;
pub mod oracles;
pub mod planarize;
pub mod rects;

pub use error::{Error, ErrorKind, Result};
