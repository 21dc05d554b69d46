//! Reconfiguration of edge-labelled triangulations of planar point sets.
//!
//! A flip replaces the diagonal of an empty convex quadrilateral by the other
//! diagonal and carries the edge label along. Labels move only within orbits,
//! the connected components of the quadrilateral graph, and per-label orbit
//! agreement is also sufficient: [`reconfigure`] decides feasibility and, when
//! feasible, builds an explicit flip sequence from elementary swaps (five-flip
//! label transpositions inside empty convex pentagons, conjugated by a walk
//! that brings the two labels there).
//!
//! The [`oracle`] module holds brute-force ground truth for small point sets.

pub mod cli;
pub mod error;
pub mod flippaths;
pub mod geometry;
pub mod oracle;
pub mod orbits;
pub mod reconfigure;
pub mod swaps;
pub mod triangulation;

pub use error::{Error, Result};
pub use geometry::{Edge, Point, PointSet};
pub use orbits::{OrbitPartition, QuadrilateralGraph};
pub use reconfigure::{feasible, reconfigure, Feasibility};
pub use triangulation::{FlipEvent, FlipSequence, Label, LabelledTriangulation, Triangulation};
