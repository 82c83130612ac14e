//! Combinatorial analysis of self-similar dendrites through their sprouts.
//!
//! A sprout is a finite bipartite tree recording how the first-level copies of
//! a post-critically finite attractor meet. Everything here (boundary points,
//! addresses, the main tree and its ramification orders) is computed from
//! that tree alone; the [`geometry`] module extracts a sprout from a planar
//! affine system.

pub mod address;
pub mod canon;
pub mod diagram;
pub mod error;
pub mod fixtures;
pub mod geometry;
pub mod gt;
pub mod main_tree;
pub mod phi;
pub mod random;
pub mod refine;
pub mod sprout;

pub use address::{Address, Word};
pub use diagram::{index_diagram, AddressClass, AddressSetClass, Admissibility, IndexDiagram};
pub use error::{AnalysisError, GeometryError, ParseError};
pub use phi::{BoundaryMap, BoundarySubset, PhiDynamics};
pub use sprout::{BlackId, Edge, PointId, Sprout, SproutDocument, ValidationReport, Vertex, WhiteId};
