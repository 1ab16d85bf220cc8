//! Finite (r,q)-polycycles: plane clusters of r-gons in which every interior
//! vertex has degree q.

pub mod catalog;
pub mod embedding;
pub mod enumeration;
pub mod extremal;
pub mod graph;
pub mod homomorphism;
pub mod kernel;
pub mod map;
pub mod pmap;
pub mod polycycle;
pub mod recognition;
pub mod render;
pub mod subgraph;
pub mod symmetry;
pub mod tessellation;

pub use graph::Graph;
pub use map::{CanonicalForm, Dart, Flag, FlagMove, PlaneMap};
pub use polycycle::Polycycle;
pub use tessellation::{geometry_class, Geometry, TessellationPatch};
