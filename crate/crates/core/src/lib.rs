//! k-critical (P5, co-P5)-free graphs: enumeration up to isomorphism and a
//! certifying k-colorability algorithm.
//!
//! Every k-critical graph of the class is either the join of two smaller
//! critical graphs or a buoy whose five bags are smaller critical graphs.
//! [`enumeration`] builds the families level by level from those two
//! constructions; [`certify`] answers k-colorability with either a coloring
//! or a critical induced subgraph that appears in the family listing.

pub mod canon;
pub mod certify;
pub mod coloring;
pub mod enumeration;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod lemmas;
pub mod recognition;

pub use canon::{canonical_form, canonical_key, CanonicalForm};
pub use coloring::{Coloring, Pattern};
pub use error::{Error, Result};
pub use graph::{Graph, VertexSet, MAX_VERTICES};
