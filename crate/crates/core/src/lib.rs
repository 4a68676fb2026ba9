//! Duality between vertex graphs and edge graphs of directed graphs.
//!
//! A 0/1 relation matrix can be read either as the vertex adjacency of a
//! graph `G` or as the arc adjacency of an edge graph `H` (so that `G` is the
//! line digraph of `H`). This crate decides when both readings are possible,
//! normalizes arbitrary matrices into that form by arc subdivision, converts
//! between edge and vertex graphs, classifies how the cyclomatic number
//! evolves under repeated converting, and counts Hamilton cycles through the
//! duality.

pub mod classify;
pub mod convert;
pub mod digraph;
pub mod duality;
pub mod error;
pub mod format;
pub mod gen;
pub mod hamilton;
pub mod matrix;
pub mod normalize;

pub use classify::{classify_graph, delta_nu, predict_growth, ClassReport, GraphClass};
pub use convert::{
    iterate_convert, reverse_convert, straight_convert, AugmentMode, ConvertOptions, ConvertTrace,
};
pub use digraph::{cyclomatic_number, degrees, Arc, DegreeProfile, Digraph, VertexId};
pub use duality::{is_canonical, is_quasi_canonical, DualityVerdict};
pub use error::{
    ConvertError, DualityError, GraphError, HamiltonError, NormalizeError, ParseError,
};
pub use matrix::{Role, RoleMatrix};
pub use normalize::{normalize_canonical, quasi_normalize, NormalizationReport};
