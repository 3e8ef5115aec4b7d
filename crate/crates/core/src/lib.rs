//! Discrete undirected graphical models and tensor hypernetworks are two
//! readings of the same data: a hypergraph, a size per vertex and a tensor
//! per hyperedge is a graphical model, and the same sizes and tensors placed
//! on the dual hypergraph form a tensor hypernetwork. This crate implements
//! both families, the duality map between them, and uses the junction tree
//! algorithm to marginalize graphical models and contract tensor networks.

pub mod cli;
pub mod contract;
pub mod error;
pub mod graph;
pub mod hypergraph;
pub mod io;
pub mod junction;
pub mod model;
pub mod oracle;
pub mod scalar;
pub mod tensor;
pub mod zoo;

pub use error::{Error, Result};
pub use graph::SimpleGraph;
pub use hypergraph::{Hypergraph, IncidenceMatrix, SimplicialComplex};
pub use model::{GraphicalModel, TensorHypernetwork};
pub use scalar::{Field, Scalar};
pub use tensor::{Label, LabeledTensor};
