//! Morphisms of graphical properads and the graphical category.
//!
//! A morphism is an edge function together with an assignment of decorated
//! graphs to vertices; it belongs to the graphical category exactly when its
//! image is a subgraph of the target. The category carries a dualizable
//! generalized Reedy structure: degree is vertex count, positive maps are
//! injective on edges, negative maps are surjective on edges with every
//! target vertex hit by a corolla.

mod decorated;
mod hom;
mod morphism;
mod reedy;

pub use decorated::{reorder_boundary, DecoratedGraph, GammaDecoration};
pub use hom::{hom_set, is_subgraph_set, subgraphs, HomContext, Subgraph};
pub use morphism::{identity_decoration, iso_to_morphism, GammaMorphism, MorphismValidity};
pub use reedy::{reedy_factorize, ReedyClassification};

use crate::graph::{EdgeId, GraphError, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GammaError {
    #[error("edge `{0}` of the source has no image")]
    EdgeMapNotTotal(EdgeId),
    #[error("edge map sends `{0}` outside the target")]
    UnknownTargetEdge(EdgeId),
    #[error("vertex `{0}` of the source has no decorated graph")]
    VertexMapNotTotal(VertexId),
    #[error("decoration at vertex `{vertex}` is incompatible: {reason}")]
    IncompatibleDecoration { vertex: VertexId, reason: String },
    #[error("decorated graph at `{vertex}` does not have boundary profile ({expected_in};{expected_out})")]
    ProfileMismatch {
        vertex: VertexId,
        expected_in: String,
        expected_out: String,
    },
    #[error("target of the first morphism differs from source of the second")]
    BoundaryMismatch,
    #[error("morphism is not in the graphical category: {0}")]
    InvalidMorphism(String),
    #[error(transparent)]
    Substitution(#[from] crate::substitution::SubstitutionError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[cfg(test)]
mod tests;
