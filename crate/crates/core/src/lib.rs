//! Combinatorics of graphical properads: wiring graphs with legs, graph
//! substitution, the graphical category and its generalized Reedy structure,
//! free and finite colored properads, the properadic nerve, and presheaf-level
//! checkers for horns, inner-Kan conditions, and Segal maps.
//!
//! Everything is desk scale by design: graphs have a handful of vertices,
//! enumerations are exhaustive, and correctness is preferred over asymptotics.

pub mod gamma;
pub mod graph;
pub mod presheaf;
pub mod properad;
pub mod samples;
pub mod substitution;

pub use graph::{
    Biprofile, Color, Direction, Edge, EdgeEnd, EdgeId, GraphError, Port, Vertex, VertexId,
    WiringGraph,
};
pub use gamma::{GammaError, GammaMorphism, ReedyClassification};
pub use substitution::{
    codegeneracy, enumerate_cofaces_into, substitute, substitute_many, GeneratorKind,
    GeneratorMap, SubstitutionAssignment, SubstitutionError,
};
