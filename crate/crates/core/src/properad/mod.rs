//! Free graphical properads, finite colored properads, and the properadic
//! nerve.
//!
//! A finite properad stores composition only on partially grafted corolla
//! shapes; every other composite is derived by repeated contraction, which
//! is well defined because graph substitution is associative and unital.

mod axioms;
mod build;
mod finite;
mod free;
mod json;
mod nerve;

pub use axioms::enumerate_decorated_pgcs;
pub use build::{
    graded_properad, monoid_catalog, random_properad, terminal_properad, GradedSpec, SmallMonoid,
};
pub use finite::{FiniteProperad, OpId, PgcEntry, PropDecoration};
pub use free::{free_elements, free_elements_all, FreeElement};
pub use json::{from_json, to_json};
pub use nerve::{nerve, nerve_restrict};

#[cfg(test)]
pub(crate) use axioms::unit_graft;

use crate::graph::{Color, Direction};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProperadError {
    #[error("unknown color `{0}`")]
    UnknownColor(Color),
    #[error("unknown operation `{0}`")]
    UnknownOp(OpId),
    #[error("operation `{0}` declared in more than one biprofile cell")]
    DuplicateOp(OpId),
    #[error("color `{0}` has no unit")]
    MissingUnit(Color),
    #[error("{direction} transposition {index} undefined on `{op}`")]
    SwapMissing {
        op: OpId,
        direction: Direction,
        index: usize,
    },
    #[error("arity ({},{}) exceeds the declared bound ({},{})", got.0, got.1, max.0, max.1)]
    ArityOverflow {
        got: (usize, usize),
        max: (usize, usize),
    },
    #[error("composition table incomplete: {0}")]
    CompositionMissing(String),
    #[error("bad decoration: {0}")]
    BadDecoration(String),
    #[error("properad input rejected: {0}")]
    ParseFailed(String),
    #[error(transparent)]
    Gamma(#[from] crate::gamma::GammaError),
}
