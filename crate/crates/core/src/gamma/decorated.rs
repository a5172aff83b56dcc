//! Graphs decorated over another structure.

use crate::graph::{
    canonical_form_labeled, Direction, EdgeEnd, EdgeId, Labels, VertexId, WiringGraph,
};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Display;

/// A wiring graph whose edges and vertices carry decorations. Edge
/// decorations play the role of colors drawn from a target structure;
/// vertex decorations name target vertices or properad operations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecoratedGraph<E, V> {
    pub shape: WiringGraph,
    #[serde(rename = "edge_decoration")]
    pub edges: BTreeMap<EdgeId, E>,
    #[serde(rename = "vertex_decoration")]
    pub vertices: BTreeMap<VertexId, V>,
}

/// Decorations over a wiring graph: edges name target edges, vertices name
/// target vertices.
pub type GammaDecoration = DecoratedGraph<EdgeId, VertexId>;

impl<E: Display + Ord + Clone, V: Display + Ord + Clone> DecoratedGraph<E, V> {
    pub fn new(
        shape: WiringGraph,
        edges: BTreeMap<EdgeId, E>,
        vertices: BTreeMap<VertexId, V>,
    ) -> Self {
        DecoratedGraph {
            shape,
            edges,
            vertices,
        }
    }

    fn labels(&self) -> Labels {
        Labels {
            vertex: self
                .vertices
                .iter()
                .map(|(k, v)| (k.clone(), v.to_string()))
                .collect(),
            edge: self
                .edges
                .iter()
                .map(|(k, v)| (k.clone(), v.to_string()))
                .collect(),
        }
    }

    /// Canonical key up to decoration-respecting weak isomorphism.
    pub fn canonical_key(&self) -> String {
        canonical_form_labeled(&self.shape, &self.labels())
    }

    /// Equality up to decoration-respecting weak isomorphism of shapes.
    pub fn equivalent(&self, other: &Self) -> bool {
        self.canonical_key() == other.canonical_key()
    }

    /// Decoration of the edge at a vertex port.
    pub fn port_decoration(&self, v: &VertexId, dir: Direction, index: usize) -> Option<&E> {
        self.shape.edge_at(v, dir, index).and_then(|e| self.edges.get(&e.id))
    }

    /// Decorations along the shape boundary, in slot order.
    pub fn boundary_decorations(&self) -> (Vec<&E>, Vec<&E>) {
        let grab = |ids: &[EdgeId]| ids.iter().map(|id| &self.edges[id]).collect::<Vec<_>>();
        (grab(self.shape.inputs()), grab(self.shape.outputs()))
    }
}

/// Rebuild a graph with its boundary slots permuted into the given orders.
/// Both lists must enumerate exactly the current boundary edges.
pub fn reorder_boundary(g: &WiringGraph, inputs: &[EdgeId], outputs: &[EdgeId]) -> WiringGraph {
    assert_eq!(inputs.len(), g.inputs().len());
    assert_eq!(outputs.len(), g.outputs().len());
    let in_slot: BTreeMap<&EdgeId, usize> =
        inputs.iter().enumerate().map(|(i, id)| (id, i + 1)).collect();
    let out_slot: BTreeMap<&EdgeId, usize> =
        outputs.iter().enumerate().map(|(i, id)| (id, i + 1)).collect();
    let edges = g
        .edges()
        .map(|e| {
            let mut e2 = e.clone();
            if e2.tail.is_slot() {
                e2.tail = EdgeEnd::Slot(in_slot[&e.id]);
            }
            if e2.head.is_slot() {
                e2.head = EdgeEnd::Slot(out_slot[&e.id]);
            }
            e2
        })
        .collect();
    WiringGraph::new(
        g.vertices().cloned().collect(),
        edges,
        inputs.to_vec(),
        outputs.to_vec(),
    )
    .expect("reordered boundary is well formed")
}
