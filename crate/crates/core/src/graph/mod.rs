//! Wiring graphs: connected, directed, acyclic graphs that admit legs.
//!
//! A wiring graph carries an ordered list of input legs and output legs, and
//! every vertex has ordered input and output ports. Each port is hit by
//! exactly one edge endpoint. Edges may optionally carry colors; a coloring,
//! when present, must be total.
//!
//! The two degenerate shapes both count as graphs here: the exceptional edge
//! (one edge, no vertices) and the isolated vertex with no edges.

mod builders;
mod canonical;
mod enumerate;
mod iso;
mod random;
mod text;
mod validate;

pub use builders::PgcSpec;
pub use canonical::{canonical_form, canonical_form_labeled, Labels};
pub use enumerate::enumerate_graphs;
pub use iso::{find_isomorphisms, find_isomorphisms_labeled, weakly_isomorphic, GraphIso, IsoMode};
pub use random::{random_graph, random_guest, RandomGraphParams};
pub use text::{parse_graph, print_graph, ParseError};
pub use validate::{ValidationReport, Violation};

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

macro_rules! id_type {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(
            Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
        )]
        #[serde(transparent)]
        pub struct $name(String);

        impl $name {
            pub fn new(s: impl Into<String>) -> Self {
                Self(s.into())
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl From<&str> for $name {
            fn from(s: &str) -> Self {
                Self(s.to_owned())
            }
        }

        impl From<String> for $name {
            fn from(s: String) -> Self {
                Self(s)
            }
        }
    };
}

id_type!(
    /// Opaque vertex identifier.
    VertexId
);
id_type!(
    /// Opaque edge identifier. Edge identity is by id, not by endpoints, so
    /// parallel edges are representable.
    EdgeId
);
id_type!(
    /// An edge color. Colors compare by label only.
    Color
);

/// Port direction on a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Input,
    Output,
}

impl Direction {
    pub fn flip(self) -> Direction {
        match self {
            Direction::Input => Direction::Output,
            Direction::Output => Direction::Input,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Direction::Input => f.write_str("in"),
            Direction::Output => f.write_str("out"),
        }
    }
}

/// A port on a vertex: direction plus 1-based ordinal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Port {
    pub vertex: VertexId,
    pub direction: Direction,
    pub index: usize,
}

/// One end of an edge: either a 1-based boundary slot of the ambient graph or
/// a vertex port. Tail ports are output ports; head ports are input ports.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeEnd {
    Slot(usize),
    Port(Port),
}

impl EdgeEnd {
    pub fn vertex(&self) -> Option<&VertexId> {
        match self {
            EdgeEnd::Slot(_) => None,
            EdgeEnd::Port(p) => Some(&p.vertex),
        }
    }

    pub fn is_slot(&self) -> bool {
        matches!(self, EdgeEnd::Slot(_))
    }
}

/// A directed edge. An edge whose tail and head are both slots is an
/// exceptional edge, legal only in the vertex-free graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub id: EdgeId,
    pub tail: EdgeEnd,
    pub head: EdgeEnd,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub color: Option<Color>,
}

impl Edge {
    /// Internal edge from `tail_vertex`'s output port to `head_vertex`'s input port.
    pub fn between(
        id: impl Into<EdgeId>,
        tail: (impl Into<VertexId>, usize),
        head: (impl Into<VertexId>, usize),
    ) -> Edge {
        Edge {
            id: id.into(),
            tail: EdgeEnd::Port(Port {
                vertex: tail.0.into(),
                direction: Direction::Output,
                index: tail.1,
            }),
            head: EdgeEnd::Port(Port {
                vertex: head.0.into(),
                direction: Direction::Input,
                index: head.1,
            }),
            color: None,
        }
    }

    /// Input leg: from graph-input slot `slot` to a vertex input port.
    pub fn from_input(id: impl Into<EdgeId>, slot: usize, head: (impl Into<VertexId>, usize)) -> Edge {
        Edge {
            id: id.into(),
            tail: EdgeEnd::Slot(slot),
            head: EdgeEnd::Port(Port {
                vertex: head.0.into(),
                direction: Direction::Input,
                index: head.1,
            }),
            color: None,
        }
    }

    /// Output leg: from a vertex output port to graph-output slot `slot`.
    pub fn to_output(id: impl Into<EdgeId>, tail: (impl Into<VertexId>, usize), slot: usize) -> Edge {
        Edge {
            id: id.into(),
            tail: EdgeEnd::Port(Port {
                vertex: tail.0.into(),
                direction: Direction::Output,
                index: tail.1,
            }),
            head: EdgeEnd::Slot(slot),
            color: None,
        }
    }

    /// Exceptional edge: graph-input slot to graph-output slot.
    pub fn exceptional(id: impl Into<EdgeId>, in_slot: usize, out_slot: usize) -> Edge {
        Edge {
            id: id.into(),
            tail: EdgeEnd::Slot(in_slot),
            head: EdgeEnd::Slot(out_slot),
            color: None,
        }
    }

    pub fn colored(mut self, color: impl Into<Color>) -> Edge {
        self.color = Some(color.into());
        self
    }

    /// True when the edge touches a vertex at exactly one end.
    pub fn is_leg(&self) -> bool {
        self.tail.is_slot() != self.head.is_slot()
    }

    pub fn is_exceptional(&self) -> bool {
        self.tail.is_slot() && self.head.is_slot()
    }

    pub fn is_internal(&self) -> bool {
        !self.tail.is_slot() && !self.head.is_slot()
    }
}

/// A vertex with declared input and output arities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: VertexId,
    pub in_arity: usize,
    pub out_arity: usize,
}

impl Vertex {
    pub fn new(id: impl Into<VertexId>, in_arity: usize, out_arity: usize) -> Vertex {
        Vertex {
            id: id.into(),
            in_arity,
            out_arity,
        }
    }

    pub fn arity(&self, direction: Direction) -> usize {
        match direction {
            Direction::Input => self.in_arity,
            Direction::Output => self.out_arity,
        }
    }
}

/// Ordered input and output color lists of a vertex, operation, or graph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Biprofile {
    pub inputs: Vec<Color>,
    pub outputs: Vec<Color>,
}

impl Biprofile {
    pub fn new(inputs: Vec<Color>, outputs: Vec<Color>) -> Biprofile {
        Biprofile { inputs, outputs }
    }

    pub fn arities(&self) -> (usize, usize) {
        (self.inputs.len(), self.outputs.len())
    }
}

impl fmt::Display for Biprofile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ins: Vec<&str> = self.inputs.iter().map(Color::as_str).collect();
        let outs: Vec<&str> = self.outputs.iter().map(Color::as_str).collect();
        write!(f, "({};{})", ins.join(","), outs.join(","))
    }
}

/// Errors raised while assembling or querying wiring graphs.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(VertexId),
    #[error("duplicate edge id `{0}`")]
    DuplicateEdge(EdgeId),
    #[error("edge `{edge}` references unknown vertex `{vertex}`")]
    UnknownVertex { edge: EdgeId, vertex: VertexId },
    #[error("unknown vertex `{0}`")]
    NoSuchVertex(VertexId),
    #[error("unknown edge `{0}`")]
    NoSuchEdge(EdgeId),
    #[error("edge `{edge}`: {direction} port {index} outside arity {arity} of vertex `{vertex}`")]
    PortOutOfRange {
        edge: EdgeId,
        vertex: VertexId,
        direction: Direction,
        index: usize,
        arity: usize,
    },
    #[error("edge `{edge}`: port index and slot numbers are 1-based")]
    ZeroIndex { edge: EdgeId },
    #[error("boundary list references unknown edge `{0}`")]
    UnknownBoundaryEdge(EdgeId),
    #[error("edge `{0}` appears twice in a boundary list")]
    DuplicateBoundaryEdge(EdgeId),
    #[error("empty color label on edge `{0}`")]
    EmptyColor(EdgeId),
    #[error("coloring required")]
    ColoringRequired,
    #[error("partially grafted corolla requires at least one connecting edge")]
    EmptyGraft,
    #[error("invalid graft list: {0}")]
    BadGraft(String),
}

/// A wiring graph. Immutable after construction; all operations are pure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WiringGraph {
    vertices: BTreeMap<VertexId, Vertex>,
    edges: BTreeMap<EdgeId, Edge>,
    inputs: Vec<EdgeId>,
    outputs: Vec<EdgeId>,
}

impl WiringGraph {
    /// Assemble a graph from parts, checking structural soundness: distinct
    /// ids, resolvable references, ports within declared arities. The deeper
    /// invariants (connectivity, acyclicity, port coverage, slot enumeration,
    /// total coloring) are reported by [`WiringGraph::validate`] instead.
    pub fn new(
        vertices: Vec<Vertex>,
        edges: Vec<Edge>,
        inputs: Vec<EdgeId>,
        outputs: Vec<EdgeId>,
    ) -> Result<WiringGraph, GraphError> {
        let mut vmap = BTreeMap::new();
        for v in vertices {
            if vmap.insert(v.id.clone(), v.clone()).is_some() {
                return Err(GraphError::DuplicateVertex(v.id));
            }
        }
        let mut emap = BTreeMap::new();
        for e in edges {
            for (end, dir) in [(&e.tail, Direction::Output), (&e.head, Direction::Input)] {
                match end {
                    EdgeEnd::Slot(s) => {
                        if *s == 0 {
                            return Err(GraphError::ZeroIndex { edge: e.id.clone() });
                        }
                    }
                    EdgeEnd::Port(p) => {
                        if p.index == 0 {
                            return Err(GraphError::ZeroIndex { edge: e.id.clone() });
                        }
                        if p.direction != dir {
                            return Err(GraphError::BadGraft(format!(
                                "edge `{}` has a {} port at its {} end",
                                e.id,
                                p.direction,
                                if dir == Direction::Output { "tail" } else { "head" },
                            )));
                        }
                        let v = vmap.get(&p.vertex).ok_or_else(|| GraphError::UnknownVertex {
                            edge: e.id.clone(),
                            vertex: p.vertex.clone(),
                        })?;
                        if p.index > v.arity(dir) {
                            return Err(GraphError::PortOutOfRange {
                                edge: e.id.clone(),
                                vertex: p.vertex.clone(),
                                direction: dir,
                                index: p.index,
                                arity: v.arity(dir),
                            });
                        }
                    }
                }
            }
            if let Some(c) = &e.color {
                if c.as_str().is_empty() {
                    return Err(GraphError::EmptyColor(e.id));
                }
            }
            if emap.insert(e.id.clone(), e.clone()).is_some() {
                return Err(GraphError::DuplicateEdge(e.id));
            }
        }
        for list in [&inputs, &outputs] {
            let mut seen = BTreeSet::new();
            for id in list {
                if !emap.contains_key(id) {
                    return Err(GraphError::UnknownBoundaryEdge(id.clone()));
                }
                if !seen.insert(id.clone()) {
                    return Err(GraphError::DuplicateBoundaryEdge(id.clone()));
                }
            }
        }
        Ok(WiringGraph {
            vertices: vmap,
            edges: emap,
            inputs,
            outputs,
        })
    }

    pub fn vertices(&self) -> impl Iterator<Item = &Vertex> {
        self.vertices.values()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = &VertexId> {
        self.vertices.keys()
    }

    pub fn vertex(&self, id: &VertexId) -> Option<&Vertex> {
        self.vertices.get(id)
    }

    pub fn edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges.values()
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = &EdgeId> {
        self.edges.keys()
    }

    pub fn edge(&self, id: &EdgeId) -> Option<&Edge> {
        self.edges.get(id)
    }

    pub fn inputs(&self) -> &[EdgeId] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[EdgeId] {
        &self.outputs
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_vertex(&self, id: &VertexId) -> bool {
        self.vertices.contains_key(id)
    }

    /// Number of legs, counting the exceptional edge once per slot end.
    pub fn leg_count(&self) -> usize {
        self.inputs.len() + self.outputs.len()
    }

    /// The edge occupying the given port, for valid graphs. Returns `None`
    /// when the port is vacant or multiply assigned.
    pub fn edge_at(&self, vertex: &VertexId, direction: Direction, index: usize) -> Option<&Edge> {
        let mut found = None;
        for e in self.edges.values() {
            let end = match direction {
                Direction::Input => &e.head,
                Direction::Output => &e.tail,
            };
            if let EdgeEnd::Port(p) = end {
                if &p.vertex == vertex && p.index == index {
                    if found.is_some() {
                        return None;
                    }
                    found = Some(e);
                }
            }
        }
        found
    }

    /// Edges entering `vertex`, ordered by input port. Errors if some port is
    /// not matched by exactly one edge.
    pub fn in_edges(&self, vertex: &VertexId) -> Result<Vec<EdgeId>, GraphError> {
        self.port_edges(vertex, Direction::Input)
    }

    /// Edges leaving `vertex`, ordered by output port.
    pub fn out_edges(&self, vertex: &VertexId) -> Result<Vec<EdgeId>, GraphError> {
        self.port_edges(vertex, Direction::Output)
    }

    fn port_edges(&self, vertex: &VertexId, direction: Direction) -> Result<Vec<EdgeId>, GraphError> {
        let v = self
            .vertex(vertex)
            .ok_or_else(|| GraphError::NoSuchVertex(vertex.clone()))?;
        let mut out = Vec::with_capacity(v.arity(direction));
        for i in 1..=v.arity(direction) {
            let e = self
                .edge_at(vertex, direction, i)
                .ok_or_else(|| GraphError::NoSuchVertex(vertex.clone()))?;
            out.push(e.id.clone());
        }
        Ok(out)
    }

    /// All edges incident to `vertex`, in no particular order.
    pub fn incident_edges(&self, vertex: &VertexId) -> Vec<&Edge> {
        self.edges
            .values()
            .filter(|e| e.tail.vertex() == Some(vertex) || e.head.vertex() == Some(vertex))
            .collect()
    }

    pub fn is_colored(&self) -> bool {
        !self.edges.is_empty() && self.edges.values().all(|e| e.color.is_some())
    }

    pub fn color_of(&self, edge: &EdgeId) -> Option<&Color> {
        self.edges.get(edge).and_then(|e| e.color.as_ref())
    }

    /// Replace the coloring wholesale. Missing entries leave edges uncolored.
    pub fn with_colors(&self, colors: &BTreeMap<EdgeId, Color>) -> WiringGraph {
        let mut g = self.clone();
        for (id, e) in g.edges.iter_mut() {
            e.color = colors.get(id).cloned();
        }
        g
    }

    pub fn uncolored(&self) -> WiringGraph {
        let mut g = self.clone();
        for e in g.edges.values_mut() {
            e.color = None;
        }
        g
    }

    /// Ordered input/output color lists of the whole graph.
    pub fn biprofile(&self) -> Result<Biprofile, GraphError> {
        if !self.is_colored() && self.edge_count() > 0 {
            return Err(GraphError::ColoringRequired);
        }
        let take = |ids: &[EdgeId]| -> Vec<Color> {
            ids.iter()
                .map(|id| self.edges[id].color.clone().expect("total coloring"))
                .collect()
        };
        Ok(Biprofile::new(take(&self.inputs), take(&self.outputs)))
    }

    /// Ordered input/output color lists of one vertex.
    pub fn vertex_biprofile(&self, vertex: &VertexId) -> Result<Biprofile, GraphError> {
        if !self.is_colored() && self.edge_count() > 0 {
            return Err(GraphError::ColoringRequired);
        }
        let grab = |dir: Direction| -> Result<Vec<Color>, GraphError> {
            self.port_edges(vertex, dir)?
                .into_iter()
                .map(|id| {
                    self.edges[&id]
                        .color
                        .clone()
                        .ok_or(GraphError::ColoringRequired)
                })
                .collect()
        };
        Ok(Biprofile::new(grab(Direction::Input)?, grab(Direction::Output)?))
    }

    /// Input/output arities of the graph boundary.
    pub fn boundary_arities(&self) -> (usize, usize) {
        (self.inputs.len(), self.outputs.len())
    }

    /// Internal edges: both ends at vertex ports.
    pub fn internal_edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges.values().filter(|e| e.is_internal())
    }

    /// The exceptional edge graph has no vertices and a single edge.
    pub fn is_exceptional(&self) -> bool {
        self.vertices.is_empty() && self.edges.len() == 1
    }

    /// Vertex count; the degree function of the graphical category.
    pub fn degree(&self) -> usize {
        self.vertices.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    #[test]
    fn tree_is_valid() {
        let t = samples::four_vertex_tree();
        let report = t.validate();
        assert!(report.ok(), "{:?}", report.violations);
        assert_eq!(t.vertex_count(), 4);
        assert_eq!(t.edge_count(), 8);
    }

    #[test]
    fn self_loop_is_a_cycle() {
        let g = WiringGraph::new(
            vec![Vertex::new("v", 1, 1)],
            vec![Edge::between("e", ("v", 1), ("v", 1))],
            vec![],
            vec![],
        )
        .unwrap();
        let report = g.validate();
        assert!(report.violations.iter().any(|v| v.invariant == "acyclic"));
    }

    #[test]
    fn disjoint_corollas_are_disconnected() {
        let g = WiringGraph::new(
            vec![Vertex::new("u", 0, 0), Vertex::new("v", 0, 0)],
            vec![],
            vec![],
            vec![],
        )
        .unwrap();
        let report = g.validate();
        assert!(report.violations.iter().any(|v| v.invariant == "connected"));
    }

    #[test]
    fn unmatched_port_is_flagged() {
        let g = WiringGraph::new(vec![Vertex::new("v", 1, 0)], vec![], vec![], vec![]).unwrap();
        let report = g.validate();
        assert!(report.violations.iter().any(|v| v.invariant == "ports"));
    }

    #[test]
    fn misordered_input_slots_are_flagged() {
        let g = WiringGraph::new(
            vec![Vertex::new("v", 2, 0)],
            vec![
                Edge::from_input("x", 2, ("v", 1)),
                Edge::from_input("y", 1, ("v", 2)),
            ],
            vec!["x".into(), "y".into()],
            vec![],
        )
        .unwrap();
        let report = g.validate();
        assert!(report.violations.iter().any(|v| v.invariant == "inputs"));
    }

    #[test]
    fn partial_coloring_is_flagged() {
        let mut colors = std::collections::BTreeMap::new();
        colors.insert(EdgeId::from("a"), Color::from("x"));
        let g = samples::four_vertex_tree().with_colors(&colors);
        let report = g.validate();
        assert!(report.violations.iter().any(|v| v.invariant == "coloring"));
    }

    #[test]
    fn simply_connected_cases() {
        assert!(samples::four_vertex_tree().is_simply_connected());
        let pgc = WiringGraph::pgc(&PgcSpec::new((0, 3), (3, 0), vec![(1, 1), (2, 2), (3, 3)]))
            .unwrap();
        assert!(!pgc.is_simply_connected());
        assert!(WiringGraph::exceptional_edge(None).is_simply_connected());
    }

    // For valid graphs, simple connectivity matches the edge-count identity
    // |Ed| = |Vt| + legs - 1.
    #[test]
    fn simply_connected_matches_edge_count() {
        for g in enumerate_graphs(3, 2, 2, Some(7)) {
            let expected = g.edge_count() == g.vertex_count() + g.leg_count() - 1;
            assert_eq!(g.is_simply_connected(), expected, "{}", canonical_form(&g));
        }
    }

    #[test]
    fn biprofiles_of_colored_tree() {
        let t = samples::colored_tree();
        let v = t.vertex_biprofile(&"v".into()).unwrap();
        assert_eq!(v.inputs, vec![Color::from("c1"), Color::from("c2")]);
        assert_eq!(v.outputs, vec![Color::from("d")]);

        let down = WiringGraph::exceptional_edge(Some("c".into()));
        let b = down.biprofile().unwrap();
        assert_eq!(b.inputs, vec![Color::from("c")]);
        assert_eq!(b.outputs, vec![Color::from("c")]);

        let mut colors = std::collections::BTreeMap::new();
        colors.insert(EdgeId::from("o1"), Color::from("x"));
        colors.insert(EdgeId::from("o2"), Color::from("x"));
        let c = WiringGraph::corolla(0, 2).with_colors(&colors);
        let b = c.biprofile().unwrap();
        assert!(b.inputs.is_empty());
        assert_eq!(b.outputs, vec![Color::from("x"), Color::from("x")]);
    }

    #[test]
    fn uncolored_biprofile_errors() {
        let t = samples::four_vertex_tree();
        assert_eq!(t.biprofile(), Err(GraphError::ColoringRequired));
    }

    #[test]
    fn identity_isomorphism_found() {
        let t = samples::four_vertex_tree();
        let isos = find_isomorphisms(&t, &t, IsoMode::Strict);
        assert!(isos.iter().any(|i| i.is_identity()));
    }

    // Two corollas differing only by swapped input order: two weak
    // isomorphisms, no strict ones.
    #[test]
    fn swapped_corolla_inputs() {
        let g = WiringGraph::corolla(2, 1);
        let h = WiringGraph::new(
            vec![Vertex::new("v", 2, 1)],
            vec![
                Edge::from_input("i1", 1, ("v", 2)),
                Edge::from_input("i2", 2, ("v", 1)),
                Edge::to_output("o1", ("v", 1), 1),
            ],
            vec!["i1".into(), "i2".into()],
            vec!["o1".into()],
        )
        .unwrap();
        assert_eq!(find_isomorphisms(&g, &h, IsoMode::Weak).len(), 2);
        assert_eq!(find_isomorphisms(&g, &h, IsoMode::Strict).len(), 0);
    }

    #[test]
    fn parallel_pair_edge_swap_is_weak_iso() {
        let g = samples::parallel_pair();
        let mut h = g.clone();
        // Swap which port each edge id uses.
        h = WiringGraph::new(
            h.vertices().cloned().collect(),
            vec![
                Edge::between("1", ("u", 2), ("v", 2)),
                Edge::between("2", ("u", 1), ("v", 1)),
            ],
            vec![],
            vec![],
        )
        .unwrap();
        assert!(!find_isomorphisms(&g, &h, IsoMode::Weak).is_empty());
    }

    #[test]
    fn canonical_form_is_deterministic() {
        let t = samples::four_vertex_tree();
        assert_eq!(canonical_form(&t), canonical_form(&t));
    }

    #[test]
    fn canonical_form_separates_shapes() {
        assert_ne!(
            canonical_form(&WiringGraph::linear(2)),
            canonical_form(&WiringGraph::corolla(1, 1))
        );
    }

    // All relabelings of a two-edge partially grafted corolla share one
    // canonical encoding.
    #[test]
    fn canonical_form_ignores_labels() {
        let spec = PgcSpec::new((1, 2), (2, 1), vec![(1, 1), (2, 2)]);
        let base = WiringGraph::pgc(&spec).unwrap();
        let keys: std::collections::BTreeSet<String> = [
            vec![(1, 1), (2, 2)],
            vec![(1, 2), (2, 1)],
            vec![(2, 1), (1, 2)],
            vec![(2, 2), (1, 1)],
        ]
        .into_iter()
        .map(|graft| {
            let g = WiringGraph::pgc(&PgcSpec::new((1, 2), (2, 1), graft)).unwrap();
            canonical_form(&g)
        })
        .collect();
        assert_eq!(keys.len(), 1);
        assert!(keys.contains(&canonical_form(&base)));
    }

    // Pairwise oracle: canonical forms agree exactly when an exhaustive
    // isomorphism search finds a weak isomorphism.
    #[test]
    fn canonical_form_matches_iso_oracle() {
        let graphs = enumerate_graphs(3, 2, 2, Some(6));
        for (i, g) in graphs.iter().enumerate() {
            for h in &graphs[i..] {
                let same_key = canonical_form(g) == canonical_form(h);
                let isomorphic = !find_isomorphisms(g, h, IsoMode::Weak).is_empty();
                assert_eq!(same_key, isomorphic);
            }
        }
    }

    #[test]
    fn weak_iso_is_an_equivalence() {
        // Reflexive, symmetric, transitive over a small closed corpus.
        let graphs = enumerate_graphs(2, 2, 2, Some(5));
        let related = |a: &WiringGraph, b: &WiringGraph| {
            !find_isomorphisms(a, b, IsoMode::Weak).is_empty()
        };
        for g in &graphs {
            assert!(related(g, g));
        }
        for g in &graphs {
            for h in &graphs {
                assert_eq!(related(g, h), related(h, g));
                for k in &graphs {
                    if related(g, h) && related(h, k) {
                        assert!(related(g, k));
                    }
                }
            }
        }
    }

    #[test]
    fn pgc_constructor_matches_profile() {
        let p = samples::wide_pgc();
        assert!(p.is_valid());
        assert_eq!(p.boundary_arities(), (4, 4));
        assert_eq!(p.vertex_count(), 2);

        // The alternative arity split from the same boundary profile.
        let q = WiringGraph::pgc(&PgcSpec::new((3, 4), (4, 3), vec![(1, 1), (2, 2), (3, 3)]))
            .unwrap();
        assert!(q.is_valid());
        assert_eq!(q.boundary_arities(), (4, 4));
    }

    #[test]
    fn pgc_requires_a_graft() {
        let err = WiringGraph::pgc(&PgcSpec::new((1, 1), (1, 1), vec![])).unwrap_err();
        assert_eq!(err, GraphError::EmptyGraft);
    }

    #[test]
    fn linear_zero_is_exceptional() {
        let g = WiringGraph::linear(0);
        assert!(g.is_exceptional());
        assert!(g.is_valid());
    }

    #[test]
    fn empty_corolla_is_valid() {
        let g = WiringGraph::corolla(0, 0);
        assert!(g.validate().ok());
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn text_round_trip() {
        for g in [
            samples::four_vertex_tree(),
            samples::colored_tree(),
            samples::wide_host(),
            WiringGraph::exceptional_edge(Some("c".into())),
            WiringGraph::corolla(0, 0),
        ] {
            let printed = print_graph("sample", &g);
            let (name, parsed) = parse_graph(&printed).unwrap();
            assert_eq!(name, "sample");
            assert_eq!(parsed, g);
        }
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let src = "graph g\nvertex v in=1 out=1\nfrobnicate\n";
        let err = parse_graph(src).unwrap_err();
        assert_eq!(err.line, 3);

        let src = "graph g\nvertex v in=1 out=1\nedge e from=in:1 to=w:in:1\ninputs e\noutputs\n";
        let err = parse_graph(src).unwrap_err();
        assert_eq!(err.line, 3);
        assert!(err.message.contains("unknown vertex"), "{}", err.message);
    }

    #[test]
    fn enumerate_small_graphs_contains_basics() {
        let graphs = enumerate_graphs(2, 1, 1, None);
        // Exceptional edge, C(0,0), C(0,1), C(1,0), C(1,1), and the five
        // two-vertex shapes wired from (<=1,<=1)-vertices.
        let keys: std::collections::BTreeSet<String> =
            graphs.iter().map(canonical_form).collect();
        assert!(keys.contains(&canonical_form(&WiringGraph::exceptional_edge(None))));
        assert!(keys.contains(&canonical_form(&WiringGraph::corolla(1, 1))));
        assert!(keys.contains(&canonical_form(&WiringGraph::linear(2))));
        assert_eq!(graphs.len(), keys.len());
    }
}
