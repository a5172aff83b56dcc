//! Graph substitution and the generator maps it induces.
//!
//! Substitution replaces a vertex of a host graph by a guest graph along
//! boundary bijections. The degree-one generators of the graphical category
//! all arise this way: inner cofaces substitute a partially grafted corolla
//! inside a graph, outer cofaces substitute a graph into one slot of a
//! partially grafted corolla, and codegeneracies substitute the exceptional
//! edge into a (1,1)-vertex.

use crate::graph::{
    Direction, Edge, EdgeEnd, EdgeId, GraphIso, Port, Vertex, VertexId, WiringGraph,
};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SubstitutionError {
    #[error("no vertex `{0}` in the host graph")]
    NoSuchVertex(VertexId),
    #[error("guest boundary ({got_in},{got_out}) does not match arity ({want_in},{want_out}) of vertex `{vertex}`")]
    ArityMismatch {
        vertex: VertexId,
        want_in: usize,
        want_out: usize,
        got_in: usize,
        got_out: usize,
    },
    #[error("bijection is not a permutation: {0}")]
    BadBijection(String),
    #[error("color mismatch at {direction} port {port} of vertex `{vertex}`")]
    ColorMismatch {
        vertex: VertexId,
        direction: Direction,
        port: usize,
    },
    #[error("duplicate host vertex `{0}` in simultaneous substitution")]
    DuplicateHost(VertexId),
    #[error("vertex `{0}` does not have biprofile arities (1;1)")]
    NotUnary(VertexId),
    #[error("cannot contract: {0}")]
    BadContraction(String),
    #[error(transparent)]
    Graph(#[from] crate::graph::GraphError),
}

/// Where and how a guest graph replaces a host vertex. The bijections send
/// guest boundary slots to host vertex ports: guest input slot `s` attaches
/// to input port `in_bij[s-1]`, and dually for outputs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubstitutionAssignment {
    pub host_vertex: VertexId,
    pub guest: WiringGraph,
    pub in_bij: Vec<usize>,
    pub out_bij: Vec<usize>,
}

impl SubstitutionAssignment {
    /// Assignment with slot-order bijections: guest slot `i` to port `i`.
    pub fn aligned(host_vertex: impl Into<VertexId>, guest: WiringGraph) -> SubstitutionAssignment {
        let (m, n) = guest.boundary_arities();
        SubstitutionAssignment {
            host_vertex: host_vertex.into(),
            guest,
            in_bij: (1..=m).collect(),
            out_bij: (1..=n).collect(),
        }
    }
}

/// How ids moved during one substitution.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SubstitutionTrace {
    /// Guest vertex to its id in the result.
    pub vertex_names: BTreeMap<VertexId, VertexId>,
    /// Guest internal edge to its id in the result.
    pub internal_names: BTreeMap<EdgeId, EdgeId>,
    /// Guest boundary edge to the host edge id it merged into.
    pub boundary_merges: BTreeMap<EdgeId, EdgeId>,
    /// Host edges consumed by a through-merge, mapped to their survivor.
    pub host_merges: BTreeMap<EdgeId, EdgeId>,
}

impl SubstitutionTrace {
    /// The result id of a host edge.
    pub fn host_edge(&self, id: &EdgeId) -> EdgeId {
        self.host_merges.get(id).cloned().unwrap_or_else(|| id.clone())
    }

    /// The result id of a guest edge.
    pub fn guest_edge(&self, id: &EdgeId) -> Option<EdgeId> {
        self.internal_names
            .get(id)
            .or_else(|| self.boundary_merges.get(id))
            .cloned()
    }
}

/// Replace `a.host_vertex` of `host` by `a.guest`.
pub fn substitute(
    host: &WiringGraph,
    a: &SubstitutionAssignment,
) -> Result<WiringGraph, SubstitutionError> {
    substitute_traced(host, a).map(|(g, _)| g)
}

/// Substitution that also reports how ids moved; substitution is
/// deterministic, so generator witnesses replay to id-level equality.
pub fn substitute_traced(
    host: &WiringGraph,
    a: &SubstitutionAssignment,
) -> Result<(WiringGraph, SubstitutionTrace), SubstitutionError> {
    let v = host
        .vertex(&a.host_vertex)
        .ok_or_else(|| SubstitutionError::NoSuchVertex(a.host_vertex.clone()))?;
    let (gin, gout) = a.guest.boundary_arities();
    if gin != v.in_arity || gout != v.out_arity {
        return Err(SubstitutionError::ArityMismatch {
            vertex: v.id.clone(),
            want_in: v.in_arity,
            want_out: v.out_arity,
            got_in: gin,
            got_out: gout,
        });
    }
    check_permutation(&a.in_bij, v.in_arity)?;
    check_permutation(&a.out_bij, v.out_arity)?;

    // Host edges at the replaced vertex, by port.
    let host_in: Vec<&Edge> = (1..=v.in_arity)
        .map(|i| {
            host.edge_at(&v.id, Direction::Input, i)
                .expect("valid host graph")
        })
        .collect();
    let host_out: Vec<&Edge> = (1..=v.out_arity)
        .map(|i| {
            host.edge_at(&v.id, Direction::Output, i)
                .expect("valid host graph")
        })
        .collect();

    // Color compatibility along both bijections when both sides are colored.
    for (s, &port) in a.in_bij.iter().enumerate() {
        let guest_edge = a.guest.edge(&a.guest.inputs()[s]).unwrap();
        if let (Some(gc), Some(hc)) = (&guest_edge.color, &host_in[port - 1].color) {
            if gc != hc {
                return Err(SubstitutionError::ColorMismatch {
                    vertex: v.id.clone(),
                    direction: Direction::Input,
                    port,
                });
            }
        }
    }
    for (t, &port) in a.out_bij.iter().enumerate() {
        let guest_edge = a.guest.edge(&a.guest.outputs()[t]).unwrap();
        if let (Some(gc), Some(hc)) = (&guest_edge.color, &host_out[port - 1].color) {
            if gc != hc {
                return Err(SubstitutionError::ColorMismatch {
                    vertex: v.id.clone(),
                    direction: Direction::Output,
                    port,
                });
            }
        }
    }

    let mut trace = SubstitutionTrace::default();

    // Fresh names for guest vertices: keep the guest id unless it collides
    // with a surviving host vertex; a colliding id is namespaced by the host
    // vertex until unique.
    let mut used_vertices: BTreeSet<VertexId> =
        host.vertex_ids().filter(|id| **id != v.id).cloned().collect();
    for w in a.guest.vertices() {
        let mut candidate = w.id.clone();
        while used_vertices.contains(&candidate) {
            candidate = VertexId::new(format!("{}.{}", v.id, candidate));
        }
        used_vertices.insert(candidate.clone());
        trace.vertex_names.insert(w.id.clone(), candidate);
    }

    // Fresh names for guest internal edges, same scheme against all host ids.
    let mut used_edges: BTreeSet<EdgeId> = host.edge_ids().cloned().collect();
    for e in a.guest.edges() {
        if e.is_internal() {
            let mut candidate = e.id.clone();
            while used_edges.contains(&candidate) {
                candidate = EdgeId::new(format!("{}.{}", v.id, candidate));
            }
            used_edges.insert(candidate.clone());
            trace.internal_names.insert(e.id.clone(), candidate);
        }
    }

    let map_guest_end = |end: &EdgeEnd| -> EdgeEnd {
        match end {
            EdgeEnd::Slot(s) => EdgeEnd::Slot(*s),
            EdgeEnd::Port(p) => EdgeEnd::Port(Port {
                vertex: trace.vertex_names[&p.vertex].clone(),
                direction: p.direction,
                index: p.index,
            }),
        }
    };

    let mut vertices: Vec<Vertex> = host.vertices().filter(|w| w.id != v.id).cloned().collect();
    for w in a.guest.vertices() {
        let mut w2 = w.clone();
        w2.id = trace.vertex_names[&w.id].clone();
        vertices.push(w2);
    }

    // Merged replacements for the host edges incident to v.
    let mut replacements: BTreeMap<EdgeId, Edge> = BTreeMap::new();
    let mut consumed: BTreeSet<EdgeId> = BTreeSet::new();
    for (s, &port) in a.in_bij.iter().enumerate() {
        let guest_edge = a.guest.edge(&a.guest.inputs()[s]).unwrap();
        let host_edge = host_in[port - 1];
        let mut merged = host_edge.clone();
        if merged.color.is_none() {
            merged.color = guest_edge.color.clone();
        }
        match &guest_edge.head {
            EdgeEnd::Port(_) => merged.head = map_guest_end(&guest_edge.head),
            EdgeEnd::Slot(t) => {
                // Through-edge: the guest edge is also a guest output; splice
                // all the way to the host edge on the output side.
                let out_port = a.out_bij[*t - 1];
                let out_edge = host_out[out_port - 1];
                merged.head = out_edge.head.clone();
                consumed.insert(out_edge.id.clone());
                trace.host_merges.insert(out_edge.id.clone(), host_edge.id.clone());
            }
        }
        trace
            .boundary_merges
            .insert(guest_edge.id.clone(), host_edge.id.clone());
        replacements.insert(host_edge.id.clone(), merged);
    }
    for (t, &port) in a.out_bij.iter().enumerate() {
        let guest_edge = a.guest.edge(&a.guest.outputs()[t]).unwrap();
        if guest_edge.is_exceptional() {
            continue; // handled from the input side
        }
        let host_edge = host_out[port - 1];
        let mut merged = host_edge.clone();
        if merged.color.is_none() {
            merged.color = guest_edge.color.clone();
        }
        merged.tail = map_guest_end(&guest_edge.tail);
        trace
            .boundary_merges
            .insert(guest_edge.id.clone(), host_edge.id.clone());
        replacements.insert(host_edge.id.clone(), merged);
    }

    let mut edges: Vec<Edge> = Vec::new();
    for e in host.edges() {
        if consumed.contains(&e.id) {
            continue;
        }
        match replacements.get(&e.id) {
            Some(r) => edges.push(r.clone()),
            None => edges.push(e.clone()),
        }
    }
    for e in a.guest.edges() {
        if e.is_internal() {
            let mut e2 = e.clone();
            e2.id = trace.internal_names[&e.id].clone();
            e2.tail = map_guest_end(&e.tail);
            e2.head = map_guest_end(&e.head);
            edges.push(e2);
        }
    }

    let remap = |ids: &[EdgeId]| -> Vec<EdgeId> { ids.iter().map(|id| trace.host_edge(id)).collect() };
    let inputs = remap(host.inputs());
    let outputs = remap(host.outputs());

    let result = WiringGraph::new(vertices, edges, inputs, outputs)?;
    Ok((result, trace))
}

fn check_permutation(bij: &[usize], arity: usize) -> Result<(), SubstitutionError> {
    if bij.len() != arity {
        return Err(SubstitutionError::BadBijection(format!(
            "length {} vs arity {}",
            bij.len(),
            arity
        )));
    }
    let mut seen = vec![false; arity];
    for &p in bij {
        if p == 0 || p > arity || seen[p - 1] {
            return Err(SubstitutionError::BadBijection(format!(
                "{bij:?} is not a permutation of 1..={arity}"
            )));
        }
        seen[p - 1] = true;
    }
    Ok(())
}

/// Substitute at several distinct vertices simultaneously. Up to weak
/// isomorphism the result does not depend on the order; internally the
/// assignments are applied in ascending host-vertex order.
pub fn substitute_many(
    host: &WiringGraph,
    assignments: &[SubstitutionAssignment],
) -> Result<WiringGraph, SubstitutionError> {
    let mut seen = BTreeSet::new();
    for a in assignments {
        if !seen.insert(a.host_vertex.clone()) {
            return Err(SubstitutionError::DuplicateHost(a.host_vertex.clone()));
        }
    }
    let mut order: Vec<&SubstitutionAssignment> = assignments.iter().collect();
    order.sort_by(|a, b| a.host_vertex.cmp(&b.host_vertex));
    let mut g = host.clone();
    for a in order {
        g = substitute(&g, a)?;
    }
    Ok(g)
}

/// Collapse `subset` to one fresh vertex. Fails when the induced subgraph is
/// disconnected or some directed path leaves the subset and re-enters it.
/// Returns the contracted graph together with the substitution assignment
/// that replays the contraction (the guest is the induced subgraph, with
/// original edge ids).
pub fn contract(
    g: &WiringGraph,
    subset: &BTreeSet<VertexId>,
    new_vertex: &str,
) -> Result<(WiringGraph, SubstitutionAssignment), SubstitutionError> {
    if subset.is_empty() {
        return Err(SubstitutionError::BadContraction("empty subset".into()));
    }
    for w in subset {
        if !g.has_vertex(w) {
            return Err(SubstitutionError::NoSuchVertex(w.clone()));
        }
    }
    let mut zid = VertexId::new(new_vertex);
    while g.vertex_ids().any(|id| *id == zid && !subset.contains(id)) {
        zid = VertexId::new(format!("{zid}'"));
    }

    let guest = induced_subgraph(g, subset);
    let (zin, zout) = guest.boundary_arities();

    let mut vertices: Vec<Vertex> = g
        .vertices()
        .filter(|w| !subset.contains(&w.id))
        .cloned()
        .collect();
    vertices.push(Vertex::new(zid.clone(), zin, zout));

    // Guest input slot s corresponds to z input port s; rewire the host side
    // of each boundary edge onto z.
    let mut edges: Vec<Edge> = Vec::new();
    let in_ids: BTreeMap<&EdgeId, usize> =
        guest.inputs().iter().enumerate().map(|(i, id)| (id, i + 1)).collect();
    let out_ids: BTreeMap<&EdgeId, usize> =
        guest.outputs().iter().enumerate().map(|(i, id)| (id, i + 1)).collect();
    for e in g.edges() {
        let guest_has = guest.edge(&e.id).is_some();
        if guest_has && guest.edge(&e.id).unwrap().is_internal() {
            continue; // swallowed by z
        }
        let mut e2 = e.clone();
        if let Some(&port) = in_ids.get(&e.id) {
            e2.head = EdgeEnd::Port(Port {
                vertex: zid.clone(),
                direction: Direction::Input,
                index: port,
            });
        }
        if let Some(&port) = out_ids.get(&e.id) {
            e2.tail = EdgeEnd::Port(Port {
                vertex: zid.clone(),
                direction: Direction::Output,
                index: port,
            });
        }
        edges.push(e2);
    }

    if !guest.is_valid() {
        return Err(SubstitutionError::BadContraction(format!(
            "{subset:?} does not induce a valid subgraph"
        )));
    }
    let contracted = WiringGraph::new(
        vertices,
        edges,
        g.inputs().to_vec(),
        g.outputs().to_vec(),
    )?;
    if !contracted.is_valid() {
        return Err(SubstitutionError::BadContraction(format!(
            "collapsing {subset:?} leaves an invalid graph"
        )));
    }
    let assignment = SubstitutionAssignment {
        host_vertex: zid,
        guest,
        in_bij: (1..=zin).collect(),
        out_bij: (1..=zout).collect(),
    };
    Ok((contracted, assignment))
}

/// The vertex-induced subgraph on `subset` as a standalone graph: all host
/// edges incident to the subset, crossing edges becoming legs. Boundary
/// order: inherited host legs first (host slot order), then new legs from
/// crossing edges sorted by id.
pub fn induced_subgraph(g: &WiringGraph, subset: &BTreeSet<VertexId>) -> WiringGraph {
    let in_subset = |end: &EdgeEnd| end.vertex().is_some_and(|v| subset.contains(v));
    let mut edges: Vec<Edge> = Vec::new();
    let mut inherited_in: Vec<EdgeId> = Vec::new();
    let mut crossing_in: Vec<EdgeId> = Vec::new();
    let mut inherited_out: Vec<EdgeId> = Vec::new();
    let mut crossing_out: Vec<EdgeId> = Vec::new();

    for id in g.inputs() {
        let e = g.edge(id).unwrap();
        if in_subset(&e.head) {
            inherited_in.push(id.clone());
        }
    }
    for id in g.outputs() {
        let e = g.edge(id).unwrap();
        if in_subset(&e.tail) {
            inherited_out.push(id.clone());
        }
    }
    for e in g.edges() {
        let (tin, hin) = (in_subset(&e.tail), in_subset(&e.head));
        if !tin && !hin {
            continue;
        }
        let mut e2 = e.clone();
        if hin && !tin && !e.tail.is_slot() {
            crossing_in.push(e.id.clone());
        }
        if tin && !hin && !e.head.is_slot() {
            crossing_out.push(e.id.clone());
        }
        if !tin {
            e2.tail = EdgeEnd::Slot(0); // patched below once slots are ordered
        }
        if !hin {
            e2.head = EdgeEnd::Slot(0);
        }
        edges.push(e2);
    }
    crossing_in.sort();
    crossing_out.sort();
    let inputs: Vec<EdgeId> = inherited_in.into_iter().chain(crossing_in).collect();
    let outputs: Vec<EdgeId> = inherited_out.into_iter().chain(crossing_out).collect();
    let in_slot: BTreeMap<&EdgeId, usize> = inputs.iter().enumerate().map(|(i, id)| (id, i + 1)).collect();
    let out_slot: BTreeMap<&EdgeId, usize> = outputs.iter().enumerate().map(|(i, id)| (id, i + 1)).collect();
    for e in &mut edges {
        if e.tail == EdgeEnd::Slot(0) {
            e.tail = EdgeEnd::Slot(in_slot[&e.id]);
        }
        if e.head == EdgeEnd::Slot(0) {
            e.head = EdgeEnd::Slot(out_slot[&e.id]);
        }
    }
    let vertices: Vec<Vertex> = g.vertices().filter(|v| subset.contains(&v.id)).cloned().collect();
    WiringGraph::new(vertices, edges, inputs, outputs).expect("induced subgraph is well formed")
}

/// Kinds of generator maps of the graphical category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorKind {
    InnerCoface,
    OuterCoface,
    Codegeneracy,
    Isomorphism,
}

/// Witness data sufficient to replay a generator map exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneratorWitness {
    /// Target is `substitute(source, assignment)`; the guest is a partially
    /// grafted corolla replacing `assignment.host_vertex` in the source.
    Inner { assignment: SubstitutionAssignment },
    /// Target is `substitute(host, source at host_vertex)`.
    Outer {
        host: WiringGraph,
        host_vertex: VertexId,
        in_bij: Vec<usize>,
        out_bij: Vec<usize>,
    },
    /// Target is `substitute(source, exceptional edge at vertex)`.
    Codegeneracy { vertex: VertexId },
    /// Target is the source relabeled along the bijection.
    Isomorphism { iso: GraphIso },
}

/// A generator map of the graphical category with its replay witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorMap {
    pub kind: GeneratorKind,
    pub source: WiringGraph,
    pub target: WiringGraph,
    pub witness: GeneratorWitness,
}

impl GeneratorMap {
    /// Rebuild the target from the source by applying the witness. Replays
    /// bit-exactly: the reconstruction equals the stored target, ids included.
    pub fn replay(&self) -> Result<WiringGraph, SubstitutionError> {
        match &self.witness {
            GeneratorWitness::Inner { assignment } => substitute(&self.source, assignment),
            GeneratorWitness::Outer {
                host,
                host_vertex,
                in_bij,
                out_bij,
            } => substitute(
                host,
                &SubstitutionAssignment {
                    host_vertex: host_vertex.clone(),
                    guest: self.source.clone(),
                    in_bij: in_bij.clone(),
                    out_bij: out_bij.clone(),
                },
            ),
            GeneratorWitness::Codegeneracy { vertex } => substitute(
                &self.source,
                &SubstitutionAssignment::aligned(
                    vertex.clone(),
                    WiringGraph::exceptional_edge(None),
                ),
            ),
            GeneratorWitness::Isomorphism { iso } => {
                let vertices: Vec<Vertex> = self
                    .source
                    .vertices()
                    .map(|v| Vertex::new(iso.vertex_map[&v.id].clone(), v.in_arity, v.out_arity))
                    .collect();
                let rename_end = |end: &EdgeEnd| match end {
                    EdgeEnd::Slot(s) => EdgeEnd::Slot(*s),
                    EdgeEnd::Port(p) => EdgeEnd::Port(Port {
                        vertex: iso.vertex_map[&p.vertex].clone(),
                        direction: p.direction,
                        index: p.index,
                    }),
                };
                let edges: Vec<Edge> = self
                    .source
                    .edges()
                    .map(|e| Edge {
                        id: iso.edge_map[&e.id].clone(),
                        tail: rename_end(&e.tail),
                        head: rename_end(&e.head),
                        color: e.color.clone(),
                    })
                    .collect();
                let remap = |ids: &[EdgeId]| -> Vec<EdgeId> {
                    ids.iter().map(|id| iso.edge_map[id].clone()).collect()
                };
                Ok(WiringGraph::new(
                    vertices,
                    edges,
                    remap(self.source.inputs()),
                    remap(self.source.outputs()),
                )?)
            }
        }
    }
}

impl GeneratorMap {
    /// One-line trace record: kind, canonical source and target forms, and
    /// the witness data needed to replay the map.
    pub fn trace_json(&self) -> serde_json::Value {
        let witness = match &self.witness {
            GeneratorWitness::Inner { assignment } => serde_json::json!({
                "host_vertex": assignment.host_vertex,
                "guest": assignment.guest,
                "in_bij": assignment.in_bij,
                "out_bij": assignment.out_bij,
            }),
            GeneratorWitness::Outer { host, host_vertex, in_bij, out_bij } => serde_json::json!({
                "host": host,
                "host_vertex": host_vertex,
                "in_bij": in_bij,
                "out_bij": out_bij,
            }),
            GeneratorWitness::Codegeneracy { vertex } => serde_json::json!({
                "vertex": vertex,
            }),
            GeneratorWitness::Isomorphism { iso } => serde_json::json!({
                "vertex_map": iso.vertex_map,
                "edge_map": iso.edge_map,
            }),
        };
        serde_json::json!({
            "kind": self.kind,
            "source": crate::graph::canonical_form(&self.source),
            "target": crate::graph::canonical_form(&self.target),
            "witness": witness,
        })
    }
}

/// Every coface map into `k`: sources have one vertex fewer than `k`.
///
/// Inner entries contract a two-vertex partially-grafted-corolla-shaped
/// subgraph of `k`; outer entries delete one vertex whose crossing edges are
/// co-oriented, exhibiting `k` as a partially grafted corolla filled with the
/// rest. For a corolla the outer entries are the leg inclusions of the
/// exceptional edge.
pub fn enumerate_cofaces_into(k: &WiringGraph) -> Vec<GeneratorMap> {
    let mut out = Vec::new();
    if k.vertex_count() == 0 {
        return out;
    }

    if k.vertex_count() == 1 {
        out.extend(corolla_cofaces(k));
        return out;
    }

    // Inner: ordered pairs (a, b) with at least one edge a -> b whose
    // contraction stays acyclic.
    let vids: Vec<VertexId> = k.vertex_ids().cloned().collect();
    for a in &vids {
        for b in &vids {
            if a == b {
                continue;
            }
            let has_edge = k.internal_edges().any(|e| {
                e.tail.vertex() == Some(a) && e.head.vertex() == Some(b)
            });
            if !has_edge {
                continue;
            }
            let subset: BTreeSet<VertexId> = [a.clone(), b.clone()].into();
            if let Ok((source, assignment)) = contract(k, &subset, "z") {
                out.push(GeneratorMap {
                    kind: GeneratorKind::InnerCoface,
                    source,
                    target: k.clone(),
                    witness: GeneratorWitness::Inner { assignment },
                });
            }
        }
    }

    // Outer: delete one vertex; the complement contracts to the other slot
    // of a partially grafted corolla exactly when that is valid.
    for v in &vids {
        let complement: BTreeSet<VertexId> = vids.iter().filter(|w| *w != v).cloned().collect();
        if let Ok((host, assignment)) = contract(k, &complement, "u") {
            debug_assert_eq!(host.vertex_count(), 2);
            out.push(GeneratorMap {
                kind: GeneratorKind::OuterCoface,
                source: assignment.guest,
                target: k.clone(),
                witness: GeneratorWitness::Outer {
                    host,
                    host_vertex: assignment.host_vertex,
                    in_bij: assignment.in_bij,
                    out_bij: assignment.out_bij,
                },
            });
        }
    }
    out
}

/// Outer cofaces of the exceptional edge into a one-vertex graph, one per leg.
fn corolla_cofaces(k: &WiringGraph) -> Vec<GeneratorMap> {
    let mut out = Vec::new();
    let v = k.vertices().next().unwrap().clone();
    let fresh_vertex = {
        let mut id = VertexId::new("u");
        while k.has_vertex(&id) {
            id = VertexId::new(format!("{id}'"));
        }
        id
    };
    let fresh_edge = {
        let mut id = EdgeId::new("g");
        while k.edge(&id).is_some() {
            id = EdgeId::new(format!("{id}'"));
        }
        id
    };

    let mut legs: Vec<(EdgeId, Direction)> = Vec::new();
    for id in k.inputs() {
        legs.push((id.clone(), Direction::Input));
    }
    for id in k.outputs() {
        legs.push((id.clone(), Direction::Output));
    }
    for (leg, dir) in legs {
        // Splice a (1,1)-vertex u into the leg. The original leg id stays on
        // the edge entering u so that replaying the codimension-one
        // substitution reproduces `k` id-exactly.
        let mut vertices: Vec<Vertex> = vec![v.clone()];
        vertices.push(Vertex::new(fresh_vertex.clone(), 1, 1));
        let mut edges: Vec<Edge> = Vec::new();
        let inputs = k.inputs().to_vec();
        let mut outputs = k.outputs().to_vec();
        for e in k.edges() {
            if e.id != leg {
                edges.push(e.clone());
                continue;
            }
            // Split the leg across u. The original id stays on the edge
            // entering u, so replaying the codegeneracy-style merge restores
            // it; the continuation edge is fresh and dies in the replay.
            let mut upper = e.clone();
            upper.head = EdgeEnd::Port(Port {
                vertex: fresh_vertex.clone(),
                direction: Direction::Input,
                index: 1,
            });
            let mut lower = e.clone();
            lower.id = fresh_edge.clone();
            lower.tail = EdgeEnd::Port(Port {
                vertex: fresh_vertex.clone(),
                direction: Direction::Output,
                index: 1,
            });
            edges.push(upper);
            edges.push(lower);
            if dir == Direction::Output {
                for slot in outputs.iter_mut() {
                    if *slot == leg {
                        *slot = fresh_edge.clone();
                    }
                }
            }
        }
        let host = WiringGraph::new(vertices, edges, inputs.clone(), outputs.clone())
            .expect("spliced graph is well formed");
        debug_assert!(host.is_valid(), "spliced host must be valid");
        out.push(GeneratorMap {
            kind: GeneratorKind::OuterCoface,
            source: WiringGraph::exceptional_edge(None),
            target: k.clone(),
            witness: GeneratorWitness::Outer {
                host,
                host_vertex: fresh_vertex.clone(),
                in_bij: vec![1],
                out_bij: vec![1],
            },
        });
    }
    out
}

/// The codegeneracy at a (1,1)-vertex: substitute the exceptional edge.
pub fn codegeneracy(g: &WiringGraph, vertex: &VertexId) -> Result<GeneratorMap, SubstitutionError> {
    let v = g
        .vertex(vertex)
        .ok_or_else(|| SubstitutionError::NoSuchVertex(vertex.clone()))?;
    if v.in_arity != 1 || v.out_arity != 1 {
        return Err(SubstitutionError::NotUnary(vertex.clone()));
    }
    let target = substitute(
        g,
        &SubstitutionAssignment::aligned(vertex.clone(), WiringGraph::exceptional_edge(None)),
    )?;
    Ok(GeneratorMap {
        kind: GeneratorKind::Codegeneracy,
        source: g.clone(),
        target,
        witness: GeneratorWitness::Codegeneracy {
            vertex: vertex.clone(),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{canonical_form, enumerate_graphs, weakly_isomorphic, PgcSpec};
    use crate::samples;

    fn corolla_of(g: &WiringGraph, v: &VertexId) -> SubstitutionAssignment {
        let vx = g.vertex(v).unwrap();
        SubstitutionAssignment::aligned(v.clone(), WiringGraph::corolla(vx.in_arity, vx.out_arity))
    }

    #[test]
    fn widening_substitution_adds_three_internal_edges() {
        let host = samples::wide_host();
        let pgc = samples::wide_pgc();
        let before_internal = host.internal_edges().count();
        let a = SubstitutionAssignment::aligned("x", pgc);
        let result = substitute(&host, &a).unwrap();
        assert!(result.is_valid());
        assert_eq!(result.vertex_count(), 3);
        assert_eq!(result.boundary_arities(), (5, 6));
        assert_eq!(result.internal_edges().count(), before_internal + 3);
    }

    #[test]
    fn corolla_substitution_is_a_unit() {
        for g in enumerate_graphs(3, 2, 2, Some(6)) {
            for v in g.vertex_ids() {
                let result = substitute(&g, &corolla_of(&g, v)).unwrap();
                assert!(weakly_isomorphic(&g, &result), "unit law at `{v}`");
            }
        }
    }

    #[test]
    fn exceptional_edge_collapses_chain() {
        let l3 = WiringGraph::linear(3);
        let a = SubstitutionAssignment::aligned("v2", WiringGraph::exceptional_edge(None));
        let result = substitute(&l3, &a).unwrap();
        assert_eq!(result.vertex_count(), 2);
        assert!(weakly_isomorphic(&result, &WiringGraph::linear(2)));
    }

    #[test]
    fn arity_mismatch_reports_vertex() {
        let l2 = WiringGraph::linear(2);
        let a = SubstitutionAssignment::aligned("v1", WiringGraph::corolla(2, 1));
        match substitute(&l2, &a) {
            Err(SubstitutionError::ArityMismatch { vertex, .. }) => {
                assert_eq!(vertex, VertexId::from("v1"))
            }
            other => panic!("expected arity mismatch, got {other:?}"),
        }
    }

    #[test]
    fn color_mismatch_reports_port() {
        let mut colors = std::collections::BTreeMap::new();
        for id in ["e0", "e1"] {
            colors.insert(EdgeId::from(id), crate::Color::from("red"));
        }
        let host = WiringGraph::linear(1).with_colors(&colors);
        let guest = WiringGraph::exceptional_edge(Some("blue".into()));
        let a = SubstitutionAssignment::aligned("v1", guest);
        match substitute(&host, &a) {
            Err(SubstitutionError::ColorMismatch { port, .. }) => assert_eq!(port, 1),
            other => panic!("expected color mismatch, got {other:?}"),
        }
    }

    #[test]
    fn empty_simultaneous_substitution_is_identity() {
        let g = samples::wide_host();
        assert_eq!(substitute_many(&g, &[]).unwrap(), g);
    }

    #[test]
    fn simultaneous_substitution_is_order_independent() {
        let g = samples::wide_host();
        let a1 = SubstitutionAssignment::aligned("w", WiringGraph::corolla(2, 3));
        let a2 = SubstitutionAssignment::aligned("x", samples::wide_pgc());
        let both = substitute_many(&g, &[a1.clone(), a2.clone()]).unwrap();
        let one_way = substitute(&substitute(&g, &a1).unwrap(), &a2).unwrap();
        let other_way = substitute(&substitute(&g, &a2).unwrap(), &a1).unwrap();
        assert!(weakly_isomorphic(&both, &one_way));
        assert!(weakly_isomorphic(&one_way, &other_way));
    }

    #[test]
    fn duplicate_host_rejected() {
        let g = samples::wide_host();
        let a = SubstitutionAssignment::aligned("w", WiringGraph::corolla(2, 3));
        match substitute_many(&g, &[a.clone(), a]) {
            Err(SubstitutionError::DuplicateHost(v)) => assert_eq!(v, VertexId::from("w")),
            other => panic!("expected duplicate host, got {other:?}"),
        }
    }

    // Nested substitution associates: G(H_v)(K_w) agrees with G(H(K_w)_v).
    #[test]
    fn substitution_associates() {
        let g = WiringGraph::linear(2);
        let h = WiringGraph::pgc(&PgcSpec::new((1, 1), (1, 1), vec![(1, 1)])).unwrap(); // = L2 shaped
        let k = WiringGraph::corolla(1, 1);

        // Substitute h at v1 of g, then k at a vertex of the copy of h.
        let gh = substitute(&g, &SubstitutionAssignment::aligned("v1", h.clone())).unwrap();
        let inner_vertex = gh
            .vertex_ids()
            .find(|id| id.as_str().contains('u') || id.as_str() == "u")
            .unwrap()
            .clone();
        let lhs = substitute(&gh, &SubstitutionAssignment::aligned(inner_vertex, k.clone())).unwrap();

        let hk = substitute(&h, &SubstitutionAssignment::aligned("u", k.clone())).unwrap();
        let rhs = substitute(&g, &SubstitutionAssignment::aligned("v1", hk)).unwrap();
        assert!(weakly_isomorphic(&lhs, &rhs));
    }

    #[test]
    fn substitution_preserves_legs() {
        let host = samples::wide_host();
        let result = substitute(
            &host,
            &SubstitutionAssignment::aligned("x", samples::wide_pgc()),
        )
        .unwrap();
        assert_eq!(host.inputs(), result.inputs());
        assert_eq!(host.outputs(), result.outputs());
    }

    #[test]
    fn linear_coface_counts_match_the_simplicial_pattern() {
        for n in 1..=4usize {
            let ln = WiringGraph::linear(n);
            let cofaces = enumerate_cofaces_into(&ln);
            let inner = cofaces
                .iter()
                .filter(|c| c.kind == GeneratorKind::InnerCoface)
                .count();
            let outer = cofaces
                .iter()
                .filter(|c| c.kind == GeneratorKind::OuterCoface)
                .count();
            assert_eq!(inner, n - 1, "inner cofaces into L{n}");
            assert_eq!(outer, 2, "outer cofaces into L{n}");
        }
    }

    #[test]
    fn corolla_cofaces_are_leg_inclusions() {
        let c = WiringGraph::corolla(2, 1);
        let cofaces = enumerate_cofaces_into(&c);
        assert_eq!(cofaces.len(), 3);
        assert!(cofaces.iter().all(|c| c.kind == GeneratorKind::OuterCoface));
        assert!(cofaces.iter().all(|c| c.source.is_exceptional()));

        assert!(enumerate_cofaces_into(&WiringGraph::corolla(0, 0)).is_empty());
    }

    #[test]
    fn inner_coface_found_for_widened_host() {
        let host = samples::wide_host();
        let widened = substitute(
            &host,
            &SubstitutionAssignment::aligned("x", samples::wide_pgc()),
        )
        .unwrap();
        let cofaces = enumerate_cofaces_into(&widened);
        let found = cofaces.iter().any(|c| {
            c.kind == GeneratorKind::InnerCoface && weakly_isomorphic(&c.source, &host)
        });
        assert!(found, "contracting the grafted pair must recover the host");
    }

    #[test]
    fn every_coface_replays_exactly() {
        for g in enumerate_graphs(3, 2, 2, Some(6)) {
            for coface in enumerate_cofaces_into(&g) {
                assert_eq!(coface.replay().unwrap(), coface.target, "{:?}", coface.kind);
            }
        }
    }

    #[test]
    fn codegeneracy_on_last_vertex() {
        let l1 = WiringGraph::linear(1);
        let gen = codegeneracy(&l1, &"v1".into()).unwrap();
        assert!(gen.target.is_exceptional());
        assert_eq!(gen.replay().unwrap(), gen.target);

        let c = WiringGraph::corolla(2, 1);
        assert!(matches!(
            codegeneracy(&c, &"v".into()),
            Err(SubstitutionError::NotUnary(_))
        ));
    }

    #[test]
    fn factor_walkthrough_intermediate() {
        let g = samples::factor_source();
        let gen = codegeneracy(&g, &"v".into()).unwrap();
        assert_eq!(gen.target.vertex_count(), 2);
        assert!(gen.target.has_vertex(&"u".into()));
        assert!(gen.target.has_vertex(&"x".into()));
    }

    // Cofaces are exactly the degree-raising contractions: cross-check the
    // enumeration against each other by replaying and contracting back.
    #[test]
    fn coface_sources_have_one_fewer_vertex() {
        for g in enumerate_graphs(3, 2, 2, Some(6)) {
            for coface in enumerate_cofaces_into(&g) {
                assert_eq!(coface.source.vertex_count() + 1, g.vertex_count());
                assert!(coface.source.is_valid());
            }
        }
    }

    #[test]
    fn contract_rejects_entangled_pairs() {
        // x -> v, v -> y, x -> y: contracting {x, y} would create a cycle.
        let g = WiringGraph::new(
            vec![
                Vertex::new("x", 0, 2),
                Vertex::new("v", 1, 1),
                Vertex::new("y", 2, 0),
            ],
            vec![
                Edge::between("a", ("x", 1), ("v", 1)),
                Edge::between("b", ("v", 1), ("y", 1)),
                Edge::between("c", ("x", 2), ("y", 2)),
            ],
            vec![],
            vec![],
        )
        .unwrap();
        assert!(g.is_valid());
        let subset: std::collections::BTreeSet<VertexId> = ["x".into(), "y".into()].into();
        assert!(contract(&g, &subset, "z").is_err());
        // Contracting a genuinely grafted pair works.
        let subset: std::collections::BTreeSet<VertexId> = ["x".into(), "v".into()].into();
        let (s, _) = contract(&g, &subset, "z").unwrap();
        assert!(s.is_valid());
        assert_eq!(s.vertex_count(), 2);
    }

    #[test]
    fn canonical_form_stable_under_replay() {
        let l2 = WiringGraph::linear(2);
        for coface in enumerate_cofaces_into(&l2) {
            assert_eq!(
                canonical_form(&coface.replay().unwrap()),
                canonical_form(&coface.target)
            );
        }
    }
}
