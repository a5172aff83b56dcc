//! The morphism type and its calculus: images, validity, composition,
//! classification.

use super::decorated::GammaDecoration;
use super::GammaError;
use crate::graph::{Color, Direction, EdgeId, VertexId, WiringGraph};
use crate::substitution::{
    substitute_traced, GeneratorKind, GeneratorMap, GeneratorWitness, SubstitutionAssignment,
};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// A map of graphical properads: an edge function plus a decorated graph for
/// each source vertex. Belongs to the graphical category when its image is a
/// subgraph of the target; see [`GammaMorphism::check_validity`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaMorphism {
    source: WiringGraph,
    target: WiringGraph,
    edge_map: BTreeMap<EdgeId, EdgeId>,
    vertex_map: BTreeMap<VertexId, GammaDecoration>,
}

/// Validity verdict together with the computed image as witness.
#[derive(Debug, Clone)]
pub struct MorphismValidity {
    pub valid: bool,
    pub image: GammaDecoration,
    pub reason: Option<String>,
}

impl GammaMorphism {
    /// Assemble and structurally check a morphism: total maps, compatible
    /// decorations, and the boundary-profile condition at every vertex.
    pub fn new(
        source: WiringGraph,
        target: WiringGraph,
        edge_map: BTreeMap<EdgeId, EdgeId>,
        vertex_map: BTreeMap<VertexId, GammaDecoration>,
    ) -> Result<GammaMorphism, GammaError> {
        for e in source.edge_ids() {
            let img = edge_map
                .get(e)
                .ok_or_else(|| GammaError::EdgeMapNotTotal(e.clone()))?;
            if target.edge(img).is_none() {
                return Err(GammaError::UnknownTargetEdge(e.clone()));
            }
        }
        for v in source.vertex_ids() {
            let d = vertex_map
                .get(v)
                .ok_or_else(|| GammaError::VertexMapNotTotal(v.clone()))?;
            check_decoration_over(&target, d).map_err(|reason| {
                GammaError::IncompatibleDecoration {
                    vertex: v.clone(),
                    reason,
                }
            })?;
            // Boundary profile: the decorated shape boundary must read off
            // the edge images of the vertex ports, slot by slot.
            let want_in: Vec<&EdgeId> = source
                .in_edges(v)?
                .into_iter()
                .map(|e| &edge_map[&e])
                .collect::<Vec<_>>()
                .into_iter()
                .collect();
            let want_out: Vec<&EdgeId> = source
                .out_edges(v)?
                .into_iter()
                .map(|e| &edge_map[&e])
                .collect();
            let (got_in, got_out) = d.boundary_decorations();
            if got_in != want_in || got_out != want_out {
                return Err(GammaError::ProfileMismatch {
                    vertex: v.clone(),
                    expected_in: want_in.iter().map(|e| e.as_str()).collect::<Vec<_>>().join(","),
                    expected_out: want_out.iter().map(|e| e.as_str()).collect::<Vec<_>>().join(","),
                });
            }
        }
        Ok(GammaMorphism {
            source,
            target,
            edge_map,
            vertex_map,
        })
    }

    /// Constructor for enumeration paths that guarantee the structural
    /// invariants by construction.
    pub(crate) fn new_prevalidated(
        source: WiringGraph,
        target: WiringGraph,
        edge_map: BTreeMap<EdgeId, EdgeId>,
        vertex_map: BTreeMap<VertexId, GammaDecoration>,
    ) -> GammaMorphism {
        GammaMorphism {
            source,
            target,
            edge_map,
            vertex_map,
        }
    }

    pub fn source(&self) -> &WiringGraph {
        &self.source
    }

    pub fn target(&self) -> &WiringGraph {
        &self.target
    }

    pub fn edge_map(&self) -> &BTreeMap<EdgeId, EdgeId> {
        &self.edge_map
    }

    pub fn vertex_assignment(&self, v: &VertexId) -> &GammaDecoration {
        &self.vertex_map[v]
    }

    /// The identity morphism of `g`.
    pub fn identity(g: &WiringGraph) -> GammaMorphism {
        let edge_map = g.edge_ids().map(|e| (e.clone(), e.clone())).collect();
        let vertex_map = g
            .vertex_ids()
            .map(|v| (v.clone(), identity_decoration(g, v)))
            .collect();
        GammaMorphism::new(g.clone(), g.clone(), edge_map, vertex_map)
            .expect("identity is well formed")
    }

    /// Degree difference target minus source.
    pub fn degree_gap(&self) -> isize {
        self.target.degree() as isize - self.source.degree() as isize
    }

    /// The image: substitute each vertex's decorated shape into the source
    /// and relabel the remaining source edges along the edge map. The result
    /// is decorated over the target.
    pub fn image(&self) -> Result<GammaDecoration, GammaError> {
        let as_color = |e: &EdgeId| Color::from(e.as_str());
        let colors: BTreeMap<EdgeId, Color> = self
            .edge_map
            .iter()
            .map(|(e, img)| (e.clone(), as_color(img)))
            .collect();
        let mut current = self.source.with_colors(&colors);
        let mut vertex_decorations: BTreeMap<VertexId, VertexId> = BTreeMap::new();

        for v in self.source.vertex_ids() {
            let d = &self.vertex_map[v];
            let guest_colors: BTreeMap<EdgeId, Color> = d
                .edges
                .iter()
                .map(|(e, img)| (e.clone(), as_color(img)))
                .collect();
            let guest = d.shape.with_colors(&guest_colors);
            let assignment = SubstitutionAssignment::aligned(v.clone(), guest);
            let (next, trace) = substitute_traced(&current, &assignment)?;
            for (old, new) in &trace.vertex_names {
                vertex_decorations.insert(new.clone(), d.vertices[old].clone());
            }
            // Earlier inserted vertices keep their ids; nothing to patch.
            current = next;
        }

        let edge_decorations: BTreeMap<EdgeId, EdgeId> = current
            .edges()
            .map(|e| {
                let c = e.color.as_ref().expect("image edges are decorated");
                (e.id.clone(), EdgeId::from(c.as_str()))
            })
            .collect();
        Ok(GammaDecoration::new(
            current.uncolored(),
            edge_decorations,
            vertex_decorations,
        ))
    }

    /// Does the image embed as a subgraph of the target? True exactly when
    /// both decoration maps of the image are injective.
    pub fn check_validity(&self) -> Result<MorphismValidity, GammaError> {
        let image = self.image()?;
        let mut seen_edges: BTreeSet<&EdgeId> = BTreeSet::new();
        for dec in image.edges.values() {
            if !seen_edges.insert(dec) {
                return Ok(MorphismValidity {
                    valid: false,
                    reason: Some(format!(
                        "image uses target edge `{dec}` more than once ({} shape edges over {} target edges)",
                        image.shape.edge_count(),
                        seen_edges.len(),
                    )),
                    image,
                });
            }
        }
        let mut seen_vertices: BTreeSet<&VertexId> = BTreeSet::new();
        for dec in image.vertices.values() {
            if !seen_vertices.insert(dec) {
                return Ok(MorphismValidity {
                    valid: false,
                    reason: Some(format!(
                        "image uses target vertex `{dec}` more than once ({}-vertex image)",
                        image.shape.vertex_count()
                    )),
                    image,
                });
            }
        }
        // Injective decorations embed the image onto the vertex-induced
        // graph; that graph is a subgraph only if no directed path leaves it
        // and re-enters it.
        let hit: BTreeSet<VertexId> = image.vertices.values().cloned().collect();
        if !hit.is_empty() && !super::hom::is_subgraph_set(&self.target, &hit) {
            return Ok(MorphismValidity {
                valid: false,
                reason: Some(format!(
                    "image vertices {hit:?} are not a subgraph of the target: a directed path leaves and re-enters them"
                )),
                image,
            });
        }
        Ok(MorphismValidity {
            valid: true,
            image,
            reason: None,
        })
    }

    pub fn is_valid(&self) -> bool {
        super::hom::pieces_form_subgraph(&self.source, &self.target, &self.edge_map, &self.vertex_map)
    }

    /// Push a decorated graph over this morphism's source forward to one
    /// over its target, substituting the morphism's vertex assignments.
    pub fn push_decoration(&self, d: &GammaDecoration) -> Result<GammaDecoration, GammaError> {
        let as_color = |e: &EdgeId| Color::from(e.as_str());
        let colors: BTreeMap<EdgeId, Color> = d
            .edges
            .iter()
            .map(|(e, dec)| (e.clone(), as_color(&self.edge_map[dec])))
            .collect();
        let mut current = d.shape.with_colors(&colors);
        let mut vertex_decorations: BTreeMap<VertexId, VertexId> = BTreeMap::new();

        let shape_vertices: Vec<VertexId> = d.shape.vertex_ids().cloned().collect();
        for w in &shape_vertices {
            let inner = &self.vertex_map[&d.vertices[w]];
            let guest_colors: BTreeMap<EdgeId, Color> = inner
                .edges
                .iter()
                .map(|(e, img)| (e.clone(), as_color(img)))
                .collect();
            let guest = inner.shape.with_colors(&guest_colors);
            // Align guest boundary slots to the ports of `w` by decoration:
            // both sides carry the same color multiset.
            let in_bij = align_by_color(&current, w, Direction::Input, &guest, true);
            let out_bij = align_by_color(&current, w, Direction::Output, &guest, false);
            let assignment = SubstitutionAssignment {
                host_vertex: w.clone(),
                guest,
                in_bij,
                out_bij,
            };
            let (next, trace) = substitute_traced(&current, &assignment)?;
            for (old, new) in &trace.vertex_names {
                vertex_decorations.insert(new.clone(), inner.vertices[old].clone());
            }
            current = next;
        }

        let edge_decorations: BTreeMap<EdgeId, EdgeId> = current
            .edges()
            .map(|e| {
                let c = e.color.as_ref().expect("pushed edges are decorated");
                (e.id.clone(), EdgeId::from(c.as_str()))
            })
            .collect();
        Ok(GammaDecoration::new(
            current.uncolored(),
            edge_decorations,
            vertex_decorations,
        ))
    }

    /// Composite `second . first`. Decorated shapes are substituted across;
    /// the result is defined up to decoration-respecting weak isomorphism of
    /// the vertex assignments.
    pub fn compose(second: &GammaMorphism, first: &GammaMorphism) -> Result<GammaMorphism, GammaError> {
        if first.target != second.source {
            return Err(GammaError::BoundaryMismatch);
        }
        let edge_map: BTreeMap<EdgeId, EdgeId> = first
            .edge_map
            .iter()
            .map(|(e, mid)| (e.clone(), second.edge_map[mid].clone()))
            .collect();
        let mut vertex_map = BTreeMap::new();
        for (v, d) in &first.vertex_map {
            vertex_map.insert(v.clone(), second.push_decoration(d)?);
        }
        GammaMorphism::new(
            first.source.clone(),
            second.target.clone(),
            edge_map,
            vertex_map,
        )
    }

    /// Morphism equality: equal boundaries, equal edge maps, and vertex
    /// assignments that agree up to decoration-respecting weak isomorphism.
    pub fn equivalent(&self, other: &GammaMorphism) -> bool {
        self.source == other.source
            && self.target == other.target
            && self.edge_map == other.edge_map
            && self
                .vertex_map
                .iter()
                .all(|(v, d)| d.equivalent(&other.vertex_map[v]))
    }

    /// A stable identity for use as a table key; equal exactly on
    /// [`GammaMorphism::equivalent`] morphisms between fixed graphs.
    pub fn key(&self) -> String {
        let f0: Vec<String> = self
            .edge_map
            .iter()
            .map(|(a, b)| format!("{a}>{b}"))
            .collect();
        let f1: Vec<String> = self
            .vertex_map
            .iter()
            .map(|(v, d)| format!("{v}~{}", d.canonical_key()))
            .collect();
        format!("{}|{}", f0.join(";"), f1.join(";"))
    }
}

/// The corolla of `v` decorated by `v` itself: the vertex assignment of an
/// identity morphism.
pub fn identity_decoration(g: &WiringGraph, v: &VertexId) -> GammaDecoration {
    let vx = g.vertex(v).expect("vertex exists");
    let shape = WiringGraph::corolla(vx.in_arity, vx.out_arity);
    let mut edges = BTreeMap::new();
    let in_ids = g.in_edges(v).expect("valid graph");
    let out_ids = g.out_edges(v).expect("valid graph");
    for (i, host_edge) in in_ids.iter().enumerate() {
        edges.insert(shape.inputs()[i].clone(), host_edge.clone());
    }
    for (i, host_edge) in out_ids.iter().enumerate() {
        edges.insert(shape.outputs()[i].clone(), host_edge.clone());
    }
    let vertices = [(VertexId::from("v"), v.clone())].into();
    GammaDecoration::new(shape, edges, vertices)
}

/// A corolla assigned to the source vertex `v`, decorated by `img` and by the
/// edge images of `v`'s ports in source port order. This is the vertex value
/// of any morphism sending `v` to a plain vertex occurrence.
fn corolla_decoration_via(
    source: &WiringGraph,
    v: &VertexId,
    edge_map: &BTreeMap<EdgeId, EdgeId>,
    img: VertexId,
) -> GammaDecoration {
    let vx = source.vertex(v).expect("vertex exists");
    let shape = WiringGraph::corolla(vx.in_arity, vx.out_arity);
    let mut edges = BTreeMap::new();
    for (i, e) in source.in_edges(v).expect("valid graph").iter().enumerate() {
        edges.insert(shape.inputs()[i].clone(), edge_map[e].clone());
    }
    for (i, e) in source.out_edges(v).expect("valid graph").iter().enumerate() {
        edges.insert(shape.outputs()[i].clone(), edge_map[e].clone());
    }
    let vertices = [(VertexId::from("v"), img)].into();
    GammaDecoration::new(shape, edges, vertices)
}

/// Check that a decorated graph lies over `target`: the shape is valid, all
/// decorations resolve, and every shape vertex is an occurrence of its
/// decorating vertex (equal input and output edge multisets).
fn check_decoration_over(target: &WiringGraph, d: &GammaDecoration) -> Result<(), String> {
    if !d.shape.is_valid() {
        return Err("shape is not a valid graph".into());
    }
    for e in d.shape.edge_ids() {
        let dec = d.edges.get(e).ok_or(format!("edge `{e}` undecorated"))?;
        if target.edge(dec).is_none() {
            return Err(format!("edge `{e}` decorated by unknown target edge `{dec}`"));
        }
    }
    for w in d.shape.vertex_ids() {
        let dec = d
            .vertices
            .get(w)
            .ok_or(format!("vertex `{w}` undecorated"))?;
        if target.vertex(dec).is_none() {
            return Err(format!("vertex `{w}` decorated by unknown target vertex `{dec}`"));
        }
        for dir in [Direction::Input, Direction::Output] {
            let shape_ports = match dir {
                Direction::Input => d.shape.in_edges(w),
                Direction::Output => d.shape.out_edges(w),
            }
            .map_err(|e| e.to_string())?;
            let mut got: Vec<&EdgeId> = shape_ports.iter().map(|e| &d.edges[e]).collect();
            let mut want: Vec<EdgeId> = match dir {
                Direction::Input => target.in_edges(dec),
                Direction::Output => target.out_edges(dec),
            }
            .map_err(|e| e.to_string())?;
            got.sort();
            want.sort();
            let got_owned: Vec<EdgeId> = got.into_iter().cloned().collect();
            if got_owned != want {
                return Err(format!(
                    "vertex `{w}` decorated by `{dec}` but its {dir} edges decorate differently"
                ));
            }
        }
    }
    Ok(())
}

/// Choose a slot-to-port bijection matching guest boundary colors to the
/// colors at the host vertex's ports, greedily in slot order. Both sides
/// carry the same color multiset whenever the morphism data is compatible.
fn align_by_color(
    host: &WiringGraph,
    v: &VertexId,
    dir: Direction,
    guest: &WiringGraph,
    inputs: bool,
) -> Vec<usize> {
    let vx = host.vertex(v).expect("vertex exists");
    let arity = vx.arity(dir);
    let port_colors: Vec<Option<&Color>> = (1..=arity)
        .map(|i| host.edge_at(v, dir, i).and_then(|e| e.color.as_ref()))
        .collect();
    let slots = if inputs { guest.inputs() } else { guest.outputs() };
    let mut taken = vec![false; arity];
    let mut bij = Vec::with_capacity(slots.len());
    for id in slots {
        let c = guest.edge(id).and_then(|e| e.color.as_ref());
        let port = (0..arity)
            .find(|&p| !taken[p] && port_colors[p] == c)
            .expect("matching port exists for compatible decorations");
        taken[port] = true;
        bij.push(port + 1);
    }
    bij
}

impl GeneratorMap {
    /// The morphism of the graphical category this generator presents.
    pub fn to_morphism(&self) -> GammaMorphism {
        match &self.witness {
            GeneratorWitness::Inner { assignment } => {
                let mut edge_map = BTreeMap::new();
                for e in self.source.edge_ids() {
                    edge_map.insert(e.clone(), e.clone());
                }
                let mut vertex_map = BTreeMap::new();
                for v in self.source.vertex_ids() {
                    if *v == assignment.host_vertex {
                        let guest = &assignment.guest;
                        let edges = guest.edge_ids().map(|e| (e.clone(), e.clone())).collect();
                        let vertices =
                            guest.vertex_ids().map(|w| (w.clone(), w.clone())).collect();
                        vertex_map.insert(
                            v.clone(),
                            GammaDecoration::new(guest.clone(), edges, vertices),
                        );
                    } else {
                        vertex_map.insert(v.clone(), identity_decoration(&self.target, v));
                    }
                }
                GammaMorphism::new(self.source.clone(), self.target.clone(), edge_map, vertex_map)
                    .expect("inner coface is well formed")
            }
            GeneratorWitness::Outer { host, host_vertex, .. } => {
                let mut edge_map = BTreeMap::new();
                if self.source.is_exceptional() {
                    // Leg inclusion of the exceptional edge: the edge maps to
                    // the host edge entering the unary slot vertex.
                    let leg = host
                        .edge_at(host_vertex, Direction::Input, 1)
                        .expect("unary slot has an entering edge")
                        .id
                        .clone();
                    let e = self.source.edge_ids().next().unwrap().clone();
                    edge_map.insert(e, leg);
                } else {
                    for e in self.source.edge_ids() {
                        edge_map.insert(e.clone(), e.clone());
                    }
                }
                let vertex_map = self
                    .source
                    .vertex_ids()
                    .map(|v| (v.clone(), identity_decoration(&self.target, v)))
                    .collect();
                GammaMorphism::new(self.source.clone(), self.target.clone(), edge_map, vertex_map)
                    .expect("outer coface is well formed")
            }
            GeneratorWitness::Codegeneracy { vertex } => {
                // The replay merges the unary vertex's edges; the incoming
                // edge id survives.
                let in_edge = self.source.in_edges(vertex).expect("valid source")[0].clone();
                let out_edge = self.source.out_edges(vertex).expect("valid source")[0].clone();
                let mut edge_map = BTreeMap::new();
                for e in self.source.edge_ids() {
                    if *e == out_edge {
                        edge_map.insert(e.clone(), in_edge.clone());
                    } else {
                        edge_map.insert(e.clone(), e.clone());
                    }
                }
                let mut vertex_map = BTreeMap::new();
                for v in self.source.vertex_ids() {
                    if v == vertex {
                        let shape = WiringGraph::exceptional_edge(None);
                        let edges = [(shape.edge_ids().next().unwrap().clone(), in_edge.clone())]
                            .into();
                        vertex_map.insert(
                            v.clone(),
                            GammaDecoration::new(shape, edges, BTreeMap::new()),
                        );
                    } else {
                        vertex_map.insert(v.clone(), identity_decoration(&self.target, v));
                    }
                }
                GammaMorphism::new(self.source.clone(), self.target.clone(), edge_map, vertex_map)
                    .expect("codegeneracy is well formed")
            }
            GeneratorWitness::Isomorphism { iso } => {
                let edge_map = iso.edge_map.clone();
                let vertex_map = self
                    .source
                    .vertex_ids()
                    .map(|v| {
                        let img = iso.vertex_map[v].clone();
                        (
                            v.clone(),
                            corolla_decoration_via(&self.source, v, &edge_map, img),
                        )
                    })
                    .collect();
                GammaMorphism::new(self.source.clone(), self.target.clone(), edge_map, vertex_map)
                    .expect("isomorphism is well formed")
            }
        }
    }
}

/// Build a morphism from a weak isomorphism between graphs.
pub fn iso_to_morphism(
    source: &WiringGraph,
    target: &WiringGraph,
    iso: &crate::graph::GraphIso,
) -> GammaMorphism {
    let gen = GeneratorMap {
        kind: GeneratorKind::Isomorphism,
        source: source.clone(),
        target: target.clone(),
        witness: GeneratorWitness::Isomorphism { iso: iso.clone() },
    };
    gen.to_morphism()
}

impl Serialize for GammaMorphism {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a> {
            vertex: &'a VertexId,
            shape: &'a WiringGraph,
            edge_decoration: &'a BTreeMap<EdgeId, EdgeId>,
            vertex_decoration: &'a BTreeMap<VertexId, VertexId>,
        }
        let f1: Vec<Entry> = self
            .vertex_map
            .iter()
            .map(|(v, d)| Entry {
                vertex: v,
                shape: &d.shape,
                edge_decoration: &d.edges,
                vertex_decoration: &d.vertices,
            })
            .collect();
        let mut s = serializer.serialize_struct("GammaMorphism", 4)?;
        s.serialize_field("source", &self.source)?;
        s.serialize_field("target", &self.target)?;
        s.serialize_field("f0", &self.edge_map)?;
        s.serialize_field("f1", &f1)?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for GammaMorphism {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Entry {
            vertex: VertexId,
            shape: WiringGraph,
            edge_decoration: BTreeMap<EdgeId, EdgeId>,
            vertex_decoration: BTreeMap<VertexId, VertexId>,
        }
        #[derive(Deserialize)]
        struct Raw {
            source: WiringGraph,
            target: WiringGraph,
            f0: BTreeMap<EdgeId, EdgeId>,
            f1: Vec<Entry>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let vertex_map = raw
            .f1
            .into_iter()
            .map(|e| {
                (
                    e.vertex,
                    GammaDecoration::new(e.shape, e.edge_decoration, e.vertex_decoration),
                )
            })
            .collect();
        GammaMorphism::new(raw.source, raw.target, raw.f0, vertex_map)
            .map_err(serde::de::Error::custom)
    }
}
