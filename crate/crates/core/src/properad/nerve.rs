//! The properadic nerve: decorations of a graph by a finite properad, and
//! their contravariant restriction along morphisms of the graphical
//! category.

use super::finite::{FiniteProperad, OpId, PropDecoration};
use super::ProperadError;
use crate::gamma::GammaMorphism;
use crate::graph::{Color, EdgeId, VertexId, WiringGraph};
use std::collections::BTreeMap;

/// All decorations of `g` by `p`: every total edge coloring together with
/// every choice of an operation of the induced profile at each vertex.
pub fn nerve(p: &FiniteProperad, g: &WiringGraph) -> Result<Vec<PropDecoration>, ProperadError> {
    for v in g.vertices() {
        if v.in_arity > p.arity_bounds().0 || v.out_arity > p.arity_bounds().1 {
            return Err(ProperadError::ArityOverflow {
                got: (v.in_arity, v.out_arity),
                max: p.arity_bounds(),
            });
        }
    }
    let edge_ids: Vec<EdgeId> = g.edge_ids().cloned().collect();
    let palette: Vec<Color> = p.colors().iter().cloned().collect();
    let mut out = Vec::new();
    let mut coloring: BTreeMap<EdgeId, Color> = BTreeMap::new();
    color_edges(p, g, &edge_ids, 0, &palette, &mut coloring, &mut out);
    Ok(out)
}

fn color_edges(
    p: &FiniteProperad,
    g: &WiringGraph,
    edge_ids: &[EdgeId],
    idx: usize,
    palette: &[Color],
    coloring: &mut BTreeMap<EdgeId, Color>,
    out: &mut Vec<PropDecoration>,
) {
    if idx == edge_ids.len() {
        let vertices: Vec<VertexId> = g.vertex_ids().cloned().collect();
        let mut ops: BTreeMap<VertexId, OpId> = BTreeMap::new();
        decorate_vertices(p, g, &vertices, 0, coloring, &mut ops, out);
        return;
    }
    for c in palette {
        coloring.insert(edge_ids[idx].clone(), c.clone());
        color_edges(p, g, edge_ids, idx + 1, palette, coloring, out);
    }
    coloring.remove(&edge_ids[idx]);
}

fn decorate_vertices(
    p: &FiniteProperad,
    g: &WiringGraph,
    vertices: &[VertexId],
    idx: usize,
    coloring: &BTreeMap<EdgeId, Color>,
    ops: &mut BTreeMap<VertexId, OpId>,
    out: &mut Vec<PropDecoration>,
) {
    if idx == vertices.len() {
        out.push(PropDecoration::new(
            // Shapes of decorations stay uncolored; the coloring is the
            // decoration data.
            g.clone(),
            coloring.clone(),
            ops.clone(),
        ));
        return;
    }
    let v = &vertices[idx];
    let profile = crate::graph::Biprofile::new(
        g.in_edges(v).expect("valid graph").iter().map(|e| coloring[e].clone()).collect(),
        g.out_edges(v).expect("valid graph").iter().map(|e| coloring[e].clone()).collect(),
    );
    let candidates: Vec<OpId> = p.ops_with_profile(&profile).cloned().collect();
    for op in candidates {
        ops.insert(v.clone(), op);
        decorate_vertices(p, g, vertices, idx + 1, coloring, ops, out);
    }
    ops.remove(v);
}

/// Pull a decoration of the target of `f` back to one of its source: edge
/// colors compose with the edge map, and each source vertex evaluates the
/// restriction of `x` over its assigned decorated shape.
pub fn nerve_restrict(
    p: &FiniteProperad,
    f: &GammaMorphism,
    x: &PropDecoration,
) -> Result<PropDecoration, ProperadError> {
    if x.shape != *f.target() {
        return Err(ProperadError::BadDecoration(
            "decoration shape is not the morphism target".into(),
        ));
    }
    let edges: BTreeMap<EdgeId, Color> = f
        .source()
        .edge_ids()
        .map(|e| (e.clone(), x.edges[&f.edge_map()[e]].clone()))
        .collect();
    let mut vertices: BTreeMap<VertexId, OpId> = BTreeMap::new();
    for w in f.source().vertex_ids() {
        let piece = f.vertex_assignment(w);
        let mut ops: BTreeMap<VertexId, OpId> = BTreeMap::new();
        for (v, dec) in &piece.vertices {
            // A shape vertex may occupy its target vertex's ports in
            // permuted order; align the operation along the decorations.
            let align = |dir: crate::graph::Direction| -> Result<Vec<usize>, ProperadError> {
                let shape_ports = match dir {
                    crate::graph::Direction::Input => piece.shape.in_edges(v),
                    crate::graph::Direction::Output => piece.shape.out_edges(v),
                }
                .map_err(|e| ProperadError::BadDecoration(e.to_string()))?;
                let target_ports = match dir {
                    crate::graph::Direction::Input => f.target().in_edges(dec),
                    crate::graph::Direction::Output => f.target().out_edges(dec),
                }
                .map_err(|e| ProperadError::BadDecoration(e.to_string()))?;
                shape_ports
                    .iter()
                    .map(|e| {
                        target_ports
                            .iter()
                            .position(|t| t == &piece.edges[e])
                            .map(|i| i + 1)
                            .ok_or_else(|| {
                                ProperadError::BadDecoration(format!(
                                    "port decoration of `{v}` misses target vertex `{dec}`"
                                ))
                            })
                    })
                    .collect()
            };
            let in_perm = align(crate::graph::Direction::Input)?;
            let out_perm = align(crate::graph::Direction::Output)?;
            let aligned = p.apply_permutation(&x.vertices[dec], &in_perm, &out_perm)?;
            ops.insert(v.clone(), aligned);
        }
        let restricted = PropDecoration::new(
            piece.shape.clone(),
            piece
                .edges
                .iter()
                .map(|(e, dec)| (e.clone(), x.edges[dec].clone()))
                .collect(),
            ops,
        );
        vertices.insert(w.clone(), p.evaluate(&restricted)?);
    }
    Ok(PropDecoration::new(f.source().clone(), edges, vertices))
}
