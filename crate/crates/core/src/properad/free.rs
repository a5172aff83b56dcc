//! Bounded enumeration of the free properad on a graph: decorated graphs
//! whose edges are colored by host edges and whose vertices map to host
//! vertices compatibly.

use crate::gamma::{reorder_boundary, DecoratedGraph};
use crate::graph::{Edge, EdgeId, Vertex, VertexId, WiringGraph};
use std::collections::BTreeMap;

/// An operation of the free properad on a host graph.
pub type FreeElement = DecoratedGraph<EdgeId, VertexId>;

/// All free-properad elements over `host` with at most `max_vertices`
/// vertices, one representative per decoration-respecting weak isomorphism
/// class, across all boundary profiles.
pub fn free_elements_all(host: &WiringGraph, max_vertices: usize) -> Vec<FreeElement> {
    let mut seen: BTreeMap<String, FreeElement> = BTreeMap::new();
    for e in host.edge_ids() {
        let elem = edge_element(e);
        seen.entry(elem.canonical_key()).or_insert(elem);
    }
    let vids: Vec<VertexId> = host.vertex_ids().cloned().collect();
    for k in 1..=max_vertices {
        for occ in multisets(&vids, k) {
            enumerate_wirings(host, &occ, &mut seen);
        }
    }
    seen.into_values().collect()
}

/// Elements with the given ordered boundary profile (lists of host edges);
/// representatives are constructed with their legs in profile order.
pub fn free_elements(
    host: &WiringGraph,
    profile_in: &[EdgeId],
    profile_out: &[EdgeId],
    max_vertices: usize,
) -> Vec<FreeElement> {
    let mut want_in: Vec<&EdgeId> = profile_in.iter().collect();
    let mut want_out: Vec<&EdgeId> = profile_out.iter().collect();
    want_in.sort();
    want_out.sort();
    free_elements_all(host, max_vertices)
        .into_iter()
        .filter(|elem| {
            let (ins, outs) = elem.boundary_decorations();
            let mut ins: Vec<&EdgeId> = ins;
            let mut outs: Vec<&EdgeId> = outs;
            ins.sort();
            outs.sort();
            ins == want_in && outs == want_out
        })
        .map(|elem| reprofile(elem, profile_in, profile_out))
        .collect()
}

/// The identity-style element on one host edge.
fn edge_element(e: &EdgeId) -> FreeElement {
    let shape = WiringGraph::exceptional_edge(None);
    let id = shape.edge_ids().next().unwrap().clone();
    FreeElement::new(shape, [(id, e.clone())].into(), BTreeMap::new())
}

/// Reorder an element's legs to present the requested boundary profile.
fn reprofile(elem: FreeElement, profile_in: &[EdgeId], profile_out: &[EdgeId]) -> FreeElement {
    let pick = |slots: &[EdgeId], wanted: &[EdgeId]| -> Vec<EdgeId> {
        let mut remaining: Vec<EdgeId> = slots.to_vec();
        wanted
            .iter()
            .map(|dec| {
                let pos = remaining
                    .iter()
                    .position(|s| elem.edges[s] == *dec)
                    .expect("profile multisets match");
                remaining.remove(pos)
            })
            .collect()
    };
    let inputs = pick(elem.shape.inputs(), profile_in);
    let outputs = pick(elem.shape.outputs(), profile_out);
    let shape = reorder_boundary(&elem.shape, &inputs, &outputs);
    FreeElement::new(shape, elem.edges, elem.vertices)
}

/// Nondecreasing index multisets of size `k`.
fn multisets(vids: &[VertexId], k: usize) -> Vec<Vec<VertexId>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(
        vids: &[VertexId],
        k: usize,
        start: usize,
        current: &mut Vec<VertexId>,
        out: &mut Vec<Vec<VertexId>>,
    ) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..vids.len() {
            current.push(vids[i].clone());
            rec(vids, k, i, current, out);
            current.pop();
        }
    }
    rec(vids, k, 0, &mut current, &mut out);
    out
}

/// Enumerate all ways of wiring the occurrences together: for each ordered
/// occurrence pair and each host edge, choose how many shape edges with that
/// decoration run between them; leftovers become legs.
fn enumerate_wirings(
    host: &WiringGraph,
    occ: &[VertexId],
    seen: &mut BTreeMap<String, FreeElement>,
) {
    let k = occ.len();
    let out_colors: Vec<Vec<EdgeId>> = occ
        .iter()
        .map(|v| host.out_edges(v).expect("valid host"))
        .collect();
    let in_colors: Vec<Vec<EdgeId>> = occ
        .iter()
        .map(|v| host.in_edges(v).expect("valid host"))
        .collect();

    let count = |list: &[EdgeId], c: &EdgeId| list.iter().filter(|e| *e == c).count();

    // Cells: (from occurrence, to occurrence, decoration).
    let mut cells: Vec<(usize, usize, EdgeId)> = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if i == j {
                continue;
            }
            let mut decs: Vec<EdgeId> = out_colors[i]
                .iter()
                .filter(|c| in_colors[j].contains(c))
                .cloned()
                .collect();
            decs.sort();
            decs.dedup();
            for c in decs {
                cells.push((i, j, c));
            }
        }
    }

    let mut counts: Vec<usize> = vec![0; cells.len()];
    let mut out_used: Vec<BTreeMap<EdgeId, usize>> = vec![BTreeMap::new(); k];
    let mut in_used: Vec<BTreeMap<EdgeId, usize>> = vec![BTreeMap::new(); k];

    #[allow(clippy::too_many_arguments)]
    fn rec(
        host: &WiringGraph,
        occ: &[VertexId],
        cells: &[(usize, usize, EdgeId)],
        idx: usize,
        counts: &mut Vec<usize>,
        out_used: &mut Vec<BTreeMap<EdgeId, usize>>,
        in_used: &mut Vec<BTreeMap<EdgeId, usize>>,
        out_colors: &[Vec<EdgeId>],
        in_colors: &[Vec<EdgeId>],
        count: &impl Fn(&[EdgeId], &EdgeId) -> usize,
        seen: &mut BTreeMap<String, FreeElement>,
    ) {
        if idx == cells.len() {
            if let Some(elem) = assemble(host, occ, cells, counts, out_colors, in_colors) {
                seen.entry(elem.canonical_key()).or_insert(elem);
            }
            return;
        }
        let (i, j, ref c) = cells[idx];
        let cap = (count(&out_colors[i], c) - out_used[i].get(c).copied().unwrap_or(0))
            .min(count(&in_colors[j], c) - in_used[j].get(c).copied().unwrap_or(0));
        for n in 0..=cap {
            counts[idx] = n;
            *out_used[i].entry(c.clone()).or_default() += n;
            *in_used[j].entry(c.clone()).or_default() += n;
            rec(
                host, occ, cells, idx + 1, counts, out_used, in_used, out_colors, in_colors,
                count, seen,
            );
            *out_used[i].get_mut(c).unwrap() -= n;
            *in_used[j].get_mut(c).unwrap() -= n;
            counts[idx] = 0;
        }
    }
    rec(
        host,
        occ,
        &cells,
        0,
        &mut counts,
        &mut out_used,
        &mut in_used,
        &out_colors,
        &in_colors,
        &count,
        seen,
    );
}

/// Build the decorated shape for one wiring choice, if it is a valid graph.
fn assemble(
    host: &WiringGraph,
    occ: &[VertexId],
    cells: &[(usize, usize, EdgeId)],
    counts: &[usize],
    out_colors: &[Vec<EdgeId>],
    in_colors: &[Vec<EdgeId>],
) -> Option<FreeElement> {
    let k = occ.len();
    let wname = |i: usize| format!("w{}", i + 1);
    let vertices: Vec<Vertex> = (0..k)
        .map(|i| Vertex::new(wname(i), in_colors[i].len(), out_colors[i].len()))
        .collect();

    // Port cursors per occurrence and decoration; ports are assigned in the
    // host's port order, so the edge at in-port p of occurrence i is
    // decorated in_colors[i][p-1].
    let mut next_out: Vec<BTreeMap<&EdgeId, Vec<usize>>> = (0..k)
        .map(|i| {
            let mut m: BTreeMap<&EdgeId, Vec<usize>> = BTreeMap::new();
            for (p, c) in out_colors[i].iter().enumerate() {
                m.entry(c).or_default().push(p + 1);
            }
            m
        })
        .collect();
    let mut next_in: Vec<BTreeMap<&EdgeId, Vec<usize>>> = (0..k)
        .map(|j| {
            let mut m: BTreeMap<&EdgeId, Vec<usize>> = BTreeMap::new();
            for (p, c) in in_colors[j].iter().enumerate() {
                m.entry(c).or_default().push(p + 1);
            }
            m
        })
        .collect();

    let mut edges: Vec<Edge> = Vec::new();
    let mut decorations: BTreeMap<EdgeId, EdgeId> = BTreeMap::new();
    let mut eid = 0usize;
    for (cell, &n) in cells.iter().zip(counts) {
        let (i, j, ref c) = *cell;
        for _ in 0..n {
            eid += 1;
            let id = EdgeId::new(format!("s{eid}"));
            let p = next_out[i].get_mut(c).unwrap().remove(0);
            let q = next_in[j].get_mut(c).unwrap().remove(0);
            edges.push(Edge::between(id.clone(), (wname(i), p), (wname(j), q)));
            decorations.insert(id, c.clone());
        }
    }
    let mut inputs: Vec<EdgeId> = Vec::new();
    let mut outputs: Vec<EdgeId> = Vec::new();
    for (j, ports) in next_in.iter().enumerate() {
        for (c, leftover) in ports {
            for &p in leftover {
                eid += 1;
                let id = EdgeId::new(format!("s{eid}"));
                edges.push(Edge::from_input(id.clone(), inputs.len() + 1, (wname(j), p)));
                decorations.insert(id.clone(), (*c).clone());
                inputs.push(id);
            }
        }
    }
    for (i, ports) in next_out.iter().enumerate() {
        for (c, leftover) in ports {
            for &p in leftover {
                eid += 1;
                let id = EdgeId::new(format!("s{eid}"));
                edges.push(Edge::to_output(id.clone(), (wname(i), p), outputs.len() + 1));
                decorations.insert(id.clone(), (*c).clone());
                outputs.push(id);
            }
        }
    }
    let shape = WiringGraph::new(vertices, edges, inputs, outputs).ok()?;
    if !shape.is_valid() {
        return None;
    }
    let vertex_decorations: BTreeMap<VertexId, VertexId> = occ
        .iter()
        .enumerate()
        .map(|(i, v)| (VertexId::new(wname(i)), v.clone()))
        .collect();
    let elem = FreeElement::new(shape, decorations, vertex_decorations);
    debug_assert!(host.vertex_count() == 0 || !elem.vertices.is_empty());
    Some(elem)
}
