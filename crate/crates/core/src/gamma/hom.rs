//! Subgraphs and exhaustive hom-set enumeration.

use super::decorated::{reorder_boundary, GammaDecoration};
use super::morphism::GammaMorphism;
use crate::graph::{Direction, Edge, EdgeId, VertexId, WiringGraph};
use crate::substitution::induced_subgraph;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// A subgraph of a wiring graph: a single edge, or the graph induced by a
/// nonempty vertex set (all incident edges, crossing edges becoming legs).
///
/// A vertex set qualifies only when it is connected and no directed path
/// leaves it and re-enters it; equivalently, the host is rebuilt from the
/// induced graph by substitution into the contracted host. On simply
/// connected hosts this is the same as connectivity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Subgraph {
    Edge(EdgeId),
    VertexInduced(BTreeSet<VertexId>),
}

/// True when `set` induces a subgraph of `host` in the above sense.
pub fn is_subgraph_set(host: &WiringGraph, set: &BTreeSet<VertexId>) -> bool {
    crate::substitution::contract(host, set, "z").is_ok()
}

impl Subgraph {
    /// Materialize the subgraph as a standalone graph. Ids are inherited
    /// from the host.
    pub fn to_graph(&self, host: &WiringGraph) -> WiringGraph {
        match self {
            Subgraph::Edge(e) => {
                let edge = Edge::exceptional(e.clone(), 1, 1);
                WiringGraph::new(vec![], vec![edge], vec![e.clone()], vec![e.clone()])
                    .expect("edge subgraph is well formed")
            }
            Subgraph::VertexInduced(set) => induced_subgraph(host, set),
        }
    }

    /// The subgraph with its inclusion decorations.
    pub fn to_decoration(&self, host: &WiringGraph) -> GammaDecoration {
        let shape = self.to_graph(host);
        let edges = shape.edge_ids().map(|e| (e.clone(), e.clone())).collect();
        let vertices = shape.vertex_ids().map(|v| (v.clone(), v.clone())).collect();
        GammaDecoration::new(shape, edges, vertices)
    }
}

/// All subgraphs of `g`: every edge, plus every connected vertex-induced
/// subgraph.
pub fn subgraphs(g: &WiringGraph) -> Vec<Subgraph> {
    let mut out: Vec<Subgraph> = g.edge_ids().map(|e| Subgraph::Edge(e.clone())).collect();
    let vids: Vec<VertexId> = g.vertex_ids().cloned().collect();
    for mask in 1u32..(1 << vids.len()) {
        let set: BTreeSet<VertexId> = vids
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, v)| v.clone())
            .collect();
        if is_subgraph_set(g, &set) {
            out.push(Subgraph::VertexInduced(set));
        }
    }
    out
}

/// Reusable enumeration state for morphisms into one fixed target: the
/// target's decorated subgraphs bucketed by boundary arity.
pub struct HomContext {
    target: WiringGraph,
    candidates: BTreeMap<(usize, usize), Vec<GammaDecoration>>,
}

impl HomContext {
    pub fn new(target: &WiringGraph) -> HomContext {
        let mut candidates: BTreeMap<(usize, usize), Vec<GammaDecoration>> = BTreeMap::new();
        for s in subgraphs(target) {
            let d = s.to_decoration(target);
            candidates
                .entry(d.shape.boundary_arities())
                .or_default()
                .push(d);
        }
        HomContext {
            target: target.clone(),
            candidates,
        }
    }

    pub fn hom_from(&self, h: &WiringGraph) -> Vec<GammaMorphism> {
        hom_set_with(h, &self.target, &self.candidates)
    }
}

/// Exhaustive, duplicate-free list of morphisms `h -> g` in the graphical
/// category. Every valid morphism assigns each source vertex a subgraph of
/// the target; candidates are enumerated per vertex with all boundary
/// alignments, pruned by edge-map consistency, and filtered by the subgraph
/// condition on the image.
pub fn hom_set(h: &WiringGraph, g: &WiringGraph) -> Vec<GammaMorphism> {
    HomContext::new(g).hom_from(h)
}

fn hom_set_with(
    h: &WiringGraph,
    g: &WiringGraph,
    candidates: &BTreeMap<(usize, usize), Vec<GammaDecoration>>,
) -> Vec<GammaMorphism> {
    let mut out: Vec<GammaMorphism> = Vec::new();
    let mut seen: BTreeSet<String> = BTreeSet::new();

    if h.vertex_count() == 0 {
        let src_edge = h.edge_ids().next().expect("valid graph").clone();
        for e in g.edge_ids() {
            let edge_map = [(src_edge.clone(), e.clone())].into();
            let m = GammaMorphism::new(h.clone(), g.clone(), edge_map, BTreeMap::new())
                .expect("edge morphism is well formed");
            out.push(m);
        }
        return out;
    }

    let order = connected_vertex_order(h);
    let mut edge_map: BTreeMap<EdgeId, EdgeId> = BTreeMap::new();
    let mut vertex_map: BTreeMap<VertexId, GammaDecoration> = BTreeMap::new();
    assign(
        h,
        g,
        &order,
        0,
        candidates,
        &mut edge_map,
        &mut vertex_map,
        &mut |edge_map, vertex_map| {
            if !pieces_form_subgraph(h, g, edge_map, vertex_map) {
                return;
            }
            let m = GammaMorphism::new_prevalidated(
                h.clone(),
                g.clone(),
                edge_map.clone(),
                vertex_map.clone(),
            );
            if seen.insert(m.key()) {
                out.push(m);
            }
        },
    );
    out
}

/// Subgraph condition on morphism data: the pieces must occupy pairwise
/// disjoint vertex sets, piece-internal decorations must be globally
/// distinct, the edge map must be injective up to the merges forced by
/// edge-valued pieces and must avoid piece-internal edges, and the occupied
/// vertex set must be convex in the target. Equivalent to computing the
/// image and checking that it embeds.
pub(super) fn pieces_form_subgraph(
    h: &WiringGraph,
    g: &WiringGraph,
    edge_map: &BTreeMap<EdgeId, EdgeId>,
    vertex_map: &BTreeMap<VertexId, GammaDecoration>,
) -> bool {
    // Disjoint vertex occupation.
    let mut occupied: BTreeSet<&VertexId> = BTreeSet::new();
    let mut internal: BTreeSet<&EdgeId> = BTreeSet::new();
    for piece in vertex_map.values() {
        for target_vertex in piece.vertices.values() {
            if !occupied.insert(target_vertex) {
                return false;
            }
        }
        for e in piece.shape.internal_edges() {
            if !internal.insert(&piece.edges[&e.id]) {
                return false;
            }
        }
    }
    // Merge classes of source edges through edge-valued pieces.
    let ids: Vec<&EdgeId> = h.edge_ids().collect();
    let index: BTreeMap<&EdgeId, usize> = ids.iter().enumerate().map(|(i, e)| (*e, i)).collect();
    let mut parent: Vec<usize> = (0..ids.len()).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let r = find(parent, parent[i]);
            parent[i] = r;
        }
        parent[i]
    }
    for (v, piece) in vertex_map {
        if piece.shape.is_exceptional() {
            let ins = h.in_edges(v).expect("valid source");
            let outs = h.out_edges(v).expect("valid source");
            let a = find(&mut parent, index[&ins[0]]);
            let b = find(&mut parent, index[&outs[0]]);
            parent[a] = b;
        }
    }
    let mut class_values: BTreeMap<usize, &EdgeId> = BTreeMap::new();
    let mut seen_values: BTreeSet<&EdgeId> = BTreeSet::new();
    for (i, e) in ids.iter().enumerate() {
        let root = find(&mut parent, i);
        let value = &edge_map[*e];
        match class_values.get(&root) {
            Some(existing) => {
                if *existing != value {
                    return false;
                }
            }
            None => {
                if internal.contains(value) || !seen_values.insert(value) {
                    return false;
                }
                class_values.insert(root, value);
            }
        }
    }
    // Convex occupation.
    if occupied.is_empty() {
        return true;
    }
    let set: BTreeSet<VertexId> = occupied.into_iter().cloned().collect();
    is_subgraph_set(g, &set)
}

/// Vertices of `h` ordered so that each is adjacent to an earlier one where
/// possible, for early pruning during enumeration.
fn connected_vertex_order(h: &WiringGraph) -> Vec<VertexId> {
    let mut order: Vec<VertexId> = Vec::new();
    let mut remaining: BTreeSet<VertexId> = h.vertex_ids().cloned().collect();
    while let Some(seed) = remaining.iter().next().cloned() {
        let mut queue = vec![seed.clone()];
        remaining.remove(&seed);
        while let Some(v) = queue.pop() {
            order.push(v.clone());
            for e in h.incident_edges(&v) {
                for end in [&e.tail, &e.head] {
                    if let Some(w) = end.vertex() {
                        if remaining.remove(w) {
                            queue.push(w.clone());
                        }
                    }
                }
            }
        }
    }
    order
}

#[allow(clippy::too_many_arguments)]
fn assign(
    h: &WiringGraph,
    g: &WiringGraph,
    order: &[VertexId],
    idx: usize,
    candidates: &BTreeMap<(usize, usize), Vec<GammaDecoration>>,
    edge_map: &mut BTreeMap<EdgeId, EdgeId>,
    vertex_map: &mut BTreeMap<VertexId, GammaDecoration>,
    emit: &mut impl FnMut(&BTreeMap<EdgeId, EdgeId>, &BTreeMap<VertexId, GammaDecoration>),
) {
    if idx == order.len() {
        emit(edge_map, vertex_map);
        return;
    }
    let v = &order[idx];
    let vx = h.vertex(v).unwrap();
    let in_edges = h.in_edges(v).expect("valid source");
    let out_edges = h.out_edges(v).expect("valid source");
    let Some(cands) = candidates.get(&(vx.in_arity, vx.out_arity)) else {
        return;
    };
    for cand in cands {
        // Alignment: port i of v attaches to boundary slot perm[i-1].
        for_each_permutation(vx.in_arity, &mut |in_perm| {
            for_each_permutation(vx.out_arity, &mut |out_perm| {
                let mut added: Vec<EdgeId> = Vec::new();
                let mut ok = true;
                for (side, (ports, perm)) in [(Direction::Input, (&in_edges, in_perm)), (Direction::Output, (&out_edges, out_perm))]
                {
                    let slots = match side {
                        Direction::Input => cand.shape.inputs(),
                        Direction::Output => cand.shape.outputs(),
                    };
                    for (i, e) in ports.iter().enumerate() {
                        let dec = cand.edges[&slots[perm[i] - 1]].clone();
                        match edge_map.get(e) {
                            Some(existing) if *existing != dec => {
                                ok = false;
                                break;
                            }
                            Some(_) => {}
                            None => {
                                edge_map.insert(e.clone(), dec);
                                added.push(e.clone());
                            }
                        }
                    }
                    if !ok {
                        break;
                    }
                }
                if ok {
                    let new_inputs: Vec<EdgeId> = in_perm
                        .iter()
                        .map(|&s| cand.shape.inputs()[s - 1].clone())
                        .collect();
                    let new_outputs: Vec<EdgeId> = out_perm
                        .iter()
                        .map(|&s| cand.shape.outputs()[s - 1].clone())
                        .collect();
                    let shape = reorder_boundary(&cand.shape, &new_inputs, &new_outputs);
                    let d = GammaDecoration::new(shape, cand.edges.clone(), cand.vertices.clone());
                    vertex_map.insert(v.clone(), d);
                    assign(h, g, order, idx + 1, candidates, edge_map, vertex_map, emit);
                    vertex_map.remove(v);
                }
                for e in added {
                    edge_map.remove(&e);
                }
            });
        });
        let _ = cand;
    }
}

/// Call `f` with every permutation of `1..=n` (as a slice).
fn for_each_permutation(n: usize, f: &mut impl FnMut(&[usize])) {
    let mut items: Vec<usize> = (1..=n).collect();
    fn rec(items: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k == items.len() {
            f(items);
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            rec(items, k + 1, f);
            items.swap(k, i);
        }
    }
    rec(&mut items, 0, f);
}
