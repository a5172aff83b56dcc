//! Exhaustive isomorphism search between small wiring graphs.
//!
//! Strict isomorphisms preserve all structure including port and slot
//! orderings; weak isomorphisms preserve incidence, direction, and coloring
//! but forget the orderings.

use super::canonical::Labels;
use super::{Direction, EdgeEnd, EdgeId, Vertex, VertexId, WiringGraph};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsoMode {
    Strict,
    Weak,
}

/// A vertex-and-edge bijection witnessing an isomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphIso {
    pub vertex_map: BTreeMap<VertexId, VertexId>,
    pub edge_map: BTreeMap<EdgeId, EdgeId>,
}

impl GraphIso {
    pub fn is_identity(&self) -> bool {
        self.vertex_map.iter().all(|(a, b)| a == b) && self.edge_map.iter().all(|(a, b)| a == b)
    }
}

/// All isomorphisms from `g` to `h`. The list is exhaustive; an empty list
/// means the graphs are not isomorphic in the requested mode.
pub fn find_isomorphisms(g: &WiringGraph, h: &WiringGraph, mode: IsoMode) -> Vec<GraphIso> {
    find_isomorphisms_labeled(g, h, mode, &Labels::empty(), &Labels::empty())
}

/// Isomorphism search that additionally requires vertex and edge labels to be
/// preserved. Unlabeled items carry the empty label.
pub fn find_isomorphisms_labeled(
    g: &WiringGraph,
    h: &WiringGraph,
    mode: IsoMode,
    g_labels: &Labels,
    h_labels: &Labels,
) -> Vec<GraphIso> {
    if g.vertex_count() != h.vertex_count()
        || g.edge_count() != h.edge_count()
        || g.inputs().len() != h.inputs().len()
        || g.outputs().len() != h.outputs().len()
    {
        return Vec::new();
    }

    let gv: Vec<&Vertex> = g.vertices().collect();
    let hv: Vec<&Vertex> = h.vertices().collect();
    let mut results = Vec::new();
    let mut assignment: Vec<usize> = Vec::new();
    let mut used = vec![false; hv.len()];

    fn compatible(a: &Vertex, b: &Vertex, la: &str, lb: &str) -> bool {
        a.in_arity == b.in_arity && a.out_arity == b.out_arity && la == lb
    }

    fn recurse(
        g: &WiringGraph,
        h: &WiringGraph,
        mode: IsoMode,
        gl: &Labels,
        hl: &Labels,
        gv: &[&Vertex],
        hv: &[&Vertex],
        assignment: &mut Vec<usize>,
        used: &mut Vec<bool>,
        results: &mut Vec<GraphIso>,
    ) {
        if assignment.len() == gv.len() {
            let vmap: BTreeMap<VertexId, VertexId> = assignment
                .iter()
                .enumerate()
                .map(|(i, &j)| (gv[i].id.clone(), hv[j].id.clone()))
                .collect();
            extend_edges(g, h, mode, gl, hl, &vmap, results);
            return;
        }
        let i = assignment.len();
        for j in 0..hv.len() {
            if used[j]
                || !compatible(
                    gv[i],
                    hv[j],
                    gl.vertex_label(&gv[i].id),
                    hl.vertex_label(&hv[j].id),
                )
            {
                continue;
            }
            used[j] = true;
            assignment.push(j);
            recurse(g, h, mode, gl, hl, gv, hv, assignment, used, results);
            assignment.pop();
            used[j] = false;
        }
    }

    recurse(
        g,
        h,
        mode,
        g_labels,
        h_labels,
        &gv,
        &hv,
        &mut assignment,
        &mut used,
        &mut results,
    );
    results
}

/// Try to complete a vertex bijection to full isomorphisms on edges.
fn extend_edges(
    g: &WiringGraph,
    h: &WiringGraph,
    mode: IsoMode,
    gl: &Labels,
    hl: &Labels,
    vmap: &BTreeMap<VertexId, VertexId>,
    results: &mut Vec<GraphIso>,
) {
    match mode {
        IsoMode::Strict => {
            let mut emap = BTreeMap::new();
            let mut hit = BTreeMap::new();
            for e in g.edges() {
                let want_tail = transport_end(&e.tail, vmap);
                let want_head = transport_end(&e.head, vmap);
                let candidate = h.edges().find(|f| {
                    f.tail == want_tail
                        && f.head == want_head
                        && f.color == e.color
                        && hl.edge_label(&f.id) == gl.edge_label(&e.id)
                });
                match candidate {
                    Some(f) => {
                        if hit.insert(f.id.clone(), ()).is_some() {
                            return;
                        }
                        emap.insert(e.id.clone(), f.id.clone());
                    }
                    None => return,
                }
            }
            results.push(GraphIso {
                vertex_map: vmap.clone(),
                edge_map: emap,
            });
        }
        IsoMode::Weak => {
            // Group edges by the structure a weak iso must preserve, then
            // enumerate bijections class by class.
            let key_of = |labels: &Labels,
                          e: &super::Edge,
                          map: Option<&BTreeMap<VertexId, VertexId>>|
             -> String {
                let end_key = |end: &EdgeEnd, dir: Direction| -> String {
                    match end {
                        EdgeEnd::Slot(_) => match dir {
                            Direction::Input => "gi".into(),
                            Direction::Output => "go".into(),
                        },
                        EdgeEnd::Port(p) => {
                            let v = match map {
                                Some(m) => m[&p.vertex].clone(),
                                None => p.vertex.clone(),
                            };
                            format!("v{v}")
                        }
                    }
                };
                format!(
                    "{}|{}|{}|{}",
                    end_key(&e.tail, Direction::Input),
                    end_key(&e.head, Direction::Output),
                    e.color.as_ref().map(|c| c.as_str()).unwrap_or(""),
                    labels.edge_label(&e.id),
                )
            };
            let mut g_classes: BTreeMap<String, Vec<EdgeId>> = BTreeMap::new();
            for e in g.edges() {
                g_classes
                    .entry(key_of(gl, e, Some(vmap)))
                    .or_default()
                    .push(e.id.clone());
            }
            let mut h_classes: BTreeMap<String, Vec<EdgeId>> = BTreeMap::new();
            for e in h.edges() {
                h_classes
                    .entry(key_of(hl, e, None))
                    .or_default()
                    .push(e.id.clone());
            }
            if g_classes.len() != h_classes.len() {
                return;
            }
            for (k, gc) in &g_classes {
                match h_classes.get(k) {
                    Some(hc) if hc.len() == gc.len() => {}
                    _ => return,
                }
            }
            let classes: Vec<(&Vec<EdgeId>, &Vec<EdgeId>)> = g_classes
                .iter()
                .map(|(k, gc)| (gc, &h_classes[k]))
                .collect();
            let mut emap = BTreeMap::new();
            enumerate_class_bijections(&classes, 0, &mut emap, vmap, results);
        }
    }
}

fn enumerate_class_bijections(
    classes: &[(&Vec<EdgeId>, &Vec<EdgeId>)],
    idx: usize,
    emap: &mut BTreeMap<EdgeId, EdgeId>,
    vmap: &BTreeMap<VertexId, VertexId>,
    results: &mut Vec<GraphIso>,
) {
    if idx == classes.len() {
        results.push(GraphIso {
            vertex_map: vmap.clone(),
            edge_map: emap.clone(),
        });
        return;
    }
    let (gc, hc) = classes[idx];
    let mut perm: Vec<usize> = (0..hc.len()).collect();
    permute(&mut perm, 0, &mut |p| {
        for (a, &b) in gc.iter().zip(p.iter()) {
            emap.insert(a.clone(), hc[b].clone());
        }
        enumerate_class_bijections(classes, idx + 1, emap, vmap, results);
        for a in gc {
            emap.remove(a);
        }
    });
}

fn permute(items: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, f);
        items.swap(k, i);
    }
}

/// Cheap weak-isomorphism test via canonical forms.
pub fn weakly_isomorphic(g: &WiringGraph, h: &WiringGraph) -> bool {
    super::canonical_form(g) == super::canonical_form(h)
}

fn transport_end(end: &EdgeEnd, vmap: &BTreeMap<VertexId, VertexId>) -> EdgeEnd {
    match end {
        EdgeEnd::Slot(s) => EdgeEnd::Slot(*s),
        EdgeEnd::Port(p) => EdgeEnd::Port(super::Port {
            vertex: vmap[&p.vertex].clone(),
            direction: p.direction,
            index: p.index,
        }),
    }
}
