//! Canonical forms for wiring graphs up to weak isomorphism.
//!
//! The encoding is the lexicographic minimum over admissible vertex
//! orderings of a textual serialization that forgets ids, port orders, and
//! slot orders. Two valid graphs receive equal encodings exactly when they
//! are weakly isomorphic. Exhaustive permutation search with pruning on
//! vertex invariants; all targets are desk scale.

use super::{Direction, EdgeEnd, EdgeId, VertexId, WiringGraph};
use std::collections::BTreeMap;

/// Optional vertex and edge labels folded into canonical forms and
/// label-respecting isomorphism searches. Decorated graphs canonicalize by
/// passing their decorations as labels.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Labels {
    pub vertex: BTreeMap<VertexId, String>,
    pub edge: BTreeMap<EdgeId, String>,
}

impl Labels {
    pub fn empty() -> Labels {
        Labels::default()
    }

    pub fn vertex_label(&self, v: &VertexId) -> &str {
        self.vertex.get(v).map(String::as_str).unwrap_or("")
    }

    pub fn edge_label(&self, e: &EdgeId) -> &str {
        self.edge.get(e).map(String::as_str).unwrap_or("")
    }
}

/// Canonical byte encoding of `g` up to weak isomorphism.
pub fn canonical_form(g: &WiringGraph) -> String {
    canonical_form_labeled(g, &Labels::empty())
}

/// Canonical encoding that also separates graphs by vertex and edge labels.
pub fn canonical_form_labeled(g: &WiringGraph, labels: &Labels) -> String {
    let mut vids: Vec<&VertexId> = g.vertex_ids().collect();

    // Weak-iso-invariant key per vertex; orderings only permute within
    // equal-key blocks.
    let key_of = |v: &VertexId| -> String {
        let vertex = g.vertex(v).unwrap();
        let mut incident: Vec<String> = g
            .incident_edges(v)
            .into_iter()
            .flat_map(|e| {
                let mut parts = Vec::new();
                let color = e.color.as_ref().map(|c| c.as_str()).unwrap_or("");
                let label = labels.edge_label(&e.id);
                if e.tail.vertex() == Some(v) {
                    parts.push(format!(
                        "o:{}:{}:{}",
                        color,
                        label,
                        if e.head.is_slot() { "leg" } else { "int" }
                    ));
                }
                if e.head.vertex() == Some(v) {
                    parts.push(format!(
                        "i:{}:{}:{}",
                        color,
                        label,
                        if e.tail.is_slot() { "leg" } else { "int" }
                    ));
                }
                parts
            })
            .collect();
        incident.sort();
        format!(
            "{},{},{},[{}]",
            vertex.in_arity,
            vertex.out_arity,
            labels.vertex_label(v),
            incident.join(";")
        )
    };

    let keys: BTreeMap<&VertexId, String> = vids.iter().map(|v| (*v, key_of(v))).collect();
    vids.sort_by(|a, b| keys[*a].cmp(&keys[*b]).then(a.cmp(b)));

    // Block boundaries between distinct keys.
    let mut blocks: Vec<(usize, usize)> = Vec::new();
    let mut start = 0;
    for i in 1..=vids.len() {
        if i == vids.len() || keys[vids[i]] != keys[vids[i - 1]] {
            blocks.push((start, i));
            start = i;
        }
    }

    let mut best: Option<String> = None;
    let mut order = vids.clone();
    permute_blocks(&mut order, &blocks, 0, &mut |order| {
        let enc = encode(g, labels, order);
        if best.as_ref().map_or(true, |b| enc < *b) {
            best = Some(enc);
        }
    });
    best.unwrap_or_else(|| encode(g, labels, &[]))
}

fn permute_blocks<'a>(
    order: &mut Vec<&'a VertexId>,
    blocks: &[(usize, usize)],
    block: usize,
    f: &mut impl FnMut(&[&'a VertexId]),
) {
    if block == blocks.len() {
        f(order);
        return;
    }
    let (lo, hi) = blocks[block];
    fn heap<'a>(
        order: &mut Vec<&'a VertexId>,
        lo: usize,
        k: usize,
        hi: usize,
        blocks: &[(usize, usize)],
        block: usize,
        f: &mut impl FnMut(&[&'a VertexId]),
    ) {
        if k == hi {
            permute_blocks(order, blocks, block + 1, f);
            return;
        }
        for i in k..hi {
            order.swap(k, i);
            heap(order, lo, k + 1, hi, blocks, block, f);
            order.swap(k, i);
        }
    }
    heap(order, lo, lo, hi, blocks, block, f);
}

fn encode(g: &WiringGraph, labels: &Labels, order: &[&VertexId]) -> String {
    let pos: BTreeMap<&VertexId, usize> = order.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let mut out = String::new();
    out.push_str(&format!(
        "n={};b={},{};",
        order.len(),
        g.inputs().len(),
        g.outputs().len()
    ));
    for (i, v) in order.iter().enumerate() {
        let vx = g.vertex(v).unwrap();
        out.push_str(&format!(
            "V{i}={},{},{};",
            vx.in_arity,
            vx.out_arity,
            labels.vertex_label(v)
        ));
    }
    let end_key = |end: &EdgeEnd, dir: Direction| -> String {
        match end {
            EdgeEnd::Slot(_) => match dir {
                Direction::Input => "gi".into(),
                Direction::Output => "go".into(),
            },
            EdgeEnd::Port(p) => format!("v{}", pos[&p.vertex]),
        }
    };
    let mut descs: Vec<String> = g
        .edges()
        .map(|e| {
            format!(
                "{}>{}:{}:{}",
                end_key(&e.tail, Direction::Input),
                end_key(&e.head, Direction::Output),
                e.color.as_ref().map(|c| c.as_str()).unwrap_or(""),
                labels.edge_label(&e.id)
            )
        })
        .collect();
    descs.sort();
    out.push_str(&descs.join(";"));
    out
}
