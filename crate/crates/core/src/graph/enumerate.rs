//! Exhaustive enumeration of small graphs up to weak isomorphism.

use super::{canonical_form, Edge, EdgeId, Vertex, WiringGraph};
use std::collections::BTreeMap;

/// All valid graphs with at most `max_vertices` vertices, vertex arities
/// bounded by `max_in`/`max_out`, and (optionally) at most `max_edges`
/// edges. One representative per weak-isomorphism class, sorted by
/// canonical form. The exceptional edge is the unique vertex-free graph.
pub fn enumerate_graphs(
    max_vertices: usize,
    max_in: usize,
    max_out: usize,
    max_edges: Option<usize>,
) -> Vec<WiringGraph> {
    let mut seen: BTreeMap<String, WiringGraph> = BTreeMap::new();
    let edge_cap = max_edges.unwrap_or(usize::MAX);

    if edge_cap >= 1 {
        let g = WiringGraph::exceptional_edge(None);
        seen.insert(canonical_form(&g), g);
    }

    for k in 1..=max_vertices {
        // Internal structure as an upper-triangular multiplicity matrix;
        // every DAG has a topologically ordered representative, and the
        // canonical dedupe collapses the rest.
        let pairs: Vec<(usize, usize)> = (0..k)
            .flat_map(|i| ((i + 1)..k).map(move |j| (i, j)))
            .collect();
        let mut matrix: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        enumerate_matrices(
            &pairs,
            0,
            k,
            max_in,
            max_out,
            edge_cap,
            &mut matrix,
            &mut |matrix| {
                enumerate_legs(k, max_in, max_out, edge_cap, matrix, &mut seen);
            },
        );
    }

    seen.into_values().collect()
}

#[allow(clippy::too_many_arguments)]
fn enumerate_matrices(
    pairs: &[(usize, usize)],
    idx: usize,
    k: usize,
    max_in: usize,
    max_out: usize,
    edge_cap: usize,
    matrix: &mut BTreeMap<(usize, usize), usize>,
    f: &mut impl FnMut(&BTreeMap<(usize, usize), usize>),
) {
    if idx == pairs.len() {
        f(matrix);
        return;
    }
    let (i, j) = pairs[idx];
    let row_used: usize = matrix.iter().filter(|((a, _), _)| *a == i).map(|(_, m)| m).sum();
    let col_used: usize = matrix.iter().filter(|((_, b), _)| *b == j).map(|(_, m)| m).sum();
    let total: usize = matrix.values().sum();
    let cap = (max_out - row_used)
        .min(max_in - col_used)
        .min(edge_cap.saturating_sub(total));
    for m in 0..=cap {
        if m > 0 {
            matrix.insert((i, j), m);
        }
        enumerate_matrices(pairs, idx + 1, k, max_in, max_out, edge_cap, matrix, f);
        matrix.remove(&(i, j));
    }
}

fn enumerate_legs(
    k: usize,
    max_in: usize,
    max_out: usize,
    edge_cap: usize,
    matrix: &BTreeMap<(usize, usize), usize>,
    seen: &mut BTreeMap<String, WiringGraph>,
) {
    let internal: usize = matrix.values().sum();
    let mut in_used = vec![0usize; k];
    let mut out_used = vec![0usize; k];
    for (&(i, j), &m) in matrix {
        out_used[i] += m;
        in_used[j] += m;
    }
    // Choose leg counts per vertex within remaining arity and edge budget.
    let mut in_legs = vec![0usize; k];
    let mut out_legs = vec![0usize; k];
    fn rec(
        pos: usize,
        k: usize,
        max_in: usize,
        max_out: usize,
        budget: usize,
        in_used: &[usize],
        out_used: &[usize],
        in_legs: &mut Vec<usize>,
        out_legs: &mut Vec<usize>,
        matrix: &BTreeMap<(usize, usize), usize>,
        seen: &mut BTreeMap<String, WiringGraph>,
    ) {
        if pos == 2 * k {
            let g = assemble(k, matrix, in_used, out_used, in_legs, out_legs);
            if g.is_valid() {
                let key = canonical_form(&g);
                seen.entry(key).or_insert(g);
            }
            return;
        }
        let v = pos / 2;
        let cap = if pos % 2 == 0 {
            max_in - in_used[v]
        } else {
            max_out - out_used[v]
        };
        for legs in 0..=cap.min(budget) {
            if pos % 2 == 0 {
                in_legs[v] = legs;
            } else {
                out_legs[v] = legs;
            }
            rec(
                pos + 1,
                k,
                max_in,
                max_out,
                budget - legs,
                in_used,
                out_used,
                in_legs,
                out_legs,
                matrix,
                seen,
            );
        }
        if pos % 2 == 0 {
            in_legs[v] = 0;
        } else {
            out_legs[v] = 0;
        }
    }
    let budget = edge_cap.saturating_sub(internal);
    rec(
        0, k, max_in, max_out, budget, &in_used, &out_used, &mut in_legs, &mut out_legs, matrix,
        seen,
    );
}

fn assemble(
    k: usize,
    matrix: &BTreeMap<(usize, usize), usize>,
    in_used: &[usize],
    out_used: &[usize],
    in_legs: &[usize],
    out_legs: &[usize],
) -> WiringGraph {
    let vname = |i: usize| format!("v{}", i + 1);
    let vertices: Vec<Vertex> = (0..k)
        .map(|i| Vertex::new(vname(i), in_used[i] + in_legs[i], out_used[i] + out_legs[i]))
        .collect();
    let mut edges = Vec::new();
    let mut next_in_port = vec![1usize; k];
    let mut next_out_port = vec![1usize; k];
    let mut eid = 0usize;
    for (&(i, j), &m) in matrix {
        for _ in 0..m {
            eid += 1;
            edges.push(Edge::between(
                format!("e{eid}"),
                (vname(i), next_out_port[i]),
                (vname(j), next_in_port[j]),
            ));
            next_out_port[i] += 1;
            next_in_port[j] += 1;
        }
    }
    let mut inputs = Vec::new();
    let mut outputs = Vec::new();
    for (v, &legs) in in_legs.iter().enumerate() {
        for _ in 0..legs {
            eid += 1;
            let id = EdgeId::new(format!("e{eid}"));
            edges.push(Edge::from_input(id.clone(), inputs.len() + 1, (vname(v), next_in_port[v])));
            next_in_port[v] += 1;
            inputs.push(id);
        }
    }
    for (v, &legs) in out_legs.iter().enumerate() {
        for _ in 0..legs {
            eid += 1;
            let id = EdgeId::new(format!("e{eid}"));
            edges.push(Edge::to_output(id.clone(), (vname(v), next_out_port[v]), outputs.len() + 1));
            next_out_port[v] += 1;
            outputs.push(id);
        }
    }
    WiringGraph::new(vertices, edges, inputs, outputs).expect("enumerated graph is well formed")
}
