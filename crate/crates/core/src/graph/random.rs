//! Seeded random graph generation for property tests and the CLI.

use super::{Edge, EdgeId, Vertex, WiringGraph};
use rand::Rng;

#[derive(Debug, Clone, Copy)]
pub struct RandomGraphParams {
    pub max_vertices: usize,
    pub max_in: usize,
    pub max_out: usize,
}

impl Default for RandomGraphParams {
    fn default() -> Self {
        RandomGraphParams {
            max_vertices: 4,
            max_in: 3,
            max_out: 3,
        }
    }
}

/// A uniformly scruffy valid graph: random vertex count and arities, random
/// internal wiring in topological order, legs on the leftover ports.
/// Rejection-samples until the result is connected.
pub fn random_graph(rng: &mut impl Rng, params: &RandomGraphParams) -> WiringGraph {
    for _ in 0..200 {
        let k = rng.random_range(0..=params.max_vertices);
        if k == 0 {
            return WiringGraph::exceptional_edge(None);
        }
        let g = random_with_vertices(rng, k, params);
        if g.is_valid() {
            return g;
        }
    }
    WiringGraph::linear(1)
}

fn random_with_vertices(rng: &mut impl Rng, k: usize, params: &RandomGraphParams) -> WiringGraph {
    let vname = |i: usize| format!("v{}", i + 1);
    let arities: Vec<(usize, usize)> = (0..k)
        .map(|_| {
            (
                rng.random_range(0..=params.max_in),
                rng.random_range(0..=params.max_out),
            )
        })
        .collect();
    let vertices: Vec<Vertex> = arities
        .iter()
        .enumerate()
        .map(|(i, &(m, n))| Vertex::new(vname(i), m, n))
        .collect();

    let mut edges = Vec::new();
    let mut eid = 0usize;
    let mut out_free: Vec<Vec<usize>> = arities.iter().map(|&(_, n)| (1..=n).collect()).collect();
    let mut inputs = Vec::new();
    let mut outputs = Vec::new();

    // Wire each input port either to an earlier vertex's free output or to a
    // fresh graph input.
    for j in 0..k {
        for port in 1..=arities[j].0 {
            let candidates: Vec<(usize, usize)> = (0..j)
                .flat_map(|i| out_free[i].iter().map(move |&p| (i, p)))
                .collect();
            let connect = !candidates.is_empty() && rng.random_bool(0.6);
            eid += 1;
            if connect {
                let (i, p) = candidates[rng.random_range(0..candidates.len())];
                out_free[i].retain(|&q| q != p);
                edges.push(Edge::between(format!("e{eid}"), (vname(i), p), (vname(j), port)));
            } else {
                let id = EdgeId::new(format!("e{eid}"));
                edges.push(Edge::from_input(id.clone(), inputs.len() + 1, (vname(j), port)));
                inputs.push(id);
            }
        }
    }
    for (i, free) in out_free.iter().enumerate() {
        for &p in free {
            eid += 1;
            let id = EdgeId::new(format!("e{eid}"));
            edges.push(Edge::to_output(id.clone(), (vname(i), p), outputs.len() + 1));
            outputs.push(id);
        }
    }
    WiringGraph::new(vertices, edges, inputs, outputs).expect("random graph is well formed")
}

/// A random valid graph with the given boundary arities, used as a
/// substitution guest. Falls back to the corolla when sampling misses.
pub fn random_guest(
    rng: &mut impl Rng,
    in_arity: usize,
    out_arity: usize,
    params: &RandomGraphParams,
) -> WiringGraph {
    if in_arity == 1 && out_arity == 1 && rng.random_bool(0.2) {
        return WiringGraph::exceptional_edge(None);
    }
    for _ in 0..50 {
        let g = random_graph(rng, params);
        if g.boundary_arities() == (in_arity, out_arity) && g.vertex_count() > 0 {
            return g;
        }
    }
    WiringGraph::corolla(in_arity, out_arity)
}
