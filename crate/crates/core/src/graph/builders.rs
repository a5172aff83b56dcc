//! Standard graph constructors: the exceptional edge, corollas, linear
//! graphs, and partially grafted corollas.

use super::{Color, Edge, EdgeId, GraphError, Vertex, WiringGraph};
use std::collections::BTreeSet;

/// Specification of a partially grafted corolla: two vertices `u` (upper) and
/// `v` (lower) with a nonempty list of `u`'s outputs attached to `v`'s inputs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PgcSpec {
    pub upper_in: usize,
    pub upper_out: usize,
    pub lower_in: usize,
    pub lower_out: usize,
    /// Pairs `(upper output port, lower input port)`, injective on both sides.
    pub graft: Vec<(usize, usize)>,
}

impl PgcSpec {
    pub fn new(
        upper: (usize, usize),
        lower: (usize, usize),
        graft: Vec<(usize, usize)>,
    ) -> PgcSpec {
        PgcSpec {
            upper_in: upper.0,
            upper_out: upper.1,
            lower_in: lower.0,
            lower_out: lower.1,
            graft,
        }
    }
}

impl WiringGraph {
    /// The graph with one edge and no vertices.
    pub fn exceptional_edge(color: Option<Color>) -> WiringGraph {
        let mut e = Edge::exceptional("e", 1, 1);
        e.color = color;
        WiringGraph::new(vec![], vec![e], vec!["e".into()], vec!["e".into()])
            .expect("exceptional edge is well formed")
    }

    /// One vertex `v` with `m` input legs and `n` output legs.
    pub fn corolla(m: usize, n: usize) -> WiringGraph {
        let mut edges = Vec::new();
        let mut inputs = Vec::new();
        let mut outputs = Vec::new();
        for i in 1..=m {
            let id = EdgeId::new(format!("i{i}"));
            edges.push(Edge::from_input(id.clone(), i, ("v", i)));
            inputs.push(id);
        }
        for j in 1..=n {
            let id = EdgeId::new(format!("o{j}"));
            edges.push(Edge::to_output(id.clone(), ("v", j), j));
            outputs.push(id);
        }
        WiringGraph::new(vec![Vertex::new("v", m, n)], edges, inputs, outputs)
            .expect("corolla is well formed")
    }

    /// A chain of `n` vertices of biprofile (1;1) with one input leg and one
    /// output leg. `linear(0)` is the exceptional edge.
    pub fn linear(n: usize) -> WiringGraph {
        if n == 0 {
            return WiringGraph::exceptional_edge(None);
        }
        let vertices: Vec<Vertex> = (1..=n).map(|i| Vertex::new(format!("v{i}"), 1, 1)).collect();
        let mut edges = vec![Edge::from_input("e0", 1, ("v1", 1))];
        for i in 1..n {
            edges.push(Edge::between(
                format!("e{i}"),
                (format!("v{i}"), 1),
                (format!("v{}", i + 1), 1),
            ));
        }
        edges.push(Edge::to_output(format!("e{n}"), (format!("v{n}"), 1), 1));
        WiringGraph::new(vertices, edges, vec!["e0".into()], vec![EdgeId::new(format!("e{n}"))])
            .expect("linear graph is well formed")
    }

    /// Build a partially grafted corolla from its spec. Vertices are named
    /// `u` (upper) and `v` (lower); grafted edges are `g1..gk` in list order.
    pub fn pgc(spec: &PgcSpec) -> Result<WiringGraph, GraphError> {
        if spec.graft.is_empty() {
            return Err(GraphError::EmptyGraft);
        }
        let mut upper_ports = BTreeSet::new();
        let mut lower_ports = BTreeSet::new();
        for &(o, i) in &spec.graft {
            if o == 0 || o > spec.upper_out {
                return Err(GraphError::BadGraft(format!(
                    "upper output port {o} outside 1..={}",
                    spec.upper_out
                )));
            }
            if i == 0 || i > spec.lower_in {
                return Err(GraphError::BadGraft(format!(
                    "lower input port {i} outside 1..={}",
                    spec.lower_in
                )));
            }
            if !upper_ports.insert(o) {
                return Err(GraphError::BadGraft(format!("upper output port {o} grafted twice")));
            }
            if !lower_ports.insert(i) {
                return Err(GraphError::BadGraft(format!("lower input port {i} grafted twice")));
            }
        }

        let vertices = vec![
            Vertex::new("u", spec.upper_in, spec.upper_out),
            Vertex::new("v", spec.lower_in, spec.lower_out),
        ];
        let mut edges = Vec::new();
        let mut inputs = Vec::new();
        let mut outputs = Vec::new();
        let mut in_slot = 0;
        let mut out_slot = 0;

        for i in 1..=spec.upper_in {
            in_slot += 1;
            let id = EdgeId::new(format!("ui{i}"));
            edges.push(Edge::from_input(id.clone(), in_slot, ("u", i)));
            inputs.push(id);
        }
        for i in 1..=spec.lower_in {
            if lower_ports.contains(&i) {
                continue;
            }
            in_slot += 1;
            let id = EdgeId::new(format!("vi{i}"));
            edges.push(Edge::from_input(id.clone(), in_slot, ("v", i)));
            inputs.push(id);
        }
        for (k, &(o, i)) in spec.graft.iter().enumerate() {
            edges.push(Edge::between(format!("g{}", k + 1), ("u", o), ("v", i)));
        }
        for o in 1..=spec.upper_out {
            if upper_ports.contains(&o) {
                continue;
            }
            out_slot += 1;
            let id = EdgeId::new(format!("uo{o}"));
            edges.push(Edge::to_output(id.clone(), ("u", o), out_slot));
            outputs.push(id);
        }
        for o in 1..=spec.lower_out {
            out_slot += 1;
            let id = EdgeId::new(format!("vo{o}"));
            edges.push(Edge::to_output(id.clone(), ("v", o), out_slot));
            outputs.push(id);
        }
        WiringGraph::new(vertices, edges, inputs, outputs)
    }
}
