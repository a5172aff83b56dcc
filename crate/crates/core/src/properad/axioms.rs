//! Law checking for finite properads: unit, associativity, equivariance,
//! symmetry-action coherence, and composition-table completeness.

use super::finite::{FiniteProperad, OpId, PropDecoration};
use super::ProperadError;
use crate::graph::{
    canonical_form, Biprofile, Color, Direction, Edge, EdgeEnd, EdgeId, PgcSpec,
    ValidationReport, Violation, WiringGraph,
};
use std::collections::BTreeMap;

impl FiniteProperad {
    /// Verify every properad law over all shapes with at most `graph_bound`
    /// vertices, within the declared arity bounds. Violations carry
    /// counterexample witnesses.
    pub fn check_axioms(&self, graph_bound: usize) -> ValidationReport {
        let mut violations = Vec::new();
        self.check_units(&mut violations);
        self.check_swaps(&mut violations);
        self.check_table(&mut violations);
        self.check_unit_laws(&mut violations);
        if graph_bound >= 3 {
            self.check_associativity(&mut violations, graph_bound);
        }
        ValidationReport { violations }
    }

    fn check_units(&self, violations: &mut Vec<Violation>) {
        for c in &self.colors {
            match self.units.get(c) {
                None => violations.push(Violation {
                    invariant: "units".into(),
                    witness: format!("color `{c}` has no unit"),
                }),
                Some(u) => match self.profiles.get(u) {
                    Some(p) if p.inputs == vec![c.clone()] && p.outputs == vec![c.clone()] => {}
                    _ => violations.push(Violation {
                        invariant: "units".into(),
                        witness: format!("unit of `{c}` does not have profile ({c};{c})"),
                    }),
                },
            }
        }
    }

    fn check_swaps(&self, violations: &mut Vec<Violation>) {
        for (op, profile) in &self.profiles {
            for dir in [Direction::Input, Direction::Output] {
                let arity = match dir {
                    Direction::Input => profile.inputs.len(),
                    Direction::Output => profile.outputs.len(),
                };
                let swap = |op: &OpId, i: usize| -> Option<&OpId> {
                    match dir {
                        Direction::Input => self.input_swaps.get(&(op.clone(), i)),
                        Direction::Output => self.output_swaps.get(&(op.clone(), i)),
                    }
                };
                for i in 1..arity {
                    let Some(si) = swap(op, i) else {
                        violations.push(Violation {
                            invariant: "symmetry".into(),
                            witness: format!("{dir} transposition {i} undefined on `{op}`"),
                        });
                        continue;
                    };
                    // Profile transposes.
                    let mut want = profile.clone();
                    match dir {
                        Direction::Input => want.inputs.swap(i - 1, i),
                        Direction::Output => want.outputs.swap(i - 1, i),
                    }
                    if self.profiles.get(si) != Some(&want) {
                        violations.push(Violation {
                            invariant: "symmetry".into(),
                            witness: format!("{dir} transposition {i} of `{op}` has the wrong profile"),
                        });
                    }
                    // Involution.
                    if swap(si, i) != Some(op) {
                        violations.push(Violation {
                            invariant: "symmetry".into(),
                            witness: format!("{dir} transposition {i} on `{op}` is not an involution"),
                        });
                    }
                    // Braid and far commutation.
                    for j in (i + 1)..arity {
                        let Some(sj_si) = swap(si, j) else { continue };
                        let Some(sj) = swap(op, j) else { continue };
                        let Some(si_sj) = swap(sj, i) else { continue };
                        if j > i + 1 && sj_si != si_sj {
                            violations.push(Violation {
                                invariant: "symmetry".into(),
                                witness: format!(
                                    "{dir} transpositions {i} and {j} do not commute on `{op}`"
                                ),
                            });
                        }
                        if j == i + 1 {
                            let lhs = swap(sj_si, i).cloned();
                            let rhs = swap(si_sj, j).cloned();
                            if lhs != rhs || lhs.is_none() {
                                violations.push(Violation {
                                    invariant: "symmetry".into(),
                                    witness: format!(
                                        "braid relation fails at {dir} positions {i},{j} on `{op}`"
                                    ),
                                });
                            }
                        }
                    }
                }
                // Cross-side commutation, checked once from the input side.
                if dir == Direction::Input {
                    for i in 1..profile.inputs.len() {
                        for j in 1..profile.outputs.len() {
                            let a = self
                                .input_swaps
                                .get(&(op.clone(), i))
                                .and_then(|x| self.output_swaps.get(&(x.clone(), j)));
                            let b = self
                                .output_swaps
                                .get(&(op.clone(), j))
                                .and_then(|x| self.input_swaps.get(&(x.clone(), i)));
                            if a != b || a.is_none() {
                                violations.push(Violation {
                                    invariant: "symmetry".into(),
                                    witness: format!(
                                        "input {i} and output {j} transpositions do not commute on `{op}`"
                                    ),
                                });
                            }
                        }
                    }
                }
            }
        }
    }

    /// Completeness on all in-bound decorated corolla pairs, plus
    /// transport coherence: every decorated automorphism of a stored
    /// representative must fix the stored result, and wiring a transposition
    /// into a vertex decoration must leave the composite unchanged.
    fn check_table(&self, violations: &mut Vec<Violation>) {
        for pgc in enumerate_decorated_pgcs(self) {
            match self.compose_pgc(&pgc) {
                Err(ProperadError::CompositionMissing(key)) => violations.push(Violation {
                    invariant: "composition".into(),
                    witness: format!("composition table incomplete: {key}"),
                }),
                Err(e) => violations.push(Violation {
                    invariant: "composition".into(),
                    witness: e.to_string(),
                }),
                Ok(result) => {
                    for (v, i, dir) in transposable_ports(&pgc) {
                        match rewire_vertex_ports(self, &pgc, &v, dir, i) {
                            Ok(variant) => match self.compose_pgc(&variant) {
                                Ok(other) if other == result => {}
                                Ok(other) => violations.push(Violation {
                                    invariant: "equivariance".into(),
                                    witness: format!(
                                        "rewiring {dir} ports {i},{} of `{v}` changed the composite from `{result}` to `{other}`",
                                        i + 1
                                    ),
                                }),
                                Err(e) => violations.push(Violation {
                                    invariant: "equivariance".into(),
                                    witness: e.to_string(),
                                }),
                            },
                            Err(e) => violations.push(Violation {
                                invariant: "equivariance".into(),
                                witness: e.to_string(),
                            }),
                        }
                    }
                }
            }
        }
    }

    fn check_unit_laws(&self, violations: &mut Vec<Violation>) {
        for (op, profile) in &self.profiles {
            for (slot, c) in profile.inputs.iter().enumerate() {
                match self.unit(c).cloned().and_then(|u| {
                    self.compose_pgc(&unit_grafted(self, op, profile, &u, slot, Direction::Input))
                }) {
                    Ok(result) if result == *op => {}
                    Ok(result) => violations.push(Violation {
                        invariant: "unit-law".into(),
                        witness: format!(
                            "unit above input {} of `{op}` composed to `{result}`",
                            slot + 1
                        ),
                    }),
                    Err(e) => violations.push(Violation {
                        invariant: "unit-law".into(),
                        witness: format!("unit above input {} of `{op}`: {e}", slot + 1),
                    }),
                }
            }
            for (slot, c) in profile.outputs.iter().enumerate() {
                match self.unit(c).cloned().and_then(|u| {
                    self.compose_pgc(&unit_grafted(self, op, profile, &u, slot, Direction::Output))
                }) {
                    Ok(result) if result == *op => {}
                    Ok(result) => violations.push(Violation {
                        invariant: "unit-law".into(),
                        witness: format!(
                            "unit below output {} of `{op}` composed to `{result}`",
                            slot + 1
                        ),
                    }),
                    Err(e) => violations.push(Violation {
                        invariant: "unit-law".into(),
                        witness: format!("unit below output {} of `{op}`: {e}", slot + 1),
                    }),
                }
            }
        }
    }

    /// Contraction-order independence over every decorated shape with up to
    /// `bound` vertices: all orders that compose at all agree.
    fn check_associativity(&self, violations: &mut Vec<Violation>, bound: usize) {
        let shapes = crate::graph::enumerate_graphs(bound.min(3), self.max_in, self.max_out, None);
        for shape in shapes.iter().filter(|s| s.vertex_count() == 3) {
            let (bin, bout) = shape.boundary_arities();
            if bin > self.max_in || bout > self.max_out {
                continue;
            }
            // Contractions depend only on the shape; hoist them out of the
            // decoration sweep.
            let plans: Vec<_> = super::finite::grafted_pairs(shape)
                .into_iter()
                .filter_map(|(a, b)| {
                    let subset: std::collections::BTreeSet<_> = [a, b].into();
                    crate::substitution::contract(shape, &subset, "z").ok()
                })
                .collect();
            for d in super::nerve::nerve(self, shape).unwrap_or_default() {
                let mut outcomes: Vec<OpId> = Vec::new();
                for (contracted, assignment) in &plans {
                    let guest = &assignment.guest;
                    let pair = PropDecoration::new(
                        guest.clone(),
                        guest.edge_ids().map(|e| (e.clone(), d.edges[e].clone())).collect(),
                        guest
                            .vertex_ids()
                            .map(|v| (v.clone(), d.vertices[v].clone()))
                            .collect(),
                    );
                    let Ok(composite) = self.compose_pgc(&pair) else {
                        continue;
                    };
                    let step = PropDecoration::new(
                        contracted.clone(),
                        contracted
                            .edge_ids()
                            .map(|e| (e.clone(), d.edges[e].clone()))
                            .collect(),
                        contracted
                            .vertex_ids()
                            .map(|v| {
                                let op = if *v == assignment.host_vertex {
                                    composite.clone()
                                } else {
                                    d.vertices[v].clone()
                                };
                                (v.clone(), op)
                            })
                            .collect(),
                    );
                    if let Ok(result) = self.evaluate(&step) {
                        outcomes.push(result);
                    }
                }
                outcomes.sort();
                outcomes.dedup();
                if outcomes.len() > 1 {
                    violations.push(Violation {
                        invariant: "associativity".into(),
                        witness: format!(
                            "contraction orders disagree on a decorated {} ({:?})",
                            canonical_form(&d.shape),
                            outcomes
                        ),
                    });
                }
            }
        }
    }
}

/// Vertex-port pairs eligible for an adjacent transposition test.
fn transposable_ports(d: &PropDecoration) -> Vec<(crate::graph::VertexId, usize, Direction)> {
    let mut out = Vec::new();
    for v in d.shape.vertices() {
        for i in 1..v.in_arity {
            out.push((v.id.clone(), i, Direction::Input));
        }
        for i in 1..v.out_arity {
            out.push((v.id.clone(), i, Direction::Output));
        }
    }
    out
}

/// Swap which edges use ports `i` and `i+1` of `v` and replace the vertex's
/// operation by its transposed form: the same abstract decorated graph.
fn rewire_vertex_ports(
    p: &FiniteProperad,
    d: &PropDecoration,
    v: &crate::graph::VertexId,
    dir: Direction,
    i: usize,
) -> Result<PropDecoration, ProperadError> {
    let mut shape_edges: Vec<Edge> = d.shape.edges().cloned().collect();
    for e in &mut shape_edges {
        for end in [&mut e.tail, &mut e.head] {
            if let EdgeEnd::Port(port) = end {
                if port.vertex == *v && port.direction == dir {
                    if port.index == i {
                        port.index = i + 1;
                    } else if port.index == i + 1 {
                        port.index = i;
                    }
                }
            }
        }
    }
    let shape = WiringGraph::new(
        d.shape.vertices().cloned().collect(),
        shape_edges,
        d.shape.inputs().to_vec(),
        d.shape.outputs().to_vec(),
    )
    .map_err(|e| ProperadError::BadDecoration(e.to_string()))?;
    let mut vertices = d.vertices.clone();
    let swapped = match dir {
        Direction::Input => p.swap_inputs(&d.vertices[v], i)?,
        Direction::Output => p.swap_outputs(&d.vertices[v], i)?,
    };
    vertices.insert(v.clone(), swapped.clone());
    Ok(PropDecoration::new(shape, d.edges.clone(), vertices))
}

/// The decorated corolla pair grafting a unit onto one boundary port of
/// `op`, with boundary slots ordered to match `op`'s own profile.
fn unit_grafted(
    _p: &FiniteProperad,
    op: &OpId,
    profile: &Biprofile,
    unit: &OpId,
    slot: usize,
    dir: Direction,
) -> PropDecoration {
    let m = profile.inputs.len();
    let n = profile.outputs.len();
    let (a, b) = ("a", "b"); // a = unit vertex, b = op vertex
    let mut edges: Vec<Edge> = Vec::new();
    let mut colors: BTreeMap<EdgeId, Color> = BTreeMap::new();
    let mut inputs: Vec<EdgeId> = Vec::new();
    let mut outputs: Vec<EdgeId> = Vec::new();
    match dir {
        Direction::Input => {
            for i in 0..m {
                let id = EdgeId::new(format!("i{}", i + 1));
                colors.insert(id.clone(), profile.inputs[i].clone());
                if i == slot {
                    edges.push(Edge::from_input(id.clone(), i + 1, (a, 1)));
                } else {
                    edges.push(Edge::from_input(id.clone(), i + 1, (b, i + 1)));
                }
                inputs.push(id);
            }
            let g = EdgeId::new("g");
            colors.insert(g.clone(), profile.inputs[slot].clone());
            edges.push(Edge::between(g, (a, 1), (b, slot + 1)));
            for j in 0..n {
                let id = EdgeId::new(format!("o{}", j + 1));
                colors.insert(id.clone(), profile.outputs[j].clone());
                edges.push(Edge::to_output(id.clone(), (b, j + 1), j + 1));
                outputs.push(id);
            }
            let shape = WiringGraph::new(
                vec![
                    crate::graph::Vertex::new(a, 1, 1),
                    crate::graph::Vertex::new(b, m, n),
                ],
                edges,
                inputs,
                outputs,
            )
            .expect("unit graft is well formed");
            PropDecoration::new(
                shape,
                colors,
                [(a.into(), unit.clone()), (b.into(), op.clone())].into(),
            )
        }
        Direction::Output => {
            for i in 0..m {
                let id = EdgeId::new(format!("i{}", i + 1));
                colors.insert(id.clone(), profile.inputs[i].clone());
                edges.push(Edge::from_input(id.clone(), i + 1, (b, i + 1)));
                inputs.push(id);
            }
            let g = EdgeId::new("g");
            colors.insert(g.clone(), profile.outputs[slot].clone());
            edges.push(Edge::between(g, (b, slot + 1), (a, 1)));
            for j in 0..n {
                let id = EdgeId::new(format!("o{}", j + 1));
                colors.insert(id.clone(), profile.outputs[j].clone());
                if j == slot {
                    edges.push(Edge::to_output(id.clone(), (a, 1), j + 1));
                } else {
                    edges.push(Edge::to_output(id.clone(), (b, j + 1), j + 1));
                }
                outputs.push(id);
            }
            let shape = WiringGraph::new(
                vec![
                    crate::graph::Vertex::new(a, 1, 1),
                    crate::graph::Vertex::new(b, m, n),
                ],
                edges,
                inputs,
                outputs,
            )
            .expect("unit graft is well formed");
            PropDecoration::new(
                shape,
                colors,
                [(a.into(), unit.clone()), (b.into(), op.clone())].into(),
            )
        }
    }
}

/// Every colored corolla-pair shape within the arity bounds whose composite
/// profile also fits the bounds, one representative per weak isomorphism
/// class, with all operation decorations.
pub fn enumerate_decorated_pgcs(p: &FiniteProperad) -> Vec<PropDecoration> {
    let mut out = Vec::new();
    for shape in enumerate_colored_pgc_shapes(&p.colors, p.max_in, p.max_out) {
        let upper_profile = colored_vertex_profile(&shape, &"u".into());
        let lower_profile = colored_vertex_profile(&shape, &"v".into());
        let colors: BTreeMap<EdgeId, Color> = shape
            .edges()
            .map(|e| (e.id.clone(), e.color.clone().unwrap()))
            .collect();
        for q1 in p.ops_with_profile(&upper_profile) {
            for q2 in p.ops_with_profile(&lower_profile) {
                out.push(PropDecoration::new(
                    shape.uncolored(),
                    colors.clone(),
                    [(("u").into(), q1.clone()), (("v").into(), q2.clone())].into(),
                ));
            }
        }
    }
    out
}

fn colored_vertex_profile(shape: &WiringGraph, v: &crate::graph::VertexId) -> Biprofile {
    shape.vertex_biprofile(v).expect("colored shape")
}

/// Colored corolla-pair shapes, one per weak isomorphism class.
pub(crate) fn enumerate_colored_pgc_shapes(
    colors: &std::collections::BTreeSet<Color>,
    max_in: usize,
    max_out: usize,
) -> Vec<WiringGraph> {
    let palette: Vec<&Color> = colors.iter().collect();
    let mut seen: BTreeMap<String, WiringGraph> = BTreeMap::new();
    if palette.is_empty() {
        return Vec::new();
    }
    for m1 in 0..=max_in {
        for n1 in 1..=max_out {
            for m2 in 1..=max_in {
                for n2 in 0..=max_out {
                    for g in 1..=n1.min(m2) {
                        if m1 + m2 - g > max_in || n1 + n2 - g > max_out {
                            continue;
                        }
                        let spec = PgcSpec::new((m1, n1), (m2, n2), (1..=g).map(|i| (i, i)).collect());
                        let shape = WiringGraph::pgc(&spec).expect("valid pgc spec");
                        let edge_ids: Vec<EdgeId> = shape.edge_ids().cloned().collect();
                        let mut assignment = vec![0usize; edge_ids.len()];
                        loop {
                            let colored = shape.with_colors(
                                &edge_ids
                                    .iter()
                                    .enumerate()
                                    .map(|(i, e)| (e.clone(), palette[assignment[i]].clone()))
                                    .collect(),
                            );
                            let key = canonical_form(&colored);
                            seen.entry(key).or_insert(colored);
                            // Advance the mixed-radix counter.
                            let mut pos = 0;
                            loop {
                                if pos == assignment.len() {
                                    break;
                                }
                                assignment[pos] += 1;
                                if assignment[pos] < palette.len() {
                                    break;
                                }
                                assignment[pos] = 0;
                                pos += 1;
                            }
                            if pos == assignment.len() {
                                break;
                            }
                        }
                    }
                }
            }
        }
    }
    seen.into_values().collect()
}

#[cfg_attr(not(test), allow(dead_code))]
/// The unit grafted onto one boundary port of `op`; used by unit-law tests.
pub(crate) fn unit_graft(
    p: &FiniteProperad,
    op: &OpId,
    unit: &OpId,
    slot: usize,
    dir: Direction,
) -> PropDecoration {
    let profile = p.profile_of(op).expect("known op").clone();
    unit_grafted(p, op, &profile, unit, slot, dir)
}
