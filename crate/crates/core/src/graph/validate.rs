//! Invariant checking for wiring graphs.

use super::{Direction, EdgeEnd, VertexId, WiringGraph};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// One violated invariant together with a human-readable witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub invariant: String,
    pub witness: String,
}

/// Outcome of [`WiringGraph::validate`]. Violations are data, not errors.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl Serialize for ValidationReport {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("ValidationReport", 2)?;
        s.serialize_field("ok", &self.ok())?;
        s.serialize_field("violations", &self.violations)?;
        s.end()
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, i: usize) -> usize {
        if self.parent[i] != i {
            let root = self.find(self.parent[i]);
            self.parent[i] = root;
        }
        self.parent[i]
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        self.parent[ra] = rb;
        ra != rb
    }
}

impl WiringGraph {
    /// Check every wiring-graph invariant, reporting each violation with a
    /// witness. Structural soundness (distinct ids, resolvable references)
    /// is already guaranteed by construction.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        self.check_connected(&mut violations);
        self.check_acyclic(&mut violations);
        self.check_boundary_lists(&mut violations);
        self.check_ports(&mut violations);
        self.check_coloring(&mut violations);
        ValidationReport { violations }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().ok()
    }

    fn check_connected(&self, violations: &mut Vec<Violation>) {
        if self.vertex_count() == 0 && self.edge_count() == 0 {
            violations.push(Violation {
                invariant: "connected".into(),
                witness: "empty graph".into(),
            });
            return;
        }
        // Nodes of the geometric realization: vertices and edges.
        let vids: Vec<&VertexId> = self.vertex_ids().collect();
        let vidx: BTreeMap<&VertexId, usize> = vids.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let n = vids.len();
        let mut uf = UnionFind::new(n + self.edge_count());
        for (i, e) in self.edges().enumerate() {
            let enode = n + i;
            for end in [&e.tail, &e.head] {
                if let Some(v) = end.vertex() {
                    uf.union(enode, vidx[v]);
                }
            }
        }
        let total = n + self.edge_count();
        let root = uf.find(0);
        for i in 1..total {
            if uf.find(i) != root {
                let witness = if i < n {
                    format!("vertex `{}` unreachable", vids[i])
                } else {
                    let e = self.edges().nth(i - n).unwrap();
                    format!("edge `{}` unreachable", e.id)
                };
                violations.push(Violation {
                    invariant: "connected".into(),
                    witness,
                });
                return;
            }
        }
    }

    fn check_acyclic(&self, violations: &mut Vec<Violation>) {
        // Directed reachability between vertices through internal edges.
        let vids: Vec<&VertexId> = self.vertex_ids().collect();
        let vidx: BTreeMap<&VertexId, usize> = vids.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); vids.len()];
        for e in self.edges() {
            if let (EdgeEnd::Port(t), EdgeEnd::Port(h)) = (&e.tail, &e.head) {
                succ[vidx[&t.vertex]].push(vidx[&h.vertex]);
            }
        }
        // Iterative DFS with colors; reconstruct the cycle on back edge.
        let n = vids.len();
        let mut state = vec![0u8; n]; // 0 unvisited, 1 on stack, 2 done
        for start in 0..n {
            if state[start] != 0 {
                continue;
            }
            let mut stack: Vec<(usize, usize)> = vec![(start, 0)];
            state[start] = 1;
            while let Some(&(node, edge_pos)) = stack.last() {
                if edge_pos < succ[node].len() {
                    stack.last_mut().unwrap().1 += 1;
                    let next = succ[node][edge_pos];
                    match state[next] {
                        0 => {
                            state[next] = 1;
                            stack.push((next, 0));
                        }
                        1 => {
                            let pos = stack.iter().position(|&(v, _)| v == next).unwrap();
                            let cycle: Vec<&str> = stack[pos..]
                                .iter()
                                .map(|&(v, _)| vids[v].as_str())
                                .collect();
                            violations.push(Violation {
                                invariant: "acyclic".into(),
                                witness: format!("directed cycle through {}", cycle.join(" -> ")),
                            });
                            return;
                        }
                        _ => {}
                    }
                } else {
                    state[node] = 2;
                    stack.pop();
                }
            }
        }
    }

    fn check_boundary_lists(&self, violations: &mut Vec<Violation>) {
        for (dir, list) in [(Direction::Input, self.inputs()), (Direction::Output, self.outputs())] {
            let name = match dir {
                Direction::Input => "inputs",
                Direction::Output => "outputs",
            };
            for (i, id) in list.iter().enumerate() {
                let e = &self.edge(id).expect("boundary ids resolve");
                let end = match dir {
                    Direction::Input => &e.tail,
                    Direction::Output => &e.head,
                };
                match end {
                    EdgeEnd::Slot(s) if *s == i + 1 => {}
                    EdgeEnd::Slot(s) => violations.push(Violation {
                        invariant: name.into(),
                        witness: format!("edge `{}` sits at slot {} but is listed at slot {}", id, s, i + 1),
                    }),
                    EdgeEnd::Port(_) => violations.push(Violation {
                        invariant: name.into(),
                        witness: format!("edge `{}` listed as a graph {} but is attached to a vertex", id, dir),
                    }),
                }
            }
            for e in self.edges() {
                let end = match dir {
                    Direction::Input => &e.tail,
                    Direction::Output => &e.head,
                };
                if end.is_slot() && !list.contains(&e.id) {
                    violations.push(Violation {
                        invariant: name.into(),
                        witness: format!("edge `{}` has a boundary {} end but is not listed", e.id, dir),
                    });
                }
            }
        }
    }

    fn check_ports(&self, violations: &mut Vec<Violation>) {
        let mut counts: BTreeMap<(&VertexId, Direction, usize), usize> = BTreeMap::new();
        for e in self.edges() {
            for (end, dir) in [(&e.tail, Direction::Output), (&e.head, Direction::Input)] {
                if let EdgeEnd::Port(p) = end {
                    *counts.entry((&p.vertex, dir, p.index)).or_default() += 1;
                }
            }
        }
        for v in self.vertices() {
            for dir in [Direction::Input, Direction::Output] {
                for i in 1..=v.arity(dir) {
                    let c = counts.get(&(&v.id, dir, i)).copied().unwrap_or(0);
                    if c != 1 {
                        violations.push(Violation {
                            invariant: "ports".into(),
                            witness: format!(
                                "vertex `{}` {} port {} hit by {} edge endpoints",
                                v.id, dir, i, c
                            ),
                        });
                    }
                }
            }
        }
    }

    fn check_coloring(&self, violations: &mut Vec<Violation>) {
        let colored = self.edges().filter(|e| e.color.is_some()).count();
        if colored > 0 && colored < self.edge_count() {
            let missing = self.edges().find(|e| e.color.is_none()).unwrap();
            violations.push(Violation {
                invariant: "coloring".into(),
                witness: format!("edge `{}` is uncolored while others are colored", missing.id),
            });
        }
    }

    /// True when the underlying undirected graph has no cycle. For a valid
    /// graph this is equivalent to `|Ed| = |Vt| + legs - 1`.
    pub fn is_simply_connected(&self) -> bool {
        let vids: Vec<&VertexId> = self.vertex_ids().collect();
        let vidx: BTreeMap<&VertexId, usize> = vids.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let mut uf = UnionFind::new(vids.len());
        for e in self.internal_edges() {
            let t = vidx[&e.tail.vertex().unwrap()];
            let h = vidx[&e.head.vertex().unwrap()];
            if !uf.union(t, h) {
                return false;
            }
        }
        true
    }
}
