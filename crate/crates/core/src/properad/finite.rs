//! Finite colored properads with composition generated by partially grafted
//! corollas.

use super::ProperadError;
use crate::gamma::DecoratedGraph;
use crate::graph::{Biprofile, Color, Direction, EdgeId, VertexId, WiringGraph};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// An operation token. Each token lives in exactly one biprofile cell.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OpId(String);

impl OpId {
    pub fn new(s: impl Into<String>) -> OpId {
        OpId(s.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for OpId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for OpId {
    fn from(s: &str) -> OpId {
        OpId(s.to_owned())
    }
}

/// A properad decoration: edges carry colors, vertices carry operations.
pub type PropDecoration = DecoratedGraph<Color, OpId>;

/// One stored composition: a representative decorated partially grafted
/// corolla and the operation it contracts to, in the representative's
/// boundary order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PgcEntry {
    pub rep: PropDecoration,
    pub result: OpId,
}

/// A finite colored properad: finite color and operation sets with a
/// bisymmetric action stored on adjacent transpositions, units, and a
/// composition table on partially grafted corolla shapes. All other
/// composites are derived by [`FiniteProperad::evaluate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteProperad {
    pub(crate) colors: BTreeSet<Color>,
    pub(crate) max_in: usize,
    pub(crate) max_out: usize,
    pub(crate) ops: BTreeMap<Biprofile, BTreeSet<OpId>>,
    pub(crate) profiles: BTreeMap<OpId, Biprofile>,
    pub(crate) units: BTreeMap<Color, OpId>,
    /// `(op, i)` swaps inputs `i` and `i+1` (1-based).
    pub(crate) input_swaps: BTreeMap<(OpId, usize), OpId>,
    pub(crate) output_swaps: BTreeMap<(OpId, usize), OpId>,
    /// Buckets keyed by the canonical form of the colored shape alone;
    /// entries inside a bucket are told apart by decoration isomorphism.
    pub(crate) table: BTreeMap<String, Vec<PgcEntry>>,
    pub(crate) cache: ComposeCache,
}

/// Memo for [`FiniteProperad::compose_pgc`], keyed by an exact structural
/// serialization of the query. Cleared by cloning; invisible to equality.
#[derive(Default)]
pub struct ComposeCache(std::sync::Mutex<std::collections::HashMap<String, Option<OpId>>>);

impl Clone for ComposeCache {
    fn clone(&self) -> Self {
        ComposeCache::default()
    }
}

impl PartialEq for ComposeCache {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl Eq for ComposeCache {}

impl fmt::Debug for ComposeCache {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("ComposeCache")
    }
}

/// Exact key of a decorated corolla pair: structure, ports, slots, colors,
/// and operations, independent of id names. The vertex with an outgoing
/// grafted edge is the upper one.
fn exact_pair_key(d: &PropDecoration) -> String {
    use crate::graph::EdgeEnd;
    let upper = d
        .shape
        .internal_edges()
        .next()
        .and_then(|e| e.tail.vertex())
        .expect("corolla pair has a graft")
        .clone();
    let vname = |v: &VertexId| if *v == upper { "u" } else { "v" };
    let end = |e: &EdgeEnd, slot_tag: &str| match e {
        EdgeEnd::Slot(s) => format!("{slot_tag}{s}"),
        EdgeEnd::Port(p) => format!("{}{}", vname(&p.vertex), p.index),
    };
    let mut descs: Vec<String> = d
        .shape
        .edges()
        .map(|e| {
            format!(
                "{}>{}:{}",
                end(&e.tail, "i"),
                end(&e.head, "o"),
                d.edges[&e.id]
            )
        })
        .collect();
    descs.sort();
    let ops: Vec<String> = d
        .shape
        .vertex_ids()
        .map(|v| format!("{}={}", vname(v), d.vertices[v]))
        .collect();
    format!("{}|{}", ops.join(","), descs.join(";"))
}

/// Canonical key of a decoration's colored shape, forgetting operations.
pub(crate) fn colored_shape_key(d: &PropDecoration) -> String {
    let labels = crate::graph::Labels {
        vertex: BTreeMap::new(),
        edge: d.edges.iter().map(|(k, v)| (k.clone(), v.to_string())).collect(),
    };
    crate::graph::canonical_form_labeled(&d.shape, &labels)
}

impl FiniteProperad {
    #[allow(clippy::too_many_arguments)]
    pub fn assemble(
        colors: BTreeSet<Color>,
        max_in: usize,
        max_out: usize,
        ops: BTreeMap<Biprofile, BTreeSet<OpId>>,
        units: BTreeMap<Color, OpId>,
        input_swaps: BTreeMap<(OpId, usize), OpId>,
        output_swaps: BTreeMap<(OpId, usize), OpId>,
        entries: Vec<(PropDecoration, OpId)>,
    ) -> Result<FiniteProperad, ProperadError> {
        let mut profiles = BTreeMap::new();
        for (profile, cell) in &ops {
            for c in profile.inputs.iter().chain(&profile.outputs) {
                if !colors.contains(c) {
                    return Err(ProperadError::UnknownColor(c.clone()));
                }
            }
            for op in cell {
                if profiles.insert(op.clone(), profile.clone()).is_some() {
                    return Err(ProperadError::DuplicateOp(op.clone()));
                }
            }
        }
        let mut p = FiniteProperad {
            colors,
            max_in,
            max_out,
            ops,
            profiles,
            units,
            input_swaps,
            output_swaps,
            table: BTreeMap::new(),
            cache: ComposeCache::default(),
        };
        for (rep, result) in entries {
            p.insert_entry(rep, result)?;
        }
        Ok(p)
    }

    pub(crate) fn insert_entry(&mut self, rep: PropDecoration, result: OpId) -> Result<(), ProperadError> {
        if !self.profiles.contains_key(&result) {
            return Err(ProperadError::UnknownOp(result));
        }
        let key = colored_shape_key(&rep);
        for existing in self.table.get(&key).into_iter().flatten() {
            if let Some(iso) = self.decoration_iso(&rep, &existing.rep) {
                // Same abstract composition; tolerate it only when the
                // transported results agree.
                let transported =
                    self.transport_result(&rep, &existing.rep, &iso, &existing.result)?;
                if transported == result {
                    return Ok(());
                }
                return Err(ProperadError::ParseFailed(format!(
                    "conflicting composition entries for one corolla pair ({result} vs {transported})"
                )));
            }
        }
        self.table.entry(key).or_default().push(PgcEntry { rep, result });
        Ok(())
    }

    /// A weak isomorphism of colored shapes under which the vertex
    /// operations agree up to the induced port permutations.
    pub fn decorations_isomorphic(
        &self,
        a: &PropDecoration,
        b: &PropDecoration,
    ) -> Option<crate::graph::GraphIso> {
        self.decoration_iso(a, b)
    }

    pub(crate) fn decoration_iso(
        &self,
        a: &PropDecoration,
        b: &PropDecoration,
    ) -> Option<crate::graph::GraphIso> {
        let labels = |d: &PropDecoration| crate::graph::Labels {
            vertex: BTreeMap::new(),
            edge: d.edges.iter().map(|(k, v)| (k.clone(), v.to_string())).collect(),
        };
        let isos = crate::graph::find_isomorphisms_labeled(
            &a.shape,
            &b.shape,
            crate::graph::IsoMode::Weak,
            &labels(a),
            &labels(b),
        );
        'iso: for iso in isos {
            for (w, q_op) in &a.vertices {
                let w2 = &iso.vertex_map[w];
                let r_op = &b.vertices[w2];
                let perm = |dir: Direction| -> Vec<usize> {
                    let a_ports = match dir {
                        Direction::Input => a.shape.in_edges(w),
                        Direction::Output => a.shape.out_edges(w),
                    }
                    .expect("valid shape");
                    let b_ports = match dir {
                        Direction::Input => b.shape.in_edges(w2),
                        Direction::Output => b.shape.out_edges(w2),
                    }
                    .expect("valid shape");
                    a_ports
                        .iter()
                        .map(|e| {
                            b_ports
                                .iter()
                                .position(|f| *f == iso.edge_map[e])
                                .expect("iso maps ports")
                                + 1
                        })
                        .collect()
                };
                let c_in = perm(Direction::Input);
                let c_out = perm(Direction::Output);
                match self.apply_permutation(r_op, &c_in, &c_out) {
                    Ok(moved) if moved == *q_op => {}
                    _ => continue 'iso,
                }
            }
            return Some(iso);
        }
        None
    }

    /// Rearrange a stored result into the query's boundary order.
    fn transport_result(
        &self,
        query: &PropDecoration,
        rep: &PropDecoration,
        iso: &crate::graph::GraphIso,
        result: &OpId,
    ) -> Result<OpId, ProperadError> {
        let rep_in_slot: BTreeMap<&EdgeId, usize> = rep
            .shape
            .inputs()
            .iter()
            .enumerate()
            .map(|(i, id)| (id, i + 1))
            .collect();
        let rep_out_slot: BTreeMap<&EdgeId, usize> = rep
            .shape
            .outputs()
            .iter()
            .enumerate()
            .map(|(i, id)| (id, i + 1))
            .collect();
        let in_perm: Vec<usize> = query
            .shape
            .inputs()
            .iter()
            .map(|id| rep_in_slot[&iso.edge_map[id]])
            .collect();
        let out_perm: Vec<usize> = query
            .shape
            .outputs()
            .iter()
            .map(|id| rep_out_slot[&iso.edge_map[id]])
            .collect();
        self.apply_permutation(result, &in_perm, &out_perm)
    }

    pub fn colors(&self) -> &BTreeSet<Color> {
        &self.colors
    }

    pub fn arity_bounds(&self) -> (usize, usize) {
        (self.max_in, self.max_out)
    }

    pub fn ops_with_profile(&self, profile: &Biprofile) -> impl Iterator<Item = &OpId> {
        self.ops.get(profile).into_iter().flatten()
    }

    pub fn all_ops(&self) -> impl Iterator<Item = &OpId> {
        self.profiles.keys()
    }

    pub fn profile_of(&self, op: &OpId) -> Result<&Biprofile, ProperadError> {
        self.profiles
            .get(op)
            .ok_or_else(|| ProperadError::UnknownOp(op.clone()))
    }

    pub fn unit(&self, color: &Color) -> Result<&OpId, ProperadError> {
        self.units
            .get(color)
            .ok_or_else(|| ProperadError::MissingUnit(color.clone()))
    }

    pub fn table_entries(&self) -> impl Iterator<Item = &PgcEntry> {
        self.table.values().flatten()
    }

    /// The operation with inputs `i` and `i+1` interchanged.
    pub fn swap_inputs(&self, op: &OpId, i: usize) -> Result<&OpId, ProperadError> {
        self.input_swaps
            .get(&(op.clone(), i))
            .ok_or_else(|| ProperadError::SwapMissing {
                op: op.clone(),
                direction: Direction::Input,
                index: i,
            })
    }

    pub fn swap_outputs(&self, op: &OpId, i: usize) -> Result<&OpId, ProperadError> {
        self.output_swaps
            .get(&(op.clone(), i))
            .ok_or_else(|| ProperadError::SwapMissing {
                op: op.clone(),
                direction: Direction::Output,
                index: i,
            })
    }

    /// Rearrange an operation's boundary: position `k` of the result reads
    /// position `perm[k]` of the original (1-based entries). Realized by the
    /// stored adjacent transpositions.
    pub fn apply_permutation(
        &self,
        op: &OpId,
        in_perm: &[usize],
        out_perm: &[usize],
    ) -> Result<OpId, ProperadError> {
        let mut current = op.clone();
        for (is_input, perm) in [(true, in_perm), (false, out_perm)] {
            let mut rho: Vec<usize> = (1..=perm.len()).collect();
            // Bubble rho into perm, mirroring each adjacent swap on the op.
            for k in 0..perm.len() {
                let mut pos = (k..perm.len())
                    .find(|&j| rho[j] == perm[k])
                    .expect("permutation entries match");
                while pos > k {
                    rho.swap(pos - 1, pos);
                    current = if is_input {
                        self.swap_inputs(&current, pos)?.clone()
                    } else {
                        self.swap_outputs(&current, pos)?.clone()
                    };
                    pos -= 1;
                }
            }
        }
        Ok(current)
    }

    /// Contract a decorated partially grafted corolla to one operation, in
    /// the decorated shape's boundary order. Scans the colored-shape bucket
    /// for an entry isomorphic to the query as a decoration and transports
    /// the stored result into the query's boundary order.
    pub fn compose_pgc(&self, pgc: &PropDecoration) -> Result<OpId, ProperadError> {
        let memo_key = exact_pair_key(pgc);
        if let Some(hit) = self.cache.0.lock().unwrap().get(&memo_key) {
            return match hit {
                Some(op) => Ok(op.clone()),
                None => Err(ProperadError::CompositionMissing(memo_key)),
            };
        }
        let outcome = self.compose_pgc_uncached(pgc);
        match &outcome {
            Ok(op) => {
                self.cache.0.lock().unwrap().insert(memo_key, Some(op.clone()));
            }
            Err(ProperadError::CompositionMissing(_)) => {
                self.cache.0.lock().unwrap().insert(memo_key, None);
            }
            Err(_) => {}
        }
        outcome
    }

    fn compose_pgc_uncached(&self, pgc: &PropDecoration) -> Result<OpId, ProperadError> {
        let key = colored_shape_key(pgc);
        let bucket = self
            .table
            .get(&key)
            .ok_or_else(|| ProperadError::CompositionMissing(key.clone()))?;
        for entry in bucket {
            if let Some(iso) = self.decoration_iso(pgc, &entry.rep) {
                return self.transport_result(pgc, &entry.rep, &iso, &entry.result);
            }
        }
        Err(ProperadError::CompositionMissing(key))
    }

    /// Contract a whole decorated graph to one operation by repeated
    /// composition of grafted pairs. The result reads the shape's boundary
    /// order and does not depend on the contraction order.
    pub fn evaluate(&self, d: &PropDecoration) -> Result<OpId, ProperadError> {
        self.check_decoration(d)?;
        let (bin, bout) = d.shape.boundary_arities();
        if bin > self.max_in || bout > self.max_out {
            return Err(ProperadError::ArityOverflow {
                got: (bin, bout),
                max: (self.max_in, self.max_out),
            });
        }
        self.evaluate_unchecked(d)
    }

    fn evaluate_unchecked(&self, d: &PropDecoration) -> Result<OpId, ProperadError> {
        if d.shape.vertex_count() == 0 {
            let e = d.shape.edge_ids().next().expect("valid shape");
            return Ok(self.unit(&d.edges[e])?.clone());
        }
        if d.shape.vertex_count() == 2 {
            // A connected two-vertex shape is itself a corolla pair, and
            // composition already answers in its boundary order.
            return self.compose_pgc(d);
        }
        if d.shape.vertex_count() == 1 {
            let v = d.shape.vertex_ids().next().unwrap();
            let op = &d.vertices[v];
            // Align the op (in port order) with the graph boundary order.
            let port_slot = |dir: Direction, ids: &[EdgeId]| -> Vec<usize> {
                let ports = match dir {
                    Direction::Input => d.shape.in_edges(v),
                    Direction::Output => d.shape.out_edges(v),
                }
                .expect("valid shape");
                let index: BTreeMap<&EdgeId, usize> =
                    ports.iter().enumerate().map(|(i, id)| (id, i + 1)).collect();
                ids.iter().map(|id| index[id]).collect()
            };
            let in_perm = port_slot(Direction::Input, d.shape.inputs());
            let out_perm = port_slot(Direction::Output, d.shape.outputs());
            return self.apply_permutation(op, &in_perm, &out_perm);
        }
        // Pick a grafted pair whose contraction is defined; order
        // independence lets the first success win.
        let mut last_err = None;
        for (a, b) in grafted_pairs(&d.shape) {
            match self.contract_pair(d, &a, &b) {
                Ok(next) => return self.evaluate_unchecked(&next),
                Err(e @ ProperadError::CompositionMissing(_)) => last_err = Some(e),
                Err(e) => return Err(e),
            }
        }
        Err(last_err.unwrap_or_else(|| {
            ProperadError::BadDecoration("no contractible pair in decorated shape".into())
        }))
    }

    pub(crate) fn contract_pair(
        &self,
        d: &PropDecoration,
        a: &VertexId,
        b: &VertexId,
    ) -> Result<PropDecoration, ProperadError> {
        let subset: BTreeSet<VertexId> = [a.clone(), b.clone()].into();
        let (contracted, assignment) = crate::substitution::contract(&d.shape, &subset, "z")
            .map_err(|e| ProperadError::BadDecoration(e.to_string()))?;
        let guest = assignment.guest;
        let pair = PropDecoration::new(
            guest.clone(),
            guest
                .edge_ids()
                .map(|e| (e.clone(), d.edges[e].clone()))
                .collect(),
            guest
                .vertex_ids()
                .map(|v| (v.clone(), d.vertices[v].clone()))
                .collect(),
        );
        let composite = self.compose_pgc(&pair)?;
        let mut edges: BTreeMap<EdgeId, Color> = BTreeMap::new();
        for e in contracted.edge_ids() {
            edges.insert(e.clone(), d.edges[e].clone());
        }
        let mut vertices: BTreeMap<VertexId, OpId> = BTreeMap::new();
        for v in contracted.vertex_ids() {
            if *v == assignment.host_vertex {
                vertices.insert(v.clone(), composite.clone());
            } else {
                vertices.insert(v.clone(), d.vertices[v].clone());
            }
        }
        Ok(PropDecoration::new(contracted, edges, vertices))
    }

    /// Structural check of one decoration: colors and ops resolve, each
    /// vertex op's profile equals the port-ordered colors at that vertex.
    pub fn check_decoration(&self, d: &PropDecoration) -> Result<(), ProperadError> {
        for e in d.shape.edge_ids() {
            let c = d
                .edges
                .get(e)
                .ok_or_else(|| ProperadError::BadDecoration(format!("edge `{e}` uncolored")))?;
            if !self.colors.contains(c) {
                return Err(ProperadError::UnknownColor(c.clone()));
            }
        }
        for v in d.shape.vertex_ids() {
            let op = d
                .vertices
                .get(v)
                .ok_or_else(|| ProperadError::BadDecoration(format!("vertex `{v}` undecorated")))?;
            let want = self.profile_of(op)?;
            let got = self.vertex_profile(d, v)?;
            if got != *want {
                return Err(ProperadError::BadDecoration(format!(
                    "vertex `{v}` decorated by `{op}` of profile {want} but its ports read {got}"
                )));
            }
        }
        Ok(())
    }

    /// The port-ordered color profile of a shape vertex.
    pub fn vertex_profile(
        &self,
        d: &PropDecoration,
        v: &VertexId,
    ) -> Result<Biprofile, ProperadError> {
        let grab = |dir: Direction| -> Result<Vec<Color>, ProperadError> {
            let ids = match dir {
                Direction::Input => d.shape.in_edges(v),
                Direction::Output => d.shape.out_edges(v),
            }
            .map_err(|e| ProperadError::BadDecoration(e.to_string()))?;
            Ok(ids.iter().map(|e| d.edges[e].clone()).collect())
        };
        Ok(Biprofile::new(grab(Direction::Input)?, grab(Direction::Output)?))
    }
}

/// Ordered vertex pairs of a shape joined by at least one edge.
pub(crate) fn grafted_pairs(shape: &WiringGraph) -> Vec<(VertexId, VertexId)> {
    let mut pairs = BTreeSet::new();
    for e in shape.internal_edges() {
        let a = e.tail.vertex().unwrap().clone();
        let b = e.head.vertex().unwrap().clone();
        pairs.insert((a, b));
    }
    pairs.into_iter().collect()
}


