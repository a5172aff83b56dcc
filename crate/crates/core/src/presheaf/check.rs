//! The presheaf-level checkers: horn fillers, inner-Kan conditions, Segal
//! maps, and the nerve characterization.

use super::build::{decoration_id, nerve_truncated_on};
use super::parts::{
    corolla_inclusion, edge_inclusion, face_closure, PresheafMap, RepresentablePart, Selector,
};
use super::{GraphexId, Level, PresheafError, TruncatedGraphicalSet};
use crate::graph::{canonical_form, Biprofile, Color, VertexId, WiringGraph};
use crate::properad::{FiniteProperad, OpId, PropDecoration};
use crate::substitution::{GeneratorKind, GeneratorMap};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

/// One checked statement with an optional counterexample witness.
#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub graph: String,
    pub check: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// A bundle of per-level results.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub pass: bool,
    pub results: Vec<CheckResult>,
}

impl CheckReport {
    fn from_results(results: Vec<CheckResult>) -> CheckReport {
        CheckReport {
            pass: results.iter().all(|r| r.pass),
            results,
        }
    }
}

/// All graphices of the base level whose restrictions along every selected
/// face agree with the map's values.
pub fn fillers(
    x: &TruncatedGraphicalSet,
    h: &PresheafMap,
) -> Result<Vec<GraphexId>, PresheafError> {
    let Some(level) = x.level_for(&h.part.base) else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    'next: for y in &level.elements {
        for (face, want) in h.part.faces.iter().zip(&h.values) {
            let entry = x.action(face)?;
            match entry.table.get(y) {
                Some(got) if got == want => {}
                _ => continue 'next,
            }
        }
        out.push(y.clone());
    }
    Ok(out)
}

/// Enumerate every natural map out of the part: one value per face,
/// compatible along all shared coface-chain restrictions.
pub fn horn_maps(
    x: &TruncatedGraphicalSet,
    part: &RepresentablePart,
) -> Result<Vec<PresheafMap>, PresheafError> {
    let mut results = Vec::new();
    let mut closures: BTreeMap<(usize, GraphexId), BTreeMap<String, GraphexId>> = BTreeMap::new();
    for (i, face) in part.faces.iter().enumerate() {
        let Some(level) = x.level_for(face.source()) else {
            return Ok(Vec::new());
        };
        for v in &level.elements {
            closures.insert((i, v.clone()), face_closure(x, face, v)?);
        }
    }

    fn extend(
        x: &TruncatedGraphicalSet,
        part: &RepresentablePart,
        closures: &BTreeMap<(usize, GraphexId), BTreeMap<String, GraphexId>>,
        idx: usize,
        merged: &mut BTreeMap<String, GraphexId>,
        chosen: &mut Vec<GraphexId>,
        results: &mut Vec<PresheafMap>,
    ) {
        if idx == part.faces.len() {
            results.push(PresheafMap::new(part.clone(), chosen.clone()));
            return;
        }
        let level = x
            .level_for(part.faces[idx].source())
            .expect("face level exists");
        'candidates: for v in &level.elements {
            let closure = &closures[&(idx, v.clone())];
            for (k, val) in closure {
                if let Some(existing) = merged.get(k) {
                    if existing != val {
                        continue 'candidates;
                    }
                }
            }
            let added: Vec<String> = closure
                .iter()
                .filter(|(k, _)| !merged.contains_key(*k))
                .map(|(k, _)| k.clone())
                .collect();
            for k in &added {
                merged.insert(k.clone(), closure[k].clone());
            }
            chosen.push(v.clone());
            extend(x, part, closures, idx + 1, merged, chosen, results);
            chosen.pop();
            for k in &added {
                merged.remove(k);
            }
        }
    }

    let mut merged = BTreeMap::new();
    let mut chosen = Vec::new();
    extend(x, part, &closures, 0, &mut merged, &mut chosen, &mut results);
    Ok(results)
}

/// All inner horns of one level.
fn inner_horns(
    x: &TruncatedGraphicalSet,
    base: &WiringGraph,
) -> Vec<(GeneratorMap, RepresentablePart)> {
    let all = x.conjugated_cofaces(base);
    let mut out = Vec::new();
    for (i, (gen, _)) in all.iter().enumerate() {
        if gen.kind != GeneratorKind::InnerCoface {
            continue;
        }
        let faces = all
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, (_, m))| m.clone())
            .collect();
        out.push((
            gen.clone(),
            RepresentablePart {
                base: base.clone(),
                selector: Selector::Horn(i),
                faces,
            },
        ));
    }
    out
}

/// Inner-Kan check: every natural inner-horn map on every level with at
/// most `bound` vertices has at least one filler.
pub fn is_inner_kan(x: &TruncatedGraphicalSet, bound: usize) -> Result<CheckReport, PresheafError> {
    inner_fillers_check(x, bound, false)
}

/// Strict variant: every natural inner-horn map has exactly one filler.
pub fn has_unique_inner_fillers(
    x: &TruncatedGraphicalSet,
    bound: usize,
) -> Result<CheckReport, PresheafError> {
    inner_fillers_check(x, bound, true)
}

fn inner_fillers_check(
    x: &TruncatedGraphicalSet,
    bound: usize,
    unique: bool,
) -> Result<CheckReport, PresheafError> {
    let mut results = Vec::new();
    let levels: Vec<&Level> = x
        .levels()
        .filter(|l| l.graph.vertex_count() >= 2 && l.graph.vertex_count() <= bound)
        .collect();
    for level in levels {
        let key = canonical_form(&level.graph);
        let mut pass = true;
        let mut witness = None;
        for (gen, part) in inner_horns(x, &level.graph) {
            for h in horn_maps(x, &part)? {
                let fs = fillers(x, &h)?;
                let ok = if unique { fs.len() == 1 } else { !fs.is_empty() };
                if !ok {
                    pass = false;
                    witness = Some(format!(
                        "inner horn omitting a {:?} face admits {} fillers for values {:?}",
                        gen.kind,
                        fs.len(),
                        h.values
                    ));
                    break;
                }
            }
            if !pass {
                break;
            }
        }
        results.push(CheckResult {
            graph: key,
            check: if unique { "unique-inner-fillers" } else { "inner-kan" }.into(),
            pass,
            witness,
        });
    }
    Ok(CheckReport::from_results(results))
}

/// The Segal data of one level: the corolla chains per vertex plus, for
/// every internal edge, the leg restrictions that must agree.
struct SegalFrame {
    vertices: Vec<VertexId>,
    chains: Vec<super::parts::ResolvedChain>,
    /// `(vertex position, stored leg coface, vertex position, stored leg coface)`
    edge_conditions: Vec<(usize, crate::gamma::GammaMorphism, usize, crate::gamma::GammaMorphism)>,
}

fn segal_frame(
    x: &TruncatedGraphicalSet,
    level: &Level,
) -> Result<SegalFrame, PresheafError> {
    let g = &level.graph;
    let vertices: Vec<VertexId> = g.vertex_ids().cloned().collect();
    let mut chains = Vec::new();
    for v in &vertices {
        chains.push(corolla_inclusion(x, g, v)?);
    }
    let mut edge_conditions = Vec::new();
    for e in g.internal_edges() {
        let tail = e.tail.vertex().unwrap();
        let head = e.head.vertex().unwrap();
        let ti = vertices.iter().position(|v| v == tail).unwrap();
        let hi = vertices.iter().position(|v| v == head).unwrap();
        let tail_leg = leg_coface(x, &chains[ti], &e.id)?;
        let head_leg = leg_coface(x, &chains[hi], &e.id)?;
        edge_conditions.push((ti, tail_leg, hi, head_leg));
    }
    Ok(SegalFrame {
        vertices,
        chains,
        edge_conditions,
    })
}

/// The stored edge-inclusion coface of the corolla representative hitting
/// the preimage of `edge` under the chain composite.
fn leg_coface(
    x: &TruncatedGraphicalSet,
    chain: &super::parts::ResolvedChain,
    edge: &crate::graph::EdgeId,
) -> Result<crate::gamma::GammaMorphism, PresheafError> {
    let corolla = chain.composite.source();
    let leg = corolla
        .edge_ids()
        .find(|l| chain.composite.edge_map()[*l] == *edge)
        .ok_or_else(|| PresheafError::Malformed(format!("edge `{edge}` missed by corolla chain")))?
        .clone();
    for (_, m) in x.conjugated_cofaces(corolla) {
        if m.source().vertex_count() == 0 {
            let src_edge = m.source().edge_ids().next().unwrap();
            if m.edge_map()[src_edge] == leg {
                return Ok(m);
            }
        }
    }
    Err(PresheafError::Malformed(format!(
        "no stored edge inclusion for leg `{leg}`"
    )))
}

/// Compatible corolla tuples of one level.
fn segal_tuples(
    x: &TruncatedGraphicalSet,
    frame: &SegalFrame,
) -> Result<Vec<Vec<GraphexId>>, PresheafError> {
    let mut candidates: Vec<&[GraphexId]> = Vec::new();
    for chain in &frame.chains {
        let Some(level) = x.level_for(chain.composite.source()) else {
            return Ok(Vec::new());
        };
        candidates.push(&level.elements);
    }
    let mut out = Vec::new();
    let mut chosen: Vec<GraphexId> = Vec::new();
    fn rec(
        x: &TruncatedGraphicalSet,
        frame: &SegalFrame,
        candidates: &[&[GraphexId]],
        idx: usize,
        chosen: &mut Vec<GraphexId>,
        out: &mut Vec<Vec<GraphexId>>,
    ) -> Result<(), PresheafError> {
        if idx == candidates.len() {
            out.push(chosen.clone());
            return Ok(());
        }
        'cands: for c in candidates[idx] {
            for (ti, tleg, hi, hleg) in &frame.edge_conditions {
                let (lo, hi_) = (*ti.min(hi), *ti.max(hi));
                if hi_ != idx || lo > idx {
                    continue;
                }
                let (first_leg, second_leg) = if ti < hi { (tleg, hleg) } else { (hleg, tleg) };
                let first_val = x.action(first_leg)?.table.get(&chosen[lo]).cloned();
                let second_val = x.action(second_leg)?.table.get(c).cloned();
                if first_val != second_val || first_val.is_none() {
                    continue 'cands;
                }
            }
            chosen.push(c.clone());
            rec(x, frame, candidates, idx + 1, chosen, out)?;
            chosen.pop();
        }
        Ok(())
    }
    rec(x, frame, &candidates, 0, &mut chosen, &mut out)?;
    Ok(out)
}

/// Witness of a Segal failure.
#[derive(Debug, Clone, Serialize)]
pub struct SegalWitness {
    pub graph: String,
    pub detail: String,
}

/// The Segal map of one level: each graphex to its corolla restrictions.
pub fn segal_map(
    x: &TruncatedGraphicalSet,
    g: &WiringGraph,
) -> Result<Vec<(GraphexId, Vec<GraphexId>)>, PresheafError> {
    let level = x
        .level_for(g)
        .ok_or_else(|| PresheafError::MissingLevel(canonical_form(g)))?;
    let frame = segal_frame(x, level)?;
    let mut out = Vec::new();
    for y in &level.elements {
        let mut tuple = Vec::new();
        for chain in &frame.chains {
            let refs: Vec<&crate::gamma::GammaMorphism> = chain.steps.iter().collect();
            tuple.push(x.restrict_chain(&refs, y)?);
        }
        out.push((y.clone(), tuple));
    }
    let _ = frame.vertices;
    Ok(out)
}

/// Set-level Segal condition: the Segal map is a bijection onto the
/// compatible corolla tuples, for every level with at least one vertex and
/// at most `bound` of them.
pub fn is_segal(x: &TruncatedGraphicalSet, bound: usize) -> Result<CheckReport, PresheafError> {
    let mut results = Vec::new();
    let levels: Vec<&Level> = x
        .levels()
        .filter(|l| l.graph.vertex_count() >= 1 && l.graph.vertex_count() <= bound)
        .collect();
    for level in levels {
        let key = canonical_form(&level.graph);
        let frame = segal_frame(x, level)?;
        let tuples = segal_tuples(x, &frame)?;
        let mapped = segal_map(x, &level.graph)?;
        let mut pass = true;
        let mut witness = None;
        let mut image: BTreeMap<Vec<GraphexId>, usize> = BTreeMap::new();
        for (y, tuple) in &mapped {
            let count = image.entry(tuple.clone()).or_insert(0);
            *count += 1;
            if *count > 1 {
                pass = false;
                witness = Some(format!("two graphices share the corolla tuple of `{y}`"));
            }
        }
        let tuple_set: BTreeSet<&Vec<GraphexId>> = tuples.iter().collect();
        for t in image.keys() {
            if !tuple_set.contains(t) {
                pass = false;
                witness = Some("a graphex restricts to an incompatible tuple".into());
            }
        }
        if pass {
            for t in &tuples {
                if !image.contains_key(t) {
                    pass = false;
                    witness = Some(format!("compatible tuple {t:?} has no graphex"));
                    break;
                }
            }
        }
        results.push(CheckResult {
            graph: key,
            check: "segal".into(),
            pass,
            witness,
        });
    }
    Ok(CheckReport::from_results(results))
}

/// Outcome of the nerve characterization.
#[derive(Debug)]
pub struct NerveVerdict {
    pub report: CheckReport,
    pub candidate: Option<FiniteProperad>,
}

/// Is `x` isomorphic to the nerve of a finite properad? Runs the Segal
/// check; on success reconstructs a candidate properad from the edge and
/// corolla levels and verifies that its truncated nerve matches `x` level
/// by level și action by action.
pub fn is_nerve(x: &TruncatedGraphicalSet, bound: usize) -> Result<NerveVerdict, PresheafError> {
    let segal = is_segal(x, bound)?;
    if !segal.pass {
        return Ok(NerveVerdict {
            report: segal,
            candidate: None,
        });
    }
    let mut results = segal.results;

    match reconstruct(x) {
        Err(e) => {
            results.push(CheckResult {
                graph: "*".into(),
                check: "nerve-reconstruction".into(),
                pass: false,
                witness: Some(e.to_string()),
            });
            Ok(NerveVerdict {
                report: CheckReport::from_results(results),
                candidate: None,
            })
        }
        Ok(candidate) => {
            let universe: Vec<WiringGraph> = x.levels().map(|l| l.graph.clone()).collect();
            match nerve_truncated_on(&candidate, x.bound(), &universe) {
                Err(e) => {
                    results.push(CheckResult {
                        graph: "*".into(),
                        check: "nerve-comparison".into(),
                        pass: false,
                        witness: Some(e.to_string()),
                    });
                    Ok(NerveVerdict {
                        report: CheckReport::from_results(results),
                        candidate: Some(candidate),
                    })
                }
                Ok(nerve_set) => {
                    let comparison = compare_to_nerve(x, &candidate, &nerve_set);
                    results.extend(comparison);
                    Ok(NerveVerdict {
                        report: CheckReport::from_results(results),
                        candidate: Some(candidate),
                    })
                }
            }
        }
    }
}

/// Token of a corolla-level graphex as a properad operation.
fn op_token(shape: &WiringGraph, graphex: &GraphexId) -> OpId {
    let v = shape.vertices().next().expect("corolla has a vertex");
    OpId::new(format!("c{}x{}#{}", v.in_arity, v.out_arity, graphex))
}

/// Per-level reading plan: the restriction chains for every edge and vertex
/// of the level representative, computed once and reused per graphex.
struct LevelReader {
    graph: WiringGraph,
    /// Per edge: the chain down to the exceptional-edge level.
    edge_chains: BTreeMap<crate::graph::EdgeId, Vec<crate::gamma::GammaMorphism>>,
    /// Per vertex: chain steps, the corolla shape, and the alignment of the
    /// corolla slot order with the vertex's port order.
    vertex_chains: BTreeMap<VertexId, (Vec<crate::gamma::GammaMorphism>, WiringGraph, Vec<usize>, Vec<usize>)>,
}

impl LevelReader {
    fn new(x: &TruncatedGraphicalSet, level: &Level) -> Result<LevelReader, PresheafError> {
        let g = &level.graph;
        let mut edge_chains = BTreeMap::new();
        let mut vertex_chains = BTreeMap::new();
        if g.vertex_count() > 0 {
            for e in g.edge_ids() {
                let chain = edge_inclusion(x, g, e)?;
                edge_chains.insert(e.clone(), chain.steps);
            }
            for v in g.vertex_ids() {
                let chain = corolla_inclusion(x, g, v)?;
                let corolla = chain.composite.source().clone();
                let perm = |ids: Vec<crate::graph::EdgeId>,
                            slots: &[crate::graph::EdgeId]|
                 -> Vec<usize> {
                    ids.iter()
                        .map(|e| {
                            let leg = corolla
                                .edge_ids()
                                .find(|l| chain.composite.edge_map()[*l] == *e)
                                .expect("chain hits every port edge");
                            slots.iter().position(|s| s == leg).unwrap() + 1
                        })
                        .collect()
                };
                let in_perm = perm(g.in_edges(v).expect("valid level graph"), corolla.inputs());
                let out_perm = perm(g.out_edges(v).expect("valid level graph"), corolla.outputs());
                vertex_chains.insert(v.clone(), (chain.steps, corolla, in_perm, out_perm));
            }
        }
        Ok(LevelReader {
            graph: g.clone(),
            edge_chains,
            vertex_chains,
        })
    }

    /// Read one graphex as a properad decoration of the level graph.
    fn read(
        &self,
        x: &TruncatedGraphicalSet,
        p: &FiniteProperad,
        y: &GraphexId,
    ) -> Result<PropDecoration, PresheafError> {
        if self.graph.vertex_count() == 0 {
            let e = self.graph.edge_ids().next().unwrap().clone();
            return Ok(PropDecoration::new(
                self.graph.clone(),
                [(e, Color::from(y.as_str()))].into(),
                BTreeMap::new(),
            ));
        }
        let mut edges = BTreeMap::new();
        for (e, steps) in &self.edge_chains {
            let refs: Vec<&crate::gamma::GammaMorphism> = steps.iter().collect();
            edges.insert(e.clone(), Color::from(x.restrict_chain(&refs, y)?.as_str()));
        }
        let mut vertices = BTreeMap::new();
        for (v, (steps, corolla, in_perm, out_perm)) in &self.vertex_chains {
            let refs: Vec<&crate::gamma::GammaMorphism> = steps.iter().collect();
            let value = x.restrict_chain(&refs, y)?;
            let token = op_token(corolla, &value);
            let aligned = p.apply_permutation(&token, in_perm, out_perm)?;
            vertices.insert(v.clone(), aligned);
        }
        Ok(PropDecoration::new(self.graph.clone(), edges, vertices))
    }
}


/// Rebuild a finite properad from the edge and corolla levels of a Segal
/// set: colors from the exceptional-edge level, operations from corolla
/// graphices, units from the codegeneracy action, the symmetric action from
/// leg-transposing automorphisms, and composition through the Segal
/// bijection and the inner coface action.
fn reconstruct(x: &TruncatedGraphicalSet) -> Result<FiniteProperad, PresheafError> {
    let down = WiringGraph::exceptional_edge(None);
    let colors: BTreeSet<Color> = match x.level_for(&down) {
        Some(level) => level.elements.iter().map(|e| Color::from(e.as_str())).collect(),
        None => BTreeSet::new(),
    };

    let corolla_levels: Vec<&Level> = x
        .levels()
        .filter(|l| {
            l.graph.vertex_count() == 1 && l.graph.edges().all(|e| e.is_leg())
        })
        .collect();
    let mut max_in = 0;
    let mut max_out = 0;
    for level in x.levels() {
        for v in level.graph.vertices() {
            max_in = max_in.max(v.in_arity);
            max_out = max_out.max(v.out_arity);
        }
    }

    // Operations with their profiles, read through the leg inclusions.
    let mut ops: BTreeMap<Biprofile, BTreeSet<OpId>> = BTreeMap::new();
    let mut token_origin: BTreeMap<OpId, (String, GraphexId)> = BTreeMap::new();
    for level in &corolla_levels {
        let g = &level.graph;
        for y in &level.elements {
            let grab = |ids: &[crate::graph::EdgeId]| -> Result<Vec<Color>, PresheafError> {
                ids.iter()
                    .map(|e| {
                        let chain = edge_inclusion(x, g, e)?;
                        let refs: Vec<&crate::gamma::GammaMorphism> = chain.steps.iter().collect();
                        Ok(Color::from(x.restrict_chain(&refs, y)?.as_str()))
                    })
                    .collect()
            };
            let profile = Biprofile::new(grab(g.inputs())?, grab(g.outputs())?);
            let token = op_token(g, y);
            ops.entry(profile).or_default().insert(token.clone());
            token_origin.insert(token, (canonical_form(g), y.clone()));
        }
    }

    // Units via the codegeneracy action out of the unary corolla.
    let mut units: BTreeMap<Color, OpId> = BTreeMap::new();
    if let Some(unary) = corolla_levels.iter().find(|l| {
        let v = l.graph.vertices().next().unwrap();
        v.in_arity == 1 && v.out_arity == 1
    }) {
        let v = unary.graph.vertex_ids().next().unwrap().clone();
        let gen = crate::substitution::codegeneracy(&unary.graph, &v)
            .map_err(|e| PresheafError::Malformed(e.to_string()))?;
        let sigma = x
            .conjugate_target(gen)
            .ok_or_else(|| PresheafError::Malformed("no exceptional-edge level for units".into()))?;
        let entry = x.action(&sigma)?;
        for c in &colors {
            let value = entry.table.get(c.as_str()).ok_or_else(|| {
                PresheafError::Malformed(format!("codegeneracy action undefined on `{c}`"))
            })?;
            units.insert(c.clone(), op_token(&unary.graph, value));
        }
    }

    // Symmetric action from leg-transposing automorphisms.
    let mut input_swaps: BTreeMap<(OpId, usize), OpId> = BTreeMap::new();
    let mut output_swaps: BTreeMap<(OpId, usize), OpId> = BTreeMap::new();
    for level in &corolla_levels {
        let g = &level.graph;
        for (dir, slots) in [(true, g.inputs().to_vec()), (false, g.outputs().to_vec())] {
            for i in 1..slots.len() {
                let auto = crate::graph::find_isomorphisms(g, g, crate::graph::IsoMode::Weak)
                    .into_iter()
                    .find(|iso| {
                        iso.edge_map[&slots[i - 1]] == slots[i]
                            && iso.edge_map[&slots[i]] == slots[i - 1]
                            && g.edge_ids().all(|e| {
                                *e == slots[i - 1] || *e == slots[i] || iso.edge_map[e] == *e
                            })
                    })
                    .ok_or_else(|| {
                        PresheafError::Malformed("missing leg-transposing automorphism".into())
                    })?;
                let theta = crate::gamma::iso_to_morphism(g, g, &auto);
                let entry = x.action(&theta)?;
                for y in &level.elements {
                    let moved = entry.table.get(y).ok_or_else(|| {
                        PresheafError::Malformed(format!("automorphism action undefined on `{y}`"))
                    })?;
                    let from = op_token(g, y);
                    let to = op_token(g, moved);
                    if dir {
                        input_swaps.insert((from, i), to);
                    } else {
                        output_swaps.insert((from, i), to);
                    }
                }
            }
        }
    }

    let skeleton = FiniteProperad::assemble(
        colors.clone(),
        max_in,
        max_out,
        ops.clone(),
        units.clone(),
        input_swaps.clone(),
        output_swaps.clone(),
        Vec::new(),
    )?;

    // Composition: realize each decorated corolla pair as a graphex of the
    // matching two-vertex level via the Segal bijection, then contract it
    // with the stored inner coface action.
    let mut entries: Vec<(PropDecoration, OpId)> = Vec::new();
    let mut readings: BTreeMap<String, Vec<(GraphexId, PropDecoration)>> = BTreeMap::new();
    for q in crate::properad::enumerate_decorated_pgcs(&skeleton) {
        let level = x
            .level_for(&q.shape)
            .ok_or_else(|| PresheafError::Malformed("missing corolla-pair level".into()))?;
        let level_key = canonical_form(&level.graph);
        if !readings.contains_key(&level_key) {
            let reader = LevelReader::new(x, level)?;
            let mut rs = Vec::new();
            for y in &level.elements {
                rs.push((y.clone(), reader.read(x, &skeleton, y)?));
            }
            readings.insert(level_key.clone(), rs);
        }
        let mut matched = None;
        for (y, read) in &readings[&level_key] {
            if let Some(iso) = skeleton.decorations_isomorphic(&q, read) {
                matched = Some((y.clone(), read.clone(), iso));
                break;
            }
        }
        let Some((y, read, iso)) = matched else {
            return Err(PresheafError::Malformed(
                "no graphex realizes a composable corolla pair".into(),
            ));
        };
        // Contract through the unique inner coface of the pair level.
        let inner = x
            .conjugated_cofaces(&level.graph)
            .into_iter()
            .find(|(gen, _)| gen.kind == GeneratorKind::InnerCoface)
            .ok_or_else(|| PresheafError::Malformed("pair level has no inner coface".into()))?;
        let (_, m) = inner;
        let entry = x.action(&m)?;
        let z = entry.table.get(&y).ok_or_else(|| {
            PresheafError::Malformed(format!("inner coface action undefined on `{y}`"))
        })?;
        let corolla = m.source();
        let token = op_token(corolla, z);
        // Express the composite in the query's boundary order: query slot s
        // corresponds through the decoration iso and the coface edge map to
        // a slot of the contracted corolla.
        let to_corolla_slot = |edge: &crate::graph::EdgeId, inputs: bool| -> usize {
            let level_edge = &iso.edge_map[edge];
            let leg = corolla
                .edge_ids()
                .find(|l| m.edge_map()[*l] == *level_edge)
                .expect("boundary edges survive contraction");
            let slots = if inputs { corolla.inputs() } else { corolla.outputs() };
            slots.iter().position(|s| s == leg).unwrap() + 1
        };
        let in_perm: Vec<usize> = q.shape.inputs().iter().map(|e| to_corolla_slot(e, true)).collect();
        let out_perm: Vec<usize> = q.shape.outputs().iter().map(|e| to_corolla_slot(e, false)).collect();
        let result = skeleton.apply_permutation(&token, &in_perm, &out_perm)?;
        let _ = read;
        entries.push((q, result));
    }

    let candidate = FiniteProperad::assemble(
        colors,
        max_in,
        max_out,
        ops,
        units,
        input_swaps,
        output_swaps,
        entries,
    )?;
    let _ = token_origin;
    Ok(candidate)
}

/// Level-by-level comparison of `x` against the truncated nerve of the
/// candidate, through the reading map.
fn compare_to_nerve(
    x: &TruncatedGraphicalSet,
    candidate: &FiniteProperad,
    nerve_set: &TruncatedGraphicalSet,
) -> Vec<CheckResult> {
    let mut results = Vec::new();
    // Reading maps per level, computed once.
    let mut phis: BTreeMap<String, BTreeMap<GraphexId, GraphexId>> = BTreeMap::new();
    for level in x.levels() {
        let key = canonical_form(&level.graph);
        let mut pass = true;
        let mut witness = None;
        let Some(nerve_level) = nerve_set.level_for(&level.graph) else {
            results.push(CheckResult {
                graph: key,
                check: "nerve-comparison".into(),
                pass: false,
                witness: Some("level missing from the reconstructed nerve".into()),
            });
            continue;
        };
        let reader = match LevelReader::new(x, level) {
            Ok(r) => r,
            Err(e) => {
                results.push(CheckResult {
                    graph: key,
                    check: "nerve-comparison".into(),
                    pass: false,
                    witness: Some(e.to_string()),
                });
                continue;
            }
        };
        let mut phi: BTreeMap<GraphexId, GraphexId> = BTreeMap::new();
        for y in &level.elements {
            match reader.read(x, candidate, y) {
                Ok(dec) => {
                    let id = decoration_id(&dec);
                    if !nerve_level.elements.contains(&id) {
                        pass = false;
                        witness = Some(format!("`{y}` reads as `{id}`, absent from the nerve"));
                        break;
                    }
                    if phi.values().any(|v| v == &id) {
                        pass = false;
                        witness = Some(format!("two graphices read as `{id}`"));
                        break;
                    }
                    phi.insert(y.clone(), id);
                }
                Err(e) => {
                    pass = false;
                    witness = Some(e.to_string());
                    break;
                }
            }
        }
        if pass && phi.len() != nerve_level.elements.len() {
            pass = false;
            witness = Some(format!(
                "level sizes differ: {} vs {}",
                phi.len(),
                nerve_level.elements.len()
            ));
        }
        results.push(CheckResult {
            graph: key.clone(),
            check: "nerve-comparison".into(),
            pass,
            witness,
        });
        phis.insert(key, phi);
    }
    // Action compatibility through the reading maps.
    let mut action_pass = true;
    let mut action_witness = None;
    'outer: for entry in x.actions() {
        let Some(nerve_entry) = nerve_set.action(&entry.morphism).ok() else {
            continue;
        };
        let src_key = canonical_form(entry.morphism.source());
        let tgt_key = canonical_form(entry.morphism.target());
        let (Some(phi_src), Some(phi_tgt)) = (phis.get(&src_key), phis.get(&tgt_key)) else {
            continue;
        };
        let tgt_level = x.level_for(entry.morphism.target()).unwrap();
        for y in &tgt_level.elements {
            let Some(restricted) = entry.table.get(y) else { continue };
            match (phi_tgt.get(y), phi_src.get(restricted)) {
                (Some(a), Some(b)) => {
                    if nerve_entry.table.get(a) != Some(b) {
                        action_pass = false;
                        action_witness = Some(format!(
                            "actions disagree at `{y}` along `{}`",
                            super::action_key(&entry.morphism)
                        ));
                        break 'outer;
                    }
                }
                _ => {
                    action_pass = false;
                    action_witness = Some("reading failed during action comparison".into());
                    break 'outer;
                }
            }
        }
    }
    results.push(CheckResult {
        graph: "*".into(),
        check: "nerve-actions".into(),
        pass: action_pass,
        witness: action_witness,
    });
    results
}
