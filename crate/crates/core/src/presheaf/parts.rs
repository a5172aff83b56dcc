//! Parts of representables: boundaries, horns, Segal cores, and maps out of
//! them. A part is presented by its maximal selected morphisms (the faces,
//! or the corolla inclusions); lower pieces are reachable by naturality.

use super::{action_key, GraphexId, PresheafError, TruncatedGraphicalSet};
use crate::gamma::GammaMorphism;
use crate::graph::{canonical_form, EdgeId, VertexId, WiringGraph};
use crate::substitution::{GeneratorKind, GeneratorMap};
use std::collections::BTreeMap;

/// Which part of the representable on the base graph is selected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Selector {
    Full,
    Boundary,
    /// Index of the omitted face in the coface enumeration of the base.
    Horn(usize),
    SegalCore,
}

/// A part of a representable, presented by maximal selected morphisms into
/// the base. For boundaries and horns these are cofaces; for Segal cores
/// they are the iterated outer coface inclusions of the corollas.
#[derive(Debug, Clone)]
pub struct RepresentablePart {
    pub base: WiringGraph,
    pub selector: Selector,
    /// For faces: the generator and its morphism conjugated to start at the
    /// stored representative of the source class (when inside a set's
    /// universe this is the action key). For Segal cores: the corolla
    /// inclusion composites.
    pub faces: Vec<GammaMorphism>,
}

/// The boundary: union of all faces.
pub fn boundary(
    x: &TruncatedGraphicalSet,
    base: &WiringGraph,
) -> Result<RepresentablePart, PresheafError> {
    if base.vertex_count() == 0 {
        return Err(PresheafError::Malformed(
            "the exceptional edge has no faces".into(),
        ));
    }
    let faces = x
        .conjugated_cofaces(base)
        .into_iter()
        .map(|(_, m)| m)
        .collect();
    Ok(RepresentablePart {
        base: base.clone(),
        selector: Selector::Boundary,
        faces,
    })
}

/// The horn omitting one face. The omitted face is identified by matching
/// the given generator against the coface enumeration of the base.
pub fn horn(
    x: &TruncatedGraphicalSet,
    base: &WiringGraph,
    omitted: &GeneratorMap,
) -> Result<RepresentablePart, PresheafError> {
    let omitted_m = omitted.to_morphism();
    let all = x.conjugated_cofaces(base);
    let mut faces = Vec::new();
    let mut index = None;
    for (i, (gen, m)) in all.iter().enumerate() {
        // The omitted face matches up to precomposition with an
        // automorphism of its source.
        let same = gen.kind == omitted.kind
            && gen.target == omitted.target
            && is_same_face(&omitted_m, &gen.to_morphism());
        if same {
            index = Some(i);
        } else {
            faces.push(m.clone());
        }
    }
    let Some(i) = index else {
        return Err(PresheafError::NotAFace(format!("{:?}", omitted.kind)));
    };
    Ok(RepresentablePart {
        base: base.clone(),
        selector: Selector::Horn(i),
        faces,
    })
}

/// Two cofaces present the same face when they agree up to precomposition
/// with an isomorphism of sources.
fn is_same_face(a: &GammaMorphism, b: &GammaMorphism) -> bool {
    if a.source() == b.source() && a.equivalent(b) {
        return true;
    }
    for iso in crate::graph::find_isomorphisms(
        a.source(),
        b.source(),
        crate::graph::IsoMode::Weak,
    ) {
        let theta = crate::gamma::iso_to_morphism(a.source(), b.source(), &iso);
        if let Ok(composite) = GammaMorphism::compose(b, &theta) {
            if composite.equivalent(a) {
                return true;
            }
        }
    }
    false
}

/// The Segal core: union of the images of the corolla inclusions, one per
/// vertex of the base.
pub fn segal_core(
    x: &TruncatedGraphicalSet,
    base: &WiringGraph,
) -> Result<RepresentablePart, PresheafError> {
    if base.vertex_count() == 0 {
        return Err(PresheafError::Malformed(
            "the exceptional edge has no Segal core".into(),
        ));
    }
    let mut faces = Vec::new();
    for v in base.vertex_ids() {
        faces.push(corolla_inclusion(x, base, v)?.composite);
    }
    Ok(RepresentablePart {
        base: base.clone(),
        selector: Selector::SegalCore,
        faces,
    })
}

/// A corolla inclusion resolved into stored generator steps: the morphisms
/// compose (innermost last) to the inclusion of the corolla of `vertex`.
#[derive(Debug, Clone)]
pub struct ResolvedChain {
    /// Stored generator morphisms; `chain[0]` has the base as target.
    pub steps: Vec<GammaMorphism>,
    /// The composite, from the corolla (or edge) representative to the base.
    pub composite: GammaMorphism,
}

/// The iterated outer coface `C_v -> base`, built from stored actions: each
/// step deletes one vertex while keeping the tracked one, and both ends of
/// every step are level representatives.
pub fn corolla_inclusion(
    x: &TruncatedGraphicalSet,
    base: &WiringGraph,
    vertex: &VertexId,
) -> Result<ResolvedChain, PresheafError> {
    let mut steps: Vec<GammaMorphism> = Vec::new();
    let mut found = search_corolla_chain(x, base, vertex, &mut steps);
    if !found && base.vertex_count() == 1 {
        // The base is already a corolla; the empty chain suffices.
        found = true;
    }
    if !found {
        return Err(PresheafError::Malformed(format!(
            "no outer coface chain reaches the corolla of `{vertex}`"
        )));
    }
    let composite = compose_chain(base, &steps)?;
    Ok(ResolvedChain { steps, composite })
}

/// Depth-first search for a stored outer-coface chain keeping `vertex`.
fn search_corolla_chain(
    x: &TruncatedGraphicalSet,
    current: &WiringGraph,
    vertex: &VertexId,
    steps: &mut Vec<GammaMorphism>,
) -> bool {
    if current.vertex_count() <= 1 {
        return current.has_vertex(vertex) || current.vertex_count() == 1;
    }
    for (gen, m) in x.conjugated_cofaces(current) {
        if gen.kind != GeneratorKind::OuterCoface {
            continue;
        }
        // Track the vertex through the conjugated morphism: some source
        // vertex must be assigned the corolla of the tracked vertex.
        let Some(next_vertex) = m
            .source()
            .vertex_ids()
            .find(|w| {
                let d = m.vertex_assignment(w);
                d.shape.vertex_count() == 1 && d.vertices.values().next() == Some(vertex)
            })
            .cloned()
        else {
            continue;
        };
        steps.push(m.clone());
        if search_corolla_chain(x, m.source(), &next_vertex, steps) {
            return true;
        }
        steps.pop();
    }
    false
}

/// Compose a chain of morphisms `chain[i]: S_i -> S_{i-1}` (with `S_{-1}`
/// the base) into one morphism from the last source to the base.
fn compose_chain(
    base: &WiringGraph,
    steps: &[GammaMorphism],
) -> Result<GammaMorphism, PresheafError> {
    let mut composite = GammaMorphism::identity(base);
    for step in steps {
        composite = GammaMorphism::compose(&composite, step)?;
    }
    Ok(composite)
}

/// The stored chain reaching the exceptional-edge level while tracking one
/// edge of the base; the composite sends the edge representative to
/// `edge`.
pub fn edge_inclusion(
    x: &TruncatedGraphicalSet,
    base: &WiringGraph,
    edge: &EdgeId,
) -> Result<ResolvedChain, PresheafError> {
    let mut steps: Vec<GammaMorphism> = Vec::new();
    if !search_edge_chain(x, base, edge, &mut steps) {
        return Err(PresheafError::Malformed(format!(
            "no coface chain reaches the edge `{edge}`"
        )));
    }
    let composite = compose_chain(base, &steps)?;
    Ok(ResolvedChain { steps, composite })
}

fn search_edge_chain(
    x: &TruncatedGraphicalSet,
    current: &WiringGraph,
    edge: &EdgeId,
    steps: &mut Vec<GammaMorphism>,
) -> bool {
    if current.vertex_count() == 0 {
        return true;
    }
    for (_, m) in x.conjugated_cofaces(current) {
        let Some(preimage) = m
            .source()
            .edge_ids()
            .find(|e| m.edge_map()[*e] == *edge)
            .cloned()
        else {
            continue;
        };
        steps.push(m.clone());
        if search_edge_chain(x, m.source(), &preimage, steps) {
            return true;
        }
        steps.pop();
    }
    false
}

/// A map from a part into a graphical set, given by one graphex per
/// maximal selected morphism. Naturality is checked by deriving lower
/// values along coface chains in all possible ways.
#[derive(Debug, Clone)]
pub struct PresheafMap {
    pub part: RepresentablePart,
    pub values: Vec<GraphexId>,
}

impl PresheafMap {
    pub fn new(part: RepresentablePart, values: Vec<GraphexId>) -> PresheafMap {
        assert_eq!(part.faces.len(), values.len());
        PresheafMap { part, values }
    }
}

/// The downward restriction closure of one face value: every composite
/// `face . chain` with `chain` a stored coface chain, keyed by the
/// composite morphism, together with the restricted value.
pub(crate) fn face_closure(
    x: &TruncatedGraphicalSet,
    face: &GammaMorphism,
    value: &GraphexId,
) -> Result<BTreeMap<String, GraphexId>, PresheafError> {
    let mut out = BTreeMap::new();
    let mut frontier: Vec<(GammaMorphism, GraphexId)> = vec![(face.clone(), value.clone())];
    out.insert(action_key(face), value.clone());
    while let Some((m, v)) = frontier.pop() {
        for (_, step) in x.conjugated_cofaces(m.source()) {
            let Ok(entry) = x.action(&step) else { continue };
            let Some(w) = entry.table.get(&v) else {
                continue;
            };
            let composite = GammaMorphism::compose(&m, &step)?;
            let key = action_key(&composite);
            if !out.contains_key(&key) {
                out.insert(key, w.clone());
                frontier.push((composite, w.clone()));
            }
        }
    }
    Ok(out)
}

#[cfg_attr(not(test), allow(dead_code))]
/// Element-level membership of a part at one level: the set of composite
/// morphism keys selected by the part.
pub(crate) fn part_element_keys(
    x: &TruncatedGraphicalSet,
    part: &RepresentablePart,
) -> Result<std::collections::BTreeSet<String>, PresheafError> {
    let mut keys = std::collections::BTreeSet::new();
    for face in &part.faces {
        let mut frontier = vec![face.clone()];
        keys.insert(action_key(face));
        while let Some(m) = frontier.pop() {
            for (_, step) in x.conjugated_cofaces(m.source()) {
                let composite = GammaMorphism::compose(&m, &step)?;
                let key = action_key(&composite);
                if keys.insert(key) {
                    frontier.push(composite);
                }
            }
            // Degeneracy-composites below the faces are also part of the
            // subpresheaf, but they are determined by the coface part and
            // add nothing to containment checks at coface levels.
        }
    }
    let _ = canonical_form(&part.base);
    Ok(keys)
}
