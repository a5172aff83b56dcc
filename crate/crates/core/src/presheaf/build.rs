//! Constructions of truncated graphical sets: representables and nerves.

use super::{GraphexId, PresheafError, TruncatedGraphicalSet};
use crate::gamma::{hom_set, subgraphs, GammaMorphism, Subgraph};
use crate::graph::{enumerate_graphs, WiringGraph};
use crate::properad::{nerve, nerve_restrict, FiniteProperad, PropDecoration};
use std::collections::BTreeMap;

/// The representable graphical set of `g`, truncated at `bound` vertices:
/// each level holds the morphisms into `g`, and generators act by
/// precomposition. The level universe ranges over vertex arities realized
/// by boundaries of subgraphs of `g`.
pub fn representable(g: &WiringGraph, bound: usize) -> Result<TruncatedGraphicalSet, PresheafError> {
    let mut max_in = 0;
    let mut max_out = 0;
    for s in subgraphs(g) {
        let (m, n) = match &s {
            Subgraph::Edge(_) => (1, 1),
            Subgraph::VertexInduced(_) => s.to_graph(g).boundary_arities(),
        };
        max_in = max_in.max(m);
        max_out = max_out.max(n);
    }
    let universe = enumerate_graphs(bound, max_in, max_out, None);

    let mut levels: Vec<(WiringGraph, Vec<GraphexId>)> = Vec::new();
    let mut homs: BTreeMap<String, Vec<GammaMorphism>> = BTreeMap::new();
    for k in &universe {
        let morphisms = hom_set(k, g);
        let ids: Vec<GraphexId> = morphisms.iter().map(|m| m.key()).collect();
        levels.push((k.clone(), ids));
        homs.insert(crate::graph::canonical_form(k), morphisms);
    }

    // Assemble with empty actions first to reuse the generator enumeration.
    let skeleton = TruncatedGraphicalSet::assemble(bound, levels.clone(), Vec::new())?;
    let mut actions = Vec::new();
    for m in skeleton.required_generators() {
        let tgt_key = crate::graph::canonical_form(m.target());
        let src_key = crate::graph::canonical_form(m.source());
        let mut table = BTreeMap::new();
        for f in &homs[&tgt_key] {
            let composed = GammaMorphism::compose(f, &m).map_err(PresheafError::Gamma)?;
            let key = composed.key();
            if !homs[&src_key].iter().any(|h| h.key() == key) {
                return Err(PresheafError::Malformed(format!(
                    "precomposition left the enumerated hom-set at `{src_key}`"
                )));
            }
            table.insert(f.key(), key);
        }
        actions.push((m, table));
    }
    TruncatedGraphicalSet::assemble(bound, levels, actions)
}

/// Serialize a properad decoration as a graphex name.
pub(crate) fn decoration_id(d: &PropDecoration) -> GraphexId {
    let edges: Vec<String> = d.edges.iter().map(|(e, c)| format!("{e}={c}")).collect();
    let ops: Vec<String> = d.vertices.iter().map(|(v, o)| format!("{v}={o}")).collect();
    format!("{}|{}", edges.join(","), ops.join(","))
}

/// The nerve of a finite properad, truncated at `bound` vertices. Levels
/// range over graphs within the properad's arity caps; graphices are the
/// properad decorations; generators act by nerve restriction.
pub fn nerve_truncated(
    p: &FiniteProperad,
    bound: usize,
) -> Result<TruncatedGraphicalSet, PresheafError> {
    let (max_in, max_out) = p.arity_bounds();
    let universe = enumerate_graphs(bound, max_in, max_out, None);
    nerve_truncated_on(p, bound, &universe)
}

/// Nerve truncation over an explicit universe of level representatives.
pub(crate) fn nerve_truncated_on(
    p: &FiniteProperad,
    bound: usize,
    universe: &[WiringGraph],
) -> Result<TruncatedGraphicalSet, PresheafError> {

    let mut levels: Vec<(WiringGraph, Vec<GraphexId>)> = Vec::new();
    let mut decorations: BTreeMap<String, BTreeMap<GraphexId, PropDecoration>> = BTreeMap::new();
    for k in universe {
        let decs = nerve(p, k)?;
        let named: BTreeMap<GraphexId, PropDecoration> =
            decs.into_iter().map(|d| (decoration_id(&d), d)).collect();
        levels.push((k.clone(), named.keys().cloned().collect()));
        decorations.insert(crate::graph::canonical_form(k), named);
    }

    let skeleton = TruncatedGraphicalSet::assemble(bound, levels.clone(), Vec::new())?;
    let mut actions = Vec::new();
    for m in skeleton.required_generators() {
        let tgt_key = crate::graph::canonical_form(m.target());
        let mut table = BTreeMap::new();
        for (id, x) in &decorations[&tgt_key] {
            let pulled = nerve_restrict(p, &m, x)?;
            table.insert(id.clone(), decoration_id(&pulled));
        }
        actions.push((m, table));
    }
    TruncatedGraphicalSet::assemble(bound, levels, actions)
}
