//! Reedy classification and factorization.

use super::decorated::GammaDecoration;
use super::morphism::{identity_decoration, GammaMorphism};
use super::GammaError;
use crate::graph::{EdgeId, VertexId, WiringGraph};
use crate::substitution::{substitute_traced, SubstitutionAssignment};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// Where a morphism sits in the generalized Reedy structure. `Isomorphism`
/// subsumes both classes; `Positive` and `Negative` mean strictly so.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReedyClassification {
    Positive,
    Negative,
    Isomorphism,
    Neither,
}

impl ReedyClassification {
    /// Member of the degree-raising wide subcategory.
    pub fn in_positive(self) -> bool {
        matches!(self, ReedyClassification::Positive | ReedyClassification::Isomorphism)
    }

    /// Member of the degree-lowering wide subcategory.
    pub fn in_negative(self) -> bool {
        matches!(self, ReedyClassification::Negative | ReedyClassification::Isomorphism)
    }
}

fn is_corolla(shape: &WiringGraph) -> bool {
    shape.vertex_count() == 1 && shape.edges().all(|e| e.is_leg())
}

impl GammaMorphism {
    /// Positive maps are injective on edges; negative maps are surjective on
    /// edges with every target vertex appearing as a corolla value;
    /// isomorphisms are exactly the maps in both classes.
    pub fn classify(&self) -> ReedyClassification {
        let values: Vec<&EdgeId> = self.edge_map().values().collect();
        let distinct: BTreeSet<&EdgeId> = values.iter().copied().collect();
        let injective = distinct.len() == values.len();
        let surjective = self.target().edge_ids().all(|e| distinct.contains(e));

        let mut corolla_hits: BTreeSet<&VertexId> = BTreeSet::new();
        let mut all_corollas = true;
        for v in self.source().vertex_ids() {
            let d = self.vertex_assignment(v);
            if is_corolla(&d.shape) {
                corolla_hits.insert(d.vertices.values().next().unwrap());
            } else {
                all_corollas = false;
            }
        }
        let corolla_condition = self
            .target()
            .vertex_ids()
            .all(|u| corolla_hits.contains(u));
        let negative = surjective && corolla_condition;

        let iso = injective
            && negative
            && all_corollas
            && distinct.len() == self.target().edge_count()
            && corolla_hits.len() == self.source().vertex_count()
            && self.source().vertex_count() == self.target().vertex_count();

        match (iso, injective, negative) {
            (true, _, _) => ReedyClassification::Isomorphism,
            (false, true, false) => ReedyClassification::Positive,
            (false, false, true) => ReedyClassification::Negative,
            (false, true, true) => {
                // Injective and negative but not invertible cannot happen for
                // structurally well-formed data on finite graphs.
                ReedyClassification::Isomorphism
            }
            _ => ReedyClassification::Neither,
        }
    }
}

/// Factor `f` as a degree-lowering map followed by a degree-raising one:
/// collapse every vertex assigned the exceptional edge with codegeneracies,
/// then include the rest. The middle object is unique up to isomorphism.
pub fn reedy_factorize(
    f: &GammaMorphism,
) -> Result<(GammaMorphism, GammaMorphism), GammaError> {
    if !f.is_valid() {
        return Err(GammaError::InvalidMorphism(
            "image is not a subgraph of the target".into(),
        ));
    }

    let collapsed: Vec<VertexId> = f
        .source()
        .vertex_ids()
        .filter(|v| f.vertex_assignment(v).shape.is_exceptional())
        .cloned()
        .collect();

    let mut middle = f.source().clone();
    let mut merge: BTreeMap<EdgeId, EdgeId> = f
        .source()
        .edge_ids()
        .map(|e| (e.clone(), e.clone()))
        .collect();
    for v in &collapsed {
        let (next, trace) = substitute_traced(
            &middle,
            &SubstitutionAssignment::aligned(v.clone(), WiringGraph::exceptional_edge(None)),
        )?;
        for val in merge.values_mut() {
            *val = trace.host_edge(val);
        }
        middle = next;
    }

    // Degree-lowering part: source -> middle.
    let mut h_vertices: BTreeMap<VertexId, GammaDecoration> = BTreeMap::new();
    for v in f.source().vertex_ids() {
        if collapsed.contains(v) {
            let in_edge = f.source().in_edges(v)?[0].clone();
            let shape = WiringGraph::exceptional_edge(None);
            let edges = [(shape.edge_ids().next().unwrap().clone(), merge[&in_edge].clone())]
                .into();
            h_vertices.insert(v.clone(), GammaDecoration::new(shape, edges, BTreeMap::new()));
        } else {
            h_vertices.insert(v.clone(), identity_decoration(&middle, v));
        }
    }
    let h = GammaMorphism::new(f.source().clone(), middle.clone(), merge.clone(), h_vertices)?;

    // Degree-raising part: middle -> target. Middle edges are the surviving
    // source edges; the original edge map factors through the merge.
    let g_edges: BTreeMap<EdgeId, EdgeId> = middle
        .edge_ids()
        .map(|e| (e.clone(), f.edge_map()[e].clone()))
        .collect();
    let g_vertices: BTreeMap<VertexId, GammaDecoration> = middle
        .vertex_ids()
        .map(|v| (v.clone(), f.vertex_assignment(v).clone()))
        .collect();
    let g = GammaMorphism::new(middle, f.target().clone(), g_edges, g_vertices)?;

    debug_assert!(h.classify().in_negative());
    debug_assert!(g.classify().in_positive());
    Ok((h, g))
}
