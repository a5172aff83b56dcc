//! JSON format for truncated graphical sets: the bound, per-level element
//! lists, and generator action tables.

use super::{GraphexId, PresheafError, TruncatedGraphicalSet};
use crate::gamma::GammaMorphism;
use crate::graph::WiringGraph;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Serialize, Deserialize)]
struct LevelJson {
    graph: WiringGraph,
    elements: Vec<GraphexId>,
}

#[derive(Debug, Serialize, Deserialize)]
struct ActionJson {
    morphism: GammaMorphism,
    table: BTreeMap<GraphexId, GraphexId>,
}

#[derive(Debug, Serialize, Deserialize)]
struct TgsJson {
    bound: usize,
    levels: Vec<LevelJson>,
    actions: Vec<ActionJson>,
}

pub fn tgs_to_json(x: &TruncatedGraphicalSet) -> serde_json::Value {
    let doc = TgsJson {
        bound: x.bound(),
        levels: x
            .levels()
            .map(|l| LevelJson {
                graph: l.graph.clone(),
                elements: l.elements.clone(),
            })
            .collect(),
        actions: x
            .actions()
            .map(|a| ActionJson {
                morphism: a.morphism.clone(),
                table: a.table.clone(),
            })
            .collect(),
    };
    serde_json::to_value(doc).expect("graphical set serializes")
}

pub fn tgs_from_json(value: &serde_json::Value) -> Result<TruncatedGraphicalSet, PresheafError> {
    let doc: TgsJson = serde_json::from_value(value.clone())
        .map_err(|e| PresheafError::Malformed(e.to_string()))?;
    TruncatedGraphicalSet::assemble(
        doc.bound,
        doc.levels.into_iter().map(|l| (l.graph, l.elements)).collect(),
        doc.actions.into_iter().map(|a| (a.morphism, a.table)).collect(),
    )
}
