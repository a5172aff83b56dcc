//! JSON input format for finite properads: colors, per-biprofile operation
//! lists, the unit table, transposition actions, and composition entries
//! keyed by decorated corolla pairs.

use super::finite::{FiniteProperad, OpId, PropDecoration};
use super::ProperadError;
use crate::graph::{Biprofile, Color, VertexId, WiringGraph};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Serialize, Deserialize)]
struct CellJson {
    inputs: Vec<Color>,
    outputs: Vec<Color>,
    ops: Vec<OpId>,
}

#[derive(Debug, Serialize, Deserialize)]
struct SwapJson {
    op: OpId,
    index: usize,
    result: OpId,
}

#[derive(Debug, Serialize, Deserialize)]
struct CompositionJson {
    /// Colored corolla-pair shape; vertex `ops` decorate it.
    shape: WiringGraph,
    ops: BTreeMap<VertexId, OpId>,
    result: OpId,
}

#[derive(Debug, Serialize, Deserialize)]
struct ProperadJson {
    colors: Vec<Color>,
    max_in: usize,
    max_out: usize,
    ops: Vec<CellJson>,
    units: BTreeMap<Color, OpId>,
    input_swaps: Vec<SwapJson>,
    output_swaps: Vec<SwapJson>,
    compositions: Vec<CompositionJson>,
}

pub fn to_json(p: &FiniteProperad) -> serde_json::Value {
    let doc = ProperadJson {
        colors: p.colors.iter().cloned().collect(),
        max_in: p.max_in,
        max_out: p.max_out,
        ops: p
            .ops
            .iter()
            .map(|(profile, cell)| CellJson {
                inputs: profile.inputs.clone(),
                outputs: profile.outputs.clone(),
                ops: cell.iter().cloned().collect(),
            })
            .collect(),
        units: p.units.clone(),
        input_swaps: p
            .input_swaps
            .iter()
            .map(|((op, index), result)| SwapJson {
                op: op.clone(),
                index: *index,
                result: result.clone(),
            })
            .collect(),
        output_swaps: p
            .output_swaps
            .iter()
            .map(|((op, index), result)| SwapJson {
                op: op.clone(),
                index: *index,
                result: result.clone(),
            })
            .collect(),
        compositions: p
            .table
            .values()
            .flatten()
            .map(|entry| CompositionJson {
                shape: entry.rep.shape.with_colors(&entry.rep.edges),
                ops: entry.rep.vertices.clone(),
                result: entry.result.clone(),
            })
            .collect(),
    };
    serde_json::to_value(doc).expect("properad serializes")
}

/// Structural load. Axiom checking is the caller's business (the CLI runs
/// it on load and fails unless forced).
pub fn from_json(value: &serde_json::Value) -> Result<FiniteProperad, ProperadError> {
    let doc: ProperadJson = serde_json::from_value(value.clone())
        .map_err(|e| ProperadError::ParseFailed(e.to_string()))?;
    let mut ops: BTreeMap<Biprofile, std::collections::BTreeSet<OpId>> = BTreeMap::new();
    for cell in doc.ops {
        let profile = Biprofile::new(cell.inputs, cell.outputs);
        ops.entry(profile).or_default().extend(cell.ops);
    }
    let entries: Vec<(PropDecoration, OpId)> = doc
        .compositions
        .into_iter()
        .map(|c| {
            let colors: BTreeMap<_, _> = c
                .shape
                .edges()
                .filter_map(|e| e.color.clone().map(|col| (e.id.clone(), col)))
                .collect();
            if colors.len() != c.shape.edge_count() {
                return Err(ProperadError::ParseFailed(
                    "composition shape must be totally colored".into(),
                ));
            }
            let rep = PropDecoration::new(c.shape.uncolored(), colors, c.ops);
            Ok((rep, c.result))
        })
        .collect::<Result<_, _>>()?;
    FiniteProperad::assemble(
        doc.colors.into_iter().collect(),
        doc.max_in,
        doc.max_out,
        ops,
        doc.units,
        doc.input_swaps
            .into_iter()
            .map(|s| ((s.op, s.index), s.result))
            .collect(),
        doc.output_swaps
            .into_iter()
            .map(|s| ((s.op, s.index), s.result))
            .collect(),
        entries,
    )
}
