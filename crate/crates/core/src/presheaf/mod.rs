//! Truncated graphical sets and their checkers: representables, boundaries,
//! horns, Segal cores, inner-Kan and Segal conditions, and the nerve
//! characterization.
//!
//! A truncated graphical set stores a finite set of graphices for each
//! isomorphism class of graphs up to a vertex bound, together with the
//! contravariant action of every generator map between stored levels
//! (cofaces, codegeneracies, and isomorphisms). Restrictions along arbitrary
//! morphisms are derived by composing generator actions, which is justified
//! because the generators present the whole category.
//!
//! Levels beyond the stored universe (for example graphs whose contracted
//! vertices exceed a nerve's arity caps) are simply absent: faces into
//! absent levels do not constrain horn maps. Outer faces always stay inside
//! the universe, so Segal data is never lost by the truncation.

mod build;
mod check;
mod json;
mod parts;

pub use build::{nerve_truncated, representable};
pub use check::{
    fillers, has_unique_inner_fillers, is_inner_kan, is_nerve, is_segal, segal_map, CheckReport,
    CheckResult, NerveVerdict, SegalWitness,
};
pub use json::{tgs_from_json, tgs_to_json};
pub use parts::{
    boundary, corolla_inclusion, horn, segal_core, PresheafMap, RepresentablePart, Selector,
};

use crate::gamma::GammaMorphism;
use crate::graph::{canonical_form, ValidationReport, Violation, WiringGraph};
use crate::substitution::{codegeneracy, enumerate_cofaces_into, GeneratorMap};
use std::collections::{BTreeMap, BTreeSet};

/// Name of one graphex inside a level.
pub type GraphexId = String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PresheafError {
    #[error("no level for graph `{0}`")]
    MissingLevel(String),
    #[error("missing action along `{0}`")]
    MissingAction(String),
    #[error("unknown graphex `{graphex}` at level `{level}`")]
    UnknownGraphex { level: String, graphex: GraphexId },
    #[error("malformed graphical set: {0}")]
    Malformed(String),
    #[error("{0} is not a coface of the base graph")]
    NotAFace(String),
    #[error(transparent)]
    Gamma(#[from] crate::gamma::GammaError),
    #[error(transparent)]
    Properad(#[from] crate::properad::ProperadError),
}

/// One level: a canonical representative graph and its finite graphex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Level {
    pub graph: WiringGraph,
    pub elements: Vec<GraphexId>,
}

/// One stored generator action: the morphism between level representatives
/// and the contravariant function on graphices.
#[derive(Debug, Clone)]
pub struct ActionEntry {
    pub morphism: GammaMorphism,
    pub table: BTreeMap<GraphexId, GraphexId>,
}

/// A table of finite sets indexed by isomorphism classes of graphs up to a
/// vertex bound, with the contravariant action of the generating morphisms.
#[derive(Debug, Clone)]
pub struct TruncatedGraphicalSet {
    bound: usize,
    levels: BTreeMap<String, Level>,
    actions: BTreeMap<String, ActionEntry>,
}

/// Stable identity of a morphism between specific graphs, used as the
/// action-table key.
pub(crate) fn action_key(m: &GammaMorphism) -> String {
    format!(
        "{}=>{}|{}",
        canonical_form(m.source()),
        canonical_form(m.target()),
        m.key()
    )
}

impl TruncatedGraphicalSet {
    /// Assemble from levels and generator actions. Level graphs are re-keyed
    /// by canonical form; actions must connect the stored representatives.
    pub fn assemble(
        bound: usize,
        levels: Vec<(WiringGraph, Vec<GraphexId>)>,
        actions: Vec<(GammaMorphism, BTreeMap<GraphexId, GraphexId>)>,
    ) -> Result<TruncatedGraphicalSet, PresheafError> {
        let mut level_map = BTreeMap::new();
        for (graph, elements) in levels {
            if graph.degree() > bound {
                return Err(PresheafError::Malformed(format!(
                    "level `{}` exceeds the vertex bound {bound}",
                    canonical_form(&graph)
                )));
            }
            let mut seen = BTreeSet::new();
            for e in &elements {
                if !seen.insert(e.clone()) {
                    return Err(PresheafError::Malformed(format!("duplicate graphex `{e}`")));
                }
            }
            let key = canonical_form(&graph);
            if level_map
                .insert(key.clone(), Level { graph, elements })
                .is_some()
            {
                return Err(PresheafError::Malformed(format!(
                    "two levels share the isomorphism class `{key}`"
                )));
            }
        }
        let mut action_map = BTreeMap::new();
        for (morphism, table) in actions {
            let src_key = canonical_form(morphism.source());
            let tgt_key = canonical_form(morphism.target());
            let src = level_map
                .get(&src_key)
                .ok_or(PresheafError::MissingLevel(src_key.clone()))?;
            let tgt = level_map
                .get(&tgt_key)
                .ok_or(PresheafError::MissingLevel(tgt_key))?;
            if *morphism.source() != src.graph || *morphism.target() != tgt.graph {
                return Err(PresheafError::Malformed(
                    "action morphism endpoints must be the stored level representatives".into(),
                ));
            }
            for x in &tgt.elements {
                let y = table.get(x).ok_or_else(|| PresheafError::Malformed(format!(
                    "action along `{}` undefined on `{x}`",
                    action_key(&morphism)
                )))?;
                if !src.elements.contains(y) {
                    return Err(PresheafError::UnknownGraphex {
                        level: src_key.clone(),
                        graphex: y.clone(),
                    });
                }
            }
            action_map.insert(action_key(&morphism), ActionEntry { morphism, table });
        }
        Ok(TruncatedGraphicalSet {
            bound,
            levels: level_map,
            actions: action_map,
        })
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn levels(&self) -> impl Iterator<Item = &Level> {
        self.levels.values()
    }

    pub fn level_for(&self, g: &WiringGraph) -> Option<&Level> {
        self.levels.get(&canonical_form(g))
    }

    pub fn actions(&self) -> impl Iterator<Item = &ActionEntry> {
        self.actions.values()
    }

    /// The stored action along a morphism between level representatives.
    pub fn action(&self, m: &GammaMorphism) -> Result<&ActionEntry, PresheafError> {
        self.actions
            .get(&action_key(m))
            .ok_or_else(|| PresheafError::MissingAction(action_key(m)))
    }

    /// Restrict a graphex along a chain of stored generator morphisms;
    /// `chain[0]`'s target is the graphex's level, and each subsequent
    /// morphism targets the previous source.
    pub fn restrict_chain(
        &self,
        chain: &[&GammaMorphism],
        x: &GraphexId,
    ) -> Result<GraphexId, PresheafError> {
        let mut current = x.clone();
        for m in chain.iter() {
            let entry = self.action(m)?;
            current = entry
                .table
                .get(&current)
                .ok_or_else(|| PresheafError::UnknownGraphex {
                    level: canonical_form(m.target()),
                    graphex: current.clone(),
                })?
                .clone();
        }
        Ok(current)
    }

    /// All generator maps this truncation is required to act on: every
    /// coface between stored levels, every codegeneracy between stored
    /// levels, and every automorphism of each level, all conjugated so that
    /// the endpoints are the stored representatives.
    pub fn required_generators(&self) -> Vec<GammaMorphism> {
        let mut out = Vec::new();
        for level in self.levels.values() {
            out.extend(self.conjugated_cofaces(&level.graph).into_iter().map(|(_, m)| m));
            for v in level.graph.vertex_ids() {
                let vx = level.graph.vertex(v).unwrap();
                if vx.in_arity == 1 && vx.out_arity == 1 {
                    if let Ok(gen) = codegeneracy(&level.graph, v) {
                        if let Some(m) = self.conjugate_target(gen) {
                            out.push(m);
                        }
                    }
                }
            }
            for iso in crate::graph::find_isomorphisms(
                &level.graph,
                &level.graph,
                crate::graph::IsoMode::Weak,
            ) {
                out.push(crate::gamma::iso_to_morphism(&level.graph, &level.graph, &iso));
            }
        }
        out
    }

    /// Cofaces into a level, each precomposed with an isomorphism from the
    /// canonical representative of its source. Faces whose source class is
    /// outside the stored universe are dropped.
    pub(crate) fn conjugated_cofaces(&self, target: &WiringGraph) -> Vec<(GeneratorMap, GammaMorphism)> {
        let mut out = Vec::new();
        for gen in enumerate_cofaces_into(target) {
            if let Some(m) = self.conjugate_source(&gen) {
                out.push((gen, m));
            }
        }
        out
    }

    /// Precompose a generator's morphism with an iso from the stored
    /// representative of its source class.
    pub(crate) fn conjugate_source(&self, gen: &GeneratorMap) -> Option<GammaMorphism> {
        let key = canonical_form(&gen.source);
        let level = self.levels.get(&key)?;
        let iso = crate::graph::find_isomorphisms(
            &level.graph,
            &gen.source,
            crate::graph::IsoMode::Weak,
        )
        .into_iter()
        .next()?;
        let theta = crate::gamma::iso_to_morphism(&level.graph, &gen.source, &iso);
        GammaMorphism::compose(&gen.to_morphism(), &theta).ok()
    }

    /// Postcompose a generator's morphism with an iso onto the stored
    /// representative of its target class.
    pub(crate) fn conjugate_target(&self, gen: GeneratorMap) -> Option<GammaMorphism> {
        let key = canonical_form(&gen.target);
        let level = self.levels.get(&key)?;
        let iso = crate::graph::find_isomorphisms(
            &gen.target,
            &level.graph,
            crate::graph::IsoMode::Weak,
        )
        .into_iter()
        .next()?;
        let theta = crate::gamma::iso_to_morphism(&gen.target, &level.graph, &iso);
        GammaMorphism::compose(&theta, &gen.to_morphism()).ok()
    }

    /// Functoriality on generators: every required generator has a stored
    /// action, isomorphisms act bijectively, and equal two-step generator
    /// composites act equally.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for m in self.required_generators() {
            let key = action_key(&m);
            let Some(entry) = self.actions.get(&key) else {
                // A required action may be omitted only when the target
                // level is empty (there is nothing to act on).
                let tgt = &self.levels[&canonical_form(m.target())];
                if !tgt.elements.is_empty() {
                    violations.push(Violation {
                        invariant: "actions".into(),
                        witness: format!("missing action along `{key}`"),
                    });
                }
                continue;
            };
            let src = &self.levels[&canonical_form(m.source())];
            let tgt = &self.levels[&canonical_form(m.target())];
            if !tgt.elements.is_empty() && src.elements.is_empty() {
                violations.push(Violation {
                    invariant: "closure".into(),
                    witness: format!(
                        "level `{}` is empty but receives a face of a nonempty level",
                        canonical_form(m.source())
                    ),
                });
            }
            let _ = entry;
        }
        // Isomorphism actions are bijections.
        for entry in self.actions.values() {
            if entry.morphism.classify() == crate::gamma::ReedyClassification::Isomorphism {
                let values: BTreeSet<&GraphexId> = entry.table.values().collect();
                if values.len() != entry.table.len() {
                    violations.push(Violation {
                        invariant: "isomorphisms".into(),
                        witness: format!(
                            "isomorphism action `{}` is not injective",
                            action_key(&entry.morphism)
                        ),
                    });
                }
            }
        }
        // Equal generator composites act equally: whenever a two-step
        // composite coincides with a stored generator, the composed action
        // must match the stored one.
        let entries: Vec<&ActionEntry> = self.actions.values().collect();
        for first in &entries {
            for second in &entries {
                if first.morphism.target() != second.morphism.source() {
                    continue;
                }
                let composite = match GammaMorphism::compose(&second.morphism, &first.morphism) {
                    Ok(c) => c,
                    Err(_) => continue,
                };
                let Some(third) = self.actions.get(&action_key(&composite)) else {
                    continue;
                };
                for x in &self.levels[&canonical_form(second.morphism.target())].elements {
                    let two_step = second
                        .table
                        .get(x)
                        .and_then(|y| first.table.get(y))
                        .cloned();
                    let direct = third.table.get(x).cloned();
                    if two_step != direct || two_step.is_none() {
                        violations.push(Violation {
                            invariant: "functoriality".into(),
                            witness: format!(
                                "composite actions disagree at `{x}` along `{}`",
                                action_key(&composite)
                            ),
                        });
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    /// Remove one graphex and every action row mentioning it. The result is
    /// still a structurally well-formed table; checkers report the hole.
    pub fn punctured(&self, g: &WiringGraph, victim: &GraphexId) -> TruncatedGraphicalSet {
        let key = canonical_form(g);
        let mut out = self.clone();
        if let Some(level) = out.levels.get_mut(&key) {
            level.elements.retain(|e| e != victim);
        }
        for entry in out.actions.values_mut() {
            if canonical_form(entry.morphism.target()) == key {
                entry.table.remove(victim);
            }
            if canonical_form(entry.morphism.source()) == key {
                entry.table.retain(|_, v| v != victim);
            }
        }
        out
    }

    /// Add a phantom copy of an existing graphex: same faces, new identity.
    pub fn padded(&self, g: &WiringGraph, original: &GraphexId, copy: GraphexId) -> TruncatedGraphicalSet {
        let key = canonical_form(g);
        let mut out = self.clone();
        if let Some(level) = out.levels.get_mut(&key) {
            level.elements.push(copy.clone());
        }
        for entry in out.actions.values_mut() {
            if canonical_form(entry.morphism.target()) == key {
                if let Some(v) = entry.table.get(original).cloned() {
                    entry.table.insert(copy.clone(), v);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests;
