use super::*;
use crate::graph::{Color, WiringGraph};
use crate::properad::{graded_properad, monoid_catalog, terminal_properad, GradedSpec};
use crate::substitution::GeneratorKind;
use std::collections::BTreeMap;

fn small_terminal() -> crate::properad::FiniteProperad {
    terminal_properad(&[Color::from("a")], 2, 2)
}

fn two_op_properad() -> crate::properad::FiniteProperad {
    let catalog = monoid_catalog();
    graded_properad(&GradedSpec {
        colors: vec![Color::from("a")],
        max_in: 2,
        max_out: 2,
        monoid: catalog[1].clone(),
        twist: 0,
        modulus: 1,
        weights: BTreeMap::new(),
    })
}

#[test]
fn representable_of_exceptional_edge() {
    let down = WiringGraph::exceptional_edge(None);
    let x = representable(&down, 2).unwrap();
    assert!(x.validate().ok());
    let level = x.level_for(&down).unwrap();
    assert_eq!(level.elements.len(), 1);
    // Levels with a non-unary vertex are empty.
    for l in x.levels() {
        if l.graph.vertices().any(|v| v.in_arity != 1 || v.out_arity != 1) {
            assert!(l.elements.is_empty());
        }
    }
}

#[test]
fn representable_counts_edges_at_the_bottom_level() {
    let t = crate::samples::four_vertex_tree();
    let x = representable(&WiringGraph::linear(2), 2).unwrap();
    let down = WiringGraph::exceptional_edge(None);
    assert_eq!(x.level_for(&down).unwrap().elements.len(), 3);
    let _ = t;
}

#[test]
fn representable_level_matches_hom_count() {
    let l2 = WiringGraph::linear(2);
    let x = representable(&l2, 2).unwrap();
    let l1 = WiringGraph::linear(1);
    // hom(L1, L2) has six elements, one per monotone chain map.
    assert_eq!(x.level_for(&l1).unwrap().elements.len(), 6);
    assert!(x.validate().ok());
}

#[test]
fn nerve_truncation_is_functorial() {
    let p = small_terminal();
    let x = nerve_truncated(&p, 2).unwrap();
    let report = x.validate();
    assert!(report.ok(), "{:?}", report.violations);
}

#[test]
fn boundary_of_corolla_has_leg_faces_only() {
    let p = small_terminal();
    let x = nerve_truncated(&p, 2).unwrap();
    let c = x
        .levels()
        .find(|l| l.graph.vertex_count() == 1 && l.graph.boundary_arities() == (2, 1))
        .unwrap()
        .graph
        .clone();
    let b = boundary(&x, &c).unwrap();
    assert_eq!(b.faces.len(), 3);
    assert!(b.faces.iter().all(|f| f.source().vertex_count() == 0));
}

#[test]
fn horn_omits_exactly_one_face() {
    let p = small_terminal();
    let x = nerve_truncated(&p, 3).unwrap();
    let l3 = WiringGraph::linear(3);
    let level = x.level_for(&l3).unwrap();
    let cofaces = crate::substitution::enumerate_cofaces_into(&level.graph);
    let inner = cofaces
        .iter()
        .find(|c| c.kind == GeneratorKind::InnerCoface)
        .unwrap();
    let all = boundary(&x, &level.graph).unwrap();
    let h = horn(&x, &level.graph, inner).unwrap();
    assert_eq!(h.faces.len() + 1, all.faces.len());
}

#[test]
fn segal_core_of_corolla_is_the_identity_face() {
    let p = small_terminal();
    let x = nerve_truncated(&p, 2).unwrap();
    let c = x
        .levels()
        .find(|l| l.graph.vertex_count() == 1 && l.graph.boundary_arities() == (1, 1))
        .unwrap()
        .graph
        .clone();
    let sc = segal_core(&x, &c).unwrap();
    assert_eq!(sc.faces.len(), 1);
    assert_eq!(sc.faces[0].source(), &c);
}

#[test]
fn tautological_filler_exists() {
    // In the representable of L2 (taken on its canonical representative),
    // the inner horn inclusion extends along the identity graphex.
    let l2 = crate::graph::enumerate_graphs(2, 1, 1, None)
        .into_iter()
        .find(|g| {
            crate::graph::canonical_form(g) == crate::graph::canonical_form(&WiringGraph::linear(2))
        })
        .unwrap();
    let x = representable(&l2, 2).unwrap();
    let level = x.level_for(&l2).unwrap();
    let inner = crate::substitution::enumerate_cofaces_into(&level.graph)
        .into_iter()
        .find(|c| c.kind == GeneratorKind::InnerCoface)
        .unwrap();
    let part = horn(&x, &level.graph, &inner).unwrap();
    // Values of the horn inclusion: the faces themselves, as graphices of
    // their source levels.
    let values: Vec<GraphexId> = part.faces.iter().map(|f| f.key()).collect();
    let h = PresheafMap::new(part, values);
    let fs = fillers(&x, &h).unwrap();
    let id_key = crate::gamma::GammaMorphism::identity(&level.graph).key();
    assert!(fs.contains(&id_key), "{fs:?}");
}

#[test]
fn nerve_inner_horns_fill_uniquely() {
    let p = two_op_properad();
    let x = nerve_truncated(&p, 2).unwrap();
    let report = has_unique_inner_fillers(&x, 2).unwrap();
    assert!(report.pass, "{:?}", report.results);
}

#[test]
fn punctured_nerve_fails_inner_kan() {
    let p = two_op_properad();
    let x = nerve_truncated(&p, 2).unwrap();
    // Puncture a two-vertex level.
    let level = x
        .levels()
        .find(|l| l.graph.vertex_count() == 2 && !l.elements.is_empty())
        .unwrap();
    let g = level.graph.clone();
    let victim = level.elements[0].clone();
    let broken = x.punctured(&g, &victim);
    let report = is_inner_kan(&broken, 2).unwrap();
    assert!(!report.pass);
}

#[test]
fn padded_nerve_fails_uniqueness_and_segal() {
    let p = two_op_properad();
    let x = nerve_truncated(&p, 2).unwrap();
    let level = x
        .levels()
        .find(|l| l.graph.vertex_count() == 2 && !l.elements.is_empty())
        .unwrap();
    let g = level.graph.clone();
    let original = level.elements[0].clone();
    let padded = x.padded(&g, &original, "phantom".into());
    assert!(!has_unique_inner_fillers(&padded, 2).unwrap().pass);
    assert!(!is_segal(&padded, 2).unwrap().pass);
}

#[test]
fn nerve_satisfies_segal() {
    let p = two_op_properad();
    let x = nerve_truncated(&p, 3).unwrap();
    let report = is_segal(&x, 3).unwrap();
    assert!(report.pass, "{:?}", report.results);
}

#[test]
fn nerve_round_trips_through_reconstruction() {
    let p = two_op_properad();
    let x = nerve_truncated(&p, 2).unwrap();
    let verdict = is_nerve(&x, 2).unwrap();
    assert!(verdict.report.pass, "{:?}", verdict.report.results);
    let candidate = verdict.candidate.unwrap();
    assert_eq!(candidate.colors().len(), p.colors().len());
    assert_eq!(candidate.all_ops().count(), p.all_ops().count());
}

#[test]
fn empty_set_is_a_nerve() {
    let x = TruncatedGraphicalSet::assemble(1, Vec::new(), Vec::new()).unwrap();
    let verdict = is_nerve(&x, 1).unwrap();
    assert!(verdict.report.pass);
}

#[test]
fn representable_of_linear_graph_is_a_nerve() {
    // The representable of a simply connected graph is the nerve of its
    // free properad, so the set-level Segal condition holds.
    let l2 = WiringGraph::linear(2);
    let x = representable(&l2, 2).unwrap();
    let report = is_segal(&x, 2).unwrap();
    assert!(report.pass, "{:?}", report.results);
}

#[test]
fn subobject_inclusions_hold() {
    // Sc[G] ⊆ Λ^β[G] ⊆ ∂[G] as element-key sets, for an inner β.
    let p = small_terminal();
    let x = nerve_truncated(&p, 3).unwrap();
    let l3 = WiringGraph::linear(3);
    let level = x.level_for(&l3).unwrap();
    let inner = crate::substitution::enumerate_cofaces_into(&level.graph)
        .into_iter()
        .find(|c| c.kind == GeneratorKind::InnerCoface)
        .unwrap();
    let sc = segal_core(&x, &level.graph).unwrap();
    let hn = horn(&x, &level.graph, &inner).unwrap();
    let bd = boundary(&x, &level.graph).unwrap();
    let sc_keys = super::parts::part_element_keys(&x, &sc).unwrap();
    let hn_keys = super::parts::part_element_keys(&x, &hn).unwrap();
    let bd_keys = super::parts::part_element_keys(&x, &bd).unwrap();
    assert!(sc_keys.is_subset(&hn_keys));
    assert!(hn_keys.is_subset(&bd_keys));
    assert!(sc_keys.len() < bd_keys.len());
}

#[test]
fn graphical_set_json_round_trip() {
    let p = small_terminal();
    let x = nerve_truncated(&p, 2).unwrap();
    let json = tgs_to_json(&x);
    let back = tgs_from_json(&json).unwrap();
    assert!(back.validate().ok());
    assert_eq!(back.levels().count(), x.levels().count());
    assert_eq!(back.actions().count(), x.actions().count());
    assert!(is_segal(&back, 2).unwrap().pass);
}
