use super::*;
use crate::graph::{enumerate_graphs, EdgeId, VertexId, WiringGraph};
use crate::samples;
use crate::substitution::{codegeneracy, enumerate_cofaces_into, GeneratorKind};
use std::collections::BTreeSet;

#[test]
fn identity_image_is_the_graph_itself() {
    let t = samples::four_vertex_tree();
    let id = GammaMorphism::identity(&t);
    let image = id.image().unwrap();
    assert_eq!(image.shape.vertex_count(), t.vertex_count());
    assert_eq!(image.shape.edge_count(), t.edge_count());
    // Decorations hit everything exactly once.
    let vs: BTreeSet<&VertexId> = image.vertices.values().collect();
    assert_eq!(vs.len(), t.vertex_count());
    let es: BTreeSet<&EdgeId> = image.edges.values().collect();
    assert_eq!(es.len(), t.edge_count());
    assert!(id.is_valid());
}

#[test]
fn parallel_endomorphism_has_four_vertex_image() {
    let f = samples::parallel_pair_endomorphism();
    let validity = f.check_validity().unwrap();
    assert!(!validity.valid);
    assert_eq!(validity.image.shape.vertex_count(), 4);
    // Two occurrences each of `u` and `v`.
    let decs: Vec<&str> = validity.image.vertices.values().map(|v| v.as_str()).collect();
    assert_eq!(decs.iter().filter(|d| **d == "u").count(), 2);
    assert_eq!(decs.iter().filter(|d| **d == "v").count(), 2);
}

#[test]
fn walkthrough_morphism_image_covers_target() {
    let f = samples::factor_morphism();
    let validity = f.check_validity().unwrap();
    assert!(validity.valid, "{:?}", validity.reason);
    assert_eq!(validity.image.shape.vertex_count(), 3);
    let decs: BTreeSet<&VertexId> = validity.image.vertices.values().collect();
    assert_eq!(decs.len(), 3);
}

#[test]
fn generator_morphisms_are_valid() {
    for g in enumerate_graphs(3, 2, 2, Some(6)) {
        for coface in enumerate_cofaces_into(&g) {
            let m = coface.to_morphism();
            assert!(m.is_valid(), "{:?} into {}", coface.kind, crate::graph::canonical_form(&g));
            assert!(m.classify().in_positive());
        }
        for v in g.vertex_ids() {
            let vx = g.vertex(v).unwrap();
            if vx.in_arity == 1 && vx.out_arity == 1 {
                let m = codegeneracy(&g, v).unwrap().to_morphism();
                assert!(m.is_valid());
                assert_eq!(m.classify(), ReedyClassification::Negative);
            }
        }
    }
}

#[test]
fn compose_with_identity_is_identity() {
    let f = samples::factor_morphism();
    let idl = GammaMorphism::identity(f.target());
    let idr = GammaMorphism::identity(f.source());
    let left = GammaMorphism::compose(&idl, &f).unwrap();
    let right = GammaMorphism::compose(&f, &idr).unwrap();
    assert!(left.equivalent(&f));
    assert!(right.equivalent(&f));
}

#[test]
fn composing_inner_cofaces_raises_degree_by_two() {
    let l4 = WiringGraph::linear(4);
    let alpha = enumerate_cofaces_into(&l4)
        .into_iter()
        .find(|c| c.kind == GeneratorKind::InnerCoface)
        .unwrap();
    let beta = enumerate_cofaces_into(&alpha.source)
        .into_iter()
        .find(|c| c.kind == GeneratorKind::InnerCoface)
        .unwrap();
    let composite = GammaMorphism::compose(&alpha.to_morphism(), &beta.to_morphism()).unwrap();
    assert_eq!(composite.degree_gap(), 2);
    assert!(composite.is_valid());
    assert_eq!(composite.classify(), ReedyClassification::Positive);
}

#[test]
fn composition_associates_on_generator_chains() {
    let l3 = WiringGraph::linear(3);
    let a = enumerate_cofaces_into(&l3)
        .into_iter()
        .find(|c| c.kind == GeneratorKind::InnerCoface)
        .unwrap();
    let b = enumerate_cofaces_into(&a.source)
        .into_iter()
        .next()
        .unwrap();
    let c = enumerate_cofaces_into(&b.source).into_iter().next().unwrap();
    let (fa, fb, fc) = (a.to_morphism(), b.to_morphism(), c.to_morphism());
    let left = GammaMorphism::compose(&GammaMorphism::compose(&fa, &fb).unwrap(), &fc).unwrap();
    let right = GammaMorphism::compose(&fa, &GammaMorphism::compose(&fb, &fc).unwrap()).unwrap();
    assert!(left.equivalent(&right));
}

#[test]
fn classify_walkthrough_morphism_is_neither() {
    let f = samples::factor_morphism();
    assert_eq!(f.classify(), ReedyClassification::Neither);
}

#[test]
fn degree_is_vertex_count() {
    assert_eq!(WiringGraph::exceptional_edge(None).degree(), 0);
    assert_eq!(samples::four_vertex_tree().degree(), 4);
    let widened = crate::substitution::substitute(
        &samples::wide_host(),
        &crate::substitution::SubstitutionAssignment::aligned("x", samples::wide_pgc()),
    )
    .unwrap();
    assert_eq!(widened.degree(), 3);
}

#[test]
fn factorize_walkthrough_morphism() {
    let f = samples::factor_morphism();
    let (h, g) = reedy_factorize(&f).unwrap();
    // The middle graph keeps exactly the non-collapsed vertices.
    assert_eq!(h.target().vertex_count(), 2);
    assert!(h.target().has_vertex(&"u".into()));
    assert!(h.target().has_vertex(&"x".into()));
    assert_eq!(h.classify(), ReedyClassification::Negative);
    assert_eq!(g.classify(), ReedyClassification::Positive);
    let composite = GammaMorphism::compose(&g, &h).unwrap();
    assert!(composite.equivalent(&f));
}

#[test]
fn factorize_positive_morphism_has_iso_left_part() {
    let l3 = WiringGraph::linear(3);
    let alpha = enumerate_cofaces_into(&l3).into_iter().next().unwrap().to_morphism();
    let (h, g) = reedy_factorize(&alpha).unwrap();
    assert_eq!(h.classify(), ReedyClassification::Isomorphism);
    assert!(g.classify().in_positive());
    assert!(GammaMorphism::compose(&g, &h).unwrap().equivalent(&alpha));
}

#[test]
fn factorize_rejects_invalid_morphisms() {
    let f = samples::parallel_pair_endomorphism();
    assert!(matches!(reedy_factorize(&f), Err(GammaError::InvalidMorphism(_))));
}

#[test]
fn hom_from_exceptional_edge_counts_edges() {
    let t = samples::four_vertex_tree();
    let down = WiringGraph::exceptional_edge(None);
    assert_eq!(hom_set(&down, &t).len(), t.edge_count());
}

#[test]
fn hom_into_exceptional_edge_needs_unary_vertices() {
    let down = WiringGraph::exceptional_edge(None);
    assert!(hom_set(&WiringGraph::corolla(2, 1), &down).is_empty());
    assert_eq!(hom_set(&WiringGraph::linear(2), &down).len(), 1);
}

/// Monotone maps between finite chains; the linear-graph hom-sets must
/// reproduce these counts.
fn monotone_maps(from: usize, to: usize) -> usize {
    // Number of monotone functions {0..=from} -> {0..=to}.
    fn rec(pos: usize, from: usize, min: usize, to: usize) -> usize {
        if pos > from {
            return 1;
        }
        (min..=to).map(|v| rec(pos + 1, from, v, to)).sum()
    }
    rec(0, from, 0, to)
}

#[test]
fn linear_hom_sets_match_chain_monotone_maps() {
    for (m, n) in [(1, 1), (1, 2), (2, 2), (1, 3), (2, 3)] {
        let lm = WiringGraph::linear(m);
        let ln = WiringGraph::linear(n);
        let homs = hom_set(&lm, &ln);
        assert_eq!(
            homs.len(),
            monotone_maps(m, n),
            "hom(L{m}, L{n}) vs monotone maps"
        );
        // Every morphism into a simply connected target is determined by its
        // edge map.
        let keys: BTreeSet<String> = homs
            .iter()
            .map(|f| format!("{:?}", f.edge_map()))
            .collect();
        assert_eq!(keys.len(), homs.len());
    }
}

#[test]
fn corolla_hom_counts_legs() {
    // hom(C(1,1), C(1,1)): the identity-style corolla assignment plus the
    // two degeneracy-like edge collapses.
    let c = WiringGraph::corolla(1, 1);
    assert_eq!(hom_set(&c, &c).len(), 3);
}

#[test]
fn subgraph_counts() {
    let down = WiringGraph::exceptional_edge(None);
    assert_eq!(subgraphs(&down).len(), 1);

    let c = WiringGraph::corolla(2, 1);
    // One vertex-induced subgraph plus one per leg.
    assert_eq!(subgraphs(&c).len(), 1 + 3);

    let t = samples::four_vertex_tree();
    let subs = subgraphs(&t);
    let edge_subs = subs.iter().filter(|s| matches!(s, Subgraph::Edge(_))).count();
    let induced = subs.len() - edge_subs;
    assert_eq!(edge_subs, 8);
    // Oracle: connected subsets computed from the vertex adjacency relation.
    let adjacency: Vec<(&str, &str)> = vec![("y", "v"), ("w", "v"), ("q", "y")];
    let vids = ["w", "y", "v", "q"];
    let mut connected_sets = 0;
    for mask in 1u32..(1 << vids.len()) {
        let set: BTreeSet<&str> = vids
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, v)| *v)
            .collect();
        // BFS inside the subset.
        let first = *set.iter().next().unwrap();
        let mut reached: BTreeSet<&str> = [first].into();
        let mut frontier = vec![first];
        while let Some(v) = frontier.pop() {
            for (a, b) in &adjacency {
                for (x, y) in [(a, b), (b, a)] {
                    if *x == v && set.contains(*y) && reached.insert(y) {
                        frontier.push(y);
                    }
                }
            }
        }
        if reached.len() == set.len() {
            connected_sets += 1;
        }
    }
    assert_eq!(induced, connected_sets);
}

#[test]
fn edge_determination_for_simply_connected_targets() {
    // Morphisms into simply connected graphs are determined by edge maps.
    let sources = [
        WiringGraph::linear(2),
        WiringGraph::corolla(2, 1),
        samples::parallel_pair(),
    ];
    let targets = [samples::four_vertex_tree(), WiringGraph::linear(3)];
    for h in &sources {
        for g in &targets {
            let homs = hom_set(h, g);
            let keys: BTreeSet<String> = homs
                .iter()
                .map(|f| format!("{:?}", f.edge_map()))
                .collect();
            assert_eq!(keys.len(), homs.len());
        }
    }
}

#[test]
fn morphism_json_round_trip() {
    let f = samples::factor_morphism();
    let json = serde_json::to_string(&f).unwrap();
    let back: GammaMorphism = serde_json::from_str(&json).unwrap();
    assert!(back.equivalent(&f));
    assert_eq!(back.edge_map(), f.edge_map());
}

#[test]
fn reedy_axioms_on_small_corpus() {
    // Degree monotonicity, intersection, and both cancellation axioms over
    // everything between graphs of at most two vertices and four edges.
    let corpus = enumerate_graphs(2, 2, 2, Some(4));
    for h in &corpus {
        for g in &corpus {
            for f in hom_set(h, g) {
                let class = f.classify();
                match class {
                    ReedyClassification::Positive => assert!(f.degree_gap() > 0),
                    ReedyClassification::Negative => assert!(f.degree_gap() < 0),
                    ReedyClassification::Isomorphism => assert_eq!(f.degree_gap(), 0),
                    ReedyClassification::Neither => {}
                }
                // Cancellation: theta . f = f with f negative forces theta
                // to be the identity, and dually for positive maps.
                if class.in_negative() {
                    for theta in automorphism_morphisms(g) {
                        if GammaMorphism::compose(&theta, &f).unwrap().equivalent(&f) {
                            assert!(theta.equivalent(&GammaMorphism::identity(g)));
                        }
                    }
                }
                if class.in_positive() {
                    for theta in automorphism_morphisms(h) {
                        if GammaMorphism::compose(&f, &theta).unwrap().equivalent(&f) {
                            assert!(theta.equivalent(&GammaMorphism::identity(h)));
                        }
                    }
                }
            }
        }
    }
}

fn automorphism_morphisms(g: &WiringGraph) -> Vec<GammaMorphism> {
    crate::graph::find_isomorphisms(g, g, crate::graph::IsoMode::Weak)
        .iter()
        .map(|iso| iso_to_morphism(g, g, iso))
        .collect()
}

#[test]
fn positive_morphisms_decompose_into_cofaces() {
    // Every positive morphism with degree gap one or two between small
    // graphs factors through the coface enumeration, up to precomposition
    // with an isomorphism.
    let corpus = enumerate_graphs(3, 2, 2, Some(5));
    for g in corpus.iter().filter(|g| g.vertex_count() >= 1) {
        let cofaces: Vec<GammaMorphism> =
            enumerate_cofaces_into(g).iter().map(|c| c.to_morphism()).collect();
        for h in corpus.iter() {
            let gap = g.vertex_count() as isize - h.vertex_count() as isize;
            if !(1..=2).contains(&gap) {
                continue;
            }
            for f in hom_set(h, g) {
                if !f.classify().in_positive() {
                    continue;
                }
                let mut found = false;
                'outer: for alpha in &cofaces {
                    let candidates: Vec<GammaMorphism> = if gap == 1 {
                        vec![GammaMorphism::identity(alpha.source())]
                    } else {
                        enumerate_cofaces_into(alpha.source())
                            .iter()
                            .map(|c| c.to_morphism())
                            .collect()
                    };
                    for beta in candidates {
                        let chain = GammaMorphism::compose(alpha, &beta).unwrap();
                        for iso in crate::graph::find_isomorphisms(
                            h,
                            beta.source(),
                            crate::graph::IsoMode::Weak,
                        ) {
                            let theta = iso_to_morphism(h, beta.source(), &iso);
                            let composite = GammaMorphism::compose(&chain, &theta).unwrap();
                            if composite.equivalent(&f) {
                                found = true;
                                break 'outer;
                            }
                        }
                    }
                }
                assert!(found, "positive morphism not generated by cofaces");
            }
        }
    }
}

// The subgraph fast path used by the hom-set enumeration agrees with the
// image-based validity check.
#[test]
fn hom_enumeration_agrees_with_image_validity() {
    let corpus = enumerate_graphs(3, 2, 2, Some(5));
    for h in &corpus {
        for g in &corpus {
            for f in hom_set(h, g) {
                assert!(f.is_valid(), "fast path accepted an invalid morphism");
            }
        }
    }
    // And known-invalid data is still rejected end to end.
    assert!(!samples::parallel_pair_endomorphism().is_valid());
}

// The set-logic subgraph condition agrees with the image-based check on
// both valid and invalid morphisms.
#[test]
fn fast_and_image_validity_agree() {
    let mut cases: Vec<GammaMorphism> = vec![
        samples::parallel_pair_endomorphism(),
        samples::factor_morphism(),
        GammaMorphism::identity(&samples::four_vertex_tree()),
    ];
    let corpus = enumerate_graphs(2, 2, 2, Some(4));
    for h in &corpus {
        for g in &corpus {
            cases.extend(hom_set(h, g));
        }
    }
    for f in &cases {
        assert_eq!(f.is_valid(), f.check_validity().unwrap().valid);
    }
}
