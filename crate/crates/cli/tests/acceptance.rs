//! Acceptance suite. Each test prints one pass/fail line; run with
//! `cargo test -p properad-kit-cli --test acceptance -- --nocapture`.
//!
//! The thresholds are pinned here: worked-example replay under 1 s, the
//! randomized substitution laws (500 cases) under 30 s, the exhaustive
//! factorization suite under 5 min, and the nerve/Segal suite over twenty
//! seeded properads under 10 min.

use properad_kit::gamma::{
    hom_set, iso_to_morphism, reedy_factorize, GammaMorphism, ReedyClassification,
};
use properad_kit::graph::{
    canonical_form, enumerate_graphs, find_isomorphisms, parse_graph, print_graph, random_graph,
    random_guest, weakly_isomorphic, IsoMode, RandomGraphParams,
};
use properad_kit::presheaf::{
    has_unique_inner_fillers, is_inner_kan, is_nerve, is_segal, nerve_truncated,
};
use properad_kit::properad::{free_elements_all, random_properad};
use properad_kit::samples;
use properad_kit::substitution::{
    enumerate_cofaces_into, substitute, substitute_traced, GeneratorKind, SubstitutionAssignment,
};
use properad_kit::{EdgeId, VertexId, WiringGraph};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::time::{Duration, Instant};

fn conclude(name: &str, pass: bool, elapsed: Duration, budget: Option<Duration>) {
    let status = if pass { "PASS" } else { "FAIL" };
    match budget {
        Some(b) => println!("{status} {name} ({:.2?} of {:.0?} budget)", elapsed, b),
        None => println!("{status} {name} ({:.2?})", elapsed),
    }
    assert!(pass, "{name} failed");
    if let Some(b) = budget {
        assert!(elapsed < b, "{name} exceeded its {b:.0?} budget: {elapsed:.2?}");
    }
}

#[test]
fn criterion_1_worked_example_replay() {
    let start = Instant::now();
    let mut pass = true;

    // Widening substitution: three vertices, three more internal edges,
    // unchanged (5,6) boundary.
    let host = samples::wide_host();
    let before = host.internal_edges().count();
    let widened = substitute(
        &host,
        &SubstitutionAssignment::aligned("x", samples::wide_pgc()),
    )
    .unwrap();
    pass &= widened.vertex_count() == 3;
    pass &= widened.internal_edges().count() == before + 3;
    pass &= widened.boundary_arities() == (5, 6);

    // Factorization walkthrough: the middle graph keeps exactly u and x.
    let f = samples::factor_morphism();
    let (h, g) = reedy_factorize(&f).unwrap();
    pass &= h.target().vertex_count() == 2;
    pass &= h.target().has_vertex(&VertexId::from("u"));
    pass &= h.target().has_vertex(&VertexId::from("x"));
    pass &= GammaMorphism::compose(&g, &h).unwrap().equivalent(&f);

    // The parallel-pair endomorphism is rejected with a four-vertex image.
    let e = samples::parallel_pair_endomorphism();
    let validity = e.check_validity().unwrap();
    pass &= !validity.valid;
    pass &= validity.image.shape.vertex_count() == 4;
    pass &= validity.reason.is_some();

    conclude(
        "criterion 1: worked-example replay",
        pass,
        start.elapsed(),
        Some(Duration::from_secs(1)),
    );
}

#[test]
fn criterion_2_substitution_laws() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let params = RandomGraphParams {
        max_vertices: 4,
        max_in: 3,
        max_out: 3,
    };
    let mut pass = true;
    let mut cases = 0;
    while cases < 500 {
        let g = random_graph(&mut rng, &params);
        if g.vertex_count() == 0 {
            continue;
        }
        cases += 1;
        let vids: Vec<VertexId> = g.vertex_ids().cloned().collect();
        let v = vids[rng.random_range(0..vids.len())].clone();
        let vx = g.vertex(&v).unwrap().clone();

        // Unit law.
        let unit = substitute(
            &g,
            &SubstitutionAssignment::aligned(v.clone(), WiringGraph::corolla(vx.in_arity, vx.out_arity)),
        )
        .unwrap();
        pass &= weakly_isomorphic(&unit, &g);

        // Associativity of nested substitution.
        let guest = random_guest(&mut rng, vx.in_arity, vx.out_arity, &params);
        if guest.vertex_count() == 0 {
            // Nested form needs an inner vertex; collapse laws are covered
            // by the unit case.
            continue;
        }
        let inner_ids: Vec<VertexId> = guest.vertex_ids().cloned().collect();
        let w = inner_ids[rng.random_range(0..inner_ids.len())].clone();
        let wx = guest.vertex(&w).unwrap().clone();
        let inner_guest = random_guest(&mut rng, wx.in_arity, wx.out_arity, &params);

        let (once, trace) =
            substitute_traced(&g, &SubstitutionAssignment::aligned(v.clone(), guest.clone()))
                .unwrap();
        let w_in_host = trace.vertex_names[&w].clone();
        let lhs = substitute(
            &once,
            &SubstitutionAssignment::aligned(w_in_host, inner_guest.clone()),
        )
        .unwrap();
        let nested = substitute(
            &guest,
            &SubstitutionAssignment::aligned(w.clone(), inner_guest),
        )
        .unwrap();
        let rhs = substitute(&g, &SubstitutionAssignment::aligned(v.clone(), nested)).unwrap();
        pass &= weakly_isomorphic(&lhs, &rhs);
        if !pass {
            break;
        }
    }
    conclude(
        "criterion 2: substitution unit and associativity laws (500 seeded cases)",
        pass,
        start.elapsed(),
        Some(Duration::from_secs(30)),
    );
}

fn reedy_corpus() -> Vec<WiringGraph> {
    enumerate_graphs(3, 6, 6, Some(6))
}

/// Corpus representatives of every way of collapsing some unary vertices of
/// `g`, the possible middle classes of its factorizations.
fn collapse_classes(g: &WiringGraph, by_key: &BTreeMap<String, usize>) -> Vec<usize> {
    let unary: Vec<VertexId> = g
        .vertices()
        .filter(|v| v.in_arity == 1 && v.out_arity == 1)
        .map(|v| v.id.clone())
        .collect();
    let mut classes = std::collections::BTreeSet::new();
    for mask in 0u32..(1 << unary.len()) {
        let mut collapsed = g.clone();
        let mut ok = true;
        for (i, v) in unary.iter().enumerate() {
            if mask & (1 << i) == 0 {
                continue;
            }
            match substitute(
                &collapsed,
                &SubstitutionAssignment::aligned(v.clone(), WiringGraph::exceptional_edge(None)),
            ) {
                Ok(next) => collapsed = next,
                Err(_) => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            if let Some(&idx) = by_key.get(&canonical_form(&collapsed)) {
                classes.insert(idx);
            }
        }
    }
    classes.into_iter().collect()
}

#[test]
fn criterion_3_reedy_factorization_suite() {
    let start = Instant::now();
    let corpus = reedy_corpus();
    let by_key: BTreeMap<String, usize> = corpus
        .iter()
        .enumerate()
        .map(|(i, g)| (canonical_form(g), i))
        .collect();
    let collapse_table: Vec<Vec<usize>> =
        corpus.iter().map(|g| collapse_classes(g, &by_key)).collect();
    // Negative maps from each source to each of its collapse classes,
    // computed once per source.
    let mut negs_cache: BTreeMap<(usize, usize), Vec<GammaMorphism>> = BTreeMap::new();

    let mut pass = true;
    let mut morphism_count = 0usize;

    'targets: for target in corpus.iter() {
        let ctx = properad_kit::gamma::HomContext::new(target);
        let mut poss_cache: BTreeMap<usize, Vec<GammaMorphism>> = BTreeMap::new();
        for (si, source) in corpus.iter().enumerate() {
            let homs = ctx.hom_from(source);
            if homs.is_empty() {
                continue;
            }
            morphism_count += homs.len();

            // Factorize and record each morphism's middle class.
            let mut middle_of: Vec<String> = Vec::with_capacity(homs.len());
            for f in &homs {
                let (h, g) = match reedy_factorize(f) {
                    Ok(pair) => pair,
                    Err(e) => {
                        println!("factorization failed: {e}");
                        pass = false;
                        break 'targets;
                    }
                };
                pass &= GammaMorphism::compose(&g, &h).unwrap().equivalent(f);
                pass &= h.classify().in_negative();
                pass &= g.classify().in_positive();
                middle_of.push(canonical_form(h.target()));
                if !pass {
                    break 'targets;
                }
            }

            // Exhaustive alternative factorizations, grouped by the edge map
            // of the composite: a unique morphism per edge map short-cuts
            // the full comparison.
            let mut buckets: BTreeMap<String, Vec<usize>> = BTreeMap::new();
            for (i, f) in homs.iter().enumerate() {
                buckets
                    .entry(format!("{:?}", f.edge_map()))
                    .or_default()
                    .push(i);
            }
            for &mi in &collapse_table[si] {
                let negs = negs_cache.entry((si, mi)).or_insert_with(|| {
                    hom_set(source, &corpus[mi])
                        .into_iter()
                        .filter(|m| m.classify().in_negative())
                        .collect()
                });
                if negs.is_empty() {
                    continue;
                }
                let poss = poss_cache
                    .entry(mi)
                    .or_insert_with(|| {
                        ctx.hom_from(&corpus[mi])
                            .into_iter()
                            .filter(|m| m.classify().in_positive())
                            .collect()
                    })
                    .clone();
                let middle_key = canonical_form(&corpus[mi]);
                for hm in negs.iter() {
                    for gm in &poss {
                        let composite_f0: BTreeMap<&EdgeId, &EdgeId> = hm
                            .edge_map()
                            .iter()
                            .map(|(e, m)| (e, &gm.edge_map()[m]))
                            .collect();
                        let key = format!("{composite_f0:?}");
                        let Some(bucket) = buckets.get(&key) else {
                            println!("composite escaped the enumerated hom-set");
                            pass = false;
                            break 'targets;
                        };
                        let fi = if bucket.len() == 1 {
                            bucket[0]
                        } else {
                            let composite = GammaMorphism::compose(gm, hm).unwrap();
                            match bucket.iter().find(|&&i| homs[i].equivalent(&composite)) {
                                Some(&i) => i,
                                None => {
                                    println!("composite matches no enumerated morphism");
                                    pass = false;
                                    break 'targets;
                                }
                            }
                        };
                        if middle_of[fi] != middle_key {
                            println!(
                                "two factorizations with non-isomorphic middles: {} vs {}",
                                middle_of[fi], middle_key
                            );
                            pass = false;
                            break 'targets;
                        }
                    }
                }
            }
        }
    }
    pass &= morphism_count > 0;
    conclude(
        &format!("criterion 3: factorization suite over {morphism_count} morphisms"),
        pass,
        start.elapsed(),
        Some(Duration::from_secs(300)),
    );
}

#[test]
fn criterion_4_reedy_axioms() {
    let start = Instant::now();
    let corpus = reedy_corpus();
    let mut pass = true;
    let mut checked = 0usize;

    'outer: for target in corpus.iter() {
        let ctx = properad_kit::gamma::HomContext::new(target);
        let target_autos: Vec<GammaMorphism> = find_isomorphisms(target, target, IsoMode::Weak)
            .iter()
            .map(|i| iso_to_morphism(target, target, i))
            .collect();
        let target_id = GammaMorphism::identity(target);
        for source in corpus.iter() {
            let homs = ctx.hom_from(source);
            if homs.is_empty() {
                continue;
            }
            let source_autos: Vec<GammaMorphism> = find_isomorphisms(source, source, IsoMode::Weak)
                .iter()
                .map(|i| iso_to_morphism(source, source, i))
                .collect();
            let source_id = GammaMorphism::identity(source);
            for f in homs {
                checked += 1;
                // Independent reading of the classification predicates.
                let values: Vec<&EdgeId> = f.edge_map().values().collect();
                let distinct: std::collections::BTreeSet<&EdgeId> =
                    values.iter().copied().collect();
                let injective = distinct.len() == values.len();
                let surjective = target.edge_ids().all(|e| distinct.contains(e));
                let mut corolla_hits: std::collections::BTreeSet<&VertexId> = Default::default();
                let mut all_corollas = true;
                for v in source.vertex_ids() {
                    let d = f.vertex_assignment(v);
                    if d.shape.vertex_count() == 1 && d.shape.edges().all(|e| e.is_leg()) {
                        corolla_hits.insert(d.vertices.values().next().unwrap());
                    } else {
                        all_corollas = false;
                    }
                }
                let negative =
                    surjective && target.vertex_ids().all(|u| corolla_hits.contains(u));
                let class = f.classify();
                pass &= class.in_positive() == injective;
                pass &= class.in_negative() == negative;

                // Axiom 1: degree monotonicity; axiom 2: the intersection is
                // exactly the invertible maps.
                match class {
                    ReedyClassification::Positive => pass &= f.degree_gap() > 0,
                    ReedyClassification::Negative => pass &= f.degree_gap() < 0,
                    ReedyClassification::Isomorphism => {
                        pass &= f.degree_gap() == 0;
                        pass &= injective && surjective && all_corollas;
                    }
                    ReedyClassification::Neither => {}
                }

                // Axioms 4 and 5: cancellation against isomorphisms. An
                // automorphism absorbed by f must agree with f on edges, so
                // the expensive comparison only runs on that fiber.
                if class.in_negative() {
                    for theta in &target_autos {
                        let absorbs_edges = f
                            .edge_map()
                            .iter()
                            .all(|(e, m)| theta.edge_map()[m] == *m && f.edge_map()[e] == *m);
                        if !absorbs_edges {
                            continue;
                        }
                        if GammaMorphism::compose(theta, &f).unwrap().equivalent(&f) {
                            pass &= theta.equivalent(&target_id);
                        }
                    }
                }
                if class.in_positive() {
                    for theta in &source_autos {
                        let absorbs_edges = f
                            .edge_map()
                            .iter()
                            .all(|(e, _)| f.edge_map()[&theta.edge_map()[e]] == f.edge_map()[e]);
                        if !absorbs_edges {
                            continue;
                        }
                        if GammaMorphism::compose(&f, theta).unwrap().equivalent(&f) {
                            pass &= theta.equivalent(&source_id);
                        }
                    }
                }
                if !pass {
                    break 'outer;
                }
            }
        }
    }
    pass &= checked > 0;
    conclude(
        &format!("criterion 4: generalized Reedy axioms over {checked} morphisms"),
        pass,
        start.elapsed(),
        None,
    );
}

#[test]
fn criterion_5_linear_coface_counts() {
    let start = Instant::now();
    let mut pass = true;
    for n in 1..=5usize {
        let ln = WiringGraph::linear(n);
        let cofaces = enumerate_cofaces_into(&ln);
        let inner = cofaces
            .iter()
            .filter(|c| c.kind == GeneratorKind::InnerCoface)
            .count();
        let outer = cofaces
            .iter()
            .filter(|c| c.kind == GeneratorKind::OuterCoface)
            .count();
        pass &= inner == n - 1;
        pass &= outer == 2;
        pass &= cofaces.len() == n + 1;
    }
    conclude(
        "criterion 5: coface counts into linear graphs match the simplicial pattern",
        pass,
        start.elapsed(),
        None,
    );
}

#[test]
fn criterion_6_free_properad_properties() {
    let start = Instant::now();
    let mut pass = true;

    // Every element over a simply connected host uses each vertex at most
    // once. Hosts range over vertex arities up to three and up to eight
    // edges, which covers every tree on at most four vertices of those
    // arities (the four-vertex worked tree has exactly eight).
    let mut hosts = 0usize;
    for host in enumerate_graphs(4, 3, 3, Some(8)) {
        if !host.is_simply_connected() {
            continue;
        }
        hosts += 1;
        for elem in free_elements_all(&host, 4) {
            let decs: Vec<&VertexId> = elem.vertices.values().collect();
            let distinct: std::collections::BTreeSet<&VertexId> = decs.iter().copied().collect();
            if distinct.len() != decs.len() {
                pass = false;
                break;
            }
        }
        if !pass {
            break;
        }
    }
    pass &= hosts > 0;

    // Morphisms into simply connected targets are determined by their edge
    // maps.
    let corpus = reedy_corpus();
    'pairs: for target in corpus.iter().filter(|g| g.is_simply_connected()) {
        let ctx = properad_kit::gamma::HomContext::new(target);
        for source in &corpus {
            let homs = ctx.hom_from(source);
            let mut seen: std::collections::BTreeSet<String> = Default::default();
            for f in &homs {
                let key = format!("{:?}", f.edge_map());
                if !seen.insert(key) {
                    pass = false;
                    break 'pairs;
                }
            }
        }
    }

    conclude(
        &format!("criterion 6: free-properad properties over {hosts} simply connected hosts"),
        pass,
        start.elapsed(),
        None,
    );
}

#[test]
fn criterion_7_nerve_segal_suite() {
    let start = Instant::now();
    let mut pass = true;

    for seed in 0..20u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_properad(&mut rng);
        let axioms = p.check_axioms(3);
        if !axioms.ok() {
            println!("seed {seed}: axiom violations {:?}", axioms.violations);
            pass = false;
            break;
        }
        let x = nerve_truncated(&p, 3).unwrap();
        let segal = is_segal(&x, 3).unwrap();
        if !segal.pass {
            println!("seed {seed}: segal failed: {:?}", segal.results);
            pass = false;
            break;
        }
        let unique = has_unique_inner_fillers(&x, 3).unwrap();
        if !unique.pass {
            println!("seed {seed}: horn fillers not unique");
            pass = false;
            break;
        }
        let verdict = is_nerve(&x, 3).unwrap();
        if !verdict.report.pass {
            println!("seed {seed}: nerve reconstruction failed: {:?}", verdict.report.results);
            pass = false;
            break;
        }

        // Mutation tests on the first few properads: puncturing or padding
        // a two-vertex level must break the checks with witnesses.
        if seed < 3 {
            let level = x
                .levels()
                .find(|l| l.graph.vertex_count() == 2 && !l.elements.is_empty())
                .unwrap();
            let g = level.graph.clone();
            let victim = level.elements[0].clone();

            let punctured = x.punctured(&g, &victim);
            let kan = is_inner_kan(&punctured, 3).unwrap();
            pass &= !kan.pass;
            pass &= kan.results.iter().any(|r| !r.pass && r.witness.is_some());
            let segal_p = is_segal(&punctured, 3).unwrap();
            pass &= !segal_p.pass;

            let padded = x.padded(&g, &victim, "phantom".into());
            let unique_p = has_unique_inner_fillers(&padded, 3).unwrap();
            pass &= !unique_p.pass;
            let segal_pad = is_segal(&padded, 3).unwrap();
            pass &= !segal_pad.pass;
            let nerve_pad = is_nerve(&padded, 3).unwrap();
            pass &= !nerve_pad.report.pass;
            if !pass {
                println!("seed {seed}: mutation tests failed to fail");
                break;
            }
        }
    }

    conclude(
        "criterion 7: nerve and Segal suite over 20 seeded properads",
        pass,
        start.elapsed(),
        Some(Duration::from_secs(600)),
    );
}

#[test]
fn criterion_8_cli_contract() {
    let start = Instant::now();
    let mut pass = true;

    let fixtures = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let bin = env!("CARGO_BIN_EXE_properad-kit");

    // Parse/print round trip over the graph corpus.
    let mut corpus: Vec<std::path::PathBuf> = std::fs::read_dir(&fixtures)
        .unwrap()
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|x| x == "graph"))
        .collect();
    corpus.sort();
    pass &= !corpus.is_empty();
    for path in &corpus {
        let text = std::fs::read_to_string(path).unwrap();
        let (name, g) = parse_graph(&text).unwrap();
        let (name2, g2) = parse_graph(&print_graph(&name, &g)).unwrap();
        pass &= name == name2 && g == g2;
    }

    // Exit codes across the mutation corpus.
    for (name, code) in [
        ("cycle", 1),
        ("disconnected", 1),
        ("ports", 1),
        ("inputs", 1),
        ("outputs", 1),
        ("coloring", 1),
        ("parse", 2),
        ("dangling", 2),
    ] {
        let out = std::process::Command::new(bin)
            .arg("validate")
            .arg(fixtures.join(format!("bad/{name}.graph")))
            .output()
            .unwrap();
        pass &= out.status.code() == Some(code);
        if code == 1 {
            let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
            pass &= !report["violations"].as_array().unwrap().is_empty();
        }
    }

    // Determinism: equal bytes across two seeded runs.
    for args in [
        vec!["cofaces".to_string(), fixtures.join("linear3.graph").display().to_string()],
        vec![
            "hom".to_string(),
            fixtures.join("corolla.graph").display().to_string(),
            fixtures.join("tree.graph").display().to_string(),
        ],
        vec![
            "free".to_string(),
            fixtures.join("linear3.graph").display().to_string(),
            "--profile".to_string(),
            "e0;e3".to_string(),
            "--max-vertices".to_string(),
            "3".to_string(),
            "--seed".to_string(),
            "7".to_string(),
        ],
    ] {
        let run = || {
            std::process::Command::new(bin)
                .args(&args)
                .output()
                .unwrap()
        };
        let (a, b) = (run(), run());
        pass &= a.status.code() == Some(0);
        pass &= a.stdout == b.stdout;
    }

    conclude("criterion 8: CLI contract", pass, start.elapsed(), None);
}
