//! End-to-end contract tests for the command-line binary: parse/print
//! round-trips over the fixture corpus, the exit-code contract on the
//! mutation corpus, and output determinism.

use properad_kit::graph::{parse_graph, print_graph};
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_properad-kit"))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    let mut cmd = bin();
    cmd.args(args);
    cmd.env_remove("PROPERAD_KIT_BOUND");
    cmd.output().expect("binary runs")
}

fn good_corpus() -> Vec<PathBuf> {
    let dir = fixture("");
    let mut out: Vec<PathBuf> = std::fs::read_dir(dir)
        .unwrap()
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|x| x == "graph"))
        .collect();
    out.sort();
    out
}

#[test]
fn parse_print_round_trip_on_corpus() {
    for path in good_corpus() {
        let text = std::fs::read_to_string(&path).unwrap();
        let (name, g) = parse_graph(&text).unwrap();
        let printed = print_graph(&name, &g);
        let (name2, g2) = parse_graph(&printed).unwrap();
        assert_eq!(name, name2);
        assert_eq!(g, g2, "round trip failed for {}", path.display());
    }
}

#[test]
fn validate_accepts_the_corpus() {
    for path in good_corpus() {
        let out = run(&["validate", path.to_str().unwrap()]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{}: {}",
            path.display(),
            String::from_utf8_lossy(&out.stdout)
        );
    }
}

#[test]
fn mutation_corpus_exit_codes() {
    // One violation per invariant: exit 1 with a nonempty witness.
    for name in [
        "cycle", "disconnected", "ports", "inputs", "outputs", "coloring",
    ] {
        let path = fixture(&format!("bad/{name}.graph"));
        let out = run(&["validate", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(1), "{name}");
        let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(report["ok"], serde_json::json!(false));
        assert!(!report["violations"].as_array().unwrap().is_empty(), "{name}");
        let witness = report["violations"][0]["witness"].as_str().unwrap();
        assert!(!witness.is_empty(), "{name}");
    }
    // Parse-level problems: exit 2 with line-numbered diagnostics.
    for name in ["parse", "dangling"] {
        let path = fixture(&format!("bad/{name}.graph"));
        let out = run(&["validate", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2), "{name}");
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(err.contains(":3"), "{name}: {err}");
    }
}

#[test]
fn deterministic_outputs() {
    for args in [
        vec!["cofaces", fixture("linear3.graph").to_str().unwrap().to_owned().leak() as &str],
        vec!["hom", fixture("down.graph").to_str().unwrap().to_owned().leak(), fixture("tree.graph").to_str().unwrap().to_owned().leak()],
        vec!["export-dot", fixture("colored_tree.graph").to_str().unwrap().to_owned().leak()],
        vec!["free", fixture("pgc.graph").to_str().unwrap().to_owned().leak(), "--profile", "ui1,ui2,ui3,vi4;uo4,uo5,vo1,vo2", "--max-vertices", "2", "--seed", "0"],
    ] {
        let first = run(&args);
        let second = run(&args);
        assert_eq!(first.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&first.stderr));
        assert_eq!(first.stdout, second.stdout, "{args:?}");
    }
}

#[test]
fn substitute_widens_the_host() {
    let out = run(&[
        "substitute",
        fixture("host.graph").to_str().unwrap(),
        fixture("pgc.graph").to_str().unwrap(),
        "--at",
        "x",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let (_, g) = parse_graph(&text).unwrap();
    assert_eq!(g.vertex_count(), 3);
    assert_eq!(g.boundary_arities(), (5, 6));
}

#[test]
fn cofaces_trace_lines_are_json() {
    let out = run(&["cofaces", fixture("linear3.graph").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4); // two inner + two outer
    for line in lines {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(v["kind"].is_string());
        assert!(v["witness"].is_object());
    }
}

#[test]
fn factor_reports_two_vertex_middle() {
    let out = run(&["factor", fixture("factor_f.json").to_str().unwrap()]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let middle = doc["middle"].as_str().unwrap();
    let (_, g) = parse_graph(middle).unwrap();
    assert_eq!(g.vertex_count(), 2);
    assert!(g.has_vertex(&"u".into()));
    assert!(g.has_vertex(&"x".into()));
}

#[test]
fn properad_and_graphical_set_checks_pass() {
    let out = run(&["check-properad", fixture("properad.json").to_str().unwrap()]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );

    let out = run(&[
        "check-segal",
        fixture("tgs.json").to_str().unwrap(),
        "--bound",
        "2",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );

    let out = run(&[
        "check-inner-kan",
        fixture("tgs.json").to_str().unwrap(),
        "--bound",
        "2",
        "--unique",
    ]);
    assert_eq!(out.status.code(), Some(0));

    let out = run(&[
        "is-nerve",
        fixture("tgs.json").to_str().unwrap(),
        "--bound",
        "2",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
}

#[test]
fn bound_env_variable_is_honored() {
    let mut cmd = bin();
    cmd.args(["check-segal", fixture("tgs.json").to_str().unwrap()]);
    cmd.env("PROPERAD_KIT_BOUND", "2");
    let out = cmd.output().unwrap();
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
}

#[test]
fn export_dot_shape() {
    let out = run(&["export-dot", fixture("tree.graph").to_str().unwrap()]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.matches("shape=circle").count(), 4);
    assert_eq!(text.matches(" -> ").count(), 8);
}
