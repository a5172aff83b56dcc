//! DOT rendering: one node per vertex, one arrow per edge in gravity
//! direction, legs anchored to invisible points.

use properad_kit::graph::EdgeEnd;
use properad_kit::WiringGraph;
use std::fmt::Write;

pub fn export_dot(g: &WiringGraph) -> String {
    let mut out = String::from("digraph wiring {\n  rankdir=TB;\n");
    for v in g.vertices() {
        writeln!(out, "  \"{}\" [shape=circle];", v.id).unwrap();
    }
    for e in g.edges() {
        if let EdgeEnd::Slot(s) = &e.tail {
            writeln!(out, "  \"in{s}\" [shape=point, style=invis];").unwrap();
        }
        if let EdgeEnd::Slot(s) = &e.head {
            writeln!(out, "  \"out{s}\" [shape=point, style=invis];").unwrap();
        }
    }
    for e in g.edges() {
        let tail = match &e.tail {
            EdgeEnd::Slot(s) => format!("in{s}"),
            EdgeEnd::Port(p) => p.vertex.to_string(),
        };
        let head = match &e.head {
            EdgeEnd::Slot(s) => format!("out{s}"),
            EdgeEnd::Port(p) => p.vertex.to_string(),
        };
        let label = match &e.color {
            Some(c) => format!("{} : {}", e.id, c),
            None => e.id.to_string(),
        };
        writeln!(out, "  \"{tail}\" -> \"{head}\" [label=\"{label}\"];").unwrap();
    }
    out.push_str("}\n");
    out
}
