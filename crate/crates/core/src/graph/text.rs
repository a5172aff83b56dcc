//! Line-oriented text format for graphs.
//!
//! ```text
//! graph <name>
//! vertex <vid> in=<k> out=<j>
//! edge <eid> from=(<vid>:out:<i> | in:<slot>) to=(<vid>:in:<i> | out:<slot>) [color=<c>]
//! inputs <eid> <eid> ...
//! outputs <eid> ...
//! ```
//!
//! Parsing is strict: unknown keywords, duplicate ids, and dangling
//! references are errors with line numbers.

use super::{Edge, EdgeEnd, EdgeId, GraphError, Vertex, VertexId, WiringGraph};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

/// Parse one graph per input. Returns the declared name and the graph.
pub fn parse_graph(src: &str) -> Result<(String, WiringGraph), ParseError> {
    let mut name: Option<String> = None;
    let mut vertices: Vec<Vertex> = Vec::new();
    let mut vertex_lines: BTreeMap<VertexId, usize> = BTreeMap::new();
    let mut edges: Vec<Edge> = Vec::new();
    let mut edge_lines: BTreeMap<EdgeId, usize> = BTreeMap::new();
    let mut inputs: Option<(usize, Vec<EdgeId>)> = None;
    let mut outputs: Option<(usize, Vec<EdgeId>)> = None;

    for (idx, raw) in src.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let keyword = tokens.next().unwrap();
        match keyword {
            "graph" => {
                if name.is_some() {
                    return err(lineno, "duplicate `graph` line");
                }
                let n = tokens.next().ok_or(ParseError {
                    line: lineno,
                    message: "missing graph name".into(),
                })?;
                if tokens.next().is_some() {
                    return err(lineno, "trailing tokens after graph name");
                }
                name = Some(n.to_owned());
            }
            "vertex" => {
                let id = VertexId::from(tokens.next().ok_or(ParseError {
                    line: lineno,
                    message: "missing vertex id".into(),
                })?);
                if vertex_lines.contains_key(&id) {
                    return err(lineno, format!("duplicate vertex id `{id}`"));
                }
                let mut in_arity = None;
                let mut out_arity = None;
                for tok in tokens {
                    if let Some(v) = tok.strip_prefix("in=") {
                        in_arity = Some(parse_usize(lineno, v)?);
                    } else if let Some(v) = tok.strip_prefix("out=") {
                        out_arity = Some(parse_usize(lineno, v)?);
                    } else {
                        return err(lineno, format!("unknown vertex attribute `{tok}`"));
                    }
                }
                let (Some(m), Some(n)) = (in_arity, out_arity) else {
                    return err(lineno, "vertex needs both in= and out=");
                };
                vertex_lines.insert(id.clone(), lineno);
                vertices.push(Vertex::new(id, m, n));
            }
            "edge" => {
                let id = EdgeId::from(tokens.next().ok_or(ParseError {
                    line: lineno,
                    message: "missing edge id".into(),
                })?);
                if edge_lines.contains_key(&id) {
                    return err(lineno, format!("duplicate edge id `{id}`"));
                }
                let mut tail = None;
                let mut head = None;
                let mut color = None;
                for tok in tokens {
                    if let Some(v) = tok.strip_prefix("from=") {
                        tail = Some(parse_end(lineno, v, true)?);
                    } else if let Some(v) = tok.strip_prefix("to=") {
                        head = Some(parse_end(lineno, v, false)?);
                    } else if let Some(v) = tok.strip_prefix("color=") {
                        if v.is_empty() {
                            return err(lineno, "empty color label");
                        }
                        color = Some(super::Color::from(v));
                    } else {
                        return err(lineno, format!("unknown edge attribute `{tok}`"));
                    }
                }
                let (Some(tail), Some(head)) = (tail, head) else {
                    return err(lineno, "edge needs both from= and to=");
                };
                edge_lines.insert(id.clone(), lineno);
                edges.push(Edge {
                    id,
                    tail,
                    head,
                    color,
                });
            }
            "inputs" => {
                if inputs.is_some() {
                    return err(lineno, "duplicate `inputs` line");
                }
                inputs = Some((lineno, tokens.map(EdgeId::from).collect()));
            }
            "outputs" => {
                if outputs.is_some() {
                    return err(lineno, "duplicate `outputs` line");
                }
                outputs = Some((lineno, tokens.map(EdgeId::from).collect()));
            }
            other => return err(lineno, format!("unknown keyword `{other}`")),
        }
    }

    let Some(name) = name else {
        return err(1, "missing `graph` line");
    };
    let (inputs_line, inputs) = inputs.ok_or(ParseError {
        line: src.lines().count().max(1),
        message: "missing `inputs` line".into(),
    })?;
    let (outputs_line, outputs) = outputs.ok_or(ParseError {
        line: src.lines().count().max(1),
        message: "missing `outputs` line".into(),
    })?;

    match WiringGraph::new(vertices, edges, inputs, outputs) {
        Ok(g) => Ok((name, g)),
        Err(e) => {
            let line = match &e {
                GraphError::UnknownVertex { edge, .. }
                | GraphError::PortOutOfRange { edge, .. }
                | GraphError::ZeroIndex { edge }
                | GraphError::EmptyColor(edge) => edge_lines.get(edge).copied().unwrap_or(1),
                GraphError::UnknownBoundaryEdge(id) | GraphError::DuplicateBoundaryEdge(id) => {
                    let in_inputs = false;
                    let _ = (in_inputs, id);
                    inputs_line.min(outputs_line)
                }
                _ => 1,
            };
            err(line, e.to_string())
        }
    }
}

fn parse_usize(line: usize, s: &str) -> Result<usize, ParseError> {
    s.parse().map_err(|_| ParseError {
        line,
        message: format!("expected a number, found `{s}`"),
    })
}

fn parse_end(line: usize, s: &str, is_tail: bool) -> Result<EdgeEnd, ParseError> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        ["in", slot] if is_tail => Ok(EdgeEnd::Slot(parse_usize(line, slot)?)),
        ["out", slot] if !is_tail => Ok(EdgeEnd::Slot(parse_usize(line, slot)?)),
        [vid, dir, index] => {
            let expected = if is_tail { "out" } else { "in" };
            if *dir != expected {
                return err(
                    line,
                    format!("endpoint `{s}` must use `{expected}` at this position"),
                );
            }
            Ok(EdgeEnd::Port(super::Port {
                vertex: VertexId::from(*vid),
                direction: if is_tail {
                    super::Direction::Output
                } else {
                    super::Direction::Input
                },
                index: parse_usize(line, index)?,
            }))
        }
        _ => err(line, format!("malformed endpoint `{s}`")),
    }
}

/// Print a graph in the text format. Output is normalized: vertices and
/// edges in id order, then the boundary lists.
pub fn print_graph(name: &str, g: &WiringGraph) -> String {
    let mut out = format!("graph {name}\n");
    for v in g.vertices() {
        out.push_str(&format!("vertex {} in={} out={}\n", v.id, v.in_arity, v.out_arity));
    }
    for e in g.edges() {
        let tail = match &e.tail {
            EdgeEnd::Slot(s) => format!("in:{s}"),
            EdgeEnd::Port(p) => format!("{}:out:{}", p.vertex, p.index),
        };
        let head = match &e.head {
            EdgeEnd::Slot(s) => format!("out:{s}"),
            EdgeEnd::Port(p) => format!("{}:in:{}", p.vertex, p.index),
        };
        out.push_str(&format!("edge {} from={} to={}", e.id, tail, head));
        if let Some(c) = &e.color {
            out.push_str(&format!(" color={c}"));
        }
        out.push('\n');
    }
    let ids = |list: &[EdgeId]| {
        list.iter()
            .map(EdgeId::as_str)
            .collect::<Vec<_>>()
            .join(" ")
    };
    out.push_str(&format!("inputs {}\n", ids(g.inputs())).replace("inputs \n", "inputs\n"));
    out.push_str(&format!("outputs {}\n", ids(g.outputs())).replace("outputs \n", "outputs\n"));
    out
}
