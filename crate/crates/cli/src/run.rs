//! Command dispatch. Success prints results to standard output; check
//! failures print a witness report and exit 1; input problems print
//! line-numbered diagnostics and exit 2.

use crate::{Cli, Command, Format};
use properad_kit::gamma::{hom_set, reedy_factorize, GammaMorphism};
use properad_kit::graph::{
    find_isomorphisms, parse_graph, print_graph, IsoMode, ValidationReport,
};
use properad_kit::presheaf::{
    has_unique_inner_fillers, is_inner_kan, is_nerve, is_segal, nerve_truncated, tgs_from_json,
    tgs_to_json, CheckReport, TruncatedGraphicalSet,
};
use properad_kit::properad::{free_elements, nerve, FiniteProperad};
use properad_kit::substitution::{codegeneracy, enumerate_cofaces_into, SubstitutionAssignment};
use properad_kit::{EdgeId, WiringGraph};
use std::path::Path;

const OK: i32 = 0;
const CHECK_FAILED: i32 = 1;
const INPUT_ERROR: i32 = 2;

pub fn run(cli: Cli) -> i32 {
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            INPUT_ERROR
        }
    }
}

struct InputError(String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl<E: std::error::Error> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

fn read_graph(path: &Path) -> Result<WiringGraph, InputError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    let (_, g) = parse_graph(&text)
        .map_err(|e| InputError(format!("{}:{}: {}", path.display(), e.line, e.message)))?;
    Ok(g)
}

fn read_json(path: &Path) -> Result<serde_json::Value, InputError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| InputError(format!("{}: line {}: {e}", path.display(), e.line())))
}

fn read_properad(path: &Path, bound: usize, force: bool) -> Result<(FiniteProperad, ValidationReport), i32> {
    let value = match read_json(path) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return Err(INPUT_ERROR);
        }
    };
    let p = match properad_kit::properad::from_json(&value) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {}: {e}", path.display());
            return Err(INPUT_ERROR);
        }
    };
    let report = p.check_axioms(bound.min(3));
    if !report.ok() && !force {
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
        return Err(CHECK_FAILED);
    }
    Ok((p, report))
}

fn read_tgs(path: &Path) -> Result<TruncatedGraphicalSet, i32> {
    let value = match read_json(path) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return Err(INPUT_ERROR);
        }
    };
    match tgs_from_json(&value) {
        Ok(x) => Ok(x),
        Err(e) => {
            eprintln!("error: {}: {e}", path.display());
            Err(INPUT_ERROR)
        }
    }
}

fn emit_validation(report: &ValidationReport, format: Format) -> i32 {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(report).unwrap()),
        Format::Text => {
            if report.ok() {
                println!("ok");
            } else {
                for v in &report.violations {
                    println!("violated {}: {}", v.invariant, v.witness);
                }
            }
        }
    }
    if report.ok() {
        OK
    } else {
        CHECK_FAILED
    }
}

fn emit_check(report: &CheckReport, format: Format) -> i32 {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(report).unwrap()),
        Format::Text => {
            for r in &report.results {
                let status = if r.pass { "pass" } else { "FAIL" };
                match &r.witness {
                    Some(w) => println!("{status} {} @ {}: {w}", r.check, r.graph),
                    None => println!("{status} {} @ {}", r.check, r.graph),
                }
            }
        }
    }
    if report.pass {
        OK
    } else {
        CHECK_FAILED
    }
}

fn dispatch(cli: &Cli) -> Result<i32, InputError> {
    match &cli.command {
        Command::Validate { file } => {
            let g = read_graph(file)?;
            Ok(emit_validation(&g.validate(), cli.format))
        }
        Command::Iso { a, b, mode } => {
            let ga = read_graph(a)?;
            let gb = read_graph(b)?;
            let mode = match mode.as_str() {
                "strict" => IsoMode::Strict,
                "weak" => IsoMode::Weak,
                other => return Err(InputError(format!("unknown mode `{other}`"))),
            };
            let isos = find_isomorphisms(&ga, &gb, mode);
            let rendered: Vec<serde_json::Value> = isos
                .iter()
                .map(|i| {
                    serde_json::json!({
                        "vertex_map": i.vertex_map,
                        "edge_map": i.edge_map,
                    })
                })
                .collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&serde_json::json!({
                    "count": isos.len(),
                    "isomorphisms": rendered,
                }))
                .unwrap()
            );
            Ok(if isos.is_empty() { CHECK_FAILED } else { OK })
        }
        Command::Substitute { host, guest, at } => {
            let h = read_graph(host)?;
            let g = read_graph(guest)?;
            let assignment = SubstitutionAssignment::aligned(at.as_str(), g);
            let result = properad_kit::substitution::substitute(&h, &assignment)?;
            print!("{}", print_graph("result", &result));
            Ok(OK)
        }
        Command::Cofaces { file } => {
            let g = read_graph(file)?;
            let mut lines: Vec<String> = enumerate_cofaces_into(&g)
                .iter()
                .map(|c| c.trace_json().to_string())
                .collect();
            lines.sort();
            for line in lines {
                println!("{line}");
            }
            Ok(OK)
        }
        Command::Codegen { file, at } => {
            let g = read_graph(file)?;
            let gen = codegeneracy(&g, &at.as_str().into())?;
            println!("{}", gen.trace_json());
            Ok(OK)
        }
        Command::Factor { file } => {
            let value = read_json(file)?;
            let f: GammaMorphism = serde_json::from_value(value)?;
            let (h, g) = reedy_factorize(&f)?;
            let doc = serde_json::json!({
                "middle": print_graph("middle", h.target()),
                "h": h,
                "g": g,
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            Ok(OK)
        }
        Command::Hom { source, target } => {
            let s = read_graph(source)?;
            let t = read_graph(target)?;
            let mut morphisms = hom_set(&s, &t);
            morphisms.sort_by_key(|m| m.key());
            let doc = serde_json::json!({
                "count": morphisms.len(),
                "morphisms": morphisms,
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            Ok(OK)
        }
        Command::Free {
            file,
            profile,
            max_vertices,
        } => {
            let g = read_graph(file)?;
            let (ins, outs) = parse_profile(profile)?;
            let mut elements = free_elements(&g, &ins, &outs, *max_vertices);
            elements.sort_by_key(|e| e.canonical_key());
            let doc = serde_json::json!({
                "count": elements.len(),
                "elements": elements,
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            Ok(OK)
        }
        Command::Nerve { properad, graph } => {
            let (p, _) = match read_properad(properad, cli.bound, cli.force) {
                Ok(pair) => pair,
                Err(code) => return Ok(code),
            };
            match graph {
                Some(path) => {
                    let g = read_graph(path)?;
                    let mut decorations = nerve(&p, &g)?;
                    decorations.sort_by_key(|d| d.canonical_key());
                    let doc = serde_json::json!({
                        "count": decorations.len(),
                        "decorations": decorations,
                    });
                    println!("{}", serde_json::to_string_pretty(&doc).unwrap());
                }
                None => {
                    let x = nerve_truncated(&p, cli.bound)?;
                    println!("{}", serde_json::to_string_pretty(&tgs_to_json(&x)).unwrap());
                }
            }
            Ok(OK)
        }
        Command::CheckProperad { file } => {
            let (p, report) = match read_properad(file, cli.bound, true) {
                Ok(pair) => pair,
                Err(code) => return Ok(code),
            };
            let _ = p;
            Ok(emit_validation(&report, cli.format))
        }
        Command::CheckSegal { file } => {
            let x = match read_tgs(file) {
                Ok(x) => x,
                Err(code) => return Ok(code),
            };
            let functorial = x.validate();
            if !functorial.ok() && !cli.force {
                return Ok(emit_validation(&functorial, cli.format));
            }
            let report = is_segal(&x, cli.bound)?;
            Ok(emit_check(&report, cli.format))
        }
        Command::CheckInnerKan { file, unique } => {
            let x = match read_tgs(file) {
                Ok(x) => x,
                Err(code) => return Ok(code),
            };
            let functorial = x.validate();
            if !functorial.ok() && !cli.force {
                return Ok(emit_validation(&functorial, cli.format));
            }
            let report = if *unique {
                has_unique_inner_fillers(&x, cli.bound)?
            } else {
                is_inner_kan(&x, cli.bound)?
            };
            Ok(emit_check(&report, cli.format))
        }
        Command::IsNerve { file } => {
            let x = match read_tgs(file) {
                Ok(x) => x,
                Err(code) => return Ok(code),
            };
            let functorial = x.validate();
            if !functorial.ok() && !cli.force {
                return Ok(emit_validation(&functorial, cli.format));
            }
            let verdict = is_nerve(&x, cli.bound)?;
            Ok(emit_check(&verdict.report, cli.format))
        }
        Command::ExportDot { file } => {
            let g = read_graph(file)?;
            print!("{}", crate::dot::export_dot(&g));
            Ok(OK)
        }
    }
}

fn parse_profile(s: &str) -> Result<(Vec<EdgeId>, Vec<EdgeId>), InputError> {
    let Some((ins, outs)) = s.split_once(';') else {
        return Err(InputError(format!(
            "profile `{s}` must look like `a,b;c` (inputs;outputs)"
        )));
    };
    let split = |side: &str| -> Vec<EdgeId> {
        side.split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(EdgeId::from)
            .collect()
    };
    Ok((split(ins), split(outs)))
}
