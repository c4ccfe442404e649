//! Edge-list files and DOT rendering.
//!
//! The edge-list format:
//!
//! ```text
//! # comment
//! p 4 5
//! e 0 1
//! e 1 2
//! ...
//! ```
//!
//! Vertices are `0..n`. Repeated `e` lines are parallel edges. Edge `i` is the
//! `i`-th `e` line.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{Cut, Graph, Vertex};

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut header: Option<(u32, usize)> = None;
    let mut edges = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let err = |message: String| Error::Parse { line, message };
        let fields: Vec<&str> = t.split_whitespace().collect();
        match fields[0] {
            "p" => {
                if header.is_some() {
                    return Err(err("second header line".into()));
                }
                let [_, n, m] = fields[..] else {
                    return Err(err("header must be `p <n> <m>`".into()));
                };
                let n = n
                    .parse::<u32>()
                    .map_err(|e| err(format!("vertex count `{n}`: {e}")))?;
                let m = m
                    .parse::<usize>()
                    .map_err(|e| err(format!("edge count `{m}`: {e}")))?;
                header = Some((n, m));
            }
            "e" => {
                let Some((n, m)) = header else {
                    return Err(err("edge line before the `p` header".into()));
                };
                let [_, u, v] = fields[..] else {
                    return Err(err("edge line must be `e <u> <v>`".into()));
                };
                let end = |s: &str| -> Result<u32> {
                    let x = s
                        .parse::<u32>()
                        .map_err(|e| err(format!("vertex `{s}`: {e}")))?;
                    if x >= n {
                        return Err(err(format!("vertex {x} out of range 0..{n}")));
                    }
                    Ok(x)
                };
                let (u, v) = (end(u)?, end(v)?);
                if u == v {
                    return Err(err(format!("loop at vertex {u}")));
                }
                if edges.len() == m {
                    return Err(err(format!("more than the declared {m} edges")));
                }
                edges.push((u, v));
            }
            other => return Err(err(format!("unexpected line type `{other}`"))),
        }
    }
    let Some((n, m)) = header else {
        return Err(Error::Parse {
            line: last_line.max(1),
            message: "missing `p <n> <m>` header".into(),
        });
    };
    if edges.len() != m {
        return Err(Error::Parse {
            line: last_line.max(1),
            message: format!("header declares {m} edges, found {}", edges.len()),
        });
    }
    Graph::new(n, &edges)
}

pub fn read_edge_list(path: &Path) -> Result<Graph> {
    parse_edge_list(&std::fs::read_to_string(path)?)
}

/// Edge-list text with edges sorted. Vertex ids that are not `0..n` are
/// renumbered by rank, so contracted graphs come out as plain files.
pub fn write_edge_list(g: &Graph) -> String {
    let rank = |v: Vertex| g.vertices().binary_search(&v).expect("own vertex");
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .map(|e| {
            let (a, b) = (rank(e.ends.0), rank(e.ends.1));
            (a.min(b), a.max(b))
        })
        .collect();
    edges.sort_unstable();
    let mut out = format!("p {} {}\n", g.vertex_count(), edges.len());
    for (a, b) in edges {
        let _ = writeln!(out, "e {a} {b}");
    }
    out
}

pub fn write_edge_list_file(g: &Graph, path: &Path) -> Result<()> {
    std::fs::write(path, write_edge_list(g))?;
    Ok(())
}

/// Graphviz rendering. Edges of `cut` are red and the canonical shore is
/// filled; contracted vertices are boxes labelled with the vertices they
/// replace.
pub fn to_dot(g: &Graph, cut: Option<&Cut>, title: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph \"{}\" {{", title.replace('"', "'"));
    let _ = writeln!(out, "  label=\"{}\";", title.replace('"', "'"));
    for &v in g.vertices() {
        let mut attrs = Vec::new();
        if let Some(origin) = g.provenance().get(&v) {
            attrs.push("shape=box".to_string());
            attrs.push(format!("label=\"{v} = {origin}\""));
        }
        if cut.is_some_and(|c| c.shore.contains(v)) {
            attrs.push("style=filled".into());
            attrs.push("fillcolor=lightgrey".into());
        }
        if attrs.is_empty() {
            let _ = writeln!(out, "  {v};");
        } else {
            let _ = writeln!(out, "  {v} [{}];", attrs.join(", "));
        }
    }
    for e in g.edges() {
        let red = cut.is_some_and(|c| c.boundary.contains(&e.id));
        let style = if red { ", color=red, penwidth=2" } else { "" };
        let _ = writeln!(
            out,
            "  {} -- {} [label=\"{}\"{style}];",
            e.ends.0, e.ends.1, e.id
        );
    }
    out.push_str("}\n");
    out
}
