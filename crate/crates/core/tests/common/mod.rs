#![allow(dead_code)]

use std::path::PathBuf;

use tightcut::graph::{boundary, Cut, Graph, VertexSet};
use tightcut::io::parse_edge_list;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

/// A fixture graph and the cut named on its `# cut` line, if any.
pub fn fixture(name: &str) -> (Graph, Option<Cut>) {
    let text = std::fs::read_to_string(fixture_path(name)).expect("fixture exists");
    let g = parse_edge_list(&text).expect("fixture parses");
    let shore = text
        .lines()
        .find_map(|l| l.strip_prefix("# cut "))
        .map(|s| {
            VertexSet::of(
                s.split(',')
                    .map(|t| t.trim().parse::<u32>().expect("vertex id")),
            )
        });
    let cut = shore.map(|x| boundary(&g, &x).expect("fixture cut"));
    (g, cut)
}
