//! JSON serialization:
//! `{"rank", "vertices", "edges": [{"src", "dst", "weight"}], "extra_flags": [{"vertex", "weight"}]}`
//! where `weight` is the weight at `src`.

use serde::Deserialize;

use super::{GkmGraph, Weight};
use crate::error::{Error, Result};

#[derive(Deserialize)]
struct GraphFile {
    rank: usize,
    vertices: Vec<String>,
    edges: Vec<EdgeRecord>,
    #[serde(default)]
    extra_flags: Vec<ExtraRecord>,
}

#[derive(Deserialize)]
struct EdgeRecord {
    src: String,
    dst: String,
    weight: Weight,
}

#[derive(Deserialize)]
struct ExtraRecord {
    vertex: String,
    weight: Weight,
}

/// Parse without running the GKM axiom checks.
pub fn parse_unchecked(text: &str) -> Result<GkmGraph> {
    let file: GraphFile = serde_json::from_str(text)?;
    let lookup = |l: &str| {
        file.vertices
            .iter()
            .position(|v| v == l)
            .ok_or_else(|| Error::Parse(format!("unknown vertex {l:?}")))
    };
    let mut edges = Vec::new();
    for e in &file.edges {
        edges.push((lookup(&e.src)?, lookup(&e.dst)?, e.weight.clone()));
    }
    let mut extra = Vec::new();
    for x in &file.extra_flags {
        extra.push((lookup(&x.vertex)?, x.weight.clone()));
    }
    GkmGraph::new(file.rank, file.vertices.clone(), edges, extra)
}

/// Parse and validate; invalid graphs are rejected.
pub fn from_json(text: &str) -> Result<GkmGraph> {
    let g = parse_unchecked(text)?;
    g.check()?;
    Ok(g)
}

pub fn load(path: &std::path::Path) -> Result<GkmGraph> {
    from_json(&std::fs::read_to_string(path)?)
}

pub fn save(g: &GkmGraph, path: &std::path::Path) -> Result<()> {
    std::fs::write(path, to_json(g))?;
    Ok(())
}

fn q(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

fn ints(w: &[i64]) -> String {
    let parts: Vec<String> = w.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

/// Canonical JSON: one record per line, in stored order.
pub fn to_json(g: &GkmGraph) -> String {
    let mut out = String::from("{\n");
    out.push_str(&format!("  \"rank\": {},\n", g.rank()));
    let verts: Vec<String> = g.labels().iter().map(|l| q(l)).collect();
    out.push_str(&format!("  \"vertices\": [{}],\n", verts.join(", ")));
    let edges: Vec<String> = g
        .edges()
        .iter()
        .enumerate()
        .map(|(e, &(s, d))| {
            format!(
                "    {{\"src\": {}, \"dst\": {}, \"weight\": {}}}",
                q(g.label(s)),
                q(g.label(d)),
                ints(g.weight(2 * e))
            )
        })
        .collect();
    if edges.is_empty() {
        out.push_str("  \"edges\": [],\n");
    } else {
        out.push_str(&format!("  \"edges\": [\n{}\n  ],\n", edges.join(",\n")));
    }
    let extras: Vec<String> = g
        .extra_flags()
        .map(|(v, w)| format!("    {{\"vertex\": {}, \"weight\": {}}}", q(g.label(v)), ints(w)))
        .collect();
    if extras.is_empty() {
        out.push_str("  \"extra_flags\": []\n");
    } else {
        out.push_str(&format!("  \"extra_flags\": [\n{}\n  ]\n", extras.join(",\n")));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::construct;

    #[test]
    fn round_trip_is_byte_identical() {
        for g in [construct::grassmannian(2, 4).unwrap(), construct::local_model(1, -3)] {
            let text = to_json(&g);
            let back = from_json(&text).unwrap();
            assert_eq!(back, g);
            assert_eq!(to_json(&back), text);
        }
    }

    #[test]
    fn invalid_graph_rejected() {
        let text = r#"{"rank": 2, "vertices": ["a", "b", "c"],
            "edges": [{"src": "a", "dst": "b", "weight": [1, 0]},
                      {"src": "a", "dst": "c", "weight": [2, 0]},
                      {"src": "b", "dst": "c", "weight": [0, 1]}]}"#;
        assert!(parse_unchecked(text).is_ok());
        assert!(from_json(text).is_err());
    }
}
