//! DOT and JSON renderings of a dual graph.

use serde::{Deserialize, Serialize};

use crate::dual_graph::{DualGraph, LabelForm};
use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    Dot,
    Json,
}

fn form_name(form: LabelForm) -> &'static str {
    match form {
        LabelForm::Facet => "facet",
        LabelForm::Complement => "complement",
    }
}

/// Undirected DOT graph, nodes in canonical facet order.
pub fn export_dot(g: &DualGraph, form: LabelForm) -> String {
    let mut out = String::from("graph dual {\n");
    for i in 0..g.node_count() {
        let label = g.format_set(g.node_label(i, form)).replace('"', "\\\"");
        out.push_str(&format!("  n{i} [label=\"{label}\"];\n"));
    }
    for (a, b) in g.edges() {
        out.push_str(&format!("  n{a} -- n{b};\n"));
    }
    out.push_str("}\n");
    out
}

#[derive(Serialize, Deserialize)]
struct JsonNode {
    id: usize,
    label: String,
    vertices: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct JsonGraph {
    n: usize,
    d: usize,
    labels: String,
    names: Vec<String>,
    nodes: Vec<JsonNode>,
    edges: Vec<[usize; 2]>,
}

pub fn export_json(g: &DualGraph, form: LabelForm) -> String {
    let doc = JsonGraph {
        n: g.n(),
        d: g.d(),
        labels: form_name(form).to_string(),
        names: g.names().to_vec(),
        nodes: (0..g.node_count())
            .map(|i| {
                let set = g.node_label(i, form);
                JsonNode {
                    id: i,
                    label: g.format_set(set),
                    vertices: set.iter().collect(),
                }
            })
            .collect(),
        edges: g.edges().into_iter().map(|(a, b)| [a, b]).collect(),
    };
    serde_json::to_string_pretty(&doc).expect("plain data serializes")
}

/// Reads a graph written by [`export_json`] (either label form). Edges must
/// be exactly the ridge relation of the node labels.
pub fn import_json(text: &str) -> Result<DualGraph> {
    let doc: JsonGraph = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    let complement = match doc.labels.as_str() {
        "facet" => false,
        "complement" => true,
        other => return Err(Error::BadParams(format!("unknown label form {other:?}"))),
    };
    let mut ids: Vec<usize> = doc.nodes.iter().map(|node| node.id).collect();
    ids.sort_unstable();
    if ids != (0..doc.nodes.len()).collect::<Vec<_>>() {
        return Err(Error::BadParams("node ids must be 0..count".into()));
    }
    let mut facets = vec![VertexSet::EMPTY; doc.nodes.len()];
    for node in &doc.nodes {
        if let Some(&v) = node.vertices.iter().find(|&&v| v >= doc.n) {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                universe: doc.n,
            });
        }
        let set: VertexSet = node.vertices.iter().copied().collect();
        facets[node.id] = if complement {
            set.complement(doc.n)
        } else {
            set
        };
    }
    let edges: Vec<(usize, usize)> = doc.edges.iter().map(|e| (e[0], e[1])).collect();
    DualGraph::from_parts(doc.n, doc.d, facets, &edges, doc.names)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::SimplicialComplex;
    use crate::vertex_set::letters;

    fn graph(facets: &[&str]) -> DualGraph {
        let cx = SimplicialComplex::from_facets(facets.iter().map(|s| letters(s)), None).unwrap();
        DualGraph::build(&cx).unwrap()
    }

    #[test]
    fn dot_shape() {
        let dot = export_dot(&graph(&["AB", "BC", "CD", "DE"]), LabelForm::Facet);
        assert_eq!(dot.matches("[label=").count(), 4);
        assert_eq!(dot.matches(" -- ").count(), 3);
        let isolated = export_dot(&graph(&["AB", "CD"]), LabelForm::Complement);
        assert!(isolated.contains("n0 [label=\"CD\"]"));
        assert_eq!(isolated.matches(" -- ").count(), 0);
    }

    #[test]
    fn json_round_trip_both_forms() {
        let g = graph(&["ABC", "ABD", "BDE", "CEF"]);
        for form in [LabelForm::Facet, LabelForm::Complement] {
            let back = import_json(&export_json(&g, form)).unwrap();
            assert_eq!(back, g);
        }
    }

    #[test]
    fn tampered_edges_rejected() {
        let g = graph(&["AB", "BC", "CD"]);
        let text = export_json(&g, LabelForm::Facet)
            .replace("[\n      0,\n      1\n    ]", "[\n      0,\n      2\n    ]");
        assert!(import_json(&text).is_err());
    }
}
