//! Graph serialization: TSV edge lists, DOT, and GraphML.

use std::collections::BTreeSet;
use std::io::{BufRead, BufReader, Read};

use super::{GraphError, InGraph};

/// Edge list as TSV lines `name_u<TAB>name_v<TAB>weight`, one unordered
/// edge per line with `name_u < name_v`, sorted by `(name_u, name_v)`.
/// Node ids already follow name order, so id order is name order.
pub fn to_edge_tsv(g: &InGraph) -> String {
    let mut out = String::new();
    for (u, v, w) in g.edges() {
        out.push_str(g.name(u));
        out.push('\t');
        out.push_str(g.name(v));
        out.push('\t');
        out.push_str(&w.to_string());
        out.push('\n');
    }
    out
}

/// Parse an edge-list TSV back into a graph. Nodes are the union of
/// endpoint names; isolated nodes cannot be represented in this format.
pub fn read_edge_tsv<R: Read>(source: R) -> Result<InGraph, GraphError> {
    let reader = BufReader::new(source);
    let mut edges: Vec<(String, String, u64)> = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let mut parts = line.split('\t');
        let (u, v, w) = match (parts.next(), parts.next(), parts.next(), parts.next()) {
            (Some(u), Some(v), Some(w), None) => (u, v, w),
            _ => {
                return Err(GraphError::ParseEdge {
                    line: line_no,
                    message: "expected exactly 3 tab-separated fields".into(),
                })
            }
        };
        let weight: u64 = w.parse().map_err(|_| GraphError::ParseEdge {
            line: line_no,
            message: format!("invalid weight '{w}'"),
        })?;
        edges.push((u.to_string(), v.to_string(), weight));
    }
    let names: BTreeSet<&str> = edges
        .iter()
        .flat_map(|(u, v, _)| [u.as_str(), v.as_str()])
        .collect();
    let names: Vec<&str> = names.into_iter().collect();
    let edge_refs: Vec<(&str, &str, u64)> = edges
        .iter()
        .map(|(u, v, w)| (u.as_str(), v.as_str(), *w))
        .collect();
    InGraph::from_edges(&names, &edge_refs)
}

fn dot_escape(name: &str) -> String {
    name.replace('\\', "\\\\").replace('"', "\\\"")
}

/// DOT rendering with weights as edge attributes.
pub fn to_dot(g: &InGraph) -> String {
    let mut out = String::from("graph ingredients {\n");
    for name in g.names() {
        out.push_str(&format!("  \"{}\";\n", dot_escape(name)));
    }
    for (u, v, w) in g.edges() {
        out.push_str(&format!(
            "  \"{}\" -- \"{}\" [weight={}];\n",
            dot_escape(g.name(u)),
            dot_escape(g.name(v)),
            w
        ));
    }
    out.push_str("}\n");
    out
}

fn xml_escape(name: &str) -> String {
    name.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
        .replace('\'', "&apos;")
}

/// GraphML rendering; node ids are the ingredient names and the edge
/// weight travels in the `weight` attribute.
pub fn to_graphml(g: &InGraph) -> String {
    let mut out = String::from(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
         <graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n\
         \x20 <key id=\"w\" for=\"edge\" attr.name=\"weight\" attr.type=\"long\"/>\n\
         \x20 <graph id=\"inn\" edgedefault=\"undirected\">\n",
    );
    for name in g.names() {
        out.push_str(&format!("    <node id=\"{}\"/>\n", xml_escape(name)));
    }
    for (u, v, w) in g.edges() {
        out.push_str(&format!(
            "    <edge source=\"{}\" target=\"{}\"><data key=\"w\">{}</data></edge>\n",
            xml_escape(g.name(u)),
            xml_escape(g.name(v)),
            w
        ));
    }
    out.push_str("  </graph>\n</graphml>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> InGraph {
        InGraph::from_edges(
            &["salt", "oil", "cumin"],
            &[("salt", "oil", 9), ("cumin", "salt", 2)],
        )
        .unwrap()
    }

    #[test]
    fn edge_tsv_is_sorted_and_unordered() {
        let tsv = to_edge_tsv(&sample());
        assert_eq!(tsv, "cumin\tsalt\t2\noil\tsalt\t9\n");
    }

    #[test]
    fn edge_tsv_roundtrip() {
        let g = sample();
        let parsed = read_edge_tsv(to_edge_tsv(&g).as_bytes()).unwrap();
        assert_eq!(parsed, g);
    }

    #[test]
    fn read_edge_tsv_rejects_garbage() {
        assert!(matches!(
            read_edge_tsv("a\tb\n".as_bytes()),
            Err(GraphError::ParseEdge { line: 1, .. })
        ));
        assert!(matches!(
            read_edge_tsv("a\tb\tnope\n".as_bytes()),
            Err(GraphError::ParseEdge { line: 1, .. })
        ));
    }

    #[test]
    fn dot_contains_every_node_and_edge() {
        let dot = to_dot(&sample());
        assert!(dot.starts_with("graph ingredients {"));
        assert!(dot.contains("\"salt\";"));
        assert!(dot.contains("\"oil\" -- \"salt\" [weight=9];"));
        assert!(dot.trim_end().ends_with('}'));
    }

    #[test]
    fn dot_escapes_quotes() {
        let g = InGraph::from_edges(&["a\"b", "c"], &[("a\"b", "c", 1)]).unwrap();
        let dot = to_dot(&g);
        assert!(dot.contains("\"a\\\"b\""));
    }

    #[test]
    fn graphml_has_weight_attribute() {
        let xml = to_graphml(&sample());
        assert!(xml.contains("attr.name=\"weight\""));
        assert!(xml.contains("<node id=\"cumin\"/>"));
        assert!(xml.contains("<edge source=\"oil\" target=\"salt\"><data key=\"w\">9</data></edge>"));
    }

    #[test]
    fn graphml_escapes_entities() {
        let g = InGraph::from_edges(&["a&b", "c<d"], &[("a&b", "c<d", 1)]).unwrap();
        let xml = to_graphml(&g);
        assert!(xml.contains("a&amp;b"));
        assert!(xml.contains("c&lt;d"));
    }
}
