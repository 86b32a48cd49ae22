//! DOT rendering of covering diagrams.

use std::fmt::Write;

use crate::generic::GenericGraph;
use crate::space::Subset;

/// One node per generic point carrying its order, one edge per covering
/// inclusion. `labels` replaces point numbers with user names.
pub fn generic_graph_dot(graph: &GenericGraph, labels: Option<&[String]>) -> String {
    let mut out = String::from("digraph generic {\n");
    for (i, &v) in graph.vertices().iter().enumerate() {
        writeln!(
            out,
            "  \"{}\" [order={}];",
            node_name(v, labels),
            graph.orders()[i]
        )
        .unwrap();
    }
    for &(a, b) in graph.edges() {
        writeln!(
            out,
            "  \"{}\" -> \"{}\";",
            node_name(graph.vertices()[a], labels),
            node_name(graph.vertices()[b], labels)
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

fn node_name(set: Subset, labels: Option<&[String]>) -> String {
    match labels {
        None => set.to_string(),
        Some(names) => {
            let parts: Vec<&str> = set
                .elements()
                .map(|e| names[(e - 1) as usize].as_str())
                .collect();
            format!("{{{}}}", parts.join(",")).replace('"', "\\\"")
        }
    }
}
