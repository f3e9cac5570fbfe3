//! Graphviz DOT output for hierarchy diagrams.

use std::fmt::Write;

use crate::hasse::HasseDiagram;

/// Renders the diagram bottom-to-top, so prerequisites sit below the targets
/// that depend on them. Node labels list the other members of each class,
/// e.g. `t1 (=t0)`.
pub fn emit_dot(diagram: &HasseDiagram) -> String {
    let mut out = String::from("digraph hierarchy {\n  rankdir=BT;\n");
    for node in &diagram.nodes {
        let others: Vec<&str> = node
            .members
            .iter()
            .map(String::as_str)
            .filter(|m| *m != node.name)
            .collect();
        let label = if others.is_empty() {
            node.name.clone()
        } else {
            format!("{} (={})", node.name, others.join(","))
        };
        let _ = writeln!(out, "  \"{}\" [label=\"{}\"];", node.name, label);
    }
    for (lower, upper) in diagram.edge_names() {
        let _ = writeln!(out, "  \"{lower}\" -> \"{upper}\";");
    }
    out.push_str("}\n");
    out
}
